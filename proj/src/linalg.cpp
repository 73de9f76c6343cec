#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0)
        throw DimensionError("matrix dimensions must be positive");
    data_.assign(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (rows_ != cols_) throw DimensionError("trace of non-square matrix");
    Complex t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::is_finite() const {
    for (const Complex& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix addition shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix subtraction shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_) throw DimensionError("matrix product shape mismatch");
    ComplexMatrix out(rows_, other.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Complex v = (*this)(r, k);
            if (v == Complex(0.0, 0.0)) continue;
            for (int c = 0; c < other.cols_; ++c) out(r, c) += v * other(k, c);
        }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scale) const {
    ComplexMatrix out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * scale;
    return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix comparison shape mismatch");
    double m = 0.0;
    for (size_t i = 0; i < data_.size(); ++i)
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& mat, double tol) : mat_(mat), tol_(tol) {
    if (mat.rows() != mat.cols()) throw DimensionError("density matrix must be square");
    if (!mat.is_finite()) throw NonFiniteError("density matrix has non-finite entries");
    double herm_dev = 0.0;
    for (int r = 0; r < mat.rows(); ++r)
        for (int c = 0; c < mat.cols(); ++c)
            herm_dev = std::max(herm_dev, std::abs(mat(r, c) - std::conj(mat(c, r))));
    if (herm_dev > tol) throw NonHermitianError("density matrix is not hermitian");
    if (std::abs(mat.trace() - Complex(1.0)) > tol * mat.rows() + tol)
        throw InvalidStateError("density matrix trace is not 1");
    const std::vector<double> eig = herm_eigvals(mat, tol);
    if (eig.front() < -tol) throw NotPositiveError("density matrix has negative eigenvalue");
}

std::vector<double> herm_eigvals(const ComplexMatrix& h, double tol) {
    if (h.rows() != h.cols()) throw DimensionError("eigvals of non-square matrix");
    const int n = h.rows();
    if (n > 16) throw DimensionError("eigensolver limited to dim <= 16");
    if (!h.is_finite()) throw NonFiniteError("eigensolver input has non-finite entries");

    double herm_dev = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            herm_dev = std::max(herm_dev, std::abs(h(r, c) - std::conj(h(c, r))));
    if (herm_dev > tol) throw NonHermitianError("eigensolver input is not hermitian");

    // Work on the hermitian part (H + H†)/2.
    ComplexMatrix a(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));

    auto off_norm = [&]() {
        double s = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (r != c) s += std::norm(a(r, c));
        return std::sqrt(s);
    };

    // Cyclic Jacobi with complex rotations.
    for (int sweep = 0; sweep < 100 && off_norm() >= kJacobiTol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex g = a(p, q);
                const double absg = std::abs(g);
                if (absg < 1e-300) continue;
                const double alpha = a(p, p).real();
                const double beta  = a(q, q).real();
                const Complex phase = g / absg;
                // Rotation angle zeroing the (p,q) element.
                double t;
                const double tau = (alpha - beta) / (2.0 * absg);
                if (std::isinf(tau)) {
                    t = 0.0;
                } else {
                    const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
                    t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex upq = -phase * s; // column rotation: p' = c p + s2 q
                const Complex uqp = std::conj(phase) * s;

                // A <- U† A U with U = [[c, upq], [uqp, c]] on rows/cols (p,q).
                for (int k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * uqp;
                    a(k, q) = akp * upq + akq * c;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(c) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(c) * aqk;
                }
                a(p, q) = Complex(0.0, 0.0);
                a(q, p) = Complex(0.0, 0.0);
            }
        }
    }

    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const std::vector<double> eig = herm_eigvals(rho.mat(), rho.tol());
    double s = 0.0;
    for (double lam : eig)
        if (lam > kEntropyFloor) s -= lam * std::log2(lam);
    return s;
}

double binary_entropy(double r, double tol) {
    if (r < -tol || r > 1.0 + tol) throw DomainError("binary_entropy: radius outside [0,1]");
    r = std::clamp(r, 0.0, 1.0);
    const double p = 0.5 * (1.0 + r);
    const double q = 0.5 * (1.0 - r);
    double s = 0.0;
    if (p > kEntropyFloor) s -= p * std::log2(p);
    if (q > kEntropyFloor) s -= q * std::log2(q);
    return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Subsystem traced_out) {
    if (dim_a * dim_b != rho.dim())
        throw DimensionError("partial_trace: dimensions do not factor the state");
    if (traced_out == Subsystem::B) {
        // Trace of each dim_b x dim_b block.
        ComplexMatrix out(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int j = 0; j < dim_a; ++j) {
                Complex t = 0.0;
                for (int k = 0; k < dim_b; ++k) t += rho(i * dim_b + k, j * dim_b + k);
                out(i, j) = t;
            }
        return DensityMatrix(out, rho.tol());
    }
    // Sum of diagonal blocks.
    ComplexMatrix out(dim_b, dim_b);
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < dim_b; ++j) {
            Complex t = 0.0;
            for (int k = 0; k < dim_a; ++k) t += rho(k * dim_b + i, k * dim_b + j);
            out(i, j) = t;
        }
    return DensityMatrix(out, rho.tol());
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem side) {
    if (rho.dim() != 4) throw DimensionError("partial_transpose expects a two-qubit state");
    ComplexMatrix out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    if (side == Subsystem::B)
                        out(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
                    else
                        out(2 * i + k, 2 * j + l) = rho(2 * j + k, 2 * i + l);
                }
    return out;
}

PptResult ppt_entangled(const DensityMatrix& rho, double tol) {
    const ComplexMatrix pt = partial_transpose(rho, Subsystem::B);
    const std::vector<double> eig = herm_eigvals(pt, tol);
    return PptResult{eig.front() < -tol, eig.front()};
}

} // namespace qcorr
