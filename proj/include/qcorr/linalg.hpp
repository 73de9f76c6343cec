#pragma once

// Dense complex linear algebra and entropy primitives for small (dim <= 16)
// quantum states. All entropies are base-2 (bits).

#include <complex>
#include <vector>

#include "qcorr/errors.hpp"

namespace qcorr {

using Complex = std::complex<double>;

constexpr double kDefaultTol   = 1e-10;
constexpr double kEntropyFloor = 1e-15; // eigenvalues below this add no entropy
constexpr double kJacobiTol    = 1e-13; // off-diagonal Frobenius convergence

// Row-major dense complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const Complex& operator()(int r, int c) const {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;
    bool is_finite() const;
    double max_abs() const;

    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;
    ComplexMatrix operator*(Complex scale) const;

    // max_{ij} |A_ij - B_ij|
    double max_abs_diff(const ComplexMatrix& other) const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> data_;
};

// Square matrix with unit trace, hermiticity and positivity enforced at
// construction (each within `tol`).
class DensityMatrix {
  public:
    explicit DensityMatrix(const ComplexMatrix& mat, double tol = kDefaultTol);

    const ComplexMatrix& mat() const { return mat_; }
    int dim() const { return mat_.rows(); }
    double tol() const { return tol_; }

    const Complex& operator()(int r, int c) const { return mat_(r, c); }

  private:
    ComplexMatrix mat_;
    double tol_;
};

// Eigenvalues of (H + H†)/2, ascending, via cyclic Jacobi. Dimension <= 16.
std::vector<double> herm_eigvals(const ComplexMatrix& h, double tol = kDefaultTol);

// -sum lambda log2 lambda over eigenvalues above the entropy floor.
double von_neumann_entropy(const DensityMatrix& rho);

// S2(r) for a qubit with Bloch radius r in [0,1].
double binary_entropy(double r, double tol = kDefaultTol);

enum class Subsystem { A, B };

// Reduced state of a (d_A x d_B)-partitioned density matrix; `traced_out`
// names the subsystem removed.
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Subsystem traced_out);

// Block transpose of a two-qubit state on the given side. Result is hermitian
// with unit trace but may fail positivity.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem side);

struct PptResult {
    bool entangled;
    double min_eigenvalue; // negativity witness
};

// Peres-Horodecki test for a two-qubit state (necessary and sufficient).
PptResult ppt_entangled(const DensityMatrix& rho, double tol = kDefaultTol);

} // namespace qcorr
