#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorr/gaussian.hpp"

using namespace qcorr;

namespace {

double max_diff(const Mat2& a, const Mat2& b) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m = std::max(m, std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                     b[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    return m;
}

GaussianChannel diag_channel(double x1, double x2, double y1, double y2) {
    GaussianChannel ch;
    ch.X = {{{x1, 0.0}, {0.0, x2}}};
    ch.Y = {{{y1, 0.0}, {0.0, y2}}};
    return ch;
}

} // namespace

TEST_CASE("complete positivity") {
    CHECK(is_cp(classical_noise(0.0))); // identity
    CHECK(is_cp(attenuator(0.5)));      // quantum limited, saturated
    // Saturation: removing a sliver of noise breaks the condition.
    GaussianChannel sub = attenuator(0.5);
    sub.Y[0][0] -= 1e-6;
    sub.Y[1][1] -= 1e-6;
    CHECK_FALSE(is_cp(sub));

    GaussianChannel bare;
    bare.X = {{{1.0, 0.0}, {0.0, -1.0}}};
    CHECK_FALSE(is_cp(bare)); // transpose map alone is not a channel
}

TEST_CASE("entanglement breaking regions") {
    for (double kappa : {0.3, 1.0, 1.7}) CHECK(is_eb(conjugator(kappa, 0.0)));
    for (double kappa : {0.4, 0.8}) {
        CHECK(is_eb(attenuator(kappa, 2.0 * kappa * kappa + 1e-9)));
        CHECK_FALSE(is_eb(attenuator(kappa, 2.0 * kappa * kappa - 1e-3)));
    }
    for (double kappa : {1.2, 1.6}) {
        CHECK(is_eb(amplifier(kappa, 2.0 + 1e-9)));
        CHECK_FALSE(is_eb(amplifier(kappa, 2.0 - 1e-3)));
    }
    GaussianChannel bad;
    bad.X = {{{1.0, 0.0}, {0.0, -1.0}}};
    CHECK_THROWS_AS(is_eb(bad), NotCPError);
}

TEST_CASE("canonical form classification") {
    const NcCanonical pos = nc_canonical_form(diag_channel(0.7, 0.7, 1.0, 2.0));
    CHECK(pos.form == NcForm::PositiveDet);
    CHECK(pos.kappa == doctest::Approx(0.7));
    CHECK(pos.a == doctest::Approx(1.0));
    CHECK(pos.b == doctest::Approx(2.0));

    const NcCanonical neg = nc_canonical_form(diag_channel(0.7, -0.7, 2.0, 1.0));
    CHECK(neg.form == NcForm::NegativeDet);
    CHECK(neg.kappa == doctest::Approx(0.7));
    CHECK(neg.a == doctest::Approx(1.0)); // ascending

    const NcCanonical sing = nc_canonical_form(diag_channel(1.0, 0.0, 1.5, 2.5));
    CHECK(sing.form == NcForm::SingularX);
    CHECK(sing.kappa == doctest::Approx(1.0));

    // Rotating Y keeps the invariants.
    GaussianChannel rot = diag_channel(0.7, 0.7, 1.0, 2.0);
    const double c = std::cos(0.3), s = std::sin(0.3);
    rot.Y = {{{c * c + 2.0 * s * s, c * s}, {c * s, s * s + 2.0 * c * c}}};
    const NcCanonical r = nc_canonical_form(rot);
    CHECK(r.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.b == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("nonclassicality breaking") {
    CHECK(is_nb(diag_channel(1.0, 1.0, 2.0, 2.0)));        // boundary (1)(1) = 1
    CHECK_FALSE(is_nb(diag_channel(1.0, 1.0, 1.5, 1.5)));  // 0.25 < 1
    CHECK(is_nb(diag_channel(1.0, 0.0, 1.0, 1.0)));        // singular boundary
    CHECK_FALSE(is_nb(diag_channel(1.0, 0.0, 0.8, 4.0)));  // one direction too quiet
    CHECK_THROWS_AS(is_nb(diag_channel(1.0, -1.0, 0.0, 0.0)), NotCPError);
}

TEST_CASE("composition rules") {
    // Amplifier after attenuator: noisy attenuator when the net gain is < 1.
    const GaussianChannel comp = compose(amplifier(1.2), attenuator(0.5));
    const GaussianChannel expect = attenuator(0.6, 2.0 * (1.2 * 1.2 - 1.0));
    CHECK(max_diff(comp.X, expect.X) < 1e-14);
    CHECK(max_diff(comp.Y, expect.Y) < 1e-14);

    // Semigroups at the phase-space level.
    const GaussianChannel c1 = compose(attenuator(0.9), attenuator(0.8));
    CHECK(max_diff(c1.Y, attenuator(0.72).Y) < 1e-14);
    const GaussianChannel c2 = compose(amplifier(1.25), amplifier(1.2));
    CHECK(max_diff(c2.Y, amplifier(1.5).Y) < 1e-14);

    // Identity is neutral.
    const GaussianChannel idc = compose(classical_noise(0.0), attenuator(0.7, 0.3));
    CHECK(max_diff(idc.X, attenuator(0.7, 0.3).X) < 1e-15);
    CHECK(max_diff(idc.Y, attenuator(0.7, 0.3).Y) < 1e-15);
}

TEST_CASE("composition is associative") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        GaussianChannel a, b, c;
        for (GaussianChannel* ch : {&a, &b, &c}) {
            ch->X = {{{u(rng), u(rng)}, {u(rng), u(rng)}}};
            const double y01 = u(rng);
            ch->Y = {{{1.5 + u(rng), y01}, {y01, 1.5 + u(rng)}}};
        }
        const GaussianChannel left = compose(compose(a, b), c);
        const GaussianChannel right = compose(a, compose(b, c));
        CHECK(max_diff(left.X, right.X) < 1e-12);
        CHECK(max_diff(left.Y, right.Y) < 1e-12);
    }
}

TEST_CASE("quantum-limited composition grid") {
    // Composites of the four discrete canonical families in both orders;
    // each cell is checked through the class/kappa/noise invariants.
    struct Cell {
        GaussianChannel later, earlier;
        ChannelClass tag;
        double kappa, noise;
    };
    const double k1 = 0.6, k2g = 1.3, kd = 0.9; // attenuator, amplifier, conjugator
    auto D = [](double k) { return conjugator(k); };
    auto C1 = [](double k) { return attenuator(k); };
    auto C2 = [](double k) { return amplifier(k); };
    const GaussianChannel A2 = half_projector();
    const std::vector<Cell> cells = {
        // later = D(kd)
        {D(kd), D(0.9), ChannelClass::C1_atten, kd * 0.9, 2.0 * kd * kd * (1.0 + 0.81)},
        {D(kd), C1(k1), ChannelClass::D_conj, kd * k1, 2.0 * kd * kd * (1.0 - k1 * k1)},
        {D(kd), C2(k2g), ChannelClass::D_conj, kd * k2g, 0.0},
        {D(kd), A2, ChannelClass::A2_singular, kd, 2.0 * kd * kd},
        // later = C1(0.7)
        {C1(0.7), D(kd), ChannelClass::D_conj, 0.7 * kd, 0.0},
        {C1(0.7), C1(k1), ChannelClass::C1_atten, 0.7 * k1, 0.0},
        {C1(0.7), C2(k2g), ChannelClass::C1_atten, 0.7 * k2g,
         2.0 * 0.7 * 0.7 * (k2g * k2g - 1.0)},
        {C1(0.7), A2, ChannelClass::A2_singular, 0.7, 0.0},
        // later = C2(1.2)
        {C2(1.2), D(kd), ChannelClass::D_conj, 1.2 * kd, 2.0 * (1.2 * 1.2 - 1.0)},
        {C2(1.2), C1(k1), ChannelClass::C1_atten, 1.2 * k1, 2.0 * (1.2 * 1.2 - 1.0)},
        {C2(1.2), C2(k2g), ChannelClass::C2_amp, 1.2 * k2g, 0.0},
        {C2(1.2), A2, ChannelClass::A2_singular, 1.2, 2.0 * (1.2 * 1.2 - 1.0)},
        // later = A2
        {A2, D(kd), ChannelClass::A2_singular, kd, std::sqrt(kd * kd + 2.0) - 1.0},
        {A2, C1(k1), ChannelClass::A2_singular, k1, std::sqrt(2.0 - k1 * k1) - 1.0},
        {A2, C2(k2g), ChannelClass::A2_singular, k2g, k2g - 1.0},
        {A2, A2, ChannelClass::A2_singular, 1.0, std::sqrt(2.0) - 1.0},
    };
    for (const Cell& cell : cells) {
        const GaussianChannel comp = compose(cell.later, cell.earlier);
        const CanonicalClass cls = holevo_class(comp);
        CHECK(cls.tag == cell.tag);
        if (cell.tag != ChannelClass::A2_singular)
            CHECK(cls.kappa == doctest::Approx(cell.kappa).epsilon(1e-12));
        CHECK(cls.noise == doctest::Approx(cell.noise).epsilon(1e-9));
        CHECK(is_cp(comp));
    }
}

TEST_CASE("noisy decomposition") {
    const QuantumLimitedPair idp = noisy_decomposition(NoisyKind::Atten, 1.0, 0.0);
    CHECK(idp.kappa1 == doctest::Approx(1.0));
    CHECK(idp.kappa2 == doctest::Approx(1.0));

    const QuantumLimitedPair at = noisy_decomposition(NoisyKind::Atten, 0.8, 1.0);
    CHECK(at.kappa2 == doctest::Approx(std::sqrt(1.5)));
    CHECK(at.kappa1 == doctest::Approx(0.8 / std::sqrt(1.5)));

    const QuantumLimitedPair am = noisy_decomposition(NoisyKind::Amp, 1.2, 0.5);
    CHECK(am.kappa2 == doctest::Approx(1.3));
    CHECK(am.kappa1 <= 1.0);

    // The split composes back to the original channel.
    for (auto [kind, kappa, a] : std::vector<std::tuple<NoisyKind, double, double>>{
             {NoisyKind::Atten, 0.7, 0.9}, {NoisyKind::Amp, 1.4, 1.7}}) {
        const QuantumLimitedPair p = noisy_decomposition(kind, kappa, a);
        const GaussianChannel recomposed =
            compose(amplifier(p.kappa2), attenuator(p.kappa1));
        const GaussianChannel target =
            kind == NoisyKind::Atten ? attenuator(kappa, a) : amplifier(kappa, a);
        CHECK(max_diff(recomposed.X, target.X) < 1e-12);
        CHECK(max_diff(recomposed.Y, target.Y) < 1e-12);
    }
    CHECK_THROWS_AS(noisy_decomposition(NoisyKind::Atten, 1.3, 0.1), DomainError);
}

TEST_CASE("variance matrix evolution") {
    const VarianceMatrix2Mode vac = VarianceMatrix2Mode::vacuum();
    const VarianceMatrix2Mode out = evolve_variance(attenuator(0.6, 0.8), vac,
                                                    ChannelSides::Both);
    for (int i = 0; i < 4; ++i) CHECK(out(i, i) == doctest::Approx(1.8)); // (1+a)

    // mu = 0 squeezed vacuum is the two-mode vacuum.
    const VarianceMatrix2Mode t0 = VarianceMatrix2Mode::tmsv(0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(t0(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

    // Identity channel leaves the squeezed correlations alone.
    const VarianceMatrix2Mode tm = VarianceMatrix2Mode::tmsv(0.4);
    const VarianceMatrix2Mode same = evolve_variance(classical_noise(0.0), tm,
                                                     ChannelSides::Both);
    CHECK(same(0, 2) == doctest::Approx(std::sinh(0.8)));
    CHECK(same(1, 3) == doctest::Approx(-std::sinh(0.8)));
    CHECK(same(0, 0) == doctest::Approx(std::cosh(0.8)));

    GaussianChannel bogus;
    bogus.X = {{{1.0, 0.0}, {0.0, 1.0}}};
    bogus.Y = {{{-0.5, 0.0}, {0.0, -0.5}}};
    CHECK_THROWS_AS(evolve_variance(bogus, tm, ChannelSides::Both), InvalidVarianceError);

    // One-sided action only adds noise to the chosen mode.
    const VarianceMatrix2Mode left = evolve_variance(attenuator(0.5, 0.0), tm,
                                                     ChannelSides::Left);
    CHECK(left(2, 2) == doctest::Approx(std::cosh(0.8)));
    CHECK(left(0, 0) == doctest::Approx(0.25 * std::cosh(0.8) + 0.75));
}

TEST_CASE("evolved variance stays physical for CP channels") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double kappa = 0.05 + 1.9 * u(rng);
        const double a = 4.0 * u(rng);
        const GaussianChannel ch =
            kappa <= 1.0 ? attenuator(kappa, a) : amplifier(kappa, a);
        const VarianceMatrix2Mode in = VarianceMatrix2Mode::tmsv(u(rng));
        CHECK_NOTHROW(evolve_variance(ch, in, ChannelSides::Both));
    }
}

TEST_CASE("two-mode separability") {
    CHECK(simon_separable(VarianceMatrix2Mode::vacuum()));
    CHECK_FALSE(simon_separable(VarianceMatrix2Mode::tmsv(0.5185)));

    // Threshold behavior of the two-sided noisy attenuator.
    for (double kappa : {0.5, 0.8}) {
        for (double mu : {0.3, 0.5185}) {
            const double a_star = gaussian_critical_noise(NoisyKind::Atten, kappa, mu);
            const VarianceMatrix2Mode in = VarianceMatrix2Mode::tmsv(mu);
            CHECK(simon_separable(
                evolve_variance(attenuator(kappa, a_star + 1e-6), in, ChannelSides::Both)));
            CHECK_FALSE(simon_separable(
                evolve_variance(attenuator(kappa, a_star - 1e-6), in, ChannelSides::Both)));
        }
    }
}

TEST_CASE("critical Gaussian noise") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(gaussian_critical_noise(NoisyKind::Atten, 0.7, inf) == doctest::Approx(0.49));
    CHECK(gaussian_critical_noise(NoisyKind::Amp, 1.2, inf) == doctest::Approx(2.0 - 1.44));
    CHECK(gaussian_critical_noise(NoisyKind::Atten, 0.7, 0.0) == doctest::Approx(0.0));
    CHECK(gaussian_critical_noise(NoisyKind::Amp, 1.5, inf) == doctest::Approx(0.0));
    CHECK(gaussian_critical_noise(NoisyKind::Atten, 0.5, 0.3) ==
          doctest::Approx(0.25 * (1.0 - std::exp(-0.6))));
    CHECK_THROWS_AS(gaussian_critical_noise(NoisyKind::Atten, 1.4, 0.3), DomainError);
}

TEST_CASE("squeeze orbit reaches the nonclassicality-breaking region") {
    CHECK(find_squeeze_r0(conjugator(1.0, 1.0)) == doctest::Approx(0.0)); // already NB

    // A channel in the breaking strip: entanglement gone, nonclassicality not.
    const GaussianChannel strip = diag_channel(0.5, 0.5, 5.0, 0.4);
    REQUIRE(is_cp(strip));
    REQUIRE(is_eb(strip));
    REQUIRE_FALSE(is_nb(strip));
    const double r0 = find_squeeze_r0(strip);
    CHECK(r0 > 0.0);
    CHECK(is_nb(apply_output_squeeze(strip, r0), 1e-6));
    // Minimality: slightly less squeezing is not enough.
    CHECK_FALSE(is_nb(apply_output_squeeze(strip, 0.9 * r0), -1e-6));

    CHECK_THROWS_AS(find_squeeze_r0(attenuator(0.9, 0.0)), NotEBError);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int tested = 0;
    for (int i = 0; i < 3000 && tested < 100; ++i) {
        const double kappa = 0.1 + 1.5 * u(rng);
        GaussianChannel ch = diag_channel(kappa, kappa, 0.01 + 5.0 * u(rng),
                                          0.01 + 5.0 * u(rng));
        if (!is_cp(ch) || !is_eb(ch) || is_nb(ch)) continue;
        ++tested;
        const double r = find_squeeze_r0(ch);
        CHECK(r > 0.0);
        CHECK(r <= 50.0);
        CHECK(is_nb(apply_output_squeeze(ch, r), 1e-6));
    }
    CHECK(tested == 100);
}

TEST_CASE("breaking hierarchy on random channels") {
    std::mt19937_64 rng(27);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    long nb_without_eb = 0;
    long checked = 0;
    for (int i = 0; i < 30000; ++i) {
        const double kappa = 2.0 * u(rng) + 1e-9;
        const double a = 4.0 * u(rng) + 1e-9;
        const double b = 4.0 * u(rng) + 1e-9;
        const int form = i % 3;
        GaussianChannel ch = form == 0   ? diag_channel(kappa, kappa, a, b)
                             : form == 1 ? diag_channel(kappa, -kappa, a, b)
                                         : diag_channel(kappa, 0.0, a, b);
        if (!is_cp(ch)) continue;
        ++checked;
        const bool nb = is_nb(ch);
        const bool eb = is_eb(ch);
        if (nb && !eb) ++nb_without_eb;
        if (form != 0) CHECK(eb); // these forms are breaking as soon as they exist
    }
    CHECK(checked > 5000);
    CHECK(nb_without_eb == 0);
}

TEST_CASE("holevo classification of the canonical families") {
    CHECK(holevo_class(attenuator(0.5)).tag == ChannelClass::C1_atten);
    CHECK(holevo_class(attenuator(0.5)).noise == doctest::Approx(0.0));
    CHECK(holevo_class(amplifier(1.3, 0.7)).tag == ChannelClass::C2_amp);
    CHECK(holevo_class(amplifier(1.3, 0.7)).noise == doctest::Approx(0.7));
    CHECK(holevo_class(conjugator(0.9, 0.0)).tag == ChannelClass::D_conj);
    CHECK(holevo_class(classical_noise(0.0)).tag == ChannelClass::B2_noise);
    CHECK(holevo_class(classical_noise(1.2)).noise == doctest::Approx(1.2));
    CHECK(holevo_class(one_quadrature_noise(0.8)).tag == ChannelClass::B1_onequad);
    CHECK(holevo_class(fixed_output(0.0)).tag == ChannelClass::A1_singular);
    CHECK(holevo_class(half_projector(0.4)).tag == ChannelClass::A2_singular);
}
