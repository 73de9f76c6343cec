// Batch front end: discord and channel classification reports, sweep tables,
// robustness curves, and the self-check suites.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/ellipsoid.hpp"
#include "qcorr/fock.hpp"
#include "qcorr/gaussian.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/mueller.hpp"
#include "qcorr/oracle.hpp"
#include "report.hpp"
#include "verify_suites.hpp"

namespace qcorr::cli {
namespace {

constexpr double kMuOneEbit = 0.5185;

std::vector<double> parse_reals(const std::string& csv, size_t expected, const char* what) {
    std::vector<double> out;
    std::string token;
    std::stringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == token.c_str()) throw DomainError(std::string("bad number in ") + what);
        out.push_back(v);
    }
    if (out.size() != expected)
        throw DomainError(std::string(what) + ": expected " + std::to_string(expected) +
                          " comma-separated values");
    return out;
}

// Accepts "a", "bi", "a+bi", "a-bi" ('j' also allowed for the unit).
Complex parse_complex(std::string token) {
    if (token.empty()) throw DomainError("empty complex entry");
    const char last = token.back();
    if (last != 'i' && last != 'j') {
        char* end = nullptr;
        const double re = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0')
            throw DomainError("bad complex entry: " + token);
        return Complex(re, 0.0);
    }
    token.pop_back();
    // Split at the last +/- that is not a leading sign or an exponent sign.
    size_t split = std::string::npos;
    for (size_t i = token.size(); i-- > 1;) {
        if ((token[i] == '+' || token[i] == '-') &&
            token[i - 1] != 'e' && token[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    double re = 0.0;
    std::string im_str = token;
    if (split != std::string::npos) {
        re = std::strtod(token.substr(0, split).c_str(), nullptr);
        im_str = token.substr(split);
    }
    if (im_str.empty() || im_str == "+") im_str = "1";
    if (im_str == "-") im_str = "-1";
    char* end = nullptr;
    const double im = std::strtod(im_str.c_str(), &end);
    if (end == im_str.c_str()) throw DomainError("bad complex entry");
    return Complex(re, im);
}

// Evaluates grid rows in parallel chunks; rows land in the table in grid
// order regardless of completion order. The first exception wins.
void fill_rows(Table& table, long points,
               const std::function<std::vector<std::string>(long)>& make_row) {
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
    std::vector<std::vector<std::string>> rows(static_cast<size_t>(points));
    if (workers <= 1 || points < 64) {
        for (long i = 0; i < points; ++i) rows[static_cast<size_t>(i)] = make_row(i);
    } else {
        std::atomic<long> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&]() {
            constexpr long chunk = 32;
            for (;;) {
                const long start = next.fetch_add(chunk);
                if (start >= points) return;
                const long stop = std::min(points, start + chunk);
                try {
                    for (long i = start; i < stop; ++i)
                        rows[static_cast<size_t>(i)] = make_row(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    for (auto& row : rows) table.add_row_mixed(row);
}

std::string kind_name(MeasurementKind k) {
    switch (k) {
        case MeasurementKind::VonNeumannZ: return "von-neumann-z";
        case MeasurementKind::VonNeumannX: return "von-neumann-x";
        case MeasurementKind::ThreeElement: return "three-element";
    }
    return "?";
}

std::string class_name(ChannelClass c) {
    switch (c) {
        case ChannelClass::D_conj: return "D";
        case ChannelClass::C1_atten: return "C1";
        case ChannelClass::C2_amp: return "C2";
        case ChannelClass::A1_singular: return "A1";
        case ChannelClass::A2_singular: return "A2";
        case ChannelClass::B2_noise: return "B2";
        case ChannelClass::B1_onequad: return "B1";
    }
    return "?";
}

std::string form_name(NcForm f) {
    switch (f) {
        case NcForm::PositiveDet: return "positive-det";
        case NcForm::NegativeDet: return "negative-det";
        case NcForm::SingularX: return "singular";
    }
    return "?";
}

struct DiscordArgs {
    std::string x_csv, rho_csv, mueller_csv, ellipsoid_csv;
};

int run_discord(const DiscordArgs& args, const OutputConfig& out) {
    const int given = !args.x_csv.empty() + !args.rho_csv.empty() +
                      !args.mueller_csv.empty() + !args.ellipsoid_csv.empty();
    if (given != 1)
        throw DomainError("discord: give exactly one of --x, --rho, --mueller, --ellipsoid");

    XStateCanonical x;
    if (!args.x_csv.empty()) {
        const std::vector<double> v = parse_reals(args.x_csv, 5, "--x");
        x = XStateCanonical{v[0], v[1], v[2], v[3], v[4]};
        rho_of_x(x); // positivity gate
        x = canonical_gauge(x);
    } else if (!args.rho_csv.empty()) {
        std::vector<Complex> entries;
        std::string token;
        std::stringstream ss(args.rho_csv);
        while (std::getline(ss, token, ',')) entries.push_back(parse_complex(token));
        if (entries.size() != 16) throw DomainError("--rho: expected 16 entries");
        ComplexMatrix m(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(r, c) = entries[static_cast<size_t>(4 * r + c)];
        x = xstate_canonical(DensityMatrix(m)).x;
    } else if (!args.mueller_csv.empty()) {
        const std::vector<double> v = parse_reals(args.mueller_csv, 16, "--mueller");
        MuellerMatrix m;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(r, c) = v[static_cast<size_t>(4 * r + c)];
        x = xstate_canonical(mueller_to_rho(m)).x;
    } else {
        const std::vector<double> v = parse_reals(args.ellipsoid_csv, 6, "--ellipsoid");
        CorrelationEllipsoid e;
        e.ax = v[0];
        e.ay = v[1];
        e.az = v[2];
        e.zc = v[3];
        e.zi = v[4];
        e.det_sign = v[5] >= 0.0 ? 1 : -1;
        x = canonical_gauge(x_from_ellipsoid(e));
    }

    const Correlations corr = correlations(x);
    const CorrelationEllipsoid e = ellipsoid_from_x(x);
    const PptResult ppt = ppt_entangled(rho_of_x(x));

    Report rep(out);
    rep.set_numbers("x_canonical", {x.m11, x.m22, x.m33, x.m03, x.m30});
    nlohmann::ordered_json ell;
    ell["ax"] = round_sig(e.ax, out.precision);
    ell["ay"] = round_sig(e.ay, out.precision);
    ell["az"] = round_sig(e.az, out.precision);
    ell["zc"] = round_sig(e.zc, out.precision);
    ell["zi"] = round_sig(e.zi, out.precision);
    ell["det_sign"] = e.det_sign;
    rep.set("ellipsoid", ell);
    rep.set("mutual_information", corr.mutual);
    rep.set("classical_correlation", corr.classical);
    rep.set("discord", corr.discord);
    rep.set("sa_min", corr.sa_min);
    rep.set("eof_complementary", corr.sa_min);
    rep.set("measurement_kind", kind_name(corr.measurement.kind));
    if (corr.measurement.kind == MeasurementKind::ThreeElement) {
        rep.set("theta_opt", corr.measurement.theta);
        rep.set("z0", corr.measurement.z0);
    }
    nlohmann::ordered_json povm = nlohmann::ordered_json::array();
    for (const auto& [w, s] : corr.measurement.povm) {
        nlohmann::ordered_json el;
        el["weight"] = round_sig(w, out.precision);
        el["stokes"] = {round_sig(s[0], out.precision), round_sig(s[1], out.precision),
                        round_sig(s[2], out.precision), round_sig(s[3], out.precision)};
        povm.push_back(el);
    }
    rep.set("povm", povm);
    rep.set("ppt_entangled", ppt.entangled);
    rep.set("ppt_min_eigenvalue", ppt.min_eigenvalue);
    rep.emit();
    return 0;
}

struct SweepArgs {
    std::string curve;
    double ax = 0.65, ay = 0.6, az = 0.58, zc = 0.4, zi = 0.5;
    std::string x_csv;
    double lo = 0.0, hi = 0.0;
    long points = 101;
};

int run_sweep(const SweepArgs& a, const OutputConfig& out) {
    if (a.points < 2 || a.points > 1000000)
        throw DomainError("sweep: --points must be in [2, 1e6]");
    auto grid = [&](double lo, double hi, long i) {
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.points - 1);
    };

    if (a.curve == "wedge-boundaries") {
        const double lo = a.lo > 0.0 ? a.lo : 0.02;
        const double hi = a.hi > 0.0 ? a.hi : std::min(0.95, 0.999 - a.zc);
        Table t(out, {"az", "ax_v", "ax_h"});
        t.add_comment("wedge boundaries at zc = " + format_number(a.zc, out.precision));
        fill_rows(t, a.points, [&](long i) -> std::vector<std::string> {
            const double az = grid(lo, hi, i);
            return {format_number(az, out.precision),
                    format_number(boundary_ax_V(az, a.zc), out.precision),
                    format_number(boundary_ax_H(az, a.zc), out.precision)};
        });
        t.emit();
        return 0;
    }
    if (a.curve == "discord-vs-ax") {
        if (a.lo <= 0.0 || a.hi <= a.lo) throw DomainError("sweep: need --min/--max for ax");
        Table t(out, {"ax", "sa_min", "discord", "discord_vn_restricted", "kind"});
        t.add_comment("family (ay, az, zc, zi) = (" + format_number(a.ay, 6) + ", " +
                      format_number(a.az, 6) + ", " + format_number(a.zc, 6) + ", " +
                      format_number(a.zi, 6) + ")");
        fill_rows(t, a.points, [&](long i) -> std::vector<std::string> {
            const double ax = grid(a.lo, a.hi, i);
            CorrelationEllipsoid e;
            e.ax = ax;
            e.ay = std::min(a.ay, ax);
            e.az = a.az;
            e.zc = a.zc;
            e.zi = a.zi;
            const XStateCanonical x = canonical_gauge(x_from_ellipsoid(e));
            const Correlations corr = correlations(x);
            const double restricted =
                std::min(vn_entropy_theta(x, 0.0), vn_entropy_theta(x, M_PI_2));
            const double d_restricted =
                corr.mutual - (binary_entropy(std::abs(x.m30)) - restricted);
            return {format_number(ax, out.precision),
                    format_number(corr.sa_min, out.precision),
                    format_number(corr.discord, out.precision),
                    format_number(d_restricted, out.precision),
                    kind_name(corr.measurement.kind)};
        });
        t.emit();
        return 0;
    }
    if (a.curve == "discord-vs-zI") {
        Table t(out, {"zi", "mutual", "discord", "classical", "kind"});
        t.add_comment("shape (ax, ay, az, zc) = (" + format_number(a.ax, 6) + ", " +
                      format_number(a.ay, 6) + ", " + format_number(a.az, 6) + ", " +
                      format_number(a.zc, 6) + ")");
        CorrelationEllipsoid base;
        base.ax = a.ax;
        base.ay = a.ay;
        base.az = a.az;
        base.zc = a.zc;
        base.zi = a.zc; // boost gauge
        fill_rows(t, a.points, [&](long i) -> std::vector<std::string> {
            const double t_mu = -0.999 + 1.998 * static_cast<double>(i) /
                                            static_cast<double>(a.points - 1);
            const CorrelationEllipsoid e = boost_zI(base, t_mu);
            const Correlations corr = correlations(x_from_ellipsoid(e));
            return {format_number(e.zi, out.precision),
                    format_number(corr.mutual, out.precision),
                    format_number(corr.discord, out.precision),
                    format_number(corr.classical, out.precision),
                    kind_name(corr.measurement.kind)};
        });
        t.emit();
        return 0;
    }
    if (a.curve == "SA-vs-z") {
        CorrelationEllipsoid e;
        e.ax = a.ax;
        e.ay = a.ay;
        e.az = a.az;
        e.zc = a.zc;
        e.zi = a.zi;
        const double lo = e.zc - e.az;
        const double hi = std::min(e.zi, e.zc + e.az);
        Table t(out, {"z", "sa"});
        t.add_comment("three-element conditional entropy profile");
        fill_rows(t, a.points, [&](long i) -> std::vector<std::string> {
            const double z = grid(lo, hi, i);
            return {format_number(z, out.precision),
                    format_number(cond_entropy_z(e, z), out.precision)};
        });
        t.emit();
        return 0;
    }
    if (a.curve == "vN-vs-theta") {
        if (a.x_csv.empty()) throw DomainError("sweep vN-vs-theta: needs --x");
        const std::vector<double> v = parse_reals(a.x_csv, 5, "--x");
        const XStateCanonical x{v[0], v[1], v[2], v[3], v[4]};
        rho_of_x(x);
        Table t(out, {"theta", "sa_vn"});
        t.add_comment("two-element von Neumann entropy profile");
        fill_rows(t, a.points, [&](long i) -> std::vector<std::string> {
            const double th = M_PI_2 * static_cast<double>(i) / static_cast<double>(a.points - 1);
            return {format_number(th, out.precision),
                    format_number(vn_entropy_theta(x, th), out.precision)};
        });
        t.emit();
        return 0;
    }
    throw DomainError("sweep: unknown curve " + a.curve);
}

int run_classify(const std::string& x_csv, const std::string& y_csv, const OutputConfig& out) {
    const std::vector<double> xv = parse_reals(x_csv, 4, "--xmat");
    const std::vector<double> yv = parse_reals(y_csv, 4, "--ymat");
    if (std::abs(yv[1] - yv[2]) > 1e-9) throw DomainError("--ymat must be symmetric");
    GaussianChannel ch;
    ch.X = {{{xv[0], xv[1]}, {xv[2], xv[3]}}};
    ch.Y = {{{yv[0], yv[1]}, {yv[2], yv[3]}}};

    Report rep(out);
    const bool cp = is_cp(ch);
    rep.set("cp", cp);
    const NcCanonical nc = nc_canonical_form(ch);
    const CanonicalClass hc = holevo_class(ch);
    nlohmann::ordered_json holevo;
    holevo["class"] = class_name(hc.tag);
    holevo["kappa"] = round_sig(hc.kappa, out.precision);
    holevo["noise"] = round_sig(hc.noise, out.precision);
    rep.set("holevo", holevo);
    nlohmann::ordered_json form;
    form["form"] = form_name(nc.form);
    form["kappa"] = round_sig(nc.kappa, out.precision);
    form["y_eigenvalues"] = {round_sig(nc.a, out.precision), round_sig(nc.b, out.precision)};
    rep.set("nc_canonical", form);
    if (cp) {
        const bool eb = is_eb(ch);
        rep.set("eb", eb);
        rep.set("nb", is_nb(ch));
        if (eb) rep.set("squeeze_r0", find_squeeze_r0(ch));
    }
    rep.emit();
    return 0;
}

struct RobustnessArgs {
    std::string state = "noon";
    int n = 5;
    std::string channel = "atten";
    double kappa_min = 0.0, kappa_max = 0.0;
    long points = 50;
};

int run_robustness(const RobustnessArgs& a, const OutputConfig& out) {
    if (a.n < 1 || a.n > 10) throw DomainError("robustness: --n must be in [1, 10]");
    if (a.points < 2 || a.points > 1000000) throw DomainError("robustness: bad --points");
    const bool atten = a.channel == "atten";
    if (!atten && a.channel != "amp") throw DomainError("robustness: --channel atten|amp");
    const bool noon = a.state == "noon";
    if (!noon && a.state != "pnes") throw DomainError("robustness: --state noon|pnes");
    const int which = noon ? (atten ? 1 : 3) : (atten ? 2 : 4);
    const double lo = a.kappa_min > 0.0 ? a.kappa_min : (atten ? 0.1 : 1.0);
    const double hi = a.kappa_max > 0.0 ? a.kappa_max : (atten ? 0.999 : 1.4);

    Table t(out, {"kappa", "a_crit", "g1", "g_inf", "region_r"});
    t.add_comment("state " + a.state + "(n=" + std::to_string(a.n) + "), channel " + a.channel);
    t.add_comment("g1 uses mu1 = " + format_number(kMuOneEbit, 6) +
                  " (one-ebit squeezed-vacuum reference); g_inf is the all-Gaussian line");
    const NoisyKind gk = atten ? NoisyKind::Atten : NoisyKind::Amp;
    fill_rows(t, a.points, [&](long i) -> std::vector<std::string> {
        const double kappa = lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(a.points - 1);
        double a_crit = std::numeric_limits<double>::quiet_NaN();
        try {
            a_crit = critical_noise(which, a.n, kappa);
        } catch (const NoSolutionError&) {
            // no certified entanglement at zero noise for this kappa
        }
        const double g1 = gaussian_critical_noise(gk, kappa, kMuOneEbit);
        const double ginf = gaussian_critical_noise(gk, kappa,
                                                    std::numeric_limits<double>::infinity());
        const bool region = std::isfinite(a_crit) && a_crit > ginf + 1e-9;
        return {format_number(kappa, out.precision),
                std::isfinite(a_crit) ? format_number(a_crit, out.precision) : "nan",
                format_number(g1, out.precision),
                format_number(ginf, out.precision), region ? "1" : "0"};
    });
    t.emit();
    return 0;
}

int run_verify(const std::string& suite, uint64_t seed, long samples, int n_cut,
               const OutputConfig& out) {
    std::vector<PropertyResult> results;
    if (suite == "kraus")
        results = run_kraus_suite(n_cut);
    else if (suite == "semigroup")
        results = run_semigroup_suite(n_cut);
    else if (suite == "nb-eb")
        results = run_nb_eb_suite(seed, samples > 0 ? samples : 100000);
    else if (suite == "discord-oracle")
        results = run_discord_oracle_suite(seed, samples > 0 ? samples : 200);
    else
        throw DomainError("verify: unknown suite " + suite);

    Table t(out, {"property", "passed", "checked", "failures", "worst_error"});
    t.add_comment("suite " + suite + ", seed " + std::to_string(seed));
    bool all_passed = true;
    for (const PropertyResult& r : results) {
        all_passed = all_passed && r.passed;
        t.add_row_mixed({r.name, r.passed ? "1" : "0", std::to_string(r.checked),
                         std::to_string(r.failures), format_number(r.worst_error, 3)});
    }
    t.emit();
    return all_passed ? 0 : 1;
}

} // namespace
} // namespace qcorr::cli

int main(int argc, char** argv) {
    using namespace qcorr::cli;

    CLI::App app{"two-qubit correlation and bosonic Gaussian channel toolkit"};
    app.set_config("--config", "", "key=value configuration file");

    OutputConfig out;
    uint64_t seed = 12345;
    int n_cut = qcorr::kDefaultNCut;
    bool show_config = false;
    app.add_option("--format", out.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--precision", out.precision, "significant digits in output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for sampling suites")->capture_default_str();
    app.add_option("--ncut", n_cut, "Fock truncation dimension")
        ->check(CLI::Range(2, qcorr::kMaxNCut))
        ->capture_default_str();
    app.add_option("--out", out.out_path, "output path (default stdout)");
    app.add_flag("--show-config", show_config, "print the effective configuration and exit");

    DiscordArgs dargs;
    auto* discord = app.add_subcommand("discord", "correlations of a two-qubit X-state");
    discord->add_option("--x", dargs.x_csv, "canonical parameters m11,m22,m33,m03,m30");
    discord->add_option("--rho", dargs.rho_csv, "16 density-matrix entries, row-major");
    discord->add_option("--mueller", dargs.mueller_csv, "16 Mueller entries, row-major");
    discord->add_option("--ellipsoid", dargs.ellipsoid_csv, "ax,ay,az,zc,zi,sign");

    SweepArgs sargs;
    auto* sweep = app.add_subcommand("sweep", "tabulate a named curve");
    sweep->add_option("--curve", sargs.curve,
                      "wedge-boundaries|discord-vs-ax|discord-vs-zI|SA-vs-z|vN-vs-theta")
        ->required();
    sweep->add_option("--ax", sargs.ax, "semi-axis a_x");
    sweep->add_option("--ay", sargs.ay, "semi-axis a_y");
    sweep->add_option("--az", sargs.az, "semi-axis a_z");
    sweep->add_option("--zc", sargs.zc, "center offset z_c");
    sweep->add_option("--zi", sargs.zi, "image of identity z_I");
    sweep->add_option("--x", sargs.x_csv, "canonical X parameters (vN-vs-theta)");
    sweep->add_option("--min", sargs.lo, "grid start");
    sweep->add_option("--max", sargs.hi, "grid end");
    sweep->add_option("--points", sargs.points, "grid size")->capture_default_str();

    std::string cx, cy;
    auto* classify = app.add_subcommand("classify-gaussian", "classify a channel (X, Y)");
    classify->add_option("--xmat", cx, "x11,x12,x21,x22")->required();
    classify->add_option("--ymat", cy, "y11,y12,y21,y22")->required();

    RobustnessArgs rargs;
    auto* robust = app.add_subcommand("robustness", "critical-noise curves vs Gaussian lines");
    robust->add_option("--state", rargs.state, "noon|pnes")->capture_default_str();
    robust->add_option("--n", rargs.n, "photon number")->capture_default_str();
    robust->add_option("--channel", rargs.channel, "atten|amp")->capture_default_str();
    robust->add_option("--kappa-min", rargs.kappa_min, "grid start");
    robust->add_option("--kappa-max", rargs.kappa_max, "grid end");
    robust->add_option("--points", rargs.points, "grid size")->capture_default_str();

    std::string suite;
    long samples = 0;
    auto* verify = app.add_subcommand("verify", "run a self-check suite");
    verify->add_option("--suite", suite, "kraus|semigroup|nb-eb|discord-oracle")->required();
    verify->add_option("--samples", samples, "sample count override");

    for (CLI::App* sc : app.get_subcommands({})) sc->fallthrough();
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (show_config) {
        std::cout << "format=" << out.format << "\n"
                  << "precision=" << out.precision << "\n"
                  << "seed=" << seed << "\n"
                  << "ncut=" << n_cut << "\n"
                  << "out=" << out.out_path << "\n";
        return 0;
    }

    try {
        if (discord->parsed()) return run_discord(dargs, out);
        if (sweep->parsed()) return run_sweep(sargs, out);
        if (classify->parsed()) return run_classify(cx, cy, out);
        if (robust->parsed()) return run_robustness(rargs, out);
        if (verify->parsed()) return run_verify(suite, seed, samples, n_cut, out);
        std::cerr << app.help();
        return 2;
    } catch (const qcorr::Error& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 2;
    }
}
