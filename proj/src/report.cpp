#include "cv2design/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <sys/wait.h>

#include "cv2design/cvdisc.hpp"
#include "cv2design/design.hpp"
#include "cv2design/matrix_io.hpp"
#include "cv2design/rng.hpp"
#include "cv2design/ue.hpp"

namespace cv2design {

namespace {

namespace fs = std::filesystem;

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols,
                            CounterRng& rng) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = Complex(2.0 * rng.next_double() - 1.0,
                              2.0 * rng.next_double() - 1.0);
        }
    }
    return m;
}

double max_abs(const ComplexMatrix& x) { return x.cwiseAbs().maxCoeff(); }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CriterionResult timed(int id, const std::string& name,
                      const std::function<std::pair<bool, std::string>()>& fn) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto [pass, detail] = fn();
        r.pass = pass;
        r.detail = detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    return r;
}

// --- 1: norm bound on the complement ----------------------------------------

std::pair<bool, std::string> check_norm_grid() {
    double worst_margin = -1e300;  // max over grid of norm - bound
    double worst_gap = 0.0;        // max |brute - structured|
    bool ok = true;
    for (int d = 2; d <= 6; ++d) {
        const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
        for (int ell = 1; ell <= 3; ++ell) {
            const TwirlReport rb =
                design_norm(cfg, ell, NormMethod::BruteForce);
            const TwirlReport rs =
                design_norm(cfg, ell, NormMethod::RankStructured);
            const double bound = std::pow(double(d), -double(ell));
            worst_margin = std::max(
                {worst_margin, rb.norm_2to2_on_k - bound,
                 rs.norm_2to2_on_k - bound});
            const double gap =
                std::abs(rb.norm_2to2_on_k - rs.norm_2to2_on_k);
            worst_gap = std::max(worst_gap, gap);
            ok = ok && rb.norm_2to2_on_k <= bound + 1e-10 &&
                 rs.norm_2to2_on_k <= bound + 1e-10 && gap <= 1e-9;
        }
    }
    return {ok, "grid d=2..6, ell=1..3: max(norm - d^-ell) = " +
                    fmt(worst_margin) + " (tol 1e-10), max method gap = " +
                    fmt(worst_gap) + " (tol 1e-9)"};
}

// --- 2: closed form vs composition -------------------------------------------

std::pair<bool, std::string> check_closed_form() {
    double unit_err = 0.0;
    for (int d : {3, 4}) {
        const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
        const Eigen::Index n = Eigen::Index(d) * d;
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                ComplexMatrix x = ComplexMatrix::Zero(n, n);
                x(r, c) = 1.0;
                ComplexMatrix composed =
                    dephasing_twirl_two_copy(cfg, Basis::Q, x);
                composed = dephasing_twirl_two_copy(cfg, Basis::P, composed);
                composed = dephasing_twirl_two_copy(cfg, Basis::Q, composed);
                unit_err =
                    std::max(unit_err, max_abs(twirl_round(cfg, x) - composed));
            }
        }
    }

    const DiscretizationConfig cfg4 = DiscretizationConfig::for_dimension(4);
    CounterRng rng(0xc2ULL, 0);
    double power_rel = 0.0;
    for (int k = 0; k < 50; ++k) {
        const ComplexMatrix x = random_matrix(16, 16, rng);
        const ComplexMatrix in_k = decompose_commutant(x, 4).complement;
        ComplexMatrix iter = in_k;
        for (int ell = 1; ell <= 4; ++ell) {
            iter = twirl_round(cfg4, iter);
            const TwirlRoundPower p = twirl_round_power(cfg4, in_k, ell);
            power_rel = std::max(
                power_rel, (p.value - iter).norm() / in_k.norm());
        }
    }
    const bool ok = unit_err <= 1e-10 && power_rel <= 1e-12;
    return {ok, "units d=3,4: max |closed - composed| = " + fmt(unit_err) +
                    " (tol 1e-10); powers ell<=4: max rel err = " +
                    fmt(power_rel) + " (tol 1e-12)"};
}

// --- 3: invariance ------------------------------------------------------------

std::pair<bool, std::string> check_invariance() {
    double fix_err = 0.0;
    double trace_err = 0.0;
    CounterRng rng(0xc3ULL, 0);
    for (int d = 2; d <= 6; ++d) {
        const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
        const ComplexMatrix eye = pair_identity(d);
        const ComplexMatrix swp = pair_swap(d);
        fix_err = std::max(fix_err, max_abs(twirl_round(cfg, eye) - eye));
        fix_err = std::max(fix_err, max_abs(twirl_round(cfg, swp) - swp));
        for (int k = 0; k < 20; ++k) {
            const ComplexMatrix x =
                random_matrix(Eigen::Index(d) * d, Eigen::Index(d) * d, rng);
            const ComplexMatrix rx = twirl_round(cfg, x);
            trace_err =
                std::max(trace_err, std::abs(rx.trace() - x.trace()));
            trace_err = std::max(
                trace_err, std::abs(hs_inner(swp, rx) - hs_inner(swp, x)));
        }
    }
    const bool ok = fix_err <= 1e-12 && trace_err <= 1e-10;
    return {ok, "R(I)=I, R(F)=F: max err = " + fmt(fix_err) +
                    " (tol 1e-12); trace/swap-trace drift on 100 inputs = " +
                    fmt(trace_err) + " (tol 1e-10)"};
}

// --- 4: Monte-Carlo consistency ------------------------------------------------

std::pair<bool, std::string> check_monte_carlo() {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(4);
    CounterRng xrng(0x7731ULL, 0);
    const ComplexMatrix x = random_matrix(16, 16, xrng);
    const ComplexMatrix exact = dephasing_twirl_two_copy(cfg, Basis::Q, x);
    const double xnorm = x.norm();

    const std::int64_t sizes[4] = {100, 1000, 10000, 100000};
    double mean_err[4] = {0, 0, 0, 0};
    int final_pass = 0;
    for (int seed = 0; seed < 10; ++seed) {
        for (int i = 0; i < 4; ++i) {
            const ComplexMatrix est = sampled_twirl_two_copy(
                cfg, TwirlFamily::QOnly, x, sizes[i], 1000 + seed);
            const double err = (est - exact).norm();
            mean_err[i] += err / 10.0;
            if (i == 3 && err <= 5.0 * xnorm / std::sqrt(double(sizes[i]))) {
                ++final_pass;
            }
        }
    }
    // least-squares slope of log10(mean err) vs log10(n)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 4; ++i) {
        const double lx = std::log10(double(sizes[i]));
        const double ly = std::log10(mean_err[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (4.0 * sxy - sx * sy) / (4.0 * sxx - sx * sx);
    const bool ok = final_pass >= 9 && std::abs(slope + 0.5) <= 0.15;
    return {ok, "n=1e5 error <= 5||X||/sqrt(n) on " + std::to_string(final_pass) +
                    "/10 seeds (need >= 9); log-log slope = " + fmt(slope) +
                    " (want -0.5 +- 0.15)"};
}

// --- 5: integer-parameter variant ----------------------------------------------

std::pair<bool, std::string> check_prime_variant() {
    double prime_err = 0.0;
    CounterRng rng(0xc5ULL, 0);
    for (int d : {3, 5, 7}) {
        const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
        const Eigen::Index n = Eigen::Index(d) * d;
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                ComplexMatrix x = ComplexMatrix::Zero(n, n);
                x(r, c) = 1.0;
                prime_err = std::max(
                    prime_err,
                    max_abs(discrete_double_twirl(cfg, Basis::Q, x) -
                            dephasing_twirl_two_copy(cfg, Basis::Q, x)));
            }
        }
        for (int k = 0; k < 3; ++k) {
            const ComplexMatrix x = random_matrix(n, n, rng);
            prime_err = std::max(
                prime_err, max_abs(discrete_double_twirl(cfg, Basis::P, x) -
                                   dephasing_twirl_two_copy(cfg, Basis::P, x)));
        }
    }

    // d = 6: position pair (0,5),(2,3) satisfies the mod-6 constraints but
    // not the integer ones, so the discrete twirl keeps it and the
    // continuous twirl kills it
    const DiscretizationConfig cfg6 = DiscretizationConfig::for_dimension(6);
    ComplexMatrix x6 = ComplexMatrix::Zero(36, 36);
    x6(0 * 6 + 5, 2 * 6 + 3) = 1.0;
    const Complex kept =
        discrete_double_twirl(cfg6, Basis::Q, x6, true)(5, 15);
    const Complex killed = dephasing_twirl_two_copy(cfg6, Basis::Q, x6)(5, 15);
    bool gated = false;
    try {
        discrete_double_twirl(cfg6, Basis::Q, x6);
    } catch (const PrimalityError&) {
        gated = true;
    }

    const bool ok = prime_err <= 1e-12 && std::abs(kept - 1.0) == 0.0 &&
                    std::abs(killed) == 0.0 && gated;
    return {ok, "d=3,5,7: max |discrete - continuous| = " + fmt(prime_err) +
                    " (tol 1e-12); d=6 counterexample coefficient = " +
                    fmt(kept.real()) + " (continuous " + fmt(std::abs(killed)) +
                    "), composite gate " + (gated ? "enforced" : "MISSING")};
}

// --- 6: discretisation error bound ---------------------------------------------

std::pair<bool, std::string> check_discretisation() {
    struct Case {
        Wavefunction psi;
        int d;
    };
    const std::vector<Case> cases = {
        {vacuum_state(), 32},          {vacuum_state(), 64},
        {fock_state(1), 32},           {fock_state(1), 64},
        {coherent_state(Complex(1.0, 0.0)), 32},
        {coherent_state(Complex(1.0, 0.0)), 64},
    };
    bool ok = true;
    double worst_ratio = 0.0;  // distance / bound, want < 1
    double worst_mass = 0.0;   // (1 - survival) / box bound, want < 1
    double worst_drift = 0.0;
    std::string worst_tag;
    for (const Case& c : cases) {
        const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(c.d);
        const double psq = c.psi.mean_psq.value();
        const PureDiscretization pd = discretize_pure(cfg, c.psi);
        const SurrogateDistance sd = surrogate_trace_distance(cfg, c.psi, 16);
        const double bound = discretization_error_bound(cfg, psq);
        const double mass_bound =
            cfg.delta() * cfg.delta() / (M_PI * M_PI) * psq;
        const double ratio = sd.distance / bound;
        const double mass_ratio = (1.0 - pd.survival) / mass_bound;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_tag = c.psi.label + " d=" + std::to_string(c.d);
        }
        worst_mass = std::max(worst_mass, mass_ratio);
        worst_drift = std::max(worst_drift, sd.quad_drift);
        ok = ok && sd.distance <= bound && mass_ratio <= 1.0 &&
             sd.quad_drift <= 1e-6;
    }
    return {ok, "6 state/d cases: worst distance/bound = " + fmt(worst_ratio) +
                    " (" + worst_tag + "), worst (1-survival)/bound = " +
                    fmt(worst_mass) + ", max quadrature drift = " +
                    fmt(worst_drift) + " (tol 1e-6)"};
}

// --- 7: encryption round-trips ---------------------------------------------------

std::pair<bool, std::string> check_round_trips() {
    const QecmScheme scheme = QecmScheme::standard(8, 2);
    int correct = 0;
    double min_conf = 1.0;
    for (int s = 0; s < 100; ++s) {
        const QecmKey key = scheme.sample_key(std::uint64_t(s));
        const int x = s % 2;
        const DecryptionResult dec =
            scheme.decrypt(scheme.encrypt(x, key), key);
        min_conf = std::min(min_conf, dec.confidence);
        if (dec.plaintext == x && dec.confidence >= 1.0 - 1e-9) ++correct;
    }
    return {correct == 100,
            "d=8, ell=2: " + std::to_string(correct) +
                "/100 round-trips recovered, min confidence = " +
                fmt(min_conf) + " (need >= 1 - 1e-9)"};
}

// --- 8: key-averaged ciphertext ---------------------------------------------------

std::pair<bool, std::string> check_key_average() {
    const int d = 8;
    const ComplexMatrix mixed =
        ComplexMatrix::Identity(d, d) / double(d);
    double exact_err = 0.0;
    for (int ell : {1, 2}) {
        const QecmScheme scheme = QecmScheme::standard(d, ell);
        for (int x : {0, 1}) {
            exact_err = std::max(
                exact_err, max_abs(scheme.averaged_ciphertext_exact(x) - mixed));
        }
    }
    const std::int64_t n = 10000;
    const double mc_tol = 5.0 / std::sqrt(double(n));
    const double mc1 = (QecmScheme::standard(d, 1).averaged_ciphertext_mc(
                            0, n, 2026) -
                        mixed)
                           .norm();
    const double mc2 = (QecmScheme::standard(d, 2).averaged_ciphertext_mc(
                            1, n, 2027) -
                        mixed)
                           .norm();
    const bool ok =
        exact_err <= 1e-12 && mc1 <= mc_tol && mc2 <= mc_tol;
    return {ok, "exact average vs I/d (ell=1,2; x=0,1): max err = " +
                    fmt(exact_err) + " (tol 1e-12); MC n=1e4 errors " +
                    fmt(mc1) + ", " + fmt(mc2) + " (tol " + fmt(mc_tol) + ")"};
}

// --- 9: security bound formula -----------------------------------------------------

std::pair<bool, std::string> check_delta_formula() {
    const int d = 1 << 20;
    const double anchor5 = 0.72480937605257276;
    const double anchor8 = 0.32414460711655218;
    const double rel5 =
        std::abs(security_delta(d, 5).value / anchor5 - 1.0);
    const double rel8 =
        std::abs(security_delta(d, 8).value / anchor8 - 1.0);
    bool decreasing = true;
    double prev = security_delta(d, 1).value;
    for (int ell = 2; ell <= 8; ++ell) {
        const double cur = security_delta(d, ell).value;
        decreasing = decreasing && cur < prev;
        prev = cur;
    }
    const bool flags = security_delta(d, 4).small_ell &&
                       !security_delta(d, 5).small_ell;
    const bool ok = rel5 <= 1e-12 && rel8 <= 1e-12 && decreasing && flags;
    return {ok, "d=2^20 anchors: rel err " + fmt(rel5) + " (ell=5), " +
                    fmt(rel8) + " (ell=8), tol 1e-12; strictly decreasing on "
                    "ell=1..8: " +
                    (decreasing ? "yes" : "NO") + "; small-ell flag: " +
                    (flags ? "correct" : "WRONG")};
}

// --- 10: CLI determinism -------------------------------------------------------------

int run_cli(const std::string& cli, const std::string& args, int threads,
            const fs::path& out) {
    const std::string cmd = "CV2DESIGN_THREADS=" + std::to_string(threads) +
                            " '" + cli + "' " + args + " > '" + out.string() +
                            "' 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// file content with any line mentioning a timestamp removed
std::string stripped(const fs::path& p) {
    std::ifstream in(p);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.find("timestamp") != std::string::npos) continue;
        out += line;
        out += '\n';
    }
    return out;
}

std::pair<bool, std::string> check_determinism(const std::string& cli) {
    if (cli.empty() || !fs::exists(cli)) {
        return {false, "CLI binary not found at '" + cli + "'"};
    }
    std::string tmpl =
        (fs::temp_directory_path() / "cv2design-accept-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) {
        return {false, "could not create scratch directory"};
    }
    const fs::path tmp(tmpl);

    CounterRng rng(0xc10ULL, 0);
    save_matrix((tmp / "x.json").string(), random_matrix(9, 9, rng));

    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"design-verify", "design-verify --d 4 --ell 2 --method structured"},
        {"twirl", "twirl --family sandwich --samples 2048 --seed 5 --in '" +
                      (tmp / "x.json").string() + "'"},
        {"discretize", "discretize --state vacuum --d 32"},
        {"ue-demo", "ue-demo --d 8 --ell 2 --seed 7"},
        {"ue-attack", "ue-attack --d 4 --ell 1 --trials 4096 --seed 11"},
    };
    bool ok = true;
    std::string bad;
    for (const auto& [name, args] : cmds) {
        const fs::path a = tmp / (name + ".a"), b = tmp / (name + ".b"),
                       c = tmp / (name + ".c");
        const int ra = run_cli(cli, args, 1, a);
        const int rb = run_cli(cli, args, 1, b);
        const int rc = run_cli(cli, args, 4, c);
        const bool same = ra == 0 && rb == 0 && rc == 0 &&
                          stripped(a) == stripped(b) &&
                          stripped(a) == stripped(c);
        if (!same) {
            ok = false;
            bad += (bad.empty() ? "" : ", ") + name;
        }
    }
    fs::remove_all(tmp);
    return {ok, ok ? "5 commands byte-identical across reruns and thread "
                     "counts {1,4} (timestamp excluded)"
                   : "mismatch or failure in: " + bad};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& cli_path) {
    std::vector<CriterionResult> out;
    out.push_back(timed(1, "design norm bounded by d^-ell", check_norm_grid));
    out.push_back(timed(2, "closed form matches twirl composition",
                        check_closed_form));
    out.push_back(timed(3, "identity/swap fixed, traces preserved",
                        check_invariance));
    out.push_back(
        timed(4, "Monte-Carlo twirl converges at 1/sqrt(n)", check_monte_carlo));
    out.push_back(timed(5, "integer variant exact for odd primes",
                        check_prime_variant));
    out.push_back(timed(6, "box discretisation within error bound",
                        check_discretisation));
    out.push_back(
        timed(7, "encrypt/decrypt round-trips", check_round_trips));
    out.push_back(
        timed(8, "key-averaged ciphertext is maximally mixed", check_key_average));
    out.push_back(
        timed(9, "security bound anchors and monotonicity", check_delta_formula));
    out.push_back(timed(10, "CLI output deterministic",
                        [&] { return check_determinism(cli_path); }));

    // runtime caps that are part of the acceptance statement
    for (CriterionResult& r : out) {
        double cap = 0.0;
        if (r.id == 1) cap = 120.0;
        if (r.id == 4) cap = 180.0;
        if (r.id == 6) cap = 60.0;
        if (cap > 0.0 && r.seconds > cap) {
            r.pass = false;
            r.detail += "; runtime " + fmt(r.seconds) + "s exceeds cap " +
                        fmt(cap) + "s";
        }
    }
    return out;
}

}  // namespace cv2design
