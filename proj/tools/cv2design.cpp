// cv2design: numerical experiments on the boxed-unitary approximate 2-design
// and the one-bit encryption scheme built on it.  Single binary, subcommand
// style; JSON/CSV on standard output, machine-readable errors on standard
// error.  Exit codes: 0 success, 1 acceptance failure, 2 usage error,
// 3 numerical error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cv2design/cvdisc.hpp"
#include "cv2design/design.hpp"
#include "cv2design/matrix_io.hpp"
#include "cv2design/report.hpp"
#include "cv2design/ue.hpp"
#include "cv2design/version.hpp"

namespace {

using nlohmann::json;
using namespace cv2design;

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

double finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw NumericalError(std::string(what) + ": non-finite value");
    }
    return v;
}

json make_header(const std::string& command, std::uint64_t seed,
                 json config) {
    json h;
    h["command"] = command;
    h["version"] = kVersion;
    h["seed"] = seed;
    h["config"] = std::move(config);
    h["timestamp"] = iso_timestamp();
    return h;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json delta_field(int d, int ell) {
    if (d < 4 || ell < 1) return nullptr;
    const SecurityDelta delta = security_delta(d, ell);
    json j;
    j["value"] = finite(delta.value, "delta_bound");
    j["small_ell"] = delta.small_ell;
    j["log_base"] = delta.log_base;
    return j;
}

int run_design_verify(int d, int ell, const std::string& method,
                      bool allow_large) {
    const NormMethod nm = method == "brute" ? NormMethod::BruteForce
                                            : NormMethod::RankStructured;
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
    const TwirlReport rep = design_norm(cfg, ell, nm, allow_large);
    json out;
    out["header"] = make_header(
        "design-verify", 0,
        json{{"d", d},
             {"ell", ell},
             {"method", method},
             {"allow_large", allow_large}});
    out["d"] = rep.d;
    out["ell"] = rep.ell;
    out["method"] = method;
    out["norm_2to2_on_K"] = finite(rep.norm_2to2_on_k, "norm");
    out["bound"] = finite(rep.bound, "bound");
    out["within_bound"] = rep.norm_2to2_on_k <= rep.bound + 1e-10;
    if (rep.residual_vs_oracle) {
        out["residual_vs_oracle"] =
            finite(*rep.residual_vs_oracle, "residual");
    }
    emit(out);
    return 0;
}

int run_twirl(const std::string& family, std::int64_t samples,
              std::uint64_t seed, const std::string& in_path,
              const std::string& out_path) {
    const ComplexMatrix x = load_matrix(in_path);
    const Eigen::Index n = x.rows();
    const int d = int(std::llround(std::sqrt(double(n))));
    if (x.cols() != n || Eigen::Index(d) * d != n || d < 2) {
        throw ParameterError(
            "twirl: input must be a d^2 x d^2 matrix with d >= 2");
    }
    const TwirlFamily tf = family == "q"   ? TwirlFamily::QOnly
                           : family == "p" ? TwirlFamily::POnly
                                           : TwirlFamily::Sandwich;
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
    const ComplexMatrix avg = sampled_twirl_two_copy(cfg, tf, x, samples, seed);
    json out;
    out["header"] = make_header("twirl", seed,
                                json{{"d", d},
                                     {"family", family},
                                     {"samples", samples},
                                     {"in", in_path}});
    out["result"] = matrix_to_json(avg);
    emit(out);
    if (!out_path.empty()) save_matrix(out_path, avg);
    return 0;
}

int run_discretize(const std::string& state, int d, double alpha_re,
                   double alpha_im, const std::string& out_path,
                   const std::string& sidecar_path) {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
    ComplexMatrix rho;
    double survival = 0.0, mean_psq = 0.0, measured = 0.0, drift = 0.0;
    if (state == "mix01") {
        const Wavefunction f0 = vacuum_state();
        const Wavefunction f1 = fock_state(1);
        const DensityDiscretization dd = discretize_density(
            cfg, [&](double q, double qp) {
                return 0.5 * f0.psi(q) * std::conj(f0.psi(qp)) +
                       0.5 * f1.psi(q) * std::conj(f1.psi(qp));
            });
        rho = dd.rho;
        survival = dd.trace_before;
        mean_psq = 0.5 * f0.mean_psq.value() + 0.5 * f1.mean_psq.value();
        const SurrogateDistance sd =
            surrogate_trace_distance_mixture(cfg, {{0.5, f0}, {0.5, f1}});
        measured = sd.distance;
        drift = sd.quad_drift;
    } else {
        Wavefunction psi;
        if (state == "vacuum") {
            psi = vacuum_state();
        } else if (state == "coherent") {
            psi = coherent_state(Complex(alpha_re, alpha_im));
        } else {
            psi = fock_state(state.back() - '0');
        }
        const PureDiscretization pd = discretize_pure(cfg, psi);
        const ComplexVector v = pd.normalized();
        rho = v * v.adjoint();
        survival = pd.survival;
        mean_psq = psi.mean_psq.value();
        const SurrogateDistance sd = surrogate_trace_distance(cfg, psi);
        measured = sd.distance;
        drift = sd.quad_drift;
    }
    const double bound = discretization_error_bound(cfg, mean_psq);
    json sidecar;
    sidecar["survival"] = finite(survival, "survival");
    sidecar["bound"] = finite(bound, "bound");
    sidecar["measured_distance"] = finite(measured, "measured_distance");
    sidecar["quad_drift"] = finite(drift, "quad_drift");
    sidecar["within_bound"] = measured <= bound;

    json out;
    out["header"] = make_header("discretize", 0,
                                json{{"d", d},
                                     {"state", state},
                                     {"alpha_re", alpha_re},
                                     {"alpha_im", alpha_im}});
    out["matrix"] = matrix_to_json(rho);
    out["sidecar"] = sidecar;
    emit(out);
    if (!out_path.empty()) save_matrix(out_path, rho);
    if (!sidecar_path.empty()) {
        std::ofstream f(sidecar_path);
        f << sidecar.dump(2) << "\n";
    }
    return 0;
}

int run_profile(int d, double alpha, double beta, int samples_per_box,
                int fit_degree) {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
    const StaircaseProfile prof =
        staircase_profile(cfg, alpha, beta, samples_per_box, fit_degree);
    std::printf("# command: profile\n");
    std::printf("# version: %s\n", kVersion);
    std::printf("# config: d=%d alpha=%.17g beta=%.17g samples_per_box=%d"
                " fit_degree=%d\n",
                d, alpha, beta, samples_per_box, fit_degree);
    std::printf("# seed: 0\n");
    std::printf("# timestamp: %s\n", iso_timestamp().c_str());
    if (fit_degree >= 0) {
        std::printf("# max_fit_deviation: %.17g\n", prof.max_fit_deviation);
        std::printf("q,phase,fit\n");
        for (size_t i = 0; i < prof.q.size(); ++i) {
            std::printf("%.17g,%.17g,%.17g\n", prof.q[i], prof.phase[i],
                        prof.fit[i]);
        }
    } else {
        std::printf("q,phase\n");
        for (size_t i = 0; i < prof.q.size(); ++i) {
            std::printf("%.17g,%.17g\n", prof.q[i], prof.phase[i]);
        }
    }
    return 0;
}

int run_ue_demo(int d, int ell, std::uint64_t seed, int trials) {
    const QecmScheme scheme = QecmScheme::standard(d, ell);
    int correct = 0;
    double min_conf = 1.0;
    bool any_ambiguous = false;
    for (int t = 0; t < trials; ++t) {
        const QecmKey key = scheme.sample_key(seed, std::uint64_t(t));
        const int x = t % 2;
        const DecryptionResult dec =
            scheme.decrypt(scheme.encrypt(x, key), key);
        if (dec.plaintext == x) ++correct;
        min_conf = std::min(min_conf, dec.confidence);
        any_ambiguous = any_ambiguous || dec.ambiguous;
    }
    json out;
    out["header"] = make_header("ue-demo", seed,
                                json{{"d", d}, {"ell", ell}, {"trials", trials}});
    out["correct"] = correct;
    out["total"] = trials;
    out["min_confidence"] = finite(min_conf, "min_confidence");
    out["any_ambiguous"] = any_ambiguous;
    out["delta_bound"] = delta_field(d, ell);
    emit(out);
    return 0;
}

int run_ue_attack(int d, int ell, std::int64_t trials, std::uint64_t seed) {
    const QecmScheme scheme = QecmScheme::standard(d, ell);
    const MeasureResendResult res =
        scheme.simulate_measure_resend(trials, seed);
    json out;
    out["header"] = make_header("ue-attack", seed,
                                json{{"d", d}, {"ell", ell}, {"trials", trials}});
    out["win_probability"] = finite(res.win_probability, "win_probability");
    out["std_error"] = finite(res.std_error, "std_error");
    out["wins"] = res.wins;
    out["trials"] = res.trials;
    out["delta_bound"] = delta_field(d, ell);
    emit(out);
    return 0;
}

int run_report_all() {
    std::string self = "cv2design";
    std::error_code ec;
    const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) self = exe.string();
    std::printf("# command: report-all\n# version: %s\n# timestamp: %s\n\n",
                kVersion, iso_timestamp().c_str());
    const std::vector<CriterionResult> results = run_acceptance(self);
    std::printf("%-3s %-6s %8s  %s\n", "id", "status", "seconds", "criterion");
    bool all_pass = true;
    for (const CriterionResult& r : results) {
        std::printf("%-3d %-6s %8.2f  %s\n    %s\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.seconds, r.name.c_str(),
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("\nacceptance: %s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}

void print_error(const std::string& type, const std::string& message) {
    json err;
    err["error"] = json{{"type", type}, {"message", message}};
    std::cerr << err.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boxed-unitary approximate 2-design verification tool"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    int d = 4, ell = 1, spb = 4, fit_degree = -1, demo_trials = 100;
    std::int64_t samples = 1000, trials = 10000;
    std::uint64_t seed = 0;
    double alpha = 1.0, beta = 0.0, alpha_re = 1.0, alpha_im = 0.0;
    std::string method = "structured", family = "sandwich", state = "vacuum";
    std::string in_path, out_path, sidecar_path;
    bool allow_large = false;

    CLI::App* verify = app.add_subcommand(
        "design-verify", "norm of ell twirl rounds on the complement");
    verify->add_option("--d", d, "dimension")->required();
    verify->add_option("--ell", ell, "number of rounds")->required();
    verify->add_option("--method", method, "brute|structured")
        ->check(CLI::IsMember({"brute", "structured"}));
    verify->add_flag("--allow-large", allow_large,
                     "lift the d <= 6 brute-force resource guard");

    CLI::App* twirl = app.add_subcommand(
        "twirl", "Monte-Carlo two-copy parameter average of a matrix");
    twirl->add_option("--family", family, "q|p|sandwich")
        ->check(CLI::IsMember({"q", "p", "sandwich"}));
    twirl->add_option("--samples", samples, "number of samples");
    twirl->add_option("--seed", seed, "RNG seed");
    twirl->add_option("--in", in_path, "input matrix JSON")
        ->required()
        ->check(CLI::ExistingFile);
    twirl->add_option("--out", out_path, "also write the result here");

    CLI::App* disc = app.add_subcommand(
        "discretize", "project a CV state onto the box basis");
    disc->add_option("--state", state, "test state")
        ->check(CLI::IsMember(
            {"vacuum", "fock1", "fock2", "fock3", "fock4", "coherent",
             "mix01"}));
    disc->add_option("--d", d, "dimension")->required();
    disc->add_option("--alpha-re", alpha_re, "coherent amplitude, real part");
    disc->add_option("--alpha-im", alpha_im, "coherent amplitude, imag part");
    disc->add_option("--out", out_path, "write the density matrix here");
    disc->add_option("--sidecar", sidecar_path, "write the error report here");

    CLI::App* prof = app.add_subcommand(
        "profile", "staircase phase profile of a boxed unitary (CSV)");
    prof->add_option("--d", d, "dimension")->required();
    prof->add_option("--alpha", alpha, "linear phase parameter");
    prof->add_option("--beta", beta, "quadratic phase parameter");
    prof->add_option("--samples-per-box", spb, "grid points per box");
    prof->add_option("--fit-degree", fit_degree,
                     "polynomial fit degree (-1 = no fit)");

    CLI::App* demo = app.add_subcommand(
        "ue-demo", "encrypt/decrypt round-trips of the one-bit scheme");
    demo->add_option("--d", d, "dimension (even)")->required();
    demo->add_option("--ell", ell, "rounds per key")->required();
    demo->add_option("--seed", seed, "RNG seed");
    demo->add_option("--trials", demo_trials, "number of round-trips");

    CLI::App* attack = app.add_subcommand(
        "ue-attack", "intercept-and-resend attack simulation");
    attack->add_option("--d", d, "dimension (even)")->required();
    attack->add_option("--ell", ell, "rounds per key")->required();
    attack->add_option("--trials", trials, "number of trials");
    attack->add_option("--seed", seed, "RNG seed");

    app.add_subcommand("report-all",
                       "run the full desk-scale acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 2;
    }

    try {
        if (verify->parsed()) {
            return run_design_verify(d, ell, method, allow_large);
        }
        if (twirl->parsed()) {
            return run_twirl(family, samples, seed, in_path, out_path);
        }
        if (disc->parsed()) {
            return run_discretize(state, d, alpha_re, alpha_im, out_path,
                                  sidecar_path);
        }
        if (prof->parsed()) {
            return run_profile(d, alpha, beta, spb, fit_degree);
        }
        if (demo->parsed()) {
            return run_ue_demo(d, ell, seed, demo_trials);
        }
        if (attack->parsed()) {
            return run_ue_attack(d, ell, trials, seed);
        }
        return run_report_all();
    } catch (const ParameterError& e) {
        print_error("usage", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        print_error("usage", e.what());
        return 2;
    } catch (const NumericalError& e) {
        print_error("numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        print_error("numerical", e.what());
        return 3;
    }
}
