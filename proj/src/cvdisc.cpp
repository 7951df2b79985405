#include "cv2design/cvdisc.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "cv2design/rng.hpp"

namespace cv2design {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DiscretizationConfig::DiscretizationConfig(int dim, IndexConvention conv)
    : d(dim), convention(conv) {
    if (d < 2) {
        throw DimensionError("DiscretizationConfig: d must be at least 2");
    }
    const bool even = (d % 2 == 0);
    if (even && convention != IndexConvention::EvenCentered) {
        throw ParityError("DiscretizationConfig: even d needs EvenCentered");
    }
    if (!even && convention != IndexConvention::OddCentered) {
        throw ParityError("DiscretizationConfig: odd d needs OddCentered");
    }
}

DiscretizationConfig DiscretizationConfig::for_dimension(int dim) {
    return DiscretizationConfig(dim, dim % 2 == 0
                                         ? IndexConvention::EvenCentered
                                         : IndexConvention::OddCentered);
}

double DiscretizationConfig::delta() const { return std::sqrt(2.0 * kPi / d); }

double DiscretizationConfig::q_max() const { return 0.5 * d * delta(); }

int DiscretizationConfig::label_min() const {
    return convention == IndexConvention::EvenCentered ? -d / 2 : -(d - 1) / 2;
}

int DiscretizationConfig::wrap_label(long long value) const {
    const long long off = value - label_min();
    return label_min() + int(((off % d) + d) % d);
}

double DiscretizationConfig::box_lo(int lab) const {
    return convention == IndexConvention::EvenCentered
               ? lab * delta()
               : (lab - 0.5) * delta();
}

// --- quadrature -------------------------------------------------------------

namespace {

Complex simpson(const std::function<Complex(double)>& f, double a, Complex fa,
                double b, Complex fb, double m, Complex fm) {
    (void)m;
    (void)f;
    return (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
}

Complex adapt(const std::function<Complex(double)>& f, double a, Complex fa,
              double b, Complex fb, double m, Complex fm, Complex whole,
              double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const Complex flm = f(lm), frm = f(rm);
    const Complex left = simpson(f, a, fa, m, fm, lm, flm);
    const Complex right = simpson(f, m, fm, b, fb, rm, frm);
    const Complex delta = left + right - whole;
    // Width floor: a jump discontinuity never satisfies the error estimate
    // (both sides shrink at the same rate), so once the enclosing interval
    // is down to 1e-12 its possible contribution is below every tolerance
    // used here and the estimate is accepted.
    if (std::abs(delta) <= 15.0 * tol || b - a <= 1e-12) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw NumericalError("integrate: adaptive Simpson did not converge");
    }
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  double tol) {
    if (!(b > a)) {
        if (a == b) return 0.0;
        throw ParameterError("integrate: requires a < b");
    }
    // Fixed top-level panels before adapting: a narrow feature far from the
    // five initial probe points (e.g. an odd state on a wide window) would
    // otherwise satisfy the error estimate with all probes at zero.
    const int panels = 16;
    const double h = (b - a) / panels;
    Complex acc = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h;
        const double hi = k + 1 == panels ? b : lo + h;
        const double m = 0.5 * (lo + hi);
        const Complex fa = f(lo), fb = f(hi), fm = f(m);
        const Complex whole = simpson(f, lo, fa, hi, fb, m, fm);
        acc += adapt(f, lo, fa, hi, fb, m, fm, whole, tol / panels, 48);
    }
    return acc;
}

namespace {

// one refinement-doubling step: the integral recomputed on the two halves
Complex integrate_halved(const std::function<Complex(double)>& f, double a,
                         double b, double tol) {
    const double m = 0.5 * (a + b);
    return integrate(f, a, m, 0.5 * tol) + integrate(f, m, b, 0.5 * tol);
}

Complex integrate_checked(const std::function<Complex(double)>& f, double a,
                          double b, double tol, double check_tol) {
    const Complex coarse = integrate(f, a, b, tol);
    const Complex fine = integrate_halved(f, a, b, tol);
    if (std::abs(coarse - fine) > check_tol) {
        throw NumericalError("integrate: refinement check failed");
    }
    return fine;
}

void check_normalized(const DiscretizationConfig& cfg, const Wavefunction& w) {
    const double pad = 6.0;
    const Complex n2 = integrate(
        [&](double q) { return Complex(std::norm(w.psi(q)), 0.0); },
        -cfg.q_max() - pad, cfg.q_max() + pad, 1e-9);
    if (std::abs(n2.real() - 1.0) > 1e-6) {
        throw ParameterError("discretize: wavefunction '" + w.label +
                             "' is not normalised");
    }
}

}  // namespace

// --- test states ------------------------------------------------------------

namespace {

double hermite(int n, double q) {
    double h0 = 1.0, h1 = 2.0 * q;
    if (n == 0) return h0;
    for (int k = 1; k < n; ++k) {
        const double h2 = 2.0 * q * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

Wavefunction fock_state(int n) {
    if (n < 0 || n > 4) {
        throw ParameterError("fock_state: only n in [0, 4] is supported");
    }
    const double norm =
        1.0 / std::sqrt(std::pow(2.0, n) * factorial(n) * std::sqrt(kPi));
    return Wavefunction{
        [n, norm](double q) {
            return Complex(norm * hermite(n, q) * std::exp(-0.5 * q * q), 0.0);
        },
        n + 0.5, "fock" + std::to_string(n)};
}

Wavefunction vacuum_state() {
    Wavefunction w = fock_state(0);
    w.label = "vacuum";
    return w;
}

Wavefunction coherent_state(Complex alpha) {
    const double q0 = std::sqrt(2.0) * alpha.real();
    const double p0 = std::sqrt(2.0) * alpha.imag();
    const double norm = std::pow(kPi, -0.25);
    return Wavefunction{
        [q0, p0, norm](double q) {
            const double x = q - q0;
            return norm * std::exp(-0.5 * x * x) *
                   std::exp(Complex(0.0, p0 * q - 0.5 * p0 * q0));
        },
        0.5 + p0 * p0,
        "coherent(" + std::to_string(alpha.real()) + "," +
            std::to_string(alpha.imag()) + ")"};
}

// --- quadrature operators ----------------------------------------------------

QuadratureOperators quadrature_operators(const DiscretizationConfig& cfg) {
    const int d = cfg.d;
    QuadratureOperators ops;
    ops.q_op = ComplexMatrix::Zero(d, d);
    for (int p = 0; p < d; ++p) ops.q_op(p, p) = double(cfg.label(p));
    ops.dft = ComplexMatrix(d, d);
    const double s = 1.0 / std::sqrt(double(d));
    for (int jp = 0; jp < d; ++jp) {
        for (int kp = 0; kp < d; ++kp) {
            const double ph =
                2.0 * kPi * double(cfg.label(kp)) * double(cfg.label(jp)) / d;
            ops.dft(jp, kp) = s * Complex(std::cos(ph), std::sin(ph));
        }
    }
    ComplexMatrix p = ops.dft * ops.q_op * ops.dft.adjoint();
    ops.p_op = 0.5 * (p + p.adjoint().eval());  // exact hermitisation
    return ops;
}

// --- discretisation ----------------------------------------------------------

PureDiscretization discretize_pure(const DiscretizationConfig& cfg,
                                   const Wavefunction& psi) {
    check_normalized(cfg, psi);
    const double dl = cfg.delta();
    const double inv_sqrt = 1.0 / std::sqrt(dl);
    PureDiscretization out;
    out.amplitudes = ComplexVector(cfg.d);
    for (int p = 0; p < cfg.d; ++p) {
        const double lo = cfg.box_lo(cfg.label(p));
        out.amplitudes[p] =
            inv_sqrt * integrate_checked(psi.psi, lo, lo + dl, 1e-10, 1e-8);
    }
    out.survival = out.amplitudes.squaredNorm();
    return out;
}

ComplexVector PureDiscretization::normalized() const {
    if (survival <= 0.0) {
        throw WindowError("PureDiscretization: no mass inside the window");
    }
    return amplitudes / std::sqrt(survival);
}

DensityDiscretization discretize_density(
    const DiscretizationConfig& cfg,
    const std::function<Complex(double, double)>& kernel) {
    // spot-check Hermiticity of the kernel on a fixed pseudo-random set
    CounterRng rng(0x6b65726eULL, 0);
    for (int k = 0; k < 8; ++k) {
        const double q = (2.0 * rng.next_double() - 1.0) * cfg.q_max();
        const double qp = (2.0 * rng.next_double() - 1.0) * cfg.q_max();
        if (std::abs(kernel(q, qp) - std::conj(kernel(qp, q))) > 1e-8) {
            throw ParameterError("discretize_density: kernel not Hermitian");
        }
    }
    const int d = cfg.d;
    const double dl = cfg.delta();
    ComplexMatrix rho(d, d);
    for (int i = 0; i < d; ++i) {
        const double alo = cfg.box_lo(cfg.label(i));
        // diagonal and upper triangle by iterated adaptive quadrature
        for (int j = i; j < d; ++j) {
            const double blo = cfg.box_lo(cfg.label(j));
            const Complex v =
                integrate(
                    [&](double q) {
                        return integrate(
                            [&](double qp) { return kernel(q, qp); }, blo,
                            blo + dl, 1e-11);
                    },
                    alo, alo + dl, 1e-10) /
                dl;
            rho(i, j) = v;
            rho(j, i) = std::conj(v);
        }
    }
    DensityDiscretization out;
    out.trace_before = rho.trace().real();
    if (out.trace_before < 1e-6) {
        throw WindowError(
            "discretize_density: kernel mass inside the window is below 1e-6");
    }
    out.rho = rho / out.trace_before;
    return out;
}

double discretization_error_bound(const DiscretizationConfig& cfg,
                                  double mean_psq) {
    if (mean_psq < 0.0) {
        throw ParameterError("discretization_error_bound: mean_psq < 0");
    }
    return std::sqrt(2.0 / kPi * mean_psq / cfg.d);
}

double discretization_error_bound_photon(int d, double nbar) {
    if (d < 2) throw DimensionError("discretization_error_bound_photon: d < 2");
    if (nbar < 0.0) {
        throw ParameterError("discretization_error_bound_photon: nbar < 0");
    }
    return std::sqrt(4.0 / kPi * (nbar + 0.5) / d);
}

// --- fine-grid surrogate ------------------------------------------------------

namespace {

struct FineAmplitudes {
    ComplexVector fine;   // refine*d sub-box amplitudes
    double drift = 0.0;   // max refinement-doubling deviation
};

FineAmplitudes fine_amplitudes(const DiscretizationConfig& cfg,
                               const Wavefunction& psi, int refine) {
    if (refine < 2) throw ParameterError("surrogate: refine must be >= 2");
    const double df = cfg.delta() / refine;
    const double inv_sqrt = 1.0 / std::sqrt(df);
    const double lo0 = cfg.box_lo(cfg.label(0));
    FineAmplitudes out;
    out.fine = ComplexVector(Eigen::Index(cfg.d) * refine);
    for (Eigen::Index m = 0; m < out.fine.size(); ++m) {
        const double lo = lo0 + double(m) * df;
        const Complex a = integrate(psi.psi, lo, lo + df, 1e-10);
        const Complex b = integrate_halved(psi.psi, lo, lo + df, 1e-10);
        out.fine[m] = inv_sqrt * b;
        out.drift = std::max(out.drift, std::abs(a - b) * inv_sqrt);
    }
    return out;
}

// coarse amplitudes reconstructed exactly from the fine ones:
// c_i = refine^{-1/2} * sum of the refine sub-box amplitudes
ComplexVector coarse_from_fine(const ComplexVector& fine, int refine) {
    ComplexVector coarse(fine.size() / refine);
    const double s = 1.0 / std::sqrt(double(refine));
    for (Eigen::Index i = 0; i < coarse.size(); ++i) {
        coarse[i] = s * fine.segment(i * refine, refine).sum();
    }
    return coarse;
}

// the coarse state embedded in the fine basis (uniform across each box)
ComplexVector embed_coarse(const ComplexVector& coarse, int refine) {
    ComplexVector out(coarse.size() * refine);
    const double s = 1.0 / std::sqrt(double(refine));
    for (Eigen::Index i = 0; i < coarse.size(); ++i) {
        for (int k = 0; k < refine; ++k) out[i * refine + k] = s * coarse[i];
    }
    return out;
}

}  // namespace

SurrogateDistance surrogate_trace_distance(const DiscretizationConfig& cfg,
                                           const Wavefunction& psi,
                                           int refine) {
    check_normalized(cfg, psi);
    const FineAmplitudes fa = fine_amplitudes(cfg, psi, refine);
    const ComplexVector coarse = coarse_from_fine(fa.fine, refine);
    SurrogateDistance out;
    out.quad_drift = fa.drift;
    out.survival_fine = fa.fine.squaredNorm();
    out.survival_coarse = coarse.squaredNorm();
    if (out.survival_coarse <= 0.0 || out.survival_fine <= 0.0) {
        throw WindowError("surrogate_trace_distance: no mass in the window");
    }
    const ComplexVector emb = embed_coarse(coarse, refine);
    const double ovl = std::abs(fa.fine.dot(emb)) /
                       std::sqrt(out.survival_fine * out.survival_coarse);
    out.distance = std::sqrt(std::max(0.0, 1.0 - ovl * ovl));
    return out;
}

SurrogateDistance surrogate_trace_distance_mixture(
    const DiscretizationConfig& cfg,
    const std::vector<std::pair<double, Wavefunction>>& mixture, int refine) {
    if (mixture.empty()) {
        throw ParameterError("surrogate mixture: empty mixture");
    }
    const Eigen::Index nf = Eigen::Index(cfg.d) * refine;
    ComplexMatrix rho_f = ComplexMatrix::Zero(nf, nf);
    ComplexMatrix rho_c = ComplexMatrix::Zero(nf, nf);
    SurrogateDistance out;
    double wsum = 0.0;
    for (const auto& [w, psi] : mixture) {
        if (w < 0.0) throw ParameterError("surrogate mixture: negative weight");
        wsum += w;
        const FineAmplitudes fa = fine_amplitudes(cfg, psi, refine);
        out.quad_drift = std::max(out.quad_drift, fa.drift);
        const ComplexVector emb =
            embed_coarse(coarse_from_fine(fa.fine, refine), refine);
        rho_f += w * (fa.fine * fa.fine.adjoint());
        rho_c += w * (emb * emb.adjoint());
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
        throw ParameterError("surrogate mixture: weights must sum to 1");
    }
    out.survival_fine = rho_f.trace().real();
    out.survival_coarse = rho_c.trace().real();
    if (out.survival_coarse < 1e-6 || out.survival_fine < 1e-6) {
        throw WindowError("surrogate mixture: no mass in the window");
    }
    const ComplexMatrix diff =
        rho_c / out.survival_coarse - rho_f / out.survival_fine;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(diff,
                                                    Eigen::EigenvaluesOnly);
    out.distance = 0.5 * es.eigenvalues().cwiseAbs().sum();
    return out;
}

// --- staircase profile ---------------------------------------------------------

StaircaseProfile staircase_profile(const DiscretizationConfig& cfg,
                                   double alpha, double beta,
                                   int samples_per_box, int fit_degree) {
    if (samples_per_box < 1) {
        throw ParameterError("staircase_profile: samples_per_box < 1");
    }
    StaircaseProfile out;
    const double dl = cfg.delta();
    const double step = dl / samples_per_box;
    out.q.reserve(size_t(cfg.d) * samples_per_box);
    out.phase.reserve(out.q.capacity());
    for (int p = 0; p < cfg.d; ++p) {
        const int i = cfg.label(p);
        const double phase =
            2.0 * kPi * (alpha * i + beta * double(i) * i) / cfg.d;
        const double lo = cfg.box_lo(i);
        for (int s = 0; s < samples_per_box; ++s) {
            out.q.push_back(lo + (s + 0.5) * step);
            out.phase.push_back(phase);
        }
    }
    if (fit_degree < 0) return out;
    const int n = int(out.q.size());
    if (fit_degree + 1 > n) {
        throw ParameterError("staircase_profile: fit degree exceeds sample count");
    }
    // least squares in the scaled variable q/q_max for conditioning
    Eigen::MatrixXd v(n, fit_degree + 1);
    Eigen::VectorXd y(n);
    for (int r = 0; r < n; ++r) {
        const double t = out.q[size_t(r)] / cfg.q_max();
        double tp = 1.0;
        for (int c = 0; c <= fit_degree; ++c) {
            v(r, c) = tp;
            tp *= t;
        }
        y[r] = out.phase[size_t(r)];
    }
    const Eigen::VectorXd coef = v.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd fitted = v * coef;
    out.fit.resize(size_t(n));
    for (int r = 0; r < n; ++r) {
        out.fit[size_t(r)] = fitted[r];
        out.max_fit_deviation =
            std::max(out.max_fit_deviation, std::abs(fitted[r] - y[r]));
    }
    return out;
}

}  // namespace cv2design
