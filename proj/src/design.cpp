#include "cv2design/design.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "cv2design/mc.hpp"
#include "cv2design/rng.hpp"

namespace cv2design {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_pair_shape(const DiscretizationConfig& cfg,
                        const ComplexMatrix& x, const char* who) {
    const Eigen::Index n = Eigen::Index(cfg.d) * cfg.d;
    if (x.rows() != n || x.cols() != n) {
        throw DimensionError(std::string(who) + ": expected d^2 x d^2 input");
    }
}

void require_single_shape(const DiscretizationConfig& cfg,
                          const ComplexMatrix& x, const char* who) {
    if (x.rows() != cfg.d || x.cols() != cfg.d) {
        throw DimensionError(std::string(who) + ": expected d x d input");
    }
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int k = 2; k * k <= n; ++k) {
        if (n % k == 0) return false;
    }
    return true;
}

ComplexMatrix boxed_unitary(const DiscretizationConfig& cfg,
                            const BoxedUnitaryParams& params) {
    if (!std::isfinite(params.alpha) || !std::isfinite(params.beta)) {
        throw ParameterError("boxed_unitary: non-finite parameters");
    }
    if (params.mode == ParameterMode::IntegerModD) {
        if (!is_prime(cfg.d) || cfg.d == 2) {
            throw PrimalityError(
                "boxed_unitary: integer mode requires an odd prime d");
        }
        if (std::abs(params.alpha - std::round(params.alpha)) > 1e-9 ||
            std::abs(params.beta - std::round(params.beta)) > 1e-9) {
            throw ParameterError(
                "boxed_unitary: integer mode requires integer parameters");
        }
    }
    const int d = cfg.d;
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    for (int p = 0; p < d; ++p) {
        const double i = double(cfg.label(p));
        const double ph =
            2.0 * kPi * (params.alpha * i + params.beta * i * i) / d;
        diag(p, p) = Complex(std::cos(ph), std::sin(ph));
    }
    if (params.basis == Basis::Q) return diag;
    const ComplexMatrix f = quadrature_operators(cfg).dft;
    return f * diag * f.adjoint();
}

ComplexMatrix dephasing_twirl(const DiscretizationConfig& cfg, Basis basis,
                              const ComplexMatrix& rho) {
    require_single_shape(cfg, rho, "dephasing_twirl");
    if (basis == Basis::Q) {
        return rho.diagonal().asDiagonal();
    }
    const ComplexMatrix f = quadrature_operators(cfg).dft;
    const ComplexMatrix in_p = f.adjoint() * rho * f;
    return f * ComplexMatrix(in_p.diagonal().asDiagonal()) * f.adjoint();
}

namespace {

// survive iff label sums and label square sums match over the integers
bool q_mask_keep(const DiscretizationConfig& cfg, int a, int b, int c, int e) {
    const long long la = cfg.label(a), lb = cfg.label(b);
    const long long lc = cfg.label(c), le = cfg.label(e);
    return la + lb == lc + le &&
           la * la + lb * lb == lc * lc + le * le;
}

ComplexMatrix q_mask_apply(const DiscretizationConfig& cfg,
                           const ComplexMatrix& x) {
    const int d = cfg.d;
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                for (int e = 0; e < d; ++e) {
                    if (q_mask_keep(cfg, a, b, c, e)) {
                        out(a * d + b, c * d + e) = x(a * d + b, c * d + e);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

ComplexMatrix dephasing_twirl_two_copy(const DiscretizationConfig& cfg,
                                       Basis basis, const ComplexMatrix& x) {
    require_pair_shape(cfg, x, "dephasing_twirl_two_copy");
    if (basis == Basis::Q) {
        return q_mask_apply(cfg, x);
    }
    const ComplexMatrix f = quadrature_operators(cfg).dft;
    const ComplexMatrix ff = kron(f, f);
    return ff * q_mask_apply(cfg, ff.adjoint() * x * ff) * ff.adjoint();
}

// --- Monte-Carlo twirl -------------------------------------------------------

namespace {

// per-pair phase vector of V(alpha,beta) (x) V(alpha,beta)
ComplexVector pair_phases(const DiscretizationConfig& cfg, double alpha,
                          double beta) {
    const int d = cfg.d;
    ComplexVector w(d);
    for (int p = 0; p < d; ++p) {
        const double i = double(cfg.label(p));
        const double ph = 2.0 * kPi * (alpha * i + beta * i * i) / d;
        w[p] = Complex(std::cos(ph), std::sin(ph));
    }
    ComplexVector w2(Eigen::Index(d) * d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) w2[a * d + b] = w[a] * w[b];
    }
    return w2;
}

}  // namespace

ComplexMatrix sampled_twirl_two_copy(const DiscretizationConfig& cfg,
                                     TwirlFamily family,
                                     const ComplexMatrix& x,
                                     std::int64_t n_samples,
                                     std::uint64_t seed) {
    require_pair_shape(cfg, x, "sampled_twirl_two_copy");
    if (n_samples < 1) {
        throw ParameterError("sampled_twirl_two_copy: n_samples must be >= 1");
    }
    const int d = cfg.d;
    const Eigen::Index n = x.rows();

    if (family == TwirlFamily::POnly) {
        // Vp = F V F^dag, so the P average is the DFT conjugate of the Q
        // average of the DFT-rotated input (same sample streams).
        const ComplexMatrix f = quadrature_operators(cfg).dft;
        const ComplexMatrix ff = kron(f, f);
        const ComplexMatrix inner = sampled_twirl_two_copy(
            cfg, TwirlFamily::QOnly, ff.adjoint() * x * ff, n_samples, seed);
        return ff * inner * ff.adjoint();
    }

    if (family == TwirlFamily::QOnly) {
        return mc_matrix_mean(n, n, n_samples,
                              [&](std::int64_t s, ComplexMatrix& acc) {
                                  CounterRng rng(seed, std::uint64_t(s));
                                  const double a = rng.next_uniform(d);
                                  const double b = rng.next_uniform(d);
                                  const ComplexVector w2 =
                                      pair_phases(cfg, a, b);
                                  acc.noalias() +=
                                      w2.asDiagonal() * x *
                                      w2.conjugate().asDiagonal();
                              });
    }

    // Sandwich: W = V(a'',b'') Vp(a',b') V(a,b) with six fresh parameters
    const ComplexMatrix f = quadrature_operators(cfg).dft;
    return mc_matrix_mean(
        n, n, n_samples, [&](std::int64_t s, ComplexMatrix& acc) {
            CounterRng rng(seed, std::uint64_t(s));
            double par[6];
            for (double& v : par) v = rng.next_uniform(d);
            ComplexVector w1(d), w2(d), w3(d);
            for (int p = 0; p < d; ++p) {
                const double i = double(cfg.label(p));
                auto phase = [&](double al, double be) {
                    const double ph = 2.0 * kPi * (al * i + be * i * i) / d;
                    return Complex(std::cos(ph), std::sin(ph));
                };
                w1[p] = phase(par[0], par[1]);
                w2[p] = phase(par[2], par[3]);
                w3[p] = phase(par[4], par[5]);
            }
            ComplexMatrix wmat = f * ComplexMatrix(w2.asDiagonal()) *
                                 f.adjoint() *
                                 ComplexMatrix(w1.asDiagonal());
            wmat = ComplexMatrix(w3.asDiagonal()) * wmat;
            const ComplexMatrix ww = kron(wmat, wmat);
            acc.noalias() += ww * x * ww.adjoint();
        });
}

// --- closed-form round map -----------------------------------------------------

LadderCoefficients ladder_coefficients(const ComplexMatrix& x) {
    const Eigen::Index n = x.rows();
    const int d = int(std::llround(std::sqrt(double(n))));
    if (Eigen::Index(d) * d != n || x.cols() != n || d < 2) {
        throw DimensionError("ladder_coefficients: expected d^2 x d^2, d >= 2");
    }
    LadderCoefficients out;
    out.diag_sums = ComplexVector::Zero(d - 1);
    out.swap_sums = ComplexVector::Zero(d - 1);
    for (int a = 0; a < d; ++a) {
        out.corner_sum += x(a * d + a, a * d + a);
        for (int u = 1; u < d; ++u) {
            const int b = (a + u) % d;
            out.diag_sums[u - 1] += x(a * d + b, a * d + b);
            out.swap_sums[u - 1] += x(a * d + b, b * d + a);
        }
    }
    return out;
}

namespace {

// out += sum_u xi_u L_u + sum_u lambda_u M_u + eta E (entrywise writes)
void add_ladder_span(int d, const ComplexVector& xi, const ComplexVector& lam,
                     Complex eta, ComplexMatrix& out) {
    for (int a = 0; a < d; ++a) {
        out(a * d + a, a * d + a) += eta;
        for (int u = 1; u < d; ++u) {
            const int b = (a + u) % d;
            out(a * d + b, a * d + b) += xi[u - 1];
            out(a * d + b, b * d + a) += lam[u - 1];
        }
    }
}

Complex swap_trace(const ComplexMatrix& x, int d) {
    Complex trf = 0.0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) trf += x(b * d + a, a * d + b);
    }
    return trf;
}

}  // namespace

ComplexMatrix twirl_round(const DiscretizationConfig& cfg,
                          const ComplexMatrix& x) {
    require_pair_shape(cfg, x, "twirl_round");
    const int d = cfg.d;
    const double dd = double(d);
    const LadderCoefficients lc = ladder_coefficients(x);
    const Complex tr = x.trace();
    const Complex trf = swap_trace(x, d);

    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    add_ladder_span(d, (lc.diag_sums / (dd * dd)).eval(),
                    (lc.swap_sums / (dd * dd)).eval(), 0.0, out);

    // c (I+F-E)/d^3 + (I/d^2 - (I+F-E)/d^3) Tr x + (F/d^2 - (I+F-E)/d^3) Tr Fx
    const Complex w = (lc.corner_sum - tr - trf) / (dd * dd * dd);
    const Complex ci = tr / (dd * dd) + w;   // coefficient of I
    const Complex cf = trf / (dd * dd) + w;  // coefficient of F
    const Complex ce = -w;                   // coefficient of E
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            out(a * d + b, a * d + b) += ci;
            out(a * d + b, b * d + a) += cf;
        }
        out(a * d + a, a * d + a) += ce;
    }
    return out;
}

TwirlRoundPower twirl_round_power(const DiscretizationConfig& cfg,
                                  const ComplexMatrix& x, int ell) {
    require_pair_shape(cfg, x, "twirl_round_power");
    if (ell < 1) throw ParameterError("twirl_round_power: ell must be >= 1");
    const int d = cfg.d;
    const double dd = double(d);

    TwirlRoundPower out;
    const CommutantDecomposition dec = decompose_commutant(x, d);
    const double a2 = std::norm(dec.identity_coeff) * dd * dd +
                      std::norm(dec.swap_coeff) * dd * dd +
                      2.0 * dd *
                          (std::conj(dec.identity_coeff) * dec.swap_coeff)
                              .real();
    out.commutant_residual = std::sqrt(std::max(0.0, a2));
    out.projected = out.commutant_residual > 1e-10;

    const LadderCoefficients lc = ladder_coefficients(dec.complement);
    const double scale = std::pow(dd, -(ell + 1.0));
    const double geo =
        (1.0 - std::pow(dd, -double(ell))) / (std::pow(dd, ell + 1.0) * (dd - 1.0));
    const Complex eta = lc.corner_sum * std::pow(dd, -(2.0 * ell + 1.0));
    const ComplexVector xi =
        (lc.diag_sums * scale).eval() +
        ComplexVector::Constant(d - 1, lc.corner_sum * geo);
    const ComplexVector lam =
        (lc.swap_sums * scale).eval() +
        ComplexVector::Constant(d - 1, lc.corner_sum * geo);

    out.value = ComplexMatrix::Zero(x.rows(), x.cols());
    add_ladder_span(d, xi, lam, eta, out.value);
    return out;
}

// --- norm on the commutant complement -------------------------------------------

namespace {

// Orthonormal basis of the complement, built by modified Gram-Schmidt over
// the projected matrix units in lexicographic (row, col) order.  A unit
// touches span{I, F} only when row == col or col == swap(row); all other
// units are untouched, mutually orthonormal and orthogonal to the touched
// span, so the sweep only has to orthogonalise the touched family.
struct ComplementBasis {
    // untouched units stay singletons: (row, col) position pairs
    std::vector<std::pair<int, int>> singletons;
    // orthonormalised touched vectors, stored densely over touched positions
    std::vector<Eigen::Index> touched_pos;  // flattened (row, col) slots
    Eigen::MatrixXcd touched_vecs;          // one column per basis vector
};

ComplementBasis complement_basis(int d) {
    const Eigen::Index n = Eigen::Index(d) * d;
    ComplementBasis out;
    std::vector<Eigen::Index> slot_of(size_t(n * n), -1);
    auto swap_of = [d](Eigen::Index p) {
        return (p % d) * d + p / d;
    };
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            if (r == c || c == swap_of(r)) {
                slot_of[size_t(r * n + c)] = Eigen::Index(out.touched_pos.size());
                out.touched_pos.push_back(r * n + c);
            }
        }
    }
    const Eigen::Index m = Eigen::Index(out.touched_pos.size());  // 2d^2 - d
    // I and F in touched coordinates
    Eigen::VectorXcd vi = Eigen::VectorXcd::Zero(m);
    Eigen::VectorXcd vf = Eigen::VectorXcd::Zero(m);
    for (Eigen::Index r = 0; r < n; ++r) {
        vi[slot_of[size_t(r * n + r)]] = 1.0;
        vf[slot_of[size_t(r * n + swap_of(r))]] = 1.0;
    }
    const Eigen::VectorXcd a1 = vi / vi.norm();
    Eigen::VectorXcd a2 = vf - a1.dot(vf) * a1;
    a2 /= a2.norm();

    out.touched_vecs.resize(m, m - 2);
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const Eigen::Index slot = slot_of[size_t(r * n + c)];
            if (slot < 0) {
                out.singletons.emplace_back(int(r), int(c));
                continue;
            }
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
            v[slot] = 1.0;
            v -= a1.dot(v) * a1;
            v -= a2.dot(v) * a2;
            for (Eigen::Index j = 0; j < k; ++j) {
                const auto col = out.touched_vecs.col(j);
                v -= col.dot(v) * col;
            }
            // second orthogonalisation pass for numerical safety
            v -= a1.dot(v) * a1;
            v -= a2.dot(v) * a2;
            for (Eigen::Index j = 0; j < k; ++j) {
                const auto col = out.touched_vecs.col(j);
                v -= col.dot(v) * col;
            }
            const double nv = v.norm();
            if (nv < 1e-6) continue;  // linearly dependent (exactly two drop)
            if (k >= m - 2) {
                throw NumericalError("design_norm: basis overflow");
            }
            out.touched_vecs.col(k++) = v / nv;
        }
    }
    if (k != m - 2) {
        throw NumericalError("design_norm: complement basis rank mismatch");
    }
    return out;
}

double brute_force_norm(const DiscretizationConfig& cfg, int ell) {
    const int d = cfg.d;
    const Eigen::Index n = Eigen::Index(d) * d;
    const ComplementBasis basis = complement_basis(d);
    const Eigen::Index n_basis =
        Eigen::Index(basis.singletons.size()) + basis.touched_vecs.cols();

    auto apply_rounds = [&](const ComplexMatrix& x) {
        ComplexMatrix y = x;
        for (int r = 0; r < ell; ++r) {
            y = dephasing_twirl_two_copy(cfg, Basis::Q, y);
            y = dephasing_twirl_two_copy(cfg, Basis::P, y);
            y = dephasing_twirl_two_copy(cfg, Basis::Q, y);
        }
        return y;
    };

    // images of the basis, vectorised column by column
    Eigen::MatrixXcd images(n * n, n_basis);
    Eigen::Index col = 0;
    for (const auto& [r, c] : basis.singletons) {
        ComplexMatrix x = ComplexMatrix::Zero(n, n);
        x(r, c) = 1.0;
        const ComplexMatrix y = apply_rounds(x);
        images.col(col++) =
            Eigen::Map<const Eigen::VectorXcd>(y.data(), n * n);
    }
    for (Eigen::Index j = 0; j < basis.touched_vecs.cols(); ++j) {
        ComplexMatrix x = ComplexMatrix::Zero(n, n);
        for (Eigen::Index s = 0; s < Eigen::Index(basis.touched_pos.size());
             ++s) {
            const Eigen::Index pos = basis.touched_pos[size_t(s)];
            x(pos / (n), pos % (n)) = basis.touched_vecs(s, j);
        }
        const ComplexMatrix y = apply_rounds(x);
        images.col(col++) =
            Eigen::Map<const Eigen::VectorXcd>(y.data(), n * n);
    }

    // top singular value of the image matrix by deterministic block
    // subspace iteration on Y^dag Y
    const Eigen::Index block = std::min<Eigen::Index>(16, n_basis);
    Eigen::MatrixXcd z(n_basis, block);
    CounterRng rng(0x5eedULL, 0);
    for (Eigen::Index i = 0; i < n_basis; ++i) {
        for (Eigen::Index j = 0; j < block; ++j) {
            z(i, j) = Complex(2.0 * rng.next_double() - 1.0,
                              2.0 * rng.next_double() - 1.0);
        }
    }
    double lam_prev = -1.0;
    int stable = 0;
    for (int it = 0; it < 500; ++it) {
        Eigen::MatrixXcd w = images.adjoint() * (images * z);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(w);
        z = qr.householderQ() * Eigen::MatrixXcd::Identity(n_basis, block);
        const Eigen::MatrixXcd yz = images * z;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            Eigen::MatrixXcd(yz.adjoint() * yz), Eigen::EigenvaluesOnly);
        const double lam = es.eigenvalues().maxCoeff();
        if (std::abs(lam - lam_prev) <= 1e-14 * std::max(1.0, lam)) {
            if (++stable >= 3) return std::sqrt(std::max(0.0, lam));
        } else {
            stable = 0;
        }
        lam_prev = lam;
    }
    return std::sqrt(std::max(0.0, lam_prev));
}

double rank_structured_norm(const DiscretizationConfig& cfg, int ell) {
    const int d = cfg.d;
    const double dd = double(d);
    const int m = 2 * (d - 1) + 1;  // frame {L_u}, {M_u}, E

    // coefficient matrix: (s, t, c) -> (xi, lambda, eta)
    const double a = std::pow(dd, -(ell + 1.0));
    const double g = (1.0 - std::pow(dd, -double(ell))) /
                     (std::pow(dd, ell + 1.0) * (dd - 1.0));
    const double h = std::pow(dd, -(2.0 * ell + 1.0));
    Eigen::MatrixXd cmat = Eigen::MatrixXd::Zero(m, m);
    for (int u = 0; u < d - 1; ++u) {
        cmat(u, u) = a;
        cmat(u, m - 1) = g;
        cmat(d - 1 + u, d - 1 + u) = a;
        cmat(d - 1 + u, m - 1) = g;
    }
    cmat(m - 1, m - 1) = h;

    // Gram matrix of the frame projected onto the complement:
    // <W_i, W_j> = d delta_ij minus the commutant overlap, which only
    // depends on (Tr W, Tr F W) = (d,0) for L_u, (0,d) for M_u, (d,d) for E.
    Eigen::MatrixXd trs(m, 2);
    for (int u = 0; u < d - 1; ++u) {
        trs.row(u) << dd, 0.0;
        trs.row(d - 1 + u) << 0.0, dd;
    }
    trs.row(m - 1) << dd, dd;
    const double det = dd * dd * (dd * dd - 1.0);
    Eigen::MatrixXd af(m, 2);  // commutant coefficients (a_i, f_i)
    for (int i = 0; i < m; ++i) {
        af(i, 0) = (dd * dd * trs(i, 0) - dd * trs(i, 1)) / det;
        af(i, 1) = (dd * dd * trs(i, 1) - dd * trs(i, 0)) / det;
    }
    Eigen::MatrixXd gram(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double overlap =
                af(i, 0) * af(j, 0) * dd * dd + af(i, 1) * af(j, 1) * dd * dd +
                (af(i, 0) * af(j, 1) + af(i, 1) * af(j, 0)) * dd;
            gram(i, j) = (i == j ? dd : 0.0) - overlap;
        }
    }

    // ||W C (P W)^dag||^2 = lambda_max(d sqrt(C^T C) G sqrt(C^T C))
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_c(cmat.transpose() *
                                                        cmat);
    const Eigen::VectorXd ev = es_c.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd sq =
        es_c.eigenvectors() * ev.asDiagonal() * es_c.eigenvectors().transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Eigen::MatrixXd(dd * sq * gram * sq), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

TwirlReport design_norm(const DiscretizationConfig& cfg, int ell,
                        NormMethod method, bool allow_large) {
    if (ell < 1) throw ParameterError("design_norm: ell must be >= 1");
    TwirlReport rep;
    rep.d = cfg.d;
    rep.ell = ell;
    rep.method = method;
    rep.bound = std::pow(double(cfg.d), -double(ell));
    if (method == NormMethod::BruteForce) {
        if (cfg.d > 6 && !allow_large) {
            const double gib = double(cfg.d) * cfg.d * cfg.d * cfg.d *
                               double(cfg.d) * cfg.d * cfg.d * cfg.d * 16.0 /
                               (1024.0 * 1024.0 * 1024.0);
            throw ResourceError(
                "design_norm: brute force above d = 6 needs allow_large "
                "(image matrix alone is ~" +
                std::to_string(gib) + " GiB)");
        }
        rep.norm_2to2_on_k = brute_force_norm(cfg, ell);
        rep.residual_vs_oracle =
            std::abs(rep.norm_2to2_on_k - rank_structured_norm(cfg, ell));
    } else {
        if (cfg.d > 64) {
            throw ParameterError("design_norm: rank-structured path supports d <= 64");
        }
        rep.norm_2to2_on_k = rank_structured_norm(cfg, ell);
    }
    return rep;
}

ComplexMatrix discrete_double_twirl(const DiscretizationConfig& cfg,
                                    Basis basis, const ComplexMatrix& x,
                                    bool force_composite) {
    require_pair_shape(cfg, x, "discrete_double_twirl");
    if (!force_composite && (!is_prime(cfg.d) || cfg.d == 2)) {
        throw PrimalityError(
            "discrete_double_twirl: d must be an odd prime (or pass force)");
    }
    if (basis == Basis::P) {
        const ComplexMatrix f = quadrature_operators(cfg).dft;
        const ComplexMatrix ff = kron(f, f);
        return ff *
               discrete_double_twirl(cfg, Basis::Q,
                                     ComplexMatrix(ff.adjoint() * x * ff),
                                     force_composite) *
               ff.adjoint();
    }
    const int d = cfg.d;
    auto zero_mod = [d](long long v) { return ((v % d) + d) % d == 0; };
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                for (int e = 0; e < d; ++e) {
                    const long long la = cfg.label(a), lb = cfg.label(b);
                    const long long lc = cfg.label(c), le = cfg.label(e);
                    if (zero_mod(la + lb - lc - le) &&
                        zero_mod(la * la + lb * lb - lc * lc - le * le)) {
                        out(a * d + b, c * d + e) = x(a * d + b, c * d + e);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace cv2design
