#include "cv2design/ue.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cv2design/mc.hpp"
#include "cv2design/parallel.hpp"

namespace cv2design {

SignDistIndex sign_dist_of_label(int label) {
    if (label >= 0) return {0, label};
    return {1, -label - 1};
}

int label_of_sign_dist(const SignDistIndex& idx) {
    if (idx.sign != 0 && idx.sign != 1) {
        throw ParameterError("label_of_sign_dist: sign must be 0 or 1");
    }
    if (idx.dist < 0) {
        throw ParameterError("label_of_sign_dist: dist must be >= 0");
    }
    return idx.sign == 0 ? idx.dist : -(idx.dist + 1);
}

SecurityDelta security_delta(int d, int ell) {
    if (d < 4) {
        throw ParameterError("security_delta: requires d >= 4");
    }
    if (ell < 1) {
        throw ParameterError("security_delta: requires ell >= 1");
    }
    SecurityDelta out;
    const double log2d = std::log2(double(d));
    out.value = 3.0 * std::log2(log2d) / (2.0 * log2d) *
                std::sqrt(1.0 + 4.0 * std::pow(double(d), 5.0 - ell));
    out.small_ell = ell < 5;
    out.log_base = 2;
    return out;
}

QecmScheme::QecmScheme(DiscretizationConfig cfg, int ell, QecmMode mode)
    : cfg_(cfg), ell_(ell), mode_(mode) {
    dft_ = quadrature_operators(cfg_).dft;
}

QecmScheme QecmScheme::standard(int d, int ell) {
    if (d < 2 || d % 2 != 0) {
        throw ParityError("QecmScheme::standard: d must be even, >= 2");
    }
    if (ell < 0) {
        throw ParameterError("QecmScheme::standard: ell must be >= 0");
    }
    return QecmScheme(DiscretizationConfig::for_dimension(d), ell,
                      QecmMode::Standard);
}

QecmScheme QecmScheme::experimental_prime(int d, int ell) {
    if (!is_prime(d) || d == 2) {
        throw PrimalityError(
            "QecmScheme::experimental_prime: d must be an odd prime");
    }
    if (ell < 0) {
        throw ParameterError(
            "QecmScheme::experimental_prime: ell must be >= 0");
    }
    return QecmScheme(DiscretizationConfig::for_dimension(d), ell,
                      QecmMode::ExperimentalPrime);
}

int QecmScheme::sign_of_label(int label) const {
    if (mode_ == QecmMode::Standard) return label >= 0 ? 0 : 1;
    if (label == 0) return -1;
    return label > 0 ? 0 : 1;
}

QecmKey QecmScheme::key_from_rng(CounterRng& rng) const {
    QecmKey key;
    key.ell = ell_;
    key.mode = mode_;
    key.rounds.resize(size_t(ell_));
    const double d = double(cfg_.d);
    auto draw = [&]() {
        if (mode_ == QecmMode::Standard) return rng.next_uniform(d);
        // integer parameters drawn uniformly from the odd-centred label set
        return double(cfg_.label(int(rng.next_below(std::uint64_t(cfg_.d)))));
    };
    for (RoundParams& r : key.rounds) {
        r.alpha = draw();
        r.beta = draw();
        r.alpha_p = draw();
        r.beta_p = draw();
        r.alpha_pp = draw();
        r.beta_pp = draw();
    }
    return key;
}

QecmKey QecmScheme::sample_key(std::uint64_t seed,
                               std::uint64_t stream) const {
    CounterRng rng(seed, stream);
    return key_from_rng(rng);
}

ComplexMatrix QecmScheme::plaintext_state(int x) const {
    if (x != 0 && x != 1) {
        throw ParameterError("plaintext_state: plaintext must be 0 or 1");
    }
    const int d = cfg_.d;
    const double w = mode_ == QecmMode::Standard ? 2.0 / d : 2.0 / (d - 1);
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (int p = 0; p < d; ++p) {
        if (sign_of_label(cfg_.label(p)) == x) rho(p, p) = w;
    }
    return rho;
}

ComplexMatrix QecmScheme::key_unitary(const QecmKey& key) const {
    if (key.ell != ell_ || key.mode != mode_ ||
        key.rounds.size() != size_t(ell_)) {
        throw ParameterError("key_unitary: key does not match the scheme");
    }
    for (const RoundParams& r : key.rounds) {
        for (double v : {r.alpha, r.beta, r.alpha_p, r.beta_p, r.alpha_pp,
                         r.beta_pp}) {
            const bool ok =
                mode_ == QecmMode::Standard
                    ? v >= 0.0 && v < double(cfg_.d)
                    : v >= double(cfg_.label(0)) &&
                          v <= double(cfg_.label(cfg_.d - 1)) &&
                          std::abs(v - std::round(v)) < 1e-9;
            if (!ok) throw ParameterError("key_unitary: parameter out of range");
        }
    }
    const ParameterMode pmode = mode_ == QecmMode::Standard
                                    ? ParameterMode::ContinuousBox
                                    : ParameterMode::IntegerModD;
    ComplexMatrix u = ComplexMatrix::Identity(cfg_.d, cfg_.d);
    for (const RoundParams& r : key.rounds) {
        const ComplexMatrix v = boxed_unitary(
            cfg_, BoxedUnitaryParams{Basis::Q, r.alpha, r.beta, pmode});
        const ComplexMatrix vp = boxed_unitary(
            cfg_, BoxedUnitaryParams{Basis::P, r.alpha_p, r.beta_p, pmode});
        const ComplexMatrix vpp = boxed_unitary(
            cfg_, BoxedUnitaryParams{Basis::Q, r.alpha_pp, r.beta_pp, pmode});
        u = vpp * vp * v * u;
    }
    return u;
}

Ciphertext QecmScheme::encrypt(int x, const QecmKey& key) const {
    const ComplexMatrix u = key_unitary(key);
    return Ciphertext{u * plaintext_state(x) * u.adjoint(), cfg_.d, ell_};
}

DecryptionResult QecmScheme::decrypt(const Ciphertext& ct,
                                     const QecmKey& key) const {
    const int d = cfg_.d;
    if (ct.d != d || ct.ell != ell_) {
        throw ParameterError("decrypt: ciphertext provenance does not match");
    }
    if (ct.rho.rows() != d || ct.rho.cols() != d) {
        throw DimensionError("decrypt: ciphertext must be d x d");
    }
    const ComplexMatrix u = key_unitary(key);
    const ComplexMatrix undone = u.adjoint() * ct.rho * u;
    double mass[2] = {0.0, 0.0};
    for (int p = 0; p < d; ++p) {
        const int s = sign_of_label(cfg_.label(p));
        if (s >= 0) mass[s] += undone(p, p).real();
    }
    DecryptionResult out;
    out.plaintext = mass[0] >= mass[1] ? 0 : 1;
    out.confidence = std::max(mass[0], mass[1]);
    out.ambiguous = std::abs(mass[0] - mass[1]) < 1e-12;
    return out;
}

ComplexMatrix QecmScheme::averaged_ciphertext_exact(int x) const {
    ComplexMatrix rho = plaintext_state(x);
    for (int r = 0; r < ell_; ++r) {
        rho = dephasing_twirl(cfg_, Basis::Q, rho);
        rho = dephasing_twirl(cfg_, Basis::P, rho);
        rho = dephasing_twirl(cfg_, Basis::Q, rho);
    }
    return rho;
}

ComplexMatrix QecmScheme::averaged_ciphertext_mc(int x,
                                                 std::int64_t n_samples,
                                                 std::uint64_t seed) const {
    const ComplexMatrix rho = plaintext_state(x);
    return mc_matrix_mean(cfg_.d, cfg_.d, n_samples,
                          [&](std::int64_t s, ComplexMatrix& acc) {
                              CounterRng rng(seed, std::uint64_t(s));
                              const QecmKey key = key_from_rng(rng);
                              const ComplexMatrix u = key_unitary(key);
                              acc.noalias() += u * rho * u.adjoint();
                          });
}

MeasureResendResult QecmScheme::simulate_measure_resend(
    std::int64_t trials, std::uint64_t seed) const {
    if (trials < 1) {
        throw ParameterError("simulate_measure_resend: trials must be >= 1");
    }
    const int d = cfg_.d;
    // plaintext supports and weights by sign bit
    std::vector<int> support[2];
    for (int p = 0; p < d; ++p) {
        const int s = sign_of_label(cfg_.label(p));
        if (s >= 0) support[s].push_back(p);
    }
    const std::int64_t block = 1024;
    const std::int64_t n_blocks = (trials + block - 1) / block;
    std::vector<std::int64_t> block_wins(size_t(n_blocks), 0);
    parallel_blocks(trials, block, [&](std::int64_t b, std::int64_t lo,
                                       std::int64_t hi) {
        std::int64_t wins = 0;
        for (std::int64_t t = lo; t < hi; ++t) {
            CounterRng rng(seed, std::uint64_t(t));
            const int x = int(rng.next_below(2));
            const QecmKey key = key_from_rng(rng);
            const ComplexMatrix u = key_unitary(key);
            // box-basis measurement of the ciphertext: the outcome row j
            // carries probability sum_m p_m |u(j, m)|^2
            const double w = 1.0 / double(support[x].size());
            double cdf = 0.0;
            const double roll = rng.next_double();
            int outcome = d - 1;
            for (int j = 0; j < d; ++j) {
                double pj = 0.0;
                for (int m : support[x]) pj += std::norm(u(j, m));
                cdf += w * pj;
                if (roll < cdf) {
                    outcome = j;
                    break;
                }
            }
            // after key reveal: sign weights of U^dag |j><j| U
            double mass[2] = {0.0, 0.0};
            for (int s = 0; s < 2; ++s) {
                for (int m : support[s]) mass[s] += std::norm(u(outcome, m));
            }
            const int guess = mass[0] >= mass[1] ? 0 : 1;
            if (guess == x) ++wins;
        }
        block_wins[size_t(b)] = wins;
    });
    std::int64_t wins = 0;
    for (std::int64_t bw : block_wins) wins += bw;
    MeasureResendResult out;
    out.trials = trials;
    out.wins = wins;
    out.win_probability = double(wins) / double(trials);
    out.std_error = std::sqrt(out.win_probability *
                              (1.0 - out.win_probability) / double(trials));
    return out;
}

}  // namespace cv2design
