#pragma once

// One-bit quantum encryption built on the boxed-unitary design.  The d-box
// space factors as sign (x) distance; a plaintext bit x is stored as the
// sign-basis state |x><x| tensored with the maximally mixed distance state.
// The key is 6 ell uniform parameters; the key unitary is ell rounds of
// V'' Vp' V.  Averaging the ciphertext over keys gives exactly I/d for
// ell >= 1, and the 2-design property bounds what any intercept-and-resend
// adversary can learn about x.

#include <cstdint>
#include <vector>

#include "cv2design/cvdisc.hpp"
#include "cv2design/design.hpp"
#include "cv2design/opalg.hpp"
#include "cv2design/rng.hpp"

namespace cv2design {

// sign/distance split of the even-centred labels -d/2 .. d/2-1:
// label j >= 0 <-> (sign 0, dist j), label j < 0 <-> (sign 1, dist |j|-1);
// inverse label = (-1)^sign (dist + sign).
struct SignDistIndex {
    int sign = 0;
    int dist = 0;
};

SignDistIndex sign_dist_of_label(int label);
int label_of_sign_dist(const SignDistIndex& idx);

enum class QecmMode {
    Standard,          // even d, continuous parameters in [0, d)
    ExperimentalPrime  // odd prime d, integer parameters, origin box unused
};

// one round of key material, in draw order
struct RoundParams {
    double alpha = 0.0;
    double beta = 0.0;
    double alpha_p = 0.0;
    double beta_p = 0.0;
    double alpha_pp = 0.0;
    double beta_pp = 0.0;
};

struct QecmKey {
    int ell = 0;
    QecmMode mode = QecmMode::Standard;
    std::vector<RoundParams> rounds;
};

struct Ciphertext {
    ComplexMatrix rho;
    // provenance, checked by decrypt
    int d = 0;
    int ell = 0;
};

struct DecryptionResult {
    int plaintext = 0;
    double confidence = 0.0;  // larger of the two sign-mass sums
    bool ambiguous = false;   // sign masses within 1e-12 of each other
};

struct MeasureResendResult {
    double win_probability = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::int64_t wins = 0;
};

// Adversary advantage bound 3 log2(log2 d) / (2 log2 d) * sqrt(1 + 4 d^(5-ell)).
// Meaningful only once ell wins against the d^(5-ell) term; small_ell flags
// ell < 5, where the square root still dwarfs 1.
struct SecurityDelta {
    double value = 0.0;
    bool small_ell = false;
    int log_base = 2;
};

SecurityDelta security_delta(int d, int ell);

class QecmScheme {
public:
    // even d; plaintext x lives on the sign of the box label
    static QecmScheme standard(int d, int ell);
    // odd prime d with integer key parameters; the origin box is excluded
    // from both plaintexts
    static QecmScheme experimental_prime(int d, int ell);

    const DiscretizationConfig& config() const { return cfg_; }
    int ell() const { return ell_; }
    QecmMode mode() const { return mode_; }

    // 6 ell fresh uniforms, grouped (alpha, beta, alpha', beta', alpha'',
    // beta'') per round; stream picks an independent draw for the same seed
    QecmKey sample_key(std::uint64_t seed, std::uint64_t stream = 0) const;

    // |x><x|_sign (x) tau_dist as a diagonal d x d density matrix
    ComplexMatrix plaintext_state(int x) const;

    // round_ell ... round_1 with round_1 applied first; each round is
    // V(alpha'', beta'') Vp(alpha', beta') V(alpha, beta)
    ComplexMatrix key_unitary(const QecmKey& key) const;

    Ciphertext encrypt(int x, const QecmKey& key) const;

    // undo the key, measure the box label, read off the sign bit
    DecryptionResult decrypt(const Ciphertext& ct, const QecmKey& key) const;

    // key-averaged ciphertext via the exact per-round dephasings
    // (Q, P, Q); equals I/d whenever ell >= 1
    ComplexMatrix averaged_ciphertext_exact(int x) const;

    // Monte-Carlo key average of the ciphertext
    ComplexMatrix averaged_ciphertext_mc(int x, std::int64_t n_samples,
                                         std::uint64_t seed) const;

    // Intercept-and-resend adversary: measures the ciphertext in the box
    // basis, later learns the key and guesses the sign bit by likelihood.
    // Win = guess equals the encrypted bit.
    MeasureResendResult simulate_measure_resend(std::int64_t trials,
                                                std::uint64_t seed) const;

private:
    QecmScheme(DiscretizationConfig cfg, int ell, QecmMode mode);

    QecmKey key_from_rng(CounterRng& rng) const;
    // sign bit of a label, or -1 for the excluded origin in the prime mode
    int sign_of_label(int label) const;

    DiscretizationConfig cfg_;
    int ell_;
    QecmMode mode_;
    ComplexMatrix dft_;
};

}  // namespace cv2design
