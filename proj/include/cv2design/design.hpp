#pragma once

// Approximate unitary 2-design built from boxed phase unitaries
// V(alpha, beta) = omega^{alpha Q + beta Q^2} (omega = exp(i 2 pi / d)) and
// their momentum-basis twins.  Averaging V (x) V conjugation over uniform
// parameters dephases the two-copy space; one round of
// Q-twirl . P-twirl . Q-twirl is the channel R.  On span{I, F} the round
// acts as the identity (exactly like the Haar twirl); on the orthogonal
// complement its 2->2 norm is at most 1/d, so ell rounds give an
// epsilon = d^-ell approximate 2-design.

#include <cstdint>
#include <optional>

#include "cv2design/cvdisc.hpp"
#include "cv2design/opalg.hpp"

namespace cv2design {

enum class Basis { Q, P };

enum class ParameterMode {
    ContinuousBox,  // alpha, beta real, drawn from [0, d)
    IntegerModD     // alpha, beta integer labels; requires odd prime d
};

enum class TwirlFamily { QOnly, POnly, Sandwich };

enum class NormMethod { BruteForce, RankStructured };

struct BoxedUnitaryParams {
    Basis basis = Basis::Q;
    double alpha = 0.0;
    double beta = 0.0;
    ParameterMode mode = ParameterMode::ContinuousBox;
};

bool is_prime(int n);

// d x d unitary: diagonal phases omega^{alpha i + beta i^2} over the labels
// (Q), or the DFT conjugate of that diagonal (P).
ComplexMatrix boxed_unitary(const DiscretizationConfig& cfg,
                            const BoxedUnitaryParams& params);

// Single-copy parameter average: kills off-diagonal entries in the chosen
// basis (a perfect dephasing channel).
ComplexMatrix dephasing_twirl(const DiscretizationConfig& cfg, Basis basis,
                              const ComplexMatrix& rho);

// Two-copy parameter average of V (x) V conjugation.  In the Q basis entry
// ((a b),(c e)) survives exactly when labels satisfy a + b = c + e and
// a^2 + b^2 = c^2 + e^2 over the integers (equivalently {a, b} = {c, e});
// the P case is the DFT conjugate.
ComplexMatrix dephasing_twirl_two_copy(const DiscretizationConfig& cfg,
                                       Basis basis, const ComplexMatrix& x);

// Monte-Carlo estimate of the two-copy average for one of the families:
// QOnly / POnly draw (alpha, beta), Sandwich draws the six parameters of
// V'' Vp' V per sample.  Per-sample streams keyed by (seed, index) make the
// result independent of scheduling.
ComplexMatrix sampled_twirl_two_copy(const DiscretizationConfig& cfg,
                                     TwirlFamily family,
                                     const ComplexMatrix& x,
                                     std::int64_t n_samples,
                                     std::uint64_t seed);

// The functionals that the round map sees: diagonal-ladder sums
// s_u = sum_a x[(a,a+u),(a,a+u)], swapped-ladder sums
// t_u = sum_a x[(a,a+u),(a+u,a)] (positions mod d, u = 1..d-1), and the
// diagonal corner sum c = sum_a x[(a,a),(a,a)].
struct LadderCoefficients {
    ComplexVector diag_sums;  // s_u at index u-1
    ComplexVector swap_sums;  // t_u at index u-1
    Complex corner_sum = 0.0;
};

LadderCoefficients ladder_coefficients(const ComplexMatrix& x);

// One round R = Q-twirl . P-twirl . Q-twirl in closed form:
//   R(x) = sum_u s_u/d^2 L_u + sum_u t_u/d^2 M_u + c (I+F-E)/d^3
//        + (I/d^2 - (I+F-E)/d^3) Tr x + (F/d^2 - (I+F-E)/d^3) Tr Fx.
ComplexMatrix twirl_round(const DiscretizationConfig& cfg,
                          const ComplexMatrix& x);

// ell rounds on the commutant complement in closed form:
//   xi_u  = s_u/d^(ell+1) + c (1 - d^-ell) / (d^(ell+1) (d-1))
//   eta   = c / d^(2 ell + 1)
// Inputs are projected onto the complement first; `projected` flags inputs
// whose commutant component exceeded the 1e-10 tolerance.
struct TwirlRoundPower {
    ComplexMatrix value;
    bool projected = false;
    double commutant_residual = 0.0;
};

TwirlRoundPower twirl_round_power(const DiscretizationConfig& cfg,
                                  const ComplexMatrix& x, int ell);

struct TwirlReport {
    int d = 0;
    int ell = 0;
    NormMethod method = NormMethod::RankStructured;
    double norm_2to2_on_k = 0.0;          // measured ||R^ell|_K||_{2->2}
    double bound = 0.0;                   // d^-ell
    std::optional<double> residual_vs_oracle;  // |brute - structured|
};

// 2->2 norm of ell rounds restricted to the commutant complement K.
// BruteForce (d <= 6 unless allow_large): orthonormalise the projected
// matrix units in lexicographic order, push each basis element through the
// literal twirl composition, and take the top singular value.
// RankStructured (d <= 64): the round factors through the 2(d-1)+1 ladder
// functionals into span{L_u, M_u, E}; the norm comes from the two small
// Gram matrices of that frame.
TwirlReport design_norm(const DiscretizationConfig& cfg, int ell,
                        NormMethod method, bool allow_large = false);

// Integer-parameter variant: the exhaustive average over all d^2 integer
// (alpha, beta) pairs keeps entry ((a b),(c e)) exactly when the label sums
// and square sums match mod d.  This coincides with the continuous twirl
// only for odd prime d; pass force_composite to inspect other d.
ComplexMatrix discrete_double_twirl(const DiscretizationConfig& cfg,
                                    Basis basis, const ComplexMatrix& x,
                                    bool force_composite = false);

}  // namespace cv2design
