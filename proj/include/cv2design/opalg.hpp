#pragma once

// Dense operator algebra on a single system H_d and on the two-copy space
// H_d (x) H_d.  Everything downstream (twirl channels, discretised states,
// encryption demos) moves through these types.
//
// Two-copy basis convention: the product ket |a>|b> (a, b = 0..d-1 position
// indices) sits at row/column a*d + b.  All structural operators below are
// expressed in that ordering and depend only on positions, never on the
// physical index labels.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "cv2design/errors.hpp"

namespace cv2design {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

// Hilbert-Schmidt inner product <x, y> = Tr(x^dag y), conjugate-linear in x.
Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y);

// Schatten p-norm for p in {1, 2}: sum of singular values resp. Frobenius.
// Rectangular inputs are fine; only empty matrices are rejected.
double schatten_norm(const ComplexMatrix& x, int p);

// Trace norm ||x||_tr = (1/2) * (Schatten 1-norm), the trace-distance scale.
double trace_norm(const ComplexMatrix& x);

// Kronecker product, row-major blocks: out((a,b),(c,e)) = A(a,c) * B(b,e).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// --- structural operators on the two-copy space ---------------------------

// Identity on H_d (x) H_d.
ComplexMatrix pair_identity(int d);

// Swap F |a b> = |b a>.  F^2 = I, Tr F = d.
ComplexMatrix pair_swap(int d);

// Projector E onto the diagonal kets |a a>.
ComplexMatrix pair_diag_projector(int d);

// L_u = sum_a |a, a+u><a, a+u| (positions mod d), the diagonal ladder class.
ComplexMatrix ladder_diag(int d, int offset);

// M_u = sum_a |a, a+u><a+u, a|, the swapped ladder class.
ComplexMatrix ladder_swap(int d, int offset);

// Symbolic tag for the operators above, materialisable at any dimension.
struct PairBasisOperator {
    enum class Kind { Identity, Swap, DiagProjector, LadderDiag, LadderSwap };
    Kind kind = Kind::Identity;
    int offset = 0;  // used by the ladder kinds; nonzero mod d

    ComplexMatrix materialize(int d) const;
};

// --- commutant split -------------------------------------------------------

// Every two-copy twirl fixes span{I, F} (the commutant of U (x) U) pointwise
// and preserves its orthogonal complement; design quality is measured on the
// complement.  x = identity_coeff * I + swap_coeff * F + complement, with the
// complement orthogonal to both I and F.
struct CommutantDecomposition {
    Complex identity_coeff;
    Complex swap_coeff;
    ComplexMatrix complement;
};

// Requires x of size d^2 x d^2 with d >= 2 (the Gram system {I, F} is
// singular at d = 1).
CommutantDecomposition decompose_commutant(const ComplexMatrix& x, int d);

// --- generic checks ---------------------------------------------------------

// Hermitian, unit trace, eigenvalues >= -tol_eig.
bool is_density_matrix(const ComplexMatrix& rho, double tol_herm = 1e-10,
                       double tol_eig = 1e-10, double tol_trace = 1e-10);

}  // namespace cv2design
