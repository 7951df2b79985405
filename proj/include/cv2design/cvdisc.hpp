#pragma once

// Box discretisation of the real line: d boxes of width delta = sqrt(2 pi/d)
// tile the window [-q_max, q_max), q_max = d*delta/2.  A wavefunction psi is
// projected onto the box kets; the amplitude of box i is
// delta^{-1/2} * integral of psi over the box, so |amplitude|^2 is the box
// probability mass of the box-averaged state.  The surviving mass and the
// mean-square momentum control the projection error:
//   1 - survival <= (delta/pi)^2 <p^2>      (mean-deviation inequality)
//   trace distance <= sqrt((2/pi) <p^2>/d)  (via gentle measurement)

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cv2design/opalg.hpp"

namespace cv2design {

enum class IndexConvention {
    EvenCentered,  // labels -d/2 .. d/2-1, box i = [i*delta, (i+1)*delta)
    OddCentered    // labels -(d-1)/2 .. (d-1)/2, boxes centred on i*delta
};

struct DiscretizationConfig {
    int d;
    IndexConvention convention;

    DiscretizationConfig(int dim, IndexConvention conv);
    // picks the convention matching the parity of d
    static DiscretizationConfig for_dimension(int dim);

    double delta() const;
    double q_max() const;
    int label_min() const;
    int label(int position) const { return label_min() + position; }
    int position(int lab) const { return lab - label_min(); }
    // wraps an integer mod d back into the label range
    int wrap_label(long long value) const;
    double box_lo(int lab) const;
};

// psi is a complex function of q, normalised to unit L2 norm.  mean_psq is
// the analytic <p^2> when known; quadrature stands in otherwise.
struct Wavefunction {
    std::function<Complex(double)> psi;
    std::optional<double> mean_psq;
    std::string label;
};

Wavefunction vacuum_state();
Wavefunction fock_state(int n);  // harmonic-oscillator eigenstate, n <= 4
Wavefunction coherent_state(Complex alpha);

// Adaptive Simpson quadrature with absolute tolerance; throws
// NumericalError when the recursion fails to converge.
Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  double tol = 1e-10);

struct QuadratureOperators {
    ComplexMatrix q_op;  // diag(labels)
    ComplexMatrix dft;   // <j|k~> = omega^{k j}/sqrt(d)
    ComplexMatrix p_op;  // dft * q_op * dft^dag
};

QuadratureOperators quadrature_operators(const DiscretizationConfig& cfg);

struct PureDiscretization {
    ComplexVector amplitudes;  // raw box amplitudes (norm <= 1)
    double survival = 0.0;     // sum |amplitude|^2
    ComplexVector normalized() const;
};

PureDiscretization discretize_pure(const DiscretizationConfig& cfg,
                                   const Wavefunction& psi);

struct DensityDiscretization {
    ComplexMatrix rho;          // renormalised, unit trace
    double trace_before = 0.0;  // window mass before renormalisation
};

// kernel(q, q') = <q|rho|q'>; entry (i,i') = (1/delta) * double box integral.
DensityDiscretization discretize_density(
    const DiscretizationConfig& cfg,
    const std::function<Complex(double, double)>& kernel);

// sqrt((2/pi) * mean_psq / d)
double discretization_error_bound(const DiscretizationConfig& cfg,
                                  double mean_psq);
// sqrt((4/pi) * (nbar + 1/2) / d), using Tr[rho p^2] <= 2 nbar + 1
double discretization_error_bound_photon(int d, double nbar);

// Finite-dimensional stand-in for the projection error: the renormalised
// box state is compared against the window restriction of the same state on
// a grid `refine` times finer (coarse boxes are exact unions of fine ones).
struct SurrogateDistance {
    double distance = 0.0;
    double survival_coarse = 0.0;
    double survival_fine = 0.0;
    double quad_drift = 0.0;  // refinement-doubling drift of the amplitudes
};

SurrogateDistance surrogate_trace_distance(const DiscretizationConfig& cfg,
                                           const Wavefunction& psi,
                                           int refine = 16);

SurrogateDistance surrogate_trace_distance_mixture(
    const DiscretizationConfig& cfg,
    const std::vector<std::pair<double, Wavefunction>>& mixture,
    int refine = 16);

// Staircase phase profile of a boxed unitary: on box i the phase is
// 2 pi (alpha i + beta i^2)/d, constant across the box.  Optionally fits a
// least-squares polynomial of the given degree in q over the sample grid.
struct StaircaseProfile {
    std::vector<double> q;
    std::vector<double> phase;
    std::vector<double> fit;          // empty when no fit was requested
    double max_fit_deviation = 0.0;   // max |fit - phase| over the grid
};

StaircaseProfile staircase_profile(const DiscretizationConfig& cfg,
                                   double alpha, double beta,
                                   int samples_per_box, int fit_degree = -1);

}  // namespace cv2design
