#include <doctest.h>

#include <cmath>

#include "cv2design/cvdisc.hpp"
#include "oracles.hpp"

using namespace cv2design;

namespace {

constexpr double kPi = oracles::kPi;

// unit-norm state that is constant on the box with label 0 and zero elsewhere
Wavefunction box_state(const DiscretizationConfig& cfg) {
    const double lo = cfg.box_lo(0);
    const double hi = lo + cfg.delta();
    const double c = 1.0 / std::sqrt(cfg.delta());
    return Wavefunction{
        [lo, hi, c](double q) {
            return Complex(q >= lo && q < hi ? c : 0.0, 0.0);
        },
        std::nullopt, "box0"};
}

}  // namespace

TEST_CASE("configuration geometry and validation") {
    const DiscretizationConfig even = DiscretizationConfig::for_dimension(4);
    CHECK(even.convention == IndexConvention::EvenCentered);
    CHECK(even.delta() == doctest::Approx(std::sqrt(2.0 * kPi / 4)));
    CHECK(even.q_max() == doctest::Approx(2.0 * even.delta()));
    CHECK(even.label_min() == -2);
    CHECK(even.label(0) == -2);
    CHECK(even.label(3) == 1);
    CHECK(even.position(1) == 3);
    CHECK(even.box_lo(1) == doctest::Approx(even.delta()));
    CHECK(even.wrap_label(2) == -2);
    CHECK(even.wrap_label(-3) == 1);
    CHECK(even.wrap_label(1) == 1);

    const DiscretizationConfig odd = DiscretizationConfig::for_dimension(5);
    CHECK(odd.convention == IndexConvention::OddCentered);
    CHECK(odd.label_min() == -2);
    CHECK(odd.label(4) == 2);
    // boxes centred on the label: box of label 0 straddles the origin
    CHECK(odd.box_lo(0) == doctest::Approx(-0.5 * odd.delta()));
    CHECK(odd.wrap_label(3) == -2);

    CHECK_THROWS_AS(DiscretizationConfig(1, IndexConvention::EvenCentered),
                    DimensionError);
    CHECK_THROWS_AS(DiscretizationConfig(3, IndexConvention::EvenCentered),
                    ParityError);
    CHECK_THROWS_AS(DiscretizationConfig(4, IndexConvention::OddCentered),
                    ParityError);
}

TEST_CASE("adaptive quadrature against a fixed-grid oracle") {
    const Complex s =
        integrate([](double q) { return Complex(std::sin(q), 0.0); }, 0.0, kPi);
    CHECK(std::abs(s - Complex(2.0)) <= 1e-10);

    auto f = [](double q) {
        return Complex(std::exp(-q * q / 3.0) * (std::sin(3.0 * q) + 0.2),
                       std::cos(q));
    };
    const Complex a = integrate(f, -2.0, 5.0, 1e-11);
    const Complex b = oracles::fixed_simpson(f, -2.0, 5.0, 4096);
    CHECK(std::abs(a - b) <= 1e-9);

    const Complex g = integrate(
        [](double q) { return Complex(std::exp(-q * q), 0.0); }, -8.0, 8.0);
    CHECK(std::abs(g - Complex(std::sqrt(kPi))) <= 1e-10);

    CHECK(integrate(f, 1.0, 1.0) == Complex(0.0));
    CHECK_THROWS_AS(integrate(f, 1.0, 0.0), ParameterError);
}

TEST_CASE("test states are normalised with the stated momentum spread") {
    for (const Wavefunction& w :
         {vacuum_state(), fock_state(1), fock_state(4),
          coherent_state(Complex(1.0, 0.0)),
          coherent_state(Complex(0.3, -0.7))}) {
        const Complex n2 = integrate(
            [&](double q) { return Complex(std::norm(w.psi(q)), 0.0); }, -12.0,
            12.0, 1e-11);
        CHECK(std::abs(n2 - Complex(1.0)) <= 1e-9);
    }
    CHECK(vacuum_state().mean_psq.value() == doctest::Approx(0.5));
    CHECK(fock_state(1).mean_psq.value() == doctest::Approx(1.5));
    CHECK(coherent_state(Complex(1.0, 0.0)).mean_psq.value() ==
          doctest::Approx(0.5));
    // imaginary displacement boosts momentum: <p^2> = 1/2 + 2 Im(alpha)^2
    CHECK(coherent_state(Complex(0.0, 1.0)).mean_psq.value() ==
          doctest::Approx(2.5));
    CHECK_THROWS_AS(fock_state(5), ParameterError);
    CHECK_THROWS_AS(fock_state(-1), ParameterError);
}

TEST_CASE("quadrature operators: unitarity and spectra") {
    for (int d : {4, 8, 9}) {
        const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(d);
        const QuadratureOperators ops = quadrature_operators(cfg);
        CHECK((ops.dft * ops.dft.adjoint() - ComplexMatrix::Identity(d, d))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
        CHECK((ops.p_op - ops.p_op.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        // p is unitarily conjugate to q: same spectrum, the labels
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ops.p_op);
        for (int k = 0; k < d; ++k) {
            CHECK(std::abs(es.eigenvalues()[k] - double(cfg.label(k))) <=
                  1e-9);
        }
    }
}

TEST_CASE("a box-constant state discretises to a basis vector") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(4);
    const PureDiscretization pd = discretize_pure(cfg, box_state(cfg));
    CHECK(pd.survival == doctest::Approx(1.0).epsilon(1e-9));
    const int pos0 = cfg.position(0);
    for (int p = 0; p < 4; ++p) {
        const double want = p == pos0 ? 1.0 : 0.0;
        CHECK(std::abs(pd.normalized()[p] - Complex(want)) <= 1e-9);
    }
}

TEST_CASE("vacuum discretisation at d = 64: survival and error bound") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(64);
    const Wavefunction psi = vacuum_state();
    const PureDiscretization pd = discretize_pure(cfg, psi);
    const double mass_bound =
        cfg.delta() * cfg.delta() / (kPi * kPi) * psi.mean_psq.value();
    CHECK(1.0 - pd.survival >= 0.0);
    CHECK(1.0 - pd.survival <= mass_bound);

    // closed-form bound value, pinned
    const double bound = discretization_error_bound(cfg, psi.mean_psq.value());
    CHECK(bound == doctest::Approx(0.070523697943469536).epsilon(1e-12));
    // the photon-count bound budgets both quadratures, so it is sqrt(2) looser
    CHECK(discretization_error_bound_photon(64, 0.0) ==
          doctest::Approx(std::sqrt(2.0) * bound).epsilon(1e-12));

    const SurrogateDistance sd = surrogate_trace_distance(cfg, psi, 16);
    CHECK(sd.distance == doctest::Approx(0.06367660).epsilon(1e-5));
    CHECK(sd.distance <= bound);
    CHECK(sd.quad_drift <= 1e-6);

    CHECK(discretization_error_bound(cfg, 0.0) == 0.0);
    CHECK(discretization_error_bound_photon(100, 0.5) ==
          doctest::Approx(std::sqrt(4.0 / (kPi * 100.0))).epsilon(1e-15));
    CHECK_THROWS_AS(discretization_error_bound(cfg, -1.0), ParameterError);
    CHECK_THROWS_AS(discretization_error_bound_photon(1, 0.5),
                    DimensionError);
}

TEST_CASE("first excited state at d = 64 stays within its bound") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(64);
    const Wavefunction psi = fock_state(1);
    const SurrogateDistance sd = surrogate_trace_distance(cfg, psi, 16);
    const double bound = discretization_error_bound(cfg, psi.mean_psq.value());
    CHECK(sd.distance == doctest::Approx(0.11011224).epsilon(1e-5));
    CHECK(bound == doctest::Approx(0.12215063).epsilon(1e-6));
    CHECK(sd.distance <= bound);
}

TEST_CASE("odd-centred symmetric states have symmetric amplitudes") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(5);
    const PureDiscretization pd = discretize_pure(cfg, vacuum_state());
    for (int lab = 1; lab <= 2; ++lab) {
        CHECK(std::abs(pd.amplitudes[cfg.position(lab)] -
                       pd.amplitudes[cfg.position(-lab)]) <= 1e-12);
    }
    CHECK(std::abs(pd.amplitudes[cfg.position(0)].imag()) <= 1e-12);
}

TEST_CASE("coherent state peaks in the box containing its displacement") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(32);
    const Wavefunction psi = coherent_state(Complex(1.0, 0.0));
    const PureDiscretization pd = discretize_pure(cfg, psi);
    Eigen::Index argmax = 0;
    pd.amplitudes.cwiseAbs().maxCoeff(&argmax);
    // q0 = sqrt(2) falls in the box with label floor(q0/delta) = 3
    CHECK(cfg.label(int(argmax)) == 3);
}

TEST_CASE("density discretisation is consistent with the pure path") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(8);
    const Wavefunction psi = vacuum_state();
    const DensityDiscretization dd = discretize_density(
        cfg,
        [&](double q, double qp) { return psi.psi(q) * std::conj(psi.psi(qp)); });
    const PureDiscretization pd = discretize_pure(cfg, psi);
    const ComplexVector v = pd.normalized();
    const ComplexMatrix outer = v * v.adjoint();
    CHECK((dd.rho - outer).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(dd.trace_before == doctest::Approx(pd.survival).epsilon(1e-8));
    CHECK(is_density_matrix(dd.rho, 1e-8, 1e-8, 1e-8));
}

TEST_CASE("density discretisation is linear over mixtures") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(32);
    const Wavefunction f0 = vacuum_state();
    const Wavefunction f1 = fock_state(1);
    const DensityDiscretization dd = discretize_density(
        cfg, [&](double q, double qp) {
            return 0.5 * f0.psi(q) * std::conj(f0.psi(qp)) +
                   0.5 * f1.psi(q) * std::conj(f1.psi(qp));
        });
    const PureDiscretization p0 = discretize_pure(cfg, f0);
    const PureDiscretization p1 = discretize_pure(cfg, f1);
    const ComplexMatrix direct =
        (0.5 * (p0.amplitudes * p0.amplitudes.adjoint()) +
         0.5 * (p1.amplitudes * p1.amplitudes.adjoint())) /
        (0.5 * p0.survival + 0.5 * p1.survival);
    CHECK(trace_norm(dd.rho - direct) <= 1e-8);

    const SurrogateDistance sd =
        surrogate_trace_distance_mixture(cfg, {{0.5, f0}, {0.5, f1}}, 8);
    const double bound = discretization_error_bound(
        cfg, 0.5 * f0.mean_psq.value() + 0.5 * f1.mean_psq.value());
    CHECK(sd.distance <= bound);
}

TEST_CASE("density discretisation rejects bad kernels") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(2);
    const Wavefunction psi = vacuum_state();
    CHECK_THROWS_AS(
        discretize_density(cfg,
                           [&](double q, double qp) {
                               return psi.psi(q) * std::conj(psi.psi(qp)) *
                                      Complex(q - qp + 1.0);
                           }),
        ParameterError);
    // all mass far outside the window
    CHECK_THROWS_AS(
        discretize_density(cfg,
                           [&](double q, double qp) {
                               return psi.psi(q - 50.0) *
                                      std::conj(psi.psi(qp - 50.0));
                           }),
        WindowError);
}

TEST_CASE("staircase profile: constant per box, pinned degree-0 deviation") {
    const DiscretizationConfig cfg = DiscretizationConfig::for_dimension(4);
    const StaircaseProfile prof = staircase_profile(cfg, 1.0, 0.0, 3, 0);
    REQUIRE(prof.q.size() == 12);
    // constant within each box, value 2 pi i / d on the box with label i
    for (int p = 0; p < 4; ++p) {
        const double want = 2.0 * kPi * cfg.label(p) / 4.0;
        for (int s = 0; s < 3; ++s) {
            CHECK(prof.phase[size_t(p * 3 + s)] == doctest::Approx(want));
            CHECK(prof.q[size_t(p * 3 + s)] >= cfg.box_lo(cfg.label(p)));
            CHECK(prof.q[size_t(p * 3 + s)] <
                  cfg.box_lo(cfg.label(p)) + cfg.delta());
        }
    }
    // best constant fit misses by half the profile range: 3 pi / 4
    CHECK(prof.max_fit_deviation == doctest::Approx(0.75 * kPi).epsilon(1e-12));

    // one sample per box and degree d-1: the fit interpolates exactly
    const StaircaseProfile interp = staircase_profile(cfg, 0.0, 1.0, 1, 3);
    CHECK(interp.max_fit_deviation <= 1e-8);

    CHECK_THROWS_AS(staircase_profile(cfg, 1.0, 0.0, 0), ParameterError);
    CHECK_THROWS_AS(staircase_profile(cfg, 1.0, 0.0, 1, 5), ParameterError);
}
