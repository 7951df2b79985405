#include <doctest.h>

#include <cmath>

#include "cv2design/opalg.hpp"
#include "cv2design/rng.hpp"
#include "oracles.hpp"

using namespace cv2design;

TEST_CASE("hs_inner matches the entrywise definition") {
    CounterRng rng(1, 0);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix x = oracles::random_matrix(6, 6, rng);
        const ComplexMatrix y = oracles::random_matrix(6, 6, rng);
        CHECK(std::abs(hs_inner(x, y) - oracles::naive_hs_inner(x, y)) <=
              1e-12);
    }
    const ComplexMatrix x = oracles::random_matrix(4, 4, rng);
    CHECK(hs_inner(x, x).real() == doctest::Approx(x.squaredNorm()));
    CHECK(std::abs(hs_inner(x, x).imag()) <= 1e-14);
}

TEST_CASE("schatten norms: oracle agreement and the rank inequality") {
    CounterRng rng(2, 0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const ComplexMatrix x = oracles::random_matrix(5, 7, rng);
        const double s1 = schatten_norm(x, 1);
        const double s2 = schatten_norm(x, 2);
        if (k < 50) {
            CHECK(s1 == doctest::Approx(oracles::naive_schatten1(x))
                            .epsilon(1e-10));
            CHECK(s2 == doctest::Approx(x.norm()).epsilon(1e-12));
        }
        // ||X||_1 <= sqrt(min(d1, d2)) ||X||_2
        worst = std::max(worst, s1 - std::sqrt(5.0) * s2);
    }
    CHECK(worst <= 1e-10);
    CHECK_THROWS_AS(schatten_norm(ComplexMatrix::Identity(2, 2), 3),
                    ParameterError);
}

TEST_CASE("trace norm halves the Schatten-1 norm of the difference") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    ComplexMatrix b = ComplexMatrix::Zero(2, 2);
    b(1, 1) = 1.0;
    CHECK(trace_norm(a - b) == doctest::Approx(1.0));  // orthogonal states
    CHECK(trace_norm(a - a) == doctest::Approx(0.0));
}

TEST_CASE("kron matches the index identity") {
    CounterRng rng(3, 0);
    const ComplexMatrix a = oracles::random_matrix(3, 2, rng);
    const ComplexMatrix b = oracles::random_matrix(2, 4, rng);
    const ComplexMatrix k = kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 8);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 8; ++j) {
            CHECK(std::abs(k(i, j) - a(i / 2, j / 4) * b(i % 2, j % 4)) <=
                  1e-15);
        }
    }
}

TEST_CASE("swap operator: involution, trace, and hermiticity") {
    for (int d = 2; d <= 8; ++d) {
        const ComplexMatrix f = pair_swap(d);
        CHECK((f * f - pair_identity(d)).cwiseAbs().maxCoeff() == 0.0);
        CHECK(std::abs(f.trace() - Complex(d)) == 0.0);
        CHECK((f - f.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("ladder operators resolve the identity and the swap") {
    for (int d : {2, 3, 5}) {
        ComplexMatrix sum_l = pair_diag_projector(d);
        ComplexMatrix sum_m = pair_diag_projector(d);
        for (int u = 1; u < d; ++u) {
            sum_l += ladder_diag(d, u);
            sum_m += ladder_swap(d, u);
        }
        CHECK((sum_l - pair_identity(d)).cwiseAbs().maxCoeff() == 0.0);
        CHECK((sum_m - pair_swap(d)).cwiseAbs().maxCoeff() == 0.0);
        // mutual Hilbert-Schmidt orthogonality, squared norm d
        for (int u = 1; u < d; ++u) {
            CHECK(std::abs(hs_inner(ladder_diag(d, u), ladder_diag(d, u)) -
                           Complex(d)) <= 1e-12);
            CHECK(std::abs(hs_inner(ladder_diag(d, u),
                                    pair_diag_projector(d))) <= 1e-12);
            CHECK(std::abs(hs_inner(ladder_diag(d, u), ladder_swap(d, u))) <=
                  1e-12);
        }
    }
}

TEST_CASE("PairBasisOperator materializes the named operators") {
    PairBasisOperator op;
    op.kind = PairBasisOperator::Kind::LadderDiag;
    op.offset = 2;
    CHECK((op.materialize(5) - ladder_diag(5, 2)).cwiseAbs().maxCoeff() ==
          0.0);
    op.kind = PairBasisOperator::Kind::Swap;
    CHECK((op.materialize(3) - pair_swap(3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("commutant decomposition solves the two-operator Gram system") {
    // d = 2, X = |01><01|: Tr X = 1, Tr FX = 0 -> coefficients 1/3, -1/6
    ComplexMatrix x = ComplexMatrix::Zero(4, 4);
    x(1, 1) = 1.0;
    const CommutantDecomposition dec = decompose_commutant(x, 2);
    CHECK(std::abs(dec.identity_coeff - Complex(1.0 / 3.0)) <= 1e-14);
    CHECK(std::abs(dec.swap_coeff - Complex(-1.0 / 6.0)) <= 1e-14);

    CounterRng rng(4, 0);
    for (int d : {2, 3, 4}) {
        const Eigen::Index n = Eigen::Index(d) * d;
        const ComplexMatrix y = oracles::random_matrix(n, n, rng);
        const CommutantDecomposition dy = decompose_commutant(y, d);
        const ComplexMatrix a_part = dy.identity_coeff * pair_identity(d) +
                                     dy.swap_coeff * pair_swap(d);
        // complement orthogonal to both I and F
        CHECK(std::abs(hs_inner(pair_identity(d), dy.complement)) <= 1e-10);
        CHECK(std::abs(hs_inner(pair_swap(d), dy.complement)) <= 1e-10);
        // reconstruction and Pythagoras
        CHECK((a_part + dy.complement - y).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(y.squaredNorm() ==
              doctest::Approx(a_part.squaredNorm() +
                              dy.complement.squaredNorm())
                  .epsilon(1e-12));
    }
    CHECK_THROWS_AS(decompose_commutant(ComplexMatrix::Identity(4, 4), 3),
                    DimensionError);
}

TEST_CASE("commutant projection fixes I and F themselves") {
    for (int d : {2, 4}) {
        const CommutantDecomposition di =
            decompose_commutant(pair_identity(d), d);
        CHECK(std::abs(di.identity_coeff - Complex(1.0)) <= 1e-13);
        CHECK(std::abs(di.swap_coeff) <= 1e-13);
        CHECK(di.complement.cwiseAbs().maxCoeff() <= 1e-13);
        const CommutantDecomposition df = decompose_commutant(pair_swap(d), d);
        CHECK(std::abs(df.identity_coeff) <= 1e-13);
        CHECK(std::abs(df.swap_coeff - Complex(1.0)) <= 1e-13);
    }
}

TEST_CASE("is_density_matrix accepts states and rejects non-states") {
    ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    CHECK(is_density_matrix(rho));
    rho(0, 1) = 0.9;  // breaks hermiticity
    CHECK(!is_density_matrix(rho));
    rho(0, 1) = 0.0;
    rho(0, 0) = 1.5;  // trace too large
    CHECK(!is_density_matrix(rho));
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;  // negative eigenvalue
    CHECK(!is_density_matrix(neg));
}
