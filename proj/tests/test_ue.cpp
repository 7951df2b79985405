#include <doctest.h>

#include <cmath>

#include "cv2design/ue.hpp"
#include "oracles.hpp"

using namespace cv2design;

TEST_CASE("sign/distance split of the labels is a bijection") {
    for (int label = -8; label <= 7; ++label) {
        const SignDistIndex idx = sign_dist_of_label(label);
        CHECK(idx.sign == (label < 0 ? 1 : 0));
        CHECK(label_of_sign_dist(idx) == label);
    }
    for (int sign : {0, 1}) {
        for (int dist = 0; dist < 6; ++dist) {
            const SignDistIndex idx{sign, dist};
            CHECK(sign_dist_of_label(label_of_sign_dist(idx)).sign == sign);
            CHECK(sign_dist_of_label(label_of_sign_dist(idx)).dist == dist);
        }
    }
}

TEST_CASE("plaintext states: half the boxes, uniform, disjoint") {
    const QecmScheme scheme = QecmScheme::standard(4, 1);
    const ComplexMatrix r0 = scheme.plaintext_state(0);
    const ComplexMatrix r1 = scheme.plaintext_state(1);
    // labels by position: -2 -1 0 1; bit 0 sits on the non-negative labels
    for (int p = 0; p < 4; ++p) {
        const double in0 = p >= 2 ? 0.5 : 0.0;
        CHECK(std::abs(r0(p, p) - Complex(in0)) <= 1e-15);
        CHECK(std::abs(r1(p, p) - Complex(0.5 - in0)) <= 1e-15);
    }
    CHECK(std::abs(r0.trace() - Complex(1.0)) <= 1e-15);
    CHECK((r0 * r0).trace().real() == doctest::Approx(0.5));  // purity 2/d
    CHECK((r0 * r1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(is_density_matrix(r0));
    CHECK_THROWS_AS(scheme.plaintext_state(2), ParameterError);
    CHECK_THROWS_AS(QecmScheme::standard(5, 1), ParityError);
    CHECK_THROWS_AS(QecmScheme::standard(4, -1), ParameterError);
}

TEST_CASE("key sampling: shape, determinism, uniformity") {
    const QecmScheme scheme = QecmScheme::standard(8, 3);
    const QecmKey k1 = scheme.sample_key(7, 1);
    const QecmKey k2 = scheme.sample_key(7, 1);
    const QecmKey k3 = scheme.sample_key(7, 2);
    REQUIRE(k1.rounds.size() == 3);
    CHECK(k1.ell == 3);
    CHECK(k1.mode == QecmMode::Standard);
    bool identical = true;
    bool all_same_as_k3 = true;
    for (size_t r = 0; r < 3; ++r) {
        identical = identical && k1.rounds[r].alpha == k2.rounds[r].alpha &&
                    k1.rounds[r].beta_pp == k2.rounds[r].beta_pp;
        all_same_as_k3 =
            all_same_as_k3 && k1.rounds[r].alpha == k3.rounds[r].alpha;
        for (double p : {k1.rounds[r].alpha, k1.rounds[r].beta,
                         k1.rounds[r].alpha_p, k1.rounds[r].beta_p,
                         k1.rounds[r].alpha_pp, k1.rounds[r].beta_pp}) {
            CHECK(p >= 0.0);
            CHECK(p < 8.0);
        }
    }
    CHECK(identical);
    CHECK(!all_same_as_k3);

    // sample mean of a single parameter over many streams: d/2 within 3 sigma
    const int n = 10000;
    double acc = 0.0;
    for (int t = 0; t < n; ++t) {
        acc += scheme.sample_key(42, std::uint64_t(t)).rounds[0].alpha;
    }
    const double sigma_mean = 8.0 / std::sqrt(12.0) / std::sqrt(double(n));
    CHECK(std::abs(acc / n - 4.0) <= 3.0 * sigma_mean);
}

TEST_CASE("key unitary: identity at zero key, unitarity, composition") {
    const QecmScheme scheme = QecmScheme::standard(8, 2);
    QecmKey zero;
    zero.ell = 2;
    zero.rounds.resize(2);
    const ComplexMatrix u0 = scheme.key_unitary(zero);
    CHECK((u0 - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-12);

    const QecmKey k = scheme.sample_key(3);
    const ComplexMatrix u = scheme.key_unitary(k);
    CHECK((u * u.adjoint() - ComplexMatrix::Identity(8, 8))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);

    // two rounds compose as U(round 2) * U(round 1)
    const QecmScheme one = QecmScheme::standard(8, 1);
    const QecmKey ka{1, QecmMode::Standard, {k.rounds[0]}};
    const QecmKey kb{1, QecmMode::Standard, {k.rounds[1]}};
    const ComplexMatrix composed = one.key_unitary(kb) * one.key_unitary(ka);
    CHECK((u - composed).cwiseAbs().maxCoeff() <= 1e-12);

    QecmKey bad = k;
    bad.rounds[0].alpha = 8.0;  // parameters live in [0, d)
    CHECK_THROWS_AS(scheme.key_unitary(bad), ParameterError);
    QecmKey short_key = k;
    short_key.rounds.pop_back();
    CHECK_THROWS_AS(scheme.key_unitary(short_key), ParameterError);
}

TEST_CASE("encrypt/decrypt round-trips with the right key") {
    const QecmScheme scheme = QecmScheme::standard(8, 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int x = int(seed % 2);
        const QecmKey key = scheme.sample_key(seed);
        const Ciphertext ct = scheme.encrypt(x, key);
        CHECK(ct.d == 8);
        CHECK(ct.ell == 2);
        CHECK(is_density_matrix(ct.rho, 1e-10, 1e-10, 1e-10));
        const DecryptionResult dr = scheme.decrypt(ct, key);
        CHECK(dr.plaintext == x);
        CHECK(dr.confidence >= 1.0 - 1e-9);
        CHECK(!dr.ambiguous);
    }
    // encryption is unitary: spectrum stays {2/d on d/2 boxes, 0 elsewhere}
    const Ciphertext ct = scheme.encrypt(0, scheme.sample_key(99));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ct.rho);
    for (int i = 0; i < 8; ++i) {
        const double want = i < 4 ? 0.0 : 0.25;
        CHECK(std::abs(es.eigenvalues()[i] - want) <= 1e-10);
    }
    CHECK_THROWS_AS(scheme.encrypt(3, scheme.sample_key(0)), ParameterError);
}

TEST_CASE("decrypting with the wrong key is unreliable") {
    const QecmScheme scheme = QecmScheme::standard(8, 2);
    int wrong = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const int x = int(seed % 2);
        const Ciphertext ct = scheme.encrypt(x, scheme.sample_key(seed, 1));
        const DecryptionResult dr =
            scheme.decrypt(ct, scheme.sample_key(seed, 2));
        if (dr.plaintext != x) ++wrong;
    }
    CHECK(wrong >= 10);
}

TEST_CASE("decrypt flags the maximally mixed ciphertext as ambiguous") {
    const QecmScheme scheme = QecmScheme::standard(8, 2);
    Ciphertext flat;
    flat.rho = ComplexMatrix::Identity(8, 8) / 8.0;
    flat.d = 8;
    flat.ell = 2;
    const DecryptionResult dr = scheme.decrypt(flat, scheme.sample_key(4));
    CHECK(dr.ambiguous);
    CHECK(dr.confidence == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ciphertext provenance is checked") {
    const QecmScheme scheme = QecmScheme::standard(8, 2);
    const QecmKey key = scheme.sample_key(5);
    Ciphertext ct = scheme.encrypt(1, key);
    ct.ell = 1;
    CHECK_THROWS_AS(scheme.decrypt(ct, key), ParameterError);
    ct.ell = 2;
    ct.d = 4;
    CHECK_THROWS_AS(scheme.decrypt(ct, key), ParameterError);
    ct.d = 8;
    ct.rho = ComplexMatrix::Identity(4, 4) / 4.0;
    CHECK_THROWS_AS(scheme.decrypt(ct, key), DimensionError);
}

TEST_CASE("key-averaged ciphertext is maximally mixed") {
    for (int ell : {1, 2}) {
        const QecmScheme scheme = QecmScheme::standard(8, ell);
        const ComplexMatrix flat = ComplexMatrix::Identity(8, 8) / 8.0;
        for (int x : {0, 1}) {
            CHECK((scheme.averaged_ciphertext_exact(x) - flat)
                      .cwiseAbs()
                      .maxCoeff() <= 1e-12);
        }
        CHECK(trace_norm(scheme.averaged_ciphertext_exact(0) -
                         scheme.averaged_ciphertext_exact(1)) <= 1e-12);
    }

    const QecmScheme scheme = QecmScheme::standard(8, 1);
    const std::int64_t n = 2000;
    const ComplexMatrix mc = scheme.averaged_ciphertext_mc(0, n, 11);
    CHECK((mc - scheme.averaged_ciphertext_mc(0, n, 11))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((mc - ComplexMatrix::Identity(8, 8) / 8.0).norm() <=
          5.0 / std::sqrt(double(n)));
}

TEST_CASE("measure-and-resend: perfect without twirling, blunted with it") {
    // zero rounds: the ciphertext is the plaintext, the adversary always wins
    const QecmScheme open_scheme = QecmScheme::standard(4, 0);
    const MeasureResendResult open_res =
        open_scheme.simulate_measure_resend(500, 21);
    CHECK(open_res.win_probability == 1.0);
    CHECK(open_res.wins == 500);
    CHECK(open_res.std_error == 0.0);

    const QecmScheme scheme = QecmScheme::standard(8, 2);
    const MeasureResendResult res = scheme.simulate_measure_resend(4096, 13);
    CHECK(res.trials == 4096);
    CHECK(res.wins >= 0);
    CHECK(res.wins <= 4096);
    CHECK(res.win_probability ==
          doctest::Approx(double(res.wins) / 4096.0).epsilon(1e-15));
    CHECK(res.std_error ==
          doctest::Approx(std::sqrt(res.win_probability *
                                    (1.0 - res.win_probability) / 4096.0))
              .epsilon(1e-12));
    // strictly better than guessing, far from perfect
    CHECK(res.win_probability >= 0.25);
    CHECK(res.win_probability <= 0.9);
    // regression anchor for this seed
    CHECK(res.wins == 2592);

    const MeasureResendResult again = scheme.simulate_measure_resend(4096, 13);
    CHECK(again.wins == res.wins);
    CHECK_THROWS_AS(scheme.simulate_measure_resend(0, 1), ParameterError);
}

TEST_CASE("security bound: pinned values, monotone in d and ell") {
    const int d20 = 1 << 20;
    CHECK(security_delta(d20, 5).value ==
          doctest::Approx(0.72480937605257276).epsilon(1e-12));
    CHECK(security_delta(d20, 8).value ==
          doctest::Approx(0.32414460711655218).epsilon(1e-12));
    // at ell = 5 the root term is exactly sqrt(5) times its large-ell limit
    const double prefactor =
        3.0 * std::log2(std::log2(double(d20))) / (2.0 * std::log2(double(d20)));
    CHECK(security_delta(d20, 5).value ==
          doctest::Approx(std::sqrt(5.0) * prefactor).epsilon(1e-14));

    double prev = security_delta(d20, 1).value;
    for (int ell = 2; ell <= 8; ++ell) {
        const double cur = security_delta(d20, ell).value;
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(security_delta(d20, 4).small_ell);
    CHECK(!security_delta(d20, 5).small_ell);
    CHECK(security_delta(d20, 5).log_base == 2);

    prev = security_delta(1 << 4, 10).value;
    for (int k = 5; k <= 20; ++k) {
        const double cur = security_delta(1 << k, 10).value;
        CHECK(cur < prev);
        prev = cur;
    }

    CHECK_THROWS_AS(security_delta(3, 5), ParameterError);
    CHECK_THROWS_AS(security_delta(1024, 0), ParameterError);
}

TEST_CASE("prime-dimension variant: integer keys, origin box unused") {
    CHECK_THROWS_AS(QecmScheme::experimental_prime(4, 1), PrimalityError);
    CHECK_THROWS_AS(QecmScheme::experimental_prime(2, 1), PrimalityError);

    const QecmScheme scheme = QecmScheme::experimental_prime(5, 1);
    const ComplexMatrix r0 = scheme.plaintext_state(0);
    const ComplexMatrix r1 = scheme.plaintext_state(1);
    // labels by position: -2 -1 0 1 2; the origin box carries neither bit
    CHECK(std::abs(r0(2, 2)) == 0.0);
    CHECK(std::abs(r1(2, 2)) == 0.0);
    CHECK(std::abs(r0(3, 3) - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(r0(4, 4) - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(r1(0, 0) - Complex(0.5)) <= 1e-15);
    CHECK(std::abs(r1(1, 1) - Complex(0.5)) <= 1e-15);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const QecmKey key = scheme.sample_key(seed);
        CHECK(key.mode == QecmMode::ExperimentalPrime);
        for (double p : {key.rounds[0].alpha, key.rounds[0].beta,
                         key.rounds[0].alpha_p, key.rounds[0].beta_p,
                         key.rounds[0].alpha_pp, key.rounds[0].beta_pp}) {
            CHECK(p == std::round(p));
            CHECK(std::abs(p) <= 2.0);
        }
        const int x = int(seed % 2);
        const DecryptionResult dr =
            scheme.decrypt(scheme.encrypt(x, key), key);
        CHECK(dr.plaintext == x);
        CHECK(dr.confidence >= 1.0 - 1e-9);
    }

    // a standard-mode key is rejected by the prime-mode scheme
    QecmKey other = QecmScheme::standard(8, 1).sample_key(0);
    CHECK_THROWS_AS(scheme.key_unitary(other), ParameterError);
}
