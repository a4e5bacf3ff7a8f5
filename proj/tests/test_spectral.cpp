#include <doctest.h>

#include <cmath>
#include <complex>

#include "phsf/spectral.hpp"
#include "test_util.hpp"

using namespace phsf;

namespace {

Parameters simple_params(int n, double alpha, double beta, double gamma) {
    Parameters p;
    p.n_agents = n;
    p.ring_length = static_cast<double>(n);
    p.alpha = alpha;
    p.beta = beta;
    p.gamma = gamma;
    p.sigma = 1.0;
    return p;
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("mode factors") {
    const auto mu4 = mode_factors(4);
    CHECK(mu4[0] == 0.0);
    CHECK(mu4[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mu4[2] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(mu4[3] == mu4[1]); // exact mirror

    const auto mu3 = mode_factors(3);
    CHECK(mu3[0] == 0.0);
    CHECK(mu3[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(mu3[2] == mu3[1]);

    for (int n : {3, 5, 8, 17, 64}) {
        const auto mu = mode_factors(n);
        CHECK(mu[0] == 0.0);
        for (int j = 0; j < n; ++j) {
            CHECK(mu[j] >= 0.0);
            CHECK(mu[j] <= 4.0);
            CHECK(mu[j] == mu[(n - j) % n]);
        }
    }

    CHECK_THROWS_AS(mode_factors(2), std::invalid_argument);
}

TEST_CASE("mode-0 eigenvalues are 0 and -gamma") {
    const auto dec = eigenvalues(simple_params(6, 1.0, 1.0, 1.0));
    CHECK(dec.lambda(0, 1) == std::complex<double>(0.0, 0.0));
    CHECK(dec.lambda(0, 2) == std::complex<double>(-1.0, 0.0));
}

TEST_CASE("hand-evaluated quadratic roots") {
    SUBCASE("double root at mu = 4") {
        const auto dec = eigenvalues(simple_params(4, 1.0, 1.0, 0.0));
        CHECK(dec.lambda(2, 1).real() == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(dec.lambda(2, 2).real() == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(dec.lambda(2, 1).imag() == 0.0);
        CHECK(dec.lambda(2, 2).imag() == 0.0);
    }

    SUBCASE("real pair at mu = 2") {
        const auto dec = eigenvalues(simple_params(4, 1.0, 1.0, 1.0));
        CHECK(dec.lambda(1, 1).real() == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(dec.lambda(1, 2).real() == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(dec.lambda(1, 1).imag() == 0.0);
    }
}

TEST_CASE("characteristic polynomial residual and conjugate closure") {
    Xoshiro256pp rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.next() % 30);
        const Parameters p = test::random_parameters(rng, n, trial % 5 == 0 ? 0.0 : 0.01);
        const auto dec = eigenvalues(p);

        double trace_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double mu = dec.mode_factors[j];
            for (int k = 1; k <= 2; ++k) {
                const std::complex<double> lambda = dec.lambda(j, k);
                const std::complex<double> residual =
                    lambda * lambda + lambda * (p.beta * mu + p.gamma) +
                    std::complex<double>(p.alpha * p.alpha * mu, 0.0);
                CHECK(std::abs(residual) < 1e-10);
                trace_sum += lambda.real();

                // Conjugate partner is present exactly.
                if (lambda.imag() != 0.0) {
                    const std::complex<double> partner = dec.lambda(j, k == 1 ? 2 : 1);
                    CHECK(partner == std::conj(lambda));
                }
            }
        }

        const double trace_expected = -2.0 * p.beta * n - p.gamma * n;
        CHECK(trace_sum ==
              doctest::Approx(trace_expected).epsilon(1e-9));
    }
}

TEST_CASE("stability classification") {
    SUBCASE("gamma > 0 is asymptotically stable") {
        for (double gamma : {1.0, 0.1, 3.0}) {
            const auto verdict = is_asymptotically_stable(simple_params(10, 1.0, 1.0, gamma));
            CHECK(verdict.stable);
            CHECK(verdict.max_real_part_nonzero_modes < 0.0);
        }
    }

    SUBCASE("gamma = 0 leaves a zero mode") {
        const auto verdict = is_asymptotically_stable(simple_params(10, 1.0, 1.0, 0.0));
        CHECK_FALSE(verdict.stable);
        CHECK(verdict.max_real_part_nonzero_modes == 0.0);
    }
}

TEST_CASE("dense oracle matches the closed form") {
    SUBCASE("small systems") {
        const Parameters p = simple_params(3, 1.0, 1.0, 1.0);
        const auto closed = eigenvalues(p).eigenvalues;
        const auto dense = dense_spectrum_oracle(p);
        CHECK(multiset_distance(closed, dense) < 1e-8);
    }

    SUBCASE("reference configuration") {
        Parameters p = simple_params(10, 1.0, 1.0, 0.1);
        p.ring_length = 501.0;
        const auto closed = eigenvalues(p).eigenvalues;
        const auto dense = dense_spectrum_oracle(p);
        CHECK(multiset_distance(closed, dense) < 1e-8);
    }

    SUBCASE("random parameters across sizes") {
        Xoshiro256pp rng(22);
        for (int n : {3, 5, 8, 16, 33, 64}) {
            const Parameters p = test::random_parameters(rng, n, 0.0);
            const auto closed = eigenvalues(p).eigenvalues;
            const auto dense = dense_spectrum_oracle(p);
            CHECK(multiset_distance(closed, dense) < 1e-8);
        }
    }

    SUBCASE("beta = 0 boundary") {
        const Parameters p = simple_params(6, 1.5, 0.0, 0.7);
        const auto closed = eigenvalues(p).eigenvalues;
        const auto dense = dense_spectrum_oracle(p);
        CHECK(multiset_distance(closed, dense) < 1e-8);
    }

    SUBCASE("sigma does not enter the spectrum") {
        Parameters p0 = simple_params(7, 1.3, 0.8, 0.4);
        Parameters p1 = p0;
        p0.sigma = 0.0;
        p1.sigma = 1.0;
        const auto s0 = dense_spectrum_oracle(p0);
        const auto s1 = dense_spectrum_oracle(p1);
        REQUIRE(s0.size() == s1.size());
        for (std::size_t i = 0; i < s0.size(); ++i) CHECK(s0[i] == s1[i]);
    }
}

TEST_CASE("multiset distance") {
    using C = std::complex<double>;
    std::vector<C> a = {C(0, 0), C(1, 1), C(-2, 0)};
    std::vector<C> b = {C(-2, 1e-3), C(1e-4, 0), C(1, 1)};
    CHECK(multiset_distance(a, b) == doctest::Approx(1e-3).epsilon(1e-9));

    std::vector<C> c = {C(0, 0)};
    CHECK_THROWS_AS(multiset_distance(a, c), std::invalid_argument);
}

} // TEST_SUITE

