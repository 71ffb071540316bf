#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mscn/distributions.hpp"
#include "mscn/numerics.hpp"
#include "mscn/rng.hpp"
#include "oracles.hpp"

using namespace mscn;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

MscnParams fig1_params(double theta, double a1, double a2, double e1, double e2) {
    MscnParams p;
    p.mu = {0.0, 0.0};
    p.gamma = rotation_matrix(theta);
    p.lambda = {0.75, 0.75};
    p.alpha = {a1, a2};
    p.eta = {e1, e2};
    return p;
}

}  // namespace

TEST_CASE("mn_logpdf basics") {
    // standard normal at 0
    const Vector x0 = {0.0}, mu0 = {0.0};
    CHECK(mn_logpdf(x0, mu0, Matrix::identity(1))
          == doctest::Approx(-0.9189385332046727).epsilon(1e-12));

    // zero quadratic form at the mean
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const std::size_t d = 1 + rng.uniform_below(4);
        const Matrix sigma = oracle::random_spd(d, rng);
        Vector mu(d);
        for (auto& v : mu) v = rng.normal();
        const double got = mn_logpdf(mu, mu, sigma);
        const double logdet = chol_logdet(cholesky(sigma).omega);
        CHECK(got == doctest::Approx(-0.5 * (d * std::log(2 * std::numbers::pi) + logdet))
                         .epsilon(1e-12));
    }

    // direct formula at (1,1)
    const Vector x11 = {1.0, 1.0}, mu2 = {0.0, 0.0};
    CHECK(mn_logpdf(x11, mu2, Matrix::identity(2))
          == doctest::Approx(-(2 * 0.9189385332046727 + 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(mn_logpdf(x11, mu2, mat2(1.0, 2.0, 2.0, 1.0)), std::runtime_error);
}

TEST_CASE("mn density integrates to one") {
    const Vector mu1 = {0.3};
    Matrix s1(1, 1);
    s1(0, 0) = 1.7;
    const double mass1 = oracle::simpson(
        [&](double x) {
            const double xv[1] = {x};
            return std::exp(mn_logpdf(std::span<const double>(xv, 1), mu1, s1));
        },
        -12.0, 12.0, 2000);
    CHECK(mass1 == doctest::Approx(1.0).epsilon(1e-3));

    const Vector mu2 = {0.0, 1.0};
    const Matrix s2 = mat2(1.0, 0.4, 0.4, 0.8);
    const double mass2 = oracle::simpson2d(
        [&](double x, double y) {
            const double xv[2] = {x, y};
            return std::exp(mn_logpdf(std::span<const double>(xv, 2), mu2, s2));
        },
        -7.0, 7.0, -6.0, 8.0, 220);
    CHECK(mass2 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("mcn_pdf") {
    McnParams p;
    p.mu = {0.0};
    p.sigma = Matrix::identity(1);

    SUBCASE("gaussian limit") {
        p.alpha = 1.0 - 1e-12;
        p.eta = 1.0 + 1e-12;
        Rng rng(8);
        for (int t = 0; t < 25; ++t) {
            const double xv[1] = {3.0 * rng.normal()};
            const std::span<const double> x(xv, 1);
            CHECK(mcn_pdf(x, p)
                  == doctest::Approx(std::exp(mn_logpdf(x, p.mu, p.sigma))).epsilon(1e-11));
        }
    }

    SUBCASE("hand sum of two normals at the mode") {
        p.alpha = 0.5;
        p.eta = 4.0;
        const double phi0 = 1.0 / std::sqrt(2.0 * std::numbers::pi);
        const double expected = 0.5 * phi0 + 0.5 * phi0 / 2.0;
        const Vector x = {0.0};
        CHECK(mcn_pdf(x, p) == doctest::Approx(expected).epsilon(1e-14));
    }

    SUBCASE("elliptical symmetry") {
        McnParams q;
        q.mu = {1.0, -2.0};
        q.sigma = mat2(2.0, 0.5, 0.5, 2.0);
        q.alpha = 0.8;
        q.eta = 5.0;
        Rng rng(99);
        for (int t = 0; t < 50; ++t) {
            Vector tvec = {rng.normal(), rng.normal()};
            const Vector xp = {q.mu[0] + tvec[0], q.mu[1] + tvec[1]};
            const Vector xm = {q.mu[0] - tvec[0], q.mu[1] - tvec[1]};
            CHECK(mcn_pdf(xp, q) == doctest::Approx(mcn_pdf(xm, q)).epsilon(1e-13));
        }
    }

    SUBCASE("strictly positive") {
        p.alpha = 0.9;
        p.eta = 20.0;
        const Vector far = {40.0};
        CHECK(mcn_pdf(far, p) > 0.0);
    }
}

TEST_CASE("mcn_posterior_good") {
    McnParams p;
    p.mu = {0.0};
    p.sigma = Matrix::identity(1);

    SUBCASE("alpha near one") {
        p.alpha = 1.0 - 1e-12;
        p.eta = 3.0;
        const Vector x = {2.5};
        CHECK(mcn_posterior_good(x, p) == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("at the mode, alpha=0.9 eta=9") {
        // 0.9 phi(0;0,1) / (0.9 phi(0;0,1) + 0.1 phi(0;0,9)) = 27/28
        p.alpha = 0.9;
        p.eta = 9.0;
        const Vector x = {0.0};
        CHECK(mcn_posterior_good(x, p) == doctest::Approx(27.0 / 28.0).epsilon(1e-14));
    }

    SUBCASE("decreasing along rays") {
        McnParams q;
        q.mu = {0.5, 0.5};
        q.sigma = mat2(1.5, -0.3, -0.3, 1.0);
        q.alpha = 0.85;
        q.eta = 7.0;
        Rng rng(123);
        for (int ray = 0; ray < 10; ++ray) {
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            double prev = 1.0;
            for (int step = 1; step <= 40; ++step) {
                const double r = 0.2 * step;
                const Vector x = {q.mu[0] + r * std::cos(angle), q.mu[1] + r * std::sin(angle)};
                const double post = mcn_posterior_good(x, q);
                CHECK(post < prev + 1e-12);
                CHECK(post > 0.0);
                CHECK(post < 1.0);
                prev = post;
            }
        }
    }
}

TEST_CASE("mscn_logpdf equals the pattern-sum oracle") {
    // d=2 frozen case from the contour figure parameters
    const MscnParams p = fig1_params(std::numbers::pi / 6, 0.7, 0.6, 3.0, 2.0);
    const Vector x = {1.0, 0.5};
    CHECK(mscn_logpdf(x, p) == doctest::Approx(oracle::pattern_sum_logpdf(x, p)).epsilon(1e-12));

    // 500 random pairs across d = 1..6
    Rng rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t d = 1 + rng.uniform_below(6);
        const MscnParams q = oracle::random_mscn_params(d, rng);
        Vector xr(d);
        for (auto& v : xr) v = q.mu[0] + 4.0 * rng.normal();
        const double got = mscn_logpdf(xr, q);
        const double want = oracle::pattern_sum_logpdf(xr, q);
        CHECK(std::fabs(got - want) < 1e-9);
    }
}

TEST_CASE("mscn_logpdf reduces to the univariate CN at d=1") {
    MscnParams p;
    p.mu = {0.7};
    p.gamma = Matrix::identity(1);
    p.lambda = {1.3};
    p.alpha = {0.8};
    p.eta = {6.0};
    McnParams q;
    q.mu = {0.7};
    q.sigma = Matrix(1, 1);
    q.sigma(0, 0) = 1.3;
    q.alpha = 0.8;
    q.eta = 6.0;
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        const Vector x = {0.7 + 4.0 * rng.normal()};
        CHECK(mscn_logpdf(x, p) == doctest::Approx(std::log(mcn_pdf(x, q))).epsilon(1e-12));
    }
}

TEST_CASE("mscn_logpdf gaussian limit") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        const std::size_t d = 1 + rng.uniform_below(3);
        MscnParams p = oracle::random_mscn_params(d, rng);
        for (std::size_t h = 0; h < d; ++h) {
            p.alpha[h] = 1.0 - 1e-12;
            p.eta[h] = 1.0 + 1e-12;
        }
        Vector x(d);
        for (auto& v : x) v = p.mu[0] + 2.0 * rng.normal();
        CHECK(mscn_logpdf(x, p)
              == doctest::Approx(mn_logpdf(x, p.mu, p.scale_matrix())).epsilon(1e-9));
    }
}

TEST_CASE("mscn factorizes over dimensions when gamma is the identity") {
    Rng rng(55);
    for (int t = 0; t < 20; ++t) {
        const std::size_t d = 2 + rng.uniform_below(3);
        MscnParams p = oracle::random_mscn_params(d, rng);
        p.gamma = Matrix::identity(d);
        Vector x(d);
        for (auto& v : x) v = 3.0 * rng.normal();
        double sum = 0.0;
        for (std::size_t h = 0; h < d; ++h) {
            McnParams uni;
            uni.mu = {p.mu[h]};
            uni.sigma = Matrix(1, 1);
            uni.sigma(0, 0) = p.lambda[h];
            uni.alpha = p.alpha[h];
            uni.eta = p.eta[h];
            const Vector xh = {x[h]};
            sum += std::log(mcn_pdf(xh, uni));
        }
        CHECK(mscn_logpdf(x, p) == doctest::Approx(sum).epsilon(1e-10));
    }
}

TEST_CASE("mscn_sample moments") {
    SUBCASE("mean and gaussian-limit covariance") {
        MscnParams p = fig1_params(std::numbers::pi / 6, 0.7, 0.6, 1.0 + 1e-12, 1.0 + 1e-12);
        p.mu = {1.0, -2.0};
        const std::size_t n = 100000;
        const Matrix s = mscn_sample(p, n, 31337);
        Vector mean(2, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < 2; ++c) mean[c] += s(i, c);
        for (auto& m : mean) m /= static_cast<double>(n);
        // sd of each coordinate is sqrt(0.75); 4 sigma/sqrt(n) band
        for (std::size_t c = 0; c < 2; ++c)
            CHECK(std::fabs(mean[c] - p.mu[c]) < 4.0 * std::sqrt(0.75 / n));

        Matrix cov(2, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b)
                    cov(a, b) += (s(i, a) - p.mu[a]) * (s(i, b) - p.mu[b]);
        const Matrix sigma = p.scale_matrix();
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                CHECK(cov(a, b) / n == doctest::Approx(sigma(a, b)).epsilon(0.05).scale(1.0));
    }

    SUBCASE("contaminated covariance matches the mixture moment") {
        // E W_v^{1/2} Lambda W_v^{1/2} = diag(lambda_h (alpha_h + (1-alpha_h) eta_h))
        MscnParams p = fig1_params(0.4, 0.8, 0.65, 5.0, 2.5);
        const std::size_t n = 200000;
        const Matrix s = mscn_sample(p, n, 777);
        Matrix cov(2, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) cov(a, b) += s(i, a) * s(i, b);
        Matrix expected(2, 2);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                double v = 0.0;
                for (std::size_t h = 0; h < 2; ++h)
                    v += p.gamma(a, h) * p.lambda[h]
                         * (p.alpha[h] + (1.0 - p.alpha[h]) * p.eta[h]) * p.gamma(b, h);
                expected(a, b) = v;
            }
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                CHECK(cov(a, b) / n == doctest::Approx(expected(a, b)).epsilon(0.05).scale(1.0));
    }

    SUBCASE("deterministic given the seed") {
        const MscnParams p = fig1_params(0.1, 0.75, 0.7, 3.0, 2.0);
        CHECK(mscn_sample(p, 64, 5) == mscn_sample(p, 64, 5));
        CHECK(mscn_sample(p, 64, 5) != mscn_sample(p, 64, 6));
    }
}

TEST_CASE("mscn_density_grid") {
    SUBCASE("point reflection symmetry about the mean") {
        const MscnParams p = fig1_params(std::numbers::pi / 6, 0.7, 0.6, 3.0, 2.0);
        const DensityGrid g = mscn_density_grid(p, -4.0, 4.0, -4.0, 4.0, 41);
        const std::size_t r = 41;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                CHECK(g.logpdf(i, j)
                      == doctest::Approx(g.logpdf(r - 1 - i, r - 1 - j)).epsilon(1e-12));
    }

    SUBCASE("non-elliptical level sets: anisotropy across the rotated axes") {
        // equal scales but different contamination per axis, so an MN with
        // the same scale matrix would be radially symmetric here
        const MscnParams p = fig1_params(std::numbers::pi / 6, 0.7, 0.6, 3.0, 2.0);
        const double r = 3.0;
        const Vector axis1 = {p.mu[0] + r * p.gamma(0, 0), p.mu[1] + r * p.gamma(1, 0)};
        const Vector axis2 = {p.mu[0] + r * p.gamma(0, 1), p.mu[1] + r * p.gamma(1, 1)};
        const double f1 = mscn_logpdf(axis1, p);
        const double f2 = mscn_logpdf(axis2, p);
        CHECK(std::fabs(f1 - f2) > 0.2);
    }

    SUBCASE("total mass") {
        const MscnParams p = fig1_params(std::numbers::pi / 6, 0.7, 0.6, 3.0, 2.0);
        const std::size_t res = 321;
        const DensityGrid g = mscn_density_grid(p, -9.0, 9.0, -9.0, 9.0, res);
        const double cell = (18.0 / (res - 1.0)) * (18.0 / (res - 1.0));
        double mass = 0.0;
        for (std::size_t i = 0; i < res; ++i)
            for (std::size_t j = 0; j < res; ++j) mass += std::exp(g.logpdf(i, j)) * cell;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-2));
    }

    SUBCASE("rejects d != 2") {
        MscnParams p;
        p.mu = {0.0};
        p.gamma = Matrix::identity(1);
        p.lambda = {1.0};
        p.alpha = {0.9};
        p.eta = {2.0};
        CHECK_THROWS_AS(mscn_density_grid(p, -1, 1, -1, 1, 10), std::invalid_argument);
    }
}

TEST_CASE("rotation_matrix") {
    CHECK(rotation_matrix(0.0) == Matrix::identity(2));

    const Matrix quarter = rotation_matrix(std::numbers::pi / 2);
    CHECK(quarter(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(quarter(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(quarter(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(quarter(1, 1) == doctest::Approx(0.0).epsilon(1e-14));

    const Matrix sixth = rotation_matrix(std::numbers::pi / 6);
    CHECK(sixth(0, 0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(sixth(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    const double det = sixth(0, 0) * sixth(1, 1) - sixth(0, 1) * sixth(1, 0);
    CHECK(det == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    MscnParams p = fig1_params(0.3, 0.7, 0.6, 3.0, 2.0);
    CHECK_NOTHROW(p.validate());
    p.alpha[0] = 1.2;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.alpha[0] = 0.7;
    p.eta[1] = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.eta[1] = 2.0;
    p.gamma(0, 0) = 2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
