#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "sigmox/error_grid.hpp"
#include "sigmox/mc.hpp"
#include "sigmox/sigmoid.hpp"
#include "sigmox/softmax.hpp"
#include "support/oracles.hpp"

using namespace sigmox;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("sampler determinism: same seed, bit-identical stream") {
    Gaussian1DSampler a(Gaussian1D(1.5, 2.0), 77);
    Gaussian1DSampler b(Gaussian1D(1.5, 2.0), 77);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());

    Gaussian1DSampler c(Gaussian1D(1.5, 2.0), 78);
    bool all_equal = true;
    Gaussian1DSampler a2(Gaussian1D(1.5, 2.0), 77);
    for (int i = 0; i < 100; ++i) all_equal = all_equal && (a2.next() == c.next());
    CHECK_FALSE(all_equal);
}

TEST_CASE("degenerate scalar sampler returns the mean exactly") {
    Gaussian1DSampler s(Gaussian1D(5.0, 0.0), 1);
    for (int i = 0; i < 100; ++i) CHECK(s.next() == 5.0);
}

TEST_CASE("scalar sampler moments obey the CLT bound") {
    const auto est = mc_expect([](double x) { return x; }, Gaussian1D(0.0, 1.0),
                               MCConfig(1'000'000, 31));
    CHECK(std::abs(est.value) <= 4.0 / 1000.0);
    CHECK(est.std_error == doctest::Approx(1.0 / 1000.0).epsilon(0.01));
}

TEST_CASE("CLT sanity: 4 standard errors covers the mean in >= 99.9% of seeded trials") {
    int hits = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const auto est = mc_expect([](double x) { return x; }, Gaussian1D(2.0, 1.0),
                                   MCConfig(1000, 1000 + t));
        if (std::abs(est.value - 2.0) <= 4.0 * est.std_error) ++hits;
    }
    CHECK(hits >= 999);
}

TEST_CASE("mc_expect: sigmoid symmetry point and the NaN contract") {
    for (double var : {0.25, 4.0, 64.0}) {
        const auto est = mc_expect([](double x) { return sigmoid(x); }, Gaussian1D(0.0, var),
                                   MCConfig(200'000, 5));
        CHECK(std::abs(est.value - 0.5) <= 4.0 * est.std_error);
    }

    CHECK_THROWS_AS(mc_expect([](double x) { return x > 2.0 ? std::nan("") : x; },
                              Gaussian1D(0.0, 1.0), MCConfig(100'000, 8)),
                    EstimationError);
}

TEST_CASE("vector sampler: covariance recovery, correlation, degeneracy") {
    const int k = 3;
    const std::uint64_t n = 200'000;

    SUBCASE("identity covariance") {
        GaussianVecSampler s(GaussianVec(VectorXd::Zero(k), MatrixXd::Identity(k, k)), 12);
        VectorXd x(k);
        MatrixXd sum2 = MatrixXd::Zero(k, k);
        VectorXd sum = VectorXd::Zero(k);
        for (std::uint64_t i = 0; i < n; ++i) {
            s.next(x);
            sum += x;
            sum2 += x * x.transpose();
        }
        const VectorXd mean = sum / double(n);
        const MatrixXd cov = sum2 / double(n) - mean * mean.transpose();
        const double tol = 5.0 / std::sqrt(double(n));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                CHECK(std::abs(cov(i, j) - (i == j ? 1.0 : 0.0)) < tol * 2.0);
    }

    SUBCASE("simulation covariance reproduces d(rho)") {
        const SimCovSpec spec(1.0, 0.5);
        GaussianVecSampler s(GaussianVec(VectorXd::Zero(k), sim_covariance(spec)), 13);
        VectorXd x(k);
        double off = 0.0, diag = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            s.next(x);
            off += x[0] * x[1];
            diag += x[0] * x[0];
        }
        CHECK(std::abs(off / diag - spec.marginal_correlation()) < 5.0 / std::sqrt(double(n)));
    }

    SUBCASE("rank-1 covariance keeps samples on the line") {
        VectorXd v(k);
        v << 1.0, -2.0, 0.5;
        VectorXd mu(k);
        mu << 3.0, 0.0, -1.0;
        GaussianVecSampler s(GaussianVec(mu, v * v.transpose()), 14);
        VectorXd x(k);
        const VectorXd dir = v.normalized();
        for (int i = 0; i < 2000; ++i) {
            s.next(x);
            const VectorXd r = x - mu;
            CHECK((r - dir.dot(r) * dir).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("mc_expect_vec: symmetry and agreement with the scalar oracle at K=2") {
    const auto est = mc_expect_vec(
        [](const VectorXd& x) {
            return 1.0 / (1.0 + std::exp(x[1] - x[0]) + std::exp(x[2] - x[0]));
        },
        GaussianVec(VectorXd::Zero(3), MatrixXd::Identity(3, 3)), MCConfig(500'000, 21));
    CHECK(std::abs(est.value - 1.0 / 3.0) <= 4.0 * est.std_error);

    VectorXd mu(2);
    mu << 0.7, -0.2;
    MatrixXd cov(2, 2);
    cov << 2.0, 0.3, 0.3, 1.0;
    const auto vec_est = mc_expect_vec(
        [](const VectorXd& x) { return 1.0 / (1.0 + std::exp(x[1] - x[0])); },
        GaussianVec(mu, cov), MCConfig(500'000, 22));
    const Gaussian1D contrast(0.9, 2.0 + 1.0 - 2.0 * 0.3);
    const auto sc_est = mc_expect([](double d) { return sigmoid(d); }, contrast,
                                  MCConfig(500'000, 23));
    const double joint_se = std::hypot(vec_est.std_error, sc_est.std_error);
    CHECK(std::abs(vec_est.value - sc_est.value) <= 4.0 * joint_se);
}

TEST_CASE("mc_variance") {
    const auto zero = mc_variance([](double x) { return sigmoid(x); }, Gaussian1D(3.0, 0.0),
                                  MCConfig(10'000, 3));
    CHECK(zero.value == 0.0);

    const auto big = mc_variance([](double x) { return sigmoid(x); }, Gaussian1D(0.0, 256.0),
                                 MCConfig(500'000, 4));
    CHECK(big.value < 0.25);
    CHECK(big.value > 0.2);

    const auto mid = mc_variance([](double x) { return sigmoid(x); }, Gaussian1D(0.0, 4.0),
                                 MCConfig(500'000, 5));
    const double es = oracles::gauss_expect([](double x) { return sigmoid(x); }, 0.0, 4.0);
    const double es2 = oracles::gauss_expect([](double x) { return sigmoid(x) * sigmoid(x); },
                                             0.0, 4.0);
    CHECK(std::abs(mid.value - (es2 - es * es)) <= 4.0 * mid.std_error);
}

TEST_CASE("variance identity: E[s](1-E[s]) - E[s'] matches Var[s] within Monte-Carlo noise") {
    rng::Xoshiro256pp gen(51);
    for (int trial = 0; trial < 20; ++trial) {
        const double mu = -6.0 + 12.0 * gen.uniform01();
        const double var = 0.1 + 30.0 * gen.uniform01();
        const Gaussian1D g(mu, var);
        const std::uint64_t n = 200'000;
        const auto m = mc_expect([](double x) { return sigmoid(x); }, g, MCConfig(n, 60 + trial));
        const auto d = mc_expect([](double x) { return sigmoid_deriv(x, 1); }, g,
                                 MCConfig(n, 160 + trial));
        const auto v = mc_variance([](double x) { return sigmoid(x); }, g,
                                   MCConfig(n, 260 + trial));
        const double lhs = m.value * (1.0 - m.value) - d.value;
        const double se = std::sqrt(std::pow((1.0 - 2.0 * m.value) * m.std_error, 2) +
                                    d.std_error * d.std_error + v.std_error * v.std_error);
        CHECK(std::abs(lhs - v.value) <= 3.0 * se);
    }
}

TEST_CASE("MCConfig rejects statistically meaningless sample counts") {
    CHECK_THROWS_AS(MCConfig(999, 1), std::invalid_argument);
    CHECK_NOTHROW(MCConfig(1000, 1));
}

TEST_CASE("build_error_grid: self-comparison stays within oracle noise") {
    const std::vector<double> mu = {-2.0, 0.0, 1.0, 4.0};
    const std::vector<double> sig = {0.5, 2.0, 8.0};
    const auto truth = [](const Gaussian1D& g) {
        return oracles::gauss_expect([](double x) { return sigmoid(x); }, g.mean, g.variance);
    };
    const ErrorGrid grid = build_error_grid(truth, [](double x) { return sigmoid(x); }, mu, sig,
                                            MCConfig(50'000, 7));
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < sig.size(); ++j)
            CHECK(std::abs(grid.approx(i, j) - grid.oracle(i, j)) <=
                  4.0 * grid.oracle_stderr(i, j));
}

TEST_CASE("build_error_grid: bit-identical across thread counts and reruns") {
    const std::vector<double> mu = {-3.0, 0.0, 2.0};
    const std::vector<double> sig = {0.25, 1.0, 16.0};
    const auto approx = [](const Gaussian1D& g) { return fixed_form_expected_sigmoid(g); };
    const auto f = [](double x) { return sigmoid(x); };

    const ErrorGrid serial = build_error_grid(approx, f, mu, sig, MCConfig(20'000, 11), 1);
    const ErrorGrid parallel = build_error_grid(approx, f, mu, sig, MCConfig(20'000, 11), 4);
    const ErrorGrid rerun = build_error_grid(approx, f, mu, sig, MCConfig(20'000, 11), 4);

    CHECK(std::memcmp(serial.oracle.data(), parallel.oracle.data(),
                      sizeof(double) * 9) == 0);
    CHECK(std::memcmp(serial.rel_error.data(), parallel.rel_error.data(),
                      sizeof(double) * 9) == 0);
    CHECK(std::memcmp(rerun.oracle.data(), parallel.oracle.data(),
                      sizeof(double) * 9) == 0);

    // and across a different seed the oracles differ
    const ErrorGrid other = build_error_grid(approx, f, mu, sig, MCConfig(20'000, 12), 4);
    CHECK(std::memcmp(other.oracle.data(), serial.oracle.data(), sizeof(double) * 9) != 0);
}

TEST_CASE("build_error_grid: cell failures carry their coordinates") {
    const std::vector<double> mu = {-1.0, 0.0, 3.0};
    const std::vector<double> sig = {1.0};
    try {
        build_error_grid([](const Gaussian1D&) { return 0.5; },
                         [](double x) { return x > 6.0 ? std::nan("") : x; }, mu, sig,
                         MCConfig(5'000, 2));
        FAIL("expected EstimationError");
    } catch (const EstimationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("cell") != std::string::npos);
        CHECK(msg.find("3.0") != std::string::npos);
    }

    CHECK_THROWS_AS(build_error_grid([](const Gaussian1D&) { return 0.0; },
                                     [](double x) { return x; }, {}, {1.0},
                                     MCConfig(1'000, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_error_grid([](const Gaussian1D&) { return 0.0; },
                                     [](double x) { return x; }, {0.0}, {-1.0},
                                     MCConfig(1'000, 1)),
                    std::invalid_argument);
}

TEST_CASE("build_sim_error_grid: determinism and shape on a tiny grid") {
    SimGridAxes axes;
    axes.rho = {-0.2, 0.4};
    axes.sigma = {1.0, 25.0};
    axes.mu2 = {-2.0, 2.0};
    axes.mu3 = {0.0};
    const auto approx = [](const GaussianVec& g) { return fixed_form_expected_softmax(g, 0); };
    const auto f = [](const VectorXd& x) {
        return 1.0 / (1.0 + std::exp(x[1] - x[0]) + std::exp(x[2] - x[0]));
    };
    const SimErrorGrid a = build_sim_error_grid(approx, f, axes, MCConfig(20'000, 9), 1);
    const SimErrorGrid b = build_sim_error_grid(approx, f, axes, MCConfig(20'000, 9), 3);
    CHECK(a.oracle == b.oracle);
    CHECK(a.rel_error == b.rel_error);
    CHECK(a.approx.size() == 8);
    for (double o : a.oracle) {
        CHECK(o > 0.0);
        CHECK(o < 1.0);
    }
}
