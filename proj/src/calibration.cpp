#include "sigmox/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "sigmox/sigmoid.hpp"

namespace sigmox {

namespace detail {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start, double initial_step,
                          double diameter_tol, int max_iterations) {
    const std::size_t n = start.size();
    struct Vertex {
        std::vector<double> x;
        double fx;
    };
    std::vector<Vertex> simplex(n + 1);
    simplex[0] = {start, f(start)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x = start;
        x[i] += initial_step;
        simplex[i + 1] = {x, f(x)};
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
    int iter = 0;
    bool converged = false;
    for (; iter < max_iterations; ++iter) {
        std::sort(simplex.begin(), simplex.end(), by_value);

        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t d = 0; d < n; ++d)
                diameter = std::max(diameter, std::abs(simplex[i].x[d] - simplex[0].x[d]));
        if (diameter < diameter_tol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d)
                centroid[d] += simplex[i].x[d] / static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d)
                x[d] = centroid[d] + t * (simplex[n].x[d] - centroid[d]);
            return x;
        };

        const auto reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr < simplex[0].fx) {
            const auto expanded = blend(-2.0);
            const double fe = f(expanded);
            simplex[n] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
            continue;
        }
        if (fr < simplex[n - 1].fx) {
            simplex[n] = {reflected, fr};
            continue;
        }
        const auto contracted = blend(fr < simplex[n].fx ? -0.5 : 0.5);
        const double fc = f(contracted);
        if (fc < std::min(fr, simplex[n].fx)) {
            simplex[n] = {contracted, fc};
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t d = 0; d < n; ++d)
                simplex[i].x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
            simplex[i].fx = f(simplex[i].x);
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    return {simplex[0].x, simplex[0].fx, iter, converged};
}

}  // namespace detail

namespace {

double sigmoid_objective(const ErrorGrid& data, double a) {
    double sse = 0.0;
    const SigmoidCoeff coeff(a);
    for (std::size_t i = 0; i < data.mu_axis.size(); ++i)
        for (std::size_t j = 0; j < data.sigma_axis.size(); ++j) {
            const double model = fixed_form_expected_sigmoid(
                Gaussian1D(data.mu_axis[i], data.sigma_axis[j]), coeff);
            const double r = model - data.oracle(i, j);
            sse += r * r;
        }
    return sse;
}

double log_sigmoid_objective(const ErrorGrid& data, const LogSigmoidCoeffs& k) {
    double sse = 0.0;
    for (std::size_t i = 0; i < data.mu_axis.size(); ++i)
        for (std::size_t j = 0; j < data.sigma_axis.size(); ++j) {
            const double model = fixed_form_expected_log_sigmoid(
                Gaussian1D(data.mu_axis[i], data.sigma_axis[j]), k);
            const double r = model - data.oracle(i, j);
            sse += r * r;
        }
    return sse;
}

LogSigmoidCoeffs from_unconstrained(const std::vector<double>& x) {
    return LogSigmoidCoeffs(std::exp(x[0]), x[1], std::exp(x[2]), std::exp(x[3]));
}

}  // namespace

FitResult fit_sigmoid_coeff(const ErrorGrid& data) {
    // Golden-section search on log a; the objective is smooth and unimodal in
    // practice over this bracket.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(1e-3), hi = std::log(10.0);
    double x1 = hi - golden * (hi - lo);
    double x2 = lo + golden * (hi - lo);
    double f1 = sigmoid_objective(data, std::exp(x1));
    double f2 = sigmoid_objective(data, std::exp(x2));
    int iter = 0;
    const int max_iter = 200;
    while (hi - lo > 1e-10 && iter < max_iter) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = sigmoid_objective(data, std::exp(x1));
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = sigmoid_objective(data, std::exp(x2));
        }
        ++iter;
    }
    double a = std::exp(0.5 * (lo + hi));
    double best = sigmoid_objective(data, a);
    // The refit must not do worse than the shipped default on the same data.
    const double a0 = SigmoidCoeff::fitted().a;
    const double f0 = sigmoid_objective(data, a0);
    if (f0 < best) {
        a = a0;
        best = f0;
    }
    return {SigmoidCoeff(a), best, iter, iter < max_iter};
}

FitResult fit_log_sigmoid_coeffs(const ErrorGrid& data) {
    const auto objective = [&](const std::vector<double>& x) {
        return log_sigmoid_objective(data, from_unconstrained(x));
    };

    const LogSigmoidCoeffs p = LogSigmoidCoeffs::fitted();
    const std::vector<std::vector<double>> starts = {
        {std::log(p.a), p.b, std::log(p.c), std::log(p.d)},
        {std::log(0.40), -0.50, std::log(1.00), std::log(1.00)},
        {std::log(0.10), -0.20, std::log(0.50), std::log(0.60)},
        {std::log(1.00), -1.00, std::log(0.90), std::log(1.20)},
        {std::log(0.30), -0.40, std::log(0.85), std::log(0.95)},
    };

    detail::SimplexResult best{{}, std::numeric_limits<double>::infinity(), 0, false};
    int total_iterations = 0;
    bool any_converged = false;
    for (const auto& s : starts) {
        const auto r = detail::nelder_mead(objective, s, 0.25, 1e-8, 2000);
        total_iterations += r.n_iterations;
        any_converged = any_converged || r.converged;
        if (r.value < best.value) best = r;
    }
    return {from_unconstrained(best.x), best.value, total_iterations, any_converged};
}

}  // namespace sigmox
