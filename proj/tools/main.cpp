// Command-line front end: error maps of the closed-form expectations against
// their Monte-Carlo oracles, coefficient calibration, and one-shot
// application evaluations. All commands are deterministic given their full
// flag set including --seed.
//
// Exit codes: 0 success, 2 usage error, 3 oracle/estimation failure,
// 4 calibration did not converge.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigmox/applications.hpp"
#include "sigmox/calibration.hpp"
#include "sigmox/error_grid.hpp"
#include "sigmox/io.hpp"
#include "sigmox/mc.hpp"
#include "sigmox/sigmoid.hpp"
#include "sigmox/softmax.hpp"
#include "sigmox/version.hpp"

namespace {

using nlohmann::ordered_json;

struct GridFlags {
    double mu_min = -10.0;
    double mu_max = 10.0;
    unsigned mu_steps = 41;
    int sigma_exp_min = -4;
    int sigma_exp_max = 8;
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 42;
    bool fine = false;
    std::string out;
};

std::vector<double> mu_axis_from(const GridFlags& f) {
    if (f.mu_steps < 2) throw CLI::ValidationError("--mu-steps must be >= 2");
    std::vector<double> mu(f.mu_steps);
    for (unsigned i = 0; i < f.mu_steps; ++i)
        mu[i] = f.mu_min + (f.mu_max - f.mu_min) * i / (f.mu_steps - 1.0);
    return mu;
}

std::vector<double> sigma_axis_from(const GridFlags& f) {
    if (f.sigma_exp_min > f.sigma_exp_max)
        throw CLI::ValidationError("--sigma-exp-min must be <= --sigma-exp-max");
    std::vector<double> s;
    for (int k = f.sigma_exp_min; k <= f.sigma_exp_max; ++k) s.push_back(std::ldexp(1.0, k));
    return s;
}

ordered_json grid_parameters(const std::string& target, const GridFlags& f) {
    ordered_json p;
    p["target"] = target;
    p["mu_min"] = f.mu_min;
    p["mu_max"] = f.mu_max;
    p["mu_steps"] = f.mu_steps;
    p["sigma_exp_min"] = f.sigma_exp_min;
    p["sigma_exp_max"] = f.sigma_exp_max;
    p["n"] = f.n;
    p["fine"] = f.fine;
    return p;
}

int run_error_map(const std::string& target, const GridFlags& flags) {
    using namespace sigmox;
    const MCConfig cfg(flags.n, flags.seed);
    const ordered_json params = grid_parameters(target, flags);

    GridSummary summary;
    if (target == "softmax" || target == "softmax-taylor1" || target == "softmax-taylor2") {
        const SimGridAxes axes = flags.fine ? SimGridAxes::fine() : SimGridAxes::coarse();
        std::function<double(const GaussianVec&)> approx;
        if (target == "softmax")
            approx = [](const GaussianVec& g) { return fixed_form_expected_softmax(g, 0); };
        else if (target == "softmax-taylor1")
            approx = [](const GaussianVec& g) { return taylor_expected_softmax(g, 0, 1); };
        else
            approx = [](const GaussianVec& g) { return taylor_expected_softmax(g, 0, 2); };
        // First softmax component, written so the hot loop never allocates.
        const auto pi0 = [](const Eigen::VectorXd& x) {
            return 1.0 / (1.0 + std::exp(x[1] - x[0]) + std::exp(x[2] - x[0]));
        };
        const SimErrorGrid grid = build_sim_error_grid(approx, pi0, axes, cfg);
        summary = summarize(grid);
        write_sim_error_grid_csv(flags.out, grid);
    } else {
        std::function<double(const Gaussian1D&)> approx;
        std::function<MCEstimate(const Gaussian1D&, const MCConfig&)> oracle;
        const auto expect_of = [](double (*f)(double) noexcept) {
            return [f](const Gaussian1D& g, const MCConfig& c) { return mc_expect(f, g, c); };
        };
        if (target == "sigmoid") {
            approx = [](const Gaussian1D& g) { return fixed_form_expected_sigmoid(g); };
            oracle = expect_of(&sigmoid);
        } else if (target == "log-sigmoid") {
            approx = [](const Gaussian1D& g) { return fixed_form_expected_log_sigmoid(g); };
            oracle = expect_of(&log_sigmoid);
        } else if (target == "variance") {
            approx = [](const Gaussian1D& g) { return sigmoid_variance(g); };
            oracle = [](const Gaussian1D& g, const MCConfig& c) {
                return mc_variance([](double x) { return sigmoid(x); }, g, c);
            };
        } else if (target == "taylor1") {
            approx = [](const Gaussian1D& g) { return log_sigmoid(g.mean); };
            oracle = expect_of(&log_sigmoid);
        } else if (target == "taylor2") {
            approx = [](const Gaussian1D& g) { return taylor_expected_log_sigmoid(g); };
            oracle = expect_of(&log_sigmoid);
        } else if (target == "sigmoid-taylor1") {
            approx = [](const Gaussian1D& g) { return taylor_expected_sigmoid(g, 1); };
            oracle = expect_of(&sigmoid);
        } else if (target == "sigmoid-taylor2") {
            approx = [](const Gaussian1D& g) { return taylor_expected_sigmoid(g, 2); };
            oracle = expect_of(&sigmoid);
        } else {
            throw CLI::ValidationError("unknown error-map target: " + target);
        }
        const ErrorGrid grid = build_error_grid_with(approx, oracle, mu_axis_from(flags),
                                                     sigma_axis_from(flags), cfg);
        summary = summarize(grid);
        write_error_grid_csv(flags.out, grid);
    }

    write_text_file(with_extension(flags.out, ".summary.json"),
                    summary_json("error-map", params, flags.seed, summary).dump(2) + "\n");
    write_manifest(with_extension(flags.out, ".manifest.json"), "error-map", params, flags.seed);
    std::cout << "max_rel_error=" << sigmox::format_double(summary.max_rel_error)
              << " mean_rel_error=" << sigmox::format_double(summary.mean_rel_error)
              << " max_abs_error=" << sigmox::format_double(summary.max_abs_error) << "\n";
    return 0;
}

int run_calibrate(const std::string& target, std::uint64_t n, std::uint64_t seed,
                  bool synthetic, const std::string& out) {
    using namespace sigmox;
    const auto mu = default_mu_axis();
    const auto sig = default_sigma_axis();
    const MCConfig cfg(n, seed);

    ErrorGrid data;
    if (synthetic) {
        // Noise-free oracle generated from the shipped default coefficients;
        // the fit must recover them.
        data.mu_axis = mu;
        data.sigma_axis = sig;
        data.approx.setZero(mu.size(), sig.size());
        data.oracle.resize(mu.size(), sig.size());
        data.oracle_stderr.setZero(mu.size(), sig.size());
        data.rel_error.setZero(mu.size(), sig.size());
        for (std::size_t i = 0; i < mu.size(); ++i)
            for (std::size_t j = 0; j < sig.size(); ++j) {
                const Gaussian1D g(mu[i], sig[j]);
                data.oracle(i, j) = target == "sigmoid" ? fixed_form_expected_sigmoid(g)
                                                        : fixed_form_expected_log_sigmoid(g);
            }
    } else if (target == "sigmoid") {
        data = build_error_grid([](const Gaussian1D& g) { return fixed_form_expected_sigmoid(g); },
                                [](double x) { return sigmoid(x); }, mu, sig, cfg);
    } else {
        data = build_error_grid(
            [](const Gaussian1D& g) { return fixed_form_expected_log_sigmoid(g); },
            [](double x) { return log_sigmoid(x); }, mu, sig, cfg);
    }

    const FitResult fit = target == "sigmoid" ? fit_sigmoid_coeff(data)
                                              : fit_log_sigmoid_coeffs(data);

    ordered_json params;
    params["target"] = target;
    params["n"] = n;
    params["synthetic"] = synthetic;
    ordered_json j = run_description("calibrate", params, seed);
    j["schema_version"] = 1;
    ordered_json coeffs;
    if (const auto* sc = std::get_if<SigmoidCoeff>(&fit.coeffs)) {
        coeffs["a"] = sc->a;
    } else {
        const auto& lc = std::get<LogSigmoidCoeffs>(fit.coeffs);
        coeffs["a"] = lc.a;
        coeffs["b"] = lc.b;
        coeffs["c"] = lc.c;
        coeffs["d"] = lc.d;
    }
    j["coefficients"] = coeffs;
    j["objective_value"] = fit.objective_value;
    j["n_iterations"] = fit.n_iterations;
    j["converged"] = fit.converged;

    const std::string text = j.dump(2) + "\n";
    if (!out.empty()) {
        write_text_file(out, text);
        write_manifest(with_extension(out, ".manifest.json"), "calibrate", params, seed);
    }
    std::cout << text;
    return fit.converged ? 0 : 4;
}

std::vector<double> parse_lambda_list(const std::string& csv) {
    std::vector<double> v;
    std::stringstream ss(csv);
    std::string field;
    while (std::getline(ss, field, ',')) {
        if (field.empty()) continue;
        v.push_back(std::stod(field));
    }
    if (v.empty()) throw CLI::ValidationError("--lambdas needs at least one value");
    return v;
}

void print_result(const std::string& command, const ordered_json& params,
                  const ordered_json& result) {
    ordered_json j;
    j["command"] = command;
    j["parameters"] = params;
    j["library_version"] = sigmox::library_version;
    j["result"] = result;
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form moments of sigmoid and softmax maps of Gaussian variables, "
                 "with Monte-Carlo validation"};
    app.require_subcommand(1);

    // ---- error-map ----
    GridFlags gf;
    std::string map_target;
    auto* map_cmd = app.add_subcommand("error-map",
                                       "Tabulate an approximation against its Monte-Carlo "
                                       "oracle over a (mu, sigma) grid");
    map_cmd->add_option("target", map_target, "one of: sigmoid, log-sigmoid, variance, softmax, "
                        "taylor1, taylor2, softmax-taylor1, softmax-taylor2, sigmoid-taylor1, "
                        "sigmoid-taylor2")->required();
    map_cmd->add_option("--mu-min", gf.mu_min, "grid minimum mean");
    map_cmd->add_option("--mu-max", gf.mu_max, "grid maximum mean");
    map_cmd->add_option("--mu-steps", gf.mu_steps, "number of mean points");
    map_cmd->add_option("--sigma-exp-min", gf.sigma_exp_min, "smallest power of two variance");
    map_cmd->add_option("--sigma-exp-max", gf.sigma_exp_max, "largest power of two variance");
    map_cmd->add_option("--n", gf.n, "Monte-Carlo samples per cell");
    map_cmd->add_option("--seed", gf.seed, "base seed; cells derive their own streams");
    map_cmd->add_flag("--fine", gf.fine, "denser softmax simulation grid (13x13x21x21)");
    map_cmd->add_option("-o,--out", gf.out, "output CSV path")->required();

    // ---- calibrate ----
    std::string cal_target;
    std::uint64_t cal_n = 1'000'000, cal_seed = 42;
    bool cal_synthetic = false;
    std::string cal_out;
    auto* cal_cmd = app.add_subcommand("calibrate", "Refit approximation coefficients "
                                       "against a Monte-Carlo oracle grid");
    cal_cmd->add_option("target", cal_target, "sigmoid or log-sigmoid")
        ->required()->check(CLI::IsMember({"sigmoid", "log-sigmoid"}));
    cal_cmd->add_option("--n", cal_n, "Monte-Carlo samples per cell");
    cal_cmd->add_option("--seed", cal_seed, "base seed");
    cal_cmd->add_flag("--synthetic", cal_synthetic,
                      "fit against a noise-free oracle generated from the default coefficients");
    cal_cmd->add_option("-o,--out", cal_out, "output JSON path");

    // ---- app ----
    auto* app_cmd = app.add_subcommand("app", "One-shot application evaluations");
    app_cmd->require_subcommand(1);

    double sk_t = 0.0, sk_rho = 1.0, sk_mu = 0.0, sk_var = 1.0, sk_z = 0.0;
    bool sk_have_z = false;
    std::string sk_out;
    auto* skew_cmd = app_cmd->add_subcommand("skew-cdf",
                                             "CDF of the soft-thresholded Gaussian");
    skew_cmd->add_option("--t", sk_t, "sigmoid inflexion point")->required();
    skew_cmd->add_option("--rho", sk_rho, "sigmoid slope (> 0)")->required();
    skew_cmd->add_option("--mu", sk_mu, "Gaussian mean")->required();
    skew_cmd->add_option("--var", sk_var, "Gaussian variance (> 0)")->required();
    skew_cmd->add_option("--z", sk_z, "evaluation point (default: mu)")
        ->each([&](const std::string&) { sk_have_z = true; });
    skew_cmd->add_option("-o,--out", sk_out, "also write a 201-point z-scan CSV here");

    std::string bl_lambdas;
    auto* bern_cmd = app_cmd->add_subcommand("bernoulli-logsum",
                                             "expected log(sum of Bernoulli variables + 1)");
    bern_cmd->add_option("--lambdas", bl_lambdas, "comma-separated success probabilities")
        ->required();

    double ab_mu = 0.0, ab_var = 1.0, ab_rho = 0.0;
    bool ab_have_rho = false;
    auto* abs_cmd = app_cmd->add_subcommand("expected-abs",
                                            "expected absolute value of a Gaussian");
    abs_cmd->add_option("--mu", ab_mu, "Gaussian mean")->required();
    abs_cmd->add_option("--var", ab_var, "Gaussian variance (>= 0)")->required();
    abs_cmd->add_option("--rho", ab_rho, "smoothing scale (default: adaptive)")
        ->each([&](const std::string&) { ab_have_rho = true; });

    try {
        app.parse(argc, argv);

        if (map_cmd->parsed()) return run_error_map(map_target, gf);
        if (cal_cmd->parsed())
            return run_calibrate(cal_target, cal_n, cal_seed, cal_synthetic, cal_out);

        if (skew_cmd->parsed()) {
            const sigmox::SkewNormalParams p(sk_t, sk_rho, sk_mu, sk_var);
            const double z = sk_have_z ? sk_z : sk_mu;
            ordered_json params{{"t", sk_t}, {"rho", sk_rho}, {"mu", sk_mu},
                                {"var", sk_var}, {"z", z}};
            const double value = sigmox::skew_normal_cdf(p, z);
            if (!sk_out.empty()) {
                std::ostringstream csv;
                csv << "z,cdf\n";
                const double sd_eff = std::sqrt(sk_var + sk_rho * sk_rho *
                                                std::numbers::pi * std::numbers::pi / 3.0);
                for (int i = 0; i < 201; ++i) {
                    const double zz = sk_mu + (-6.0 + 12.0 * i / 200.0) * sd_eff;
                    csv << sigmox::format_double(zz) << ','
                        << sigmox::format_double(sigmox::skew_normal_cdf(p, zz)) << '\n';
                }
                sigmox::write_text_file(sk_out, csv.str());
                sigmox::write_manifest(sigmox::with_extension(sk_out, ".manifest.json"),
                                       "app skew-cdf", params, 0);
            }
            print_result("app skew-cdf", params, ordered_json{{"cdf", value}});
            return 0;
        }
        if (bern_cmd->parsed()) {
            const sigmox::BernoulliBatch batch(parse_lambda_list(bl_lambdas));
            const sigmox::Gaussian1D m = sigmox::bernoulli_logsum_matched_gaussian(batch);
            const double value = sigmox::expected_log_sum_bernoulli(batch);
            print_result("app bernoulli-logsum", ordered_json{{"lambdas", bl_lambdas}},
                         ordered_json{{"expected_log_sum", value},
                                      {"matched_mean", m.mean},
                                      {"matched_variance", m.variance}});
            return 0;
        }
        if (abs_cmd->parsed()) {
            const sigmox::Gaussian1D g(ab_mu, ab_var);
            const double rho = ab_have_rho ? ab_rho : sigmox::default_abs_smoothing(ab_var);
            const double value = sigmox::expected_abs(g, rho);
            print_result("app expected-abs",
                         ordered_json{{"mu", ab_mu}, {"var", ab_var}, {"rho", rho}},
                         ordered_json{{"expected_abs", value}});
            return 0;
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const sigmox::EstimationError& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
