#include "sigmox/io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sigmox/version.hpp"

namespace sigmox {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& field) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{})
        throw std::runtime_error("bad numeric field in CSV: '" + field + "'");
    return v;
}

}  // namespace

GridSummary summarize(const ErrorGrid& grid) {
    GridSummary s;
    double total = 0.0;
    std::size_t im = 0, jm = 0;
    for (std::size_t i = 0; i < grid.mu_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.sigma_axis.size(); ++j) {
            const double r = grid.rel_error(i, j);
            total += r;
            if (r > s.max_rel_error) {
                s.max_rel_error = r;
                im = i;
                jm = j;
            }
            s.max_abs_error = std::max(s.max_abs_error,
                                       std::abs(grid.approx(i, j) - grid.oracle(i, j)));
        }
    s.mean_rel_error = total / static_cast<double>(grid.mu_axis.size() * grid.sigma_axis.size());
    s.argmax_cell = {{"mu", grid.mu_axis[im]}, {"sigma", grid.sigma_axis[jm]}};
    return s;
}

GridSummary summarize(const SimErrorGrid& grid) {
    GridSummary s;
    double total = 0.0;
    std::size_t cm = 0;
    for (std::size_t c = 0; c < grid.rel_error.size(); ++c) {
        total += grid.rel_error[c];
        if (grid.rel_error[c] > s.max_rel_error) {
            s.max_rel_error = grid.rel_error[c];
            cm = c;
        }
        s.max_abs_error = std::max(s.max_abs_error, std::abs(grid.approx[c] - grid.oracle[c]));
    }
    s.mean_rel_error = total / static_cast<double>(grid.rel_error.size());
    const std::size_t n3 = grid.axes.mu3.size();
    const std::size_t n2 = grid.axes.mu2.size();
    const std::size_t ns = grid.axes.sigma.size();
    std::size_t rest = cm;
    const std::size_t i3 = rest % n3; rest /= n3;
    const std::size_t i2 = rest % n2; rest /= n2;
    const std::size_t is = rest % ns; rest /= ns;
    s.argmax_cell = {{"rho", grid.axes.rho[rest]},
                     {"sigma", grid.axes.sigma[is]},
                     {"mu2", grid.axes.mu2[i2]},
                     {"mu3", grid.axes.mu3[i3]}};
    return s;
}

void write_error_grid_csv(const std::string& path, const ErrorGrid& grid) {
    std::ostringstream out;
    out << "mu,sigma,approx,oracle,oracle_stderr,rel_error\n";
    for (std::size_t i = 0; i < grid.mu_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.sigma_axis.size(); ++j)
            out << format_double(grid.mu_axis[i]) << ',' << format_double(grid.sigma_axis[j])
                << ',' << format_double(grid.approx(i, j)) << ','
                << format_double(grid.oracle(i, j)) << ','
                << format_double(grid.oracle_stderr(i, j)) << ','
                << format_double(grid.rel_error(i, j)) << '\n';
    write_text_file(path, out.str());
}

ErrorGrid read_error_grid_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("mu,sigma,", 0) != 0)
        throw std::runtime_error("unexpected CSV header in " + path);

    std::vector<std::array<double, 6>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 6> row{};
        std::size_t start = 0;
        for (int f = 0; f < 6; ++f) {
            std::size_t end = f == 5 ? line.size() : line.find(',', start);
            if (end == std::string::npos) throw std::runtime_error("short CSV row in " + path);
            row[f] = parse_double(line.substr(start, end - start));
            start = end + 1;
        }
        rows.push_back(row);
    }

    ErrorGrid grid;
    for (const auto& r : rows) {
        if (grid.mu_axis.empty() || r[0] != grid.mu_axis.back()) grid.mu_axis.push_back(r[0]);
    }
    const std::size_t nm = grid.mu_axis.size();
    if (nm == 0 || rows.size() % nm != 0)
        throw std::runtime_error("CSV rows do not form a grid in " + path);
    const std::size_t ns = rows.size() / nm;
    for (std::size_t j = 0; j < ns; ++j) grid.sigma_axis.push_back(rows[j][1]);

    grid.approx.resize(nm, ns);
    grid.oracle.resize(nm, ns);
    grid.oracle_stderr.resize(nm, ns);
    grid.rel_error.resize(nm, ns);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
            const auto& r = rows[i * ns + j];
            grid.approx(i, j) = r[2];
            grid.oracle(i, j) = r[3];
            grid.oracle_stderr(i, j) = r[4];
            grid.rel_error(i, j) = r[5];
        }
    return grid;
}

void write_sim_error_grid_csv(const std::string& path, const SimErrorGrid& grid) {
    std::ostringstream out;
    out << "rho,sigma,mu2,mu3,approx,oracle,oracle_stderr,rel_error\n";
    const auto& a = grid.axes;
    for (std::size_t ir = 0; ir < a.rho.size(); ++ir)
        for (std::size_t is = 0; is < a.sigma.size(); ++is)
            for (std::size_t i2 = 0; i2 < a.mu2.size(); ++i2)
                for (std::size_t i3 = 0; i3 < a.mu3.size(); ++i3) {
                    const std::size_t c = grid.index(ir, is, i2, i3);
                    out << format_double(a.rho[ir]) << ',' << format_double(a.sigma[is]) << ','
                        << format_double(a.mu2[i2]) << ',' << format_double(a.mu3[i3]) << ','
                        << format_double(grid.approx[c]) << ',' << format_double(grid.oracle[c])
                        << ',' << format_double(grid.oracle_stderr[c]) << ','
                        << format_double(grid.rel_error[c]) << '\n';
                }
    write_text_file(path, out.str());
}

nlohmann::ordered_json run_description(const std::string& command,
                                       const nlohmann::ordered_json& parameters,
                                       std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["library_version"] = library_version;
    return j;
}

nlohmann::ordered_json summary_json(const std::string& command,
                                    const nlohmann::ordered_json& parameters,
                                    std::uint64_t seed, const GridSummary& summary) {
    nlohmann::ordered_json j = run_description(command, parameters, seed);
    j["schema_version"] = 1;
    j["max_rel_error"] = summary.max_rel_error;
    j["mean_rel_error"] = summary.mean_rel_error;
    j["max_abs_error"] = summary.max_abs_error;
    j["argmax_cell"] = summary.argmax_cell;
    j["rel_error_denominator_floor"] = rel_error_floor;
    return j;
}

void write_manifest(const std::string& path, const std::string& command,
                    const nlohmann::ordered_json& parameters, std::uint64_t seed) {
    nlohmann::ordered_json j = run_description(command, parameters, seed);
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    j["timestamp"] = buf;
    write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

std::string with_extension(const std::string& path, const std::string& ext) {
    const std::size_t slash = path.find_last_of('/');
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ext;
    return path.substr(0, dot) + ext;
}

}  // namespace sigmox
