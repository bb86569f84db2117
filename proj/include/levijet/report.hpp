#ifndef LEVIJET_REPORT_HPP
#define LEVIJET_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include <levijet/curvature.hpp>
#include <levijet/hypersurface.hpp>

namespace levijet
{

inline constexpr const char *report_schema_version = "1.0";

struct run_options {
    std::string command; // check | associate | levi | signature | propagate
    std::string equation;
    int order = 10;
    int n = 0;
    bool jet = false;
    // "z1, ..., zn, w"; empty means the origin. propagate takes two.
    std::vector<std::string> points;
    bool timing = false;
    // levi: floating-point sample of the degenerate locus
    std::optional<sample_grid> grid;
    double tol = 1e-9;
};

struct run_result {
    nlohmann::json report;
    int exit_code = 0;
    std::vector<locus_sample> locus;
    int n = 0;
};

// Never throws for bad input; errors become {"error": ...} with exit code 1
// (2 for a Levi-degenerate point).
run_result run(const run_options &opts);

nlohmann::json coefficient_to_json(const gaussian_rational &c);
gaussian_rational coefficient_from_json(const nlohmann::json &j);
nlohmann::json series_to_json(const truncated_series &s);

std::string render_json(const nlohmann::json &report);
std::string render_text(const nlohmann::json &report);

// Columns x1..xn, y1..yn, u, v, abs_delta, flagged.
void write_locus_csv(std::ostream &os, const std::vector<locus_sample> &samples, int n);

} // namespace levijet

#endif
