#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdmeans/mean_problem.hpp"

namespace pdmeans {

/// Parsed problem file plus side information.
struct ProblemFile {
    MeanProblem problem;
    std::vector<std::string> labels;    // empty when absent
    std::vector<std::string> warnings;  // e.g. weight renormalization notice
};

/// Parses a problem document (JSON): schema "pdmeans-problem/1" with
/// fields n, m, weights, matrices (row-major), optional labels. Numbers
/// are decimal strings with 17 significant digits (plain JSON numbers
/// are also accepted). Violations fail with field-precise messages:
/// asymmetric matrices name the entry, non-PD matrices name the index
/// and the offending eigenvalue, weight sums off by more than 1e-8 are
/// rejected (smaller deviations renormalize with a warning).
ProblemFile parse_problem(const std::string& path);
ProblemFile parse_problem_text(const std::string& text);

std::string problem_to_json(const MeanProblem& p,
                            const std::vector<std::string>& labels = {});
void write_problem(const std::string& path, const MeanProblem& p,
                   const std::vector<std::string>& labels = {});

/// Shortest exact decimal form: 17 significant digits round-trip any
/// binary64 value bitwise.
std::string format_sig17(double v);
double parse_number(const std::string& s);

/// FNV-1a 64-bit content digest, rendered as "fnv1a64:<hex>".
std::string digest_hex(std::string_view bytes);

/// Writes via a temporary file in the same directory followed by a
/// rename, so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace pdmeans
