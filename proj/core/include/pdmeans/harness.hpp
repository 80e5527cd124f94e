#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pdmeans/mean_problem.hpp"
#include "pdmeans/rng.hpp"

namespace pdmeans {

/// Q diag(lambda) Q^T with lambda log-uniform in [1/sqrt(cond), sqrt(cond)]
/// and Q Haar-like random. Deterministic per seed, identical across
/// platforms (fixed generator algorithm, see Rng).
SPDMatrix random_spd(std::size_t n, double cond, std::uint64_t seed);
SPDMatrix random_spd(std::size_t n, double cond, Rng& rng);

/// Weighted random instance: weights uniform in [0.25, 1] renormalized,
/// matrices random_spd.
MeanProblem random_problem(std::size_t n, std::size_t m, double cond, Rng& rng);

struct TrialFailure {
    int trial = 0;
    std::uint64_t seed = 0;  // replaying this seed reproduces the margin exactly
    std::size_t n = 0;
    std::size_t m = 0;
    double margin = 0.0;
    std::string what;
};

/// Outcome of one property suite or conjecture exploration.
struct SuiteReport {
    std::string suite;
    std::string statement;  // the property exercised, in words
    int trials = 0;
    int passes = 0;
    std::vector<TrialFailure> failures;
    /// worst (smallest) margin observed over all trials
    double worst_margin = std::numeric_limits<double>::infinity();
    /// conjecture explorers only: count of violations and the smallest
    /// slack seen, with the reproduction key of the extremal trial
    int violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    std::string extremal;
    double wall_ms = 0.0;
};

/// Known suite identifiers.
const std::vector<std::string>& suite_catalog();

/// Runs `trials` seeded random instances of the named property suite
/// (dimensions n in {2,3,5} and tuple sizes m in {2,3,4} cycled).
/// Failures are recorded, never thrown. Unknown suite ids throw
/// DomainError.
SuiteReport run_suite(const std::string& suite, int trials, std::uint64_t seed,
                      const SolverOptions& opts = {}, int threads = 1);

/// Empirical search for violations of an open inequality
/// ("s-wlog-omega" or "p-power-sp"). Reports violation counts and
/// minimum slack; makes no truth claim.
SuiteReport conjecture_explore(const std::string& id, int trials, std::uint64_t seed,
                               const SolverOptions& opts = {}, int threads = 1);

}  // namespace pdmeans
