// harness.hpp - random instance generation, solver-vs-oracle comparison,
// and batch aggregation into CSV.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatlp/model.hpp"
#include "flatlp/reduce.hpp"

namespace flatlp {

struct Instance {
    Problem problem;
    Vec interior; // strictly feasible by construction (the origin)
};

// m rows with uniformly random unit normals and rhs = slack in [0.1, 1.0]
// (origin strictly interior), plus 2n box rows +-x_i <= box_bound for
// boundedness, plus a random unit objective. Deterministic per seed.
Instance generate_instance(int n, int m, std::uint64_t seed,
                           double box_bound = 10.0);

struct ComparisonReport {
    int instance_id = 0;
    int n = 0;
    int m = 0; // generated rows excluding the box rows
    std::uint64_t seed = 0;
    std::string solver_status; // optimal|infeasible|unbounded|stalled|error
    std::string oracle_status; // optimal|infeasible|error
    std::optional<double> z_solver;
    std::optional<double> z_oracle;
    std::optional<double> abs_gap; // set when both sides are optimal
    bool agree = false;
    double wall_solver_ms = 0.0;
    double wall_oracle_ms = 0.0;
    std::vector<StageInfo> stages;
    SolveOutcome outcome; // full solver outcome, kept for downstream checks
};

// Runs solver and oracle side by side and fills the report. Disagreement is
// data, not an error: nothing throws on a mismatch. agree requires equal
// statuses and, when both are optimal, |dz| <= 1e-6 * max(1, |z_oracle|) plus
// a feasible solver point.
ComparisonReport compare(const Problem& p,
                         const std::optional<Vec>& interior_point,
                         const SolveConfig& cfg);

struct BatchConfig {
    std::vector<int> n_list;
    std::string m_rule = "3n"; // "<k>n" | "<lo>-<hi>" | "<m>"
    int trials = 0;            // instances per entry of n_list
    std::uint64_t seed = 0;
    SolveConfig solver;
    double box_bound = 10.0;
    bool include_timing = true; // false zeroes the wall columns for
                                // byte-reproducible CSV output
};

struct BatchResult {
    std::string csv;
    std::string summary;
    int exit_code = 0; // 0 all agree, 2 otherwise
    std::vector<ComparisonReport> reports;
};

inline constexpr const char* kCsvHeader =
    "instance_id,n,m,seed,status_solver,status_oracle,z_solver,z_oracle,"
    "abs_gap,agree,stages,deleted_redundant,wall_solver_ms,wall_oracle_ms";

// CSV row in the schema above; timing columns print 0 when include_timing
// is false.
std::string csv_row(const ComparisonReport& r, bool include_timing);

// Assembles CSV text, the summary block, and the exit code from finished
// reports. Split out from run_batch so the no-silent-failure rule is
// testable in isolation.
BatchResult finalize_batch(std::vector<ComparisonReport> reports,
                           bool include_timing);

BatchResult run_batch(const BatchConfig& cfg);

} // namespace flatlp
