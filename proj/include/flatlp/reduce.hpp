// reduce.hpp - the recursive reduction: flattest-plane selection, pivot
// elimination, the 1-D terminal solve, back-substitution, and the driver.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatlp/model.hpp"

namespace flatlp {

enum class SolveStatus { Optimal, Infeasible, Unbounded, Stalled };

std::string to_string(SolveStatus s);

// The saved plane equation and pivot needed to recover an eliminated
// variable during back-substitution.
struct EliminationRecord {
    Vec plane_coeffs;     // normalized flattest-plane row at elimination time
    double plane_rhs = 0.0;
    int pivot = -1;       // eliminated variable (0-based)
    int stage = 0;        // 1-based reduction stage
    int row_id = -1;      // original input index of the plane
};

// Per-stage diagnostics: which plane was chosen, its cosine with the
// objective direction, and any rows deleted as redundant along the way.
struct StageInfo {
    int stage = 0;
    int row_id = -1;
    int pivot = -1;
    double cosine = 0.0;
    std::vector<int> deleted_row_ids;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::Stalled;
    Vec x;          // populated only when Optimal
    double z = 0.0; // populated only when Optimal
    std::vector<EliminationRecord> trace;
    std::vector<StageInfo> stages;
    std::string note; // diagnostic for non-Optimal terminations
};

enum class RedundancyMode { Exact, MonteCarlo };

struct SolveConfig {
    RedundancyMode redundancy = RedundancyMode::Exact;
    int samples = 1000;  // rays per Monte Carlo redundancy query
    int min_hits = 32;   // witness points required before eliminating
    int retry_cap = 3;   // resampling attempts when witnesses fall short
    std::uint64_t seed = 0;
    Tolerances tol;
};

/// Cosines t_u = a_u . d/|d| for every row. Rows and d/|d| are unit vectors,
/// so each t_u lies in [-1, 1] up to roundoff.
Vec cosines(const Problem& p, double tol_dir);

enum class FlattestStatus { Found, UnboundedDirection, NoCandidates };

struct FlattestChoice {
    FlattestStatus status = FlattestStatus::NoCandidates;
    int row = -1;        // row position within the problem
    double cosine = 0.0; // t at the chosen row
};

// Picks the non-rejected row maximizing t; ties within 1e-12 go to the
// lowest row id. Reports UnboundedDirection when even the best cosine is
// <= tol_dir: no constraint opposes motion along the objective.
FlattestChoice select_flattest(const Vec& t, const std::vector<int>& row_ids,
                               const std::vector<bool>& rejected, double tol_dir);

// Largest-magnitude live coefficient of the row; ties go to the lowest
// variable index. Throws ZeroRow on a vacuous row.
int select_pivot(const Vec& row, const std::vector<bool>& live_vars);

// Coefficient update for substituting variable j out via row k, applied to
// every other row and the objective. No vacuous sweep, no renormalization;
// eliminate() layers those on top. Exposed so tests can compare the update
// against symbolic substitution.
struct RawElimination {
    Mat rows;    // all rows except k, in order
    Vec rhs;
    std::vector<int> row_ids;
    Vec obj_dir;
    double obj_offset = 0.0;
};

RawElimination eliminate_raw(const Problem& p, int k, int j);

struct EliminationResult {
    bool infeasible = false; // a vacuous row became contradictory
    Problem reduced;
    EliminationRecord record;
    std::vector<int> dropped_vacuous_ids;
};

// Removes row k from the active system (saving it as the record), rewrites
// every other row and the objective so variable j disappears, marks j dead,
// applies the vacuous-row rule, and renormalizes survivors.
EliminationResult eliminate(const Problem& p, int k, int j, int stage,
                            const Tolerances& tol);

struct OneDimOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    double x = 0.0; // value of the surviving variable when Optimal
};

// Terminal solve once a single live variable remains: intersect the scalar
// inequalities into [L, U] and move to the end favored by the objective.
OneDimOutcome solve_1d(const Problem& p, const Tolerances& tol);

// Recovers eliminated variables in reverse stage order from the saved plane
// equations. x carries the surviving variables; known marks which entries of
// x are already set. Throws IncompleteTrace if any variable stays unset or a
// plane references an unset variable.
Vec back_substitute(const std::vector<EliminationRecord>& trace, Vec x,
                    std::vector<bool> known);

// Full driver. interior_point is required (strictly feasible) for Monte
// Carlo redundancy mode and ignored otherwise. z of an Optimal outcome is
// recomputed from the original objective at the back-substituted point.
SolveOutcome solve(const Problem& p, const std::optional<Vec>& interior_point,
                   const SolveConfig& cfg);

} // namespace flatlp
