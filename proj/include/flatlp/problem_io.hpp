// problem_io.hpp - the flatlp v1 problem-file grammar and machine-readable
// solution output.
//
// flatlp v1:
//   line 1: n m            (two positive integers)
//   line 2: d_1 ... d_n    (objective coefficients)
//   next m lines: a_u1 ... a_un r_u
//   optional final line: point p_1 ... p_n
// '#' starts a comment to end of line; blank lines are ignored; reals may
// use decimal or scientific notation.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatlp/model.hpp"
#include "flatlp/reduce.hpp"

namespace flatlp {

// Raw file contents, pre-normalization, retained for echo/serialization.
struct ProblemFile {
    int n = 0;
    int m = 0;
    Vec objective;
    Mat rows;
    Vec rhs;
    std::optional<Vec> point;
};

// Throws ParseError (with a line number) on malformed input.
ProblemFile parse_problem_file(const std::string& text);

// flatlp v1 text with 17-significant-digit reals.
std::string serialize_problem(const ProblemFile& f);

ProblemFile to_problem_file(const Problem& p, const std::optional<Vec>& point);

struct LoadedProblem {
    Problem problem;                   // normalized, vacuous rows swept
    std::optional<Vec> interior;       // validated strictly feasible
    bool trivially_infeasible = false; // a vacuous input row demanded rhs < -tol
    std::vector<int> dropped_row_ids;  // satisfiable vacuous rows removed on load
};

// Normalizes rows on load and validates a declared interior point (strictly
// feasible: every residual > tol.feas). Throws NotInterior otherwise.
LoadedProblem to_problem(const ProblemFile& f, const Tolerances& tol);

// Solution JSON with fixed key order (status, x, z, stages, seed,
// tolerances) and 17-significant-digit reals. x and z appear only for
// Optimal outcomes. Stage fields: stage, k (row id), j (1-based variable),
// t (cosine), deleted (row ids).
std::string write_solution_json(const SolveOutcome& outcome, std::uint64_t seed,
                                const Tolerances& tol);

} // namespace flatlp
