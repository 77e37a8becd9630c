// oracle.hpp - exact brute-force LP solver by vertex enumeration. Ground
// truth for the comparison harness; assumes a bounded feasible region.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flatlp/model.hpp"

namespace flatlp {

enum class OracleStatus { Optimal, NoFeasibleVertex, TooLarge };

struct OracleResult {
    OracleStatus status = OracleStatus::NoFeasibleVertex;
    Vec x;
    double z = 0.0;
    std::vector<int> active_set; // row positions of the binding planes, ascending
};

// Vertex candidates are intersections of n_live rows; feasibility of a
// candidate is checked against every row at this tolerance (looser than the
// equality tolerance, to absorb elimination roundoff in cross-checks).
inline constexpr double kVertexFeasTol = 1e-8;

inline constexpr unsigned long long kEnumerationCap = 2'000'000ULL;

// True when C(m, n_live) fits under the enumeration cap.
bool within_enumeration_cap(int m, int n_live);

// Gaussian elimination with scaled partial pivoting. nullopt when any pivot
// magnitude falls below 1e-10 after scaling.
std::optional<Vec> solve_linear_system(Mat a, Vec b);

// Enumerates every n_live-subset of rows, solves the equality system, keeps
// feasible candidates, and returns the maximum-z one. Ties keep the
// lexicographically smallest active set. Unboundedness is not detected:
// callers must guarantee a bounded region (the generator's box rows do).
OracleResult oracle_solve(const Problem& p);

} // namespace flatlp
