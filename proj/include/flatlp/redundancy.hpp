// redundancy.hpp - decides whether a candidate flattest plane is redundant
// (entirely outside the feasible region): Monte Carlo ray casting from
// sampled feasible points, plus an exact vertex-enumeration fallback.

#pragma once

#include <optional>
#include <random>
#include <vector>

#include "flatlp/model.hpp"
#include "flatlp/reduce.hpp"

namespace flatlp {

// First constraint plane struck by a ray from a feasible point.
struct RayHit {
    int row = -1;        // row position of the struck plane
    double lambda = 0.0; // ray parameter, >= 0
    Vec point;           // origin + lambda * direction
};

// Iterated hit-and-run from a strictly feasible start: pick a random unit
// direction over the live variables, intersect the feasible chord through
// the current point, jump to a uniform point on it. Deterministic given the
// rng state. Throws NotInterior unless every start residual exceeds tol_feas.
std::vector<Vec> hit_and_run_sample(const Problem& p, const Vec& interior_point,
                                    int count, std::mt19937_64& rng,
                                    double tol_feas);

// Minimal positive lambda over rows with a_u . direction > 1e-12; ties go to
// the lowest row id. nullopt means no plane opposes the direction - evidence
// of unboundedness along it.
std::optional<RayHit> ray_first_hit(const Problem& p, const Vec& point,
                                    const Vec& direction);

struct McVerdict {
    bool likely_redundant = false;
    std::vector<RayHit> hits; // rays whose first hit was row k, in sample order
    int no_hit_rays = 0;      // rays that struck nothing at all
};

// Casts a ray from every point along `direction`. Row k is likely redundant
// when no ray strikes it first. Throws EmptySample on an empty point list.
McVerdict is_redundant_mc(const Problem& p, int k, const std::vector<Vec>& points,
                          const Vec& direction);

// Deterministic check: maximizes a_k . x over the polytope formed by every
// other row via the oracle's vertex enumeration; redundant iff the maximum
// stays below rhs_k - 1e-9. Throws OracleTooLarge beyond the enumeration cap.
bool is_redundant_exact(const Problem& p, int k);

// Projects witness hits on the eliminated plane into the reduced space by
// zeroing the pivot coordinate (its value is implied by the saved plane
// equation). Throws NotOnPlane if a hit misses the plane by more than 1e-9.
std::vector<Vec> reduced_feasible_points(const std::vector<RayHit>& hits,
                                         const EliminationRecord& record);

} // namespace flatlp
