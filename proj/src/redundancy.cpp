#include "flatlp/redundancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flatlp/oracle.hpp"

namespace flatlp {

namespace {

constexpr double kDirectionalTol = 1e-12;
constexpr double kChordTol = 1e-12;
// Chords of an unbounded region are clamped here so a uniform jump stays
// defined; harness instances are always boxed and never reach the clamp.
constexpr double kChordClamp = 1e9;

Vec random_live_direction(const Problem& p, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec dir(p.n_vars, 0.0);
    while (true) {
        double s = 0.0;
        for (int i = 0; i < p.n_vars; ++i) {
            if (!p.live_vars[i])
                continue;
            dir[i] = gauss(rng);
            s += dir[i] * dir[i];
        }
        if (s > 1e-24) {
            const double inv = 1.0 / std::sqrt(s);
            for (int i = 0; i < p.n_vars; ++i)
                if (p.live_vars[i])
                    dir[i] *= inv;
            return dir;
        }
    }
}

} // namespace

std::vector<Vec> hit_and_run_sample(const Problem& p, const Vec& interior_point,
                                    int count, std::mt19937_64& rng,
                                    double tol_feas) {
    const Vec res = residual(p, interior_point);
    for (double s : res)
        if (s <= tol_feas)
            throw NotInterior("start point is not strictly feasible");

    std::vector<Vec> points;
    points.reserve(std::max(count, 0));
    Vec current = interior_point;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int step = 0; step < count; ++step) {
        const Vec dir = random_live_direction(p, rng);
        double lo = -kChordClamp;
        double hi = kChordClamp;
        for (int u = 0; u < p.row_count(); ++u) {
            const double s = dot(p.rows[u], dir);
            const double slack = p.rhs[u] - dot(p.rows[u], current);
            if (s > kDirectionalTol)
                hi = std::min(hi, slack / s);
            else if (s < -kDirectionalTol)
                lo = std::max(lo, slack / s);
        }
        const double draw = unit(rng); // drawn even for degenerate chords so
                                       // the stream stays aligned
        if (hi - lo >= kChordTol) {
            const double t = lo + draw * (hi - lo);
            for (int i = 0; i < p.n_vars; ++i)
                if (p.live_vars[i])
                    current[i] += t * dir[i];
        }
        points.push_back(current);
    }
    return points;
}

std::optional<RayHit> ray_first_hit(const Problem& p, const Vec& point,
                                    const Vec& direction) {
    int best_row = -1;
    double best_lambda = 0.0;
    for (int u = 0; u < p.row_count(); ++u) {
        const double s = dot(p.rows[u], direction);
        if (s <= kDirectionalTol)
            continue;
        // A feasible point can sit a hair outside a plane; the geometric
        // first hit is then the point itself.
        const double lambda = std::max(0.0, (p.rhs[u] - dot(p.rows[u], point)) / s);
        if (best_row < 0 || lambda < best_lambda) {
            best_row = u;
            best_lambda = lambda;
        }
    }
    if (best_row < 0)
        return std::nullopt;

    RayHit hit;
    hit.row = best_row;
    hit.lambda = best_lambda;
    hit.point = point;
    for (int i = 0; i < p.n_vars; ++i)
        hit.point[i] += best_lambda * direction[i];
    return hit;
}

McVerdict is_redundant_mc(const Problem& p, int k, const std::vector<Vec>& points,
                          const Vec& direction) {
    if (points.empty())
        throw EmptySample("redundancy test needs at least one feasible point");

    McVerdict verdict;
    for (const Vec& point : points) {
        auto hit = ray_first_hit(p, point, direction);
        if (!hit) {
            ++verdict.no_hit_rays;
            continue;
        }
        if (hit->row == k)
            verdict.hits.push_back(std::move(*hit));
    }
    verdict.likely_redundant = verdict.hits.empty();
    return verdict;
}

bool is_redundant_exact(const Problem& p, int k) {
    Problem others = p;
    others.rows.erase(others.rows.begin() + k);
    others.rhs.erase(others.rhs.begin() + k);
    others.row_ids.erase(others.row_ids.begin() + k);
    others.obj_dir = p.rows[k];
    others.obj_offset = 0.0;

    const OracleResult r = oracle_solve(others);
    if (r.status == OracleStatus::TooLarge)
        throw OracleTooLarge("redundancy enumeration exceeds the oracle cap");
    if (r.status == OracleStatus::NoFeasibleVertex)
        return false; // nothing to certify against; keep the row
    return r.z < p.rhs[k] - 1e-9;
}

std::vector<Vec> reduced_feasible_points(const std::vector<RayHit>& hits,
                                         const EliminationRecord& record) {
    std::vector<Vec> points;
    points.reserve(hits.size());
    for (const RayHit& hit : hits) {
        const double gap = dot(record.plane_coeffs, hit.point) - record.plane_rhs;
        if (std::abs(gap) > 1e-9)
            throw NotOnPlane("witness point misses the eliminated plane");
        Vec q = hit.point;
        q[record.pivot] = 0.0;
        points.push_back(std::move(q));
    }
    return points;
}

} // namespace flatlp
