#include "flatlp/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "flatlp/oracle.hpp"
#include "flatlp/redundancy.hpp"

namespace flatlp {

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Stalled: return "stalled";
    }
    return "unknown";
}

Vec cosines(const Problem& p, double tol_dir) {
    const Vec d = unit_objective(p, tol_dir);
    Vec t(p.row_count());
    for (int u = 0; u < p.row_count(); ++u)
        t[u] = dot(p.rows[u], d);
    return t;
}

FlattestChoice select_flattest(const Vec& t, const std::vector<int>& row_ids,
                               const std::vector<bool>& rejected, double tol_dir) {
    constexpr double kTieTol = 1e-12;
    FlattestChoice choice;

    bool any = false;
    double best = 0.0;
    for (std::size_t u = 0; u < t.size(); ++u) {
        if (rejected[u])
            continue;
        if (!any || t[u] > best) {
            any = true;
            best = t[u];
        }
    }
    if (!any) {
        choice.status = FlattestStatus::NoCandidates;
        return choice;
    }
    if (best <= tol_dir) {
        // Even the best-aligned normal does not oppose the objective: the
        // region lets Z grow without bound along d.
        choice.status = FlattestStatus::UnboundedDirection;
        return choice;
    }

    int pick = -1;
    for (std::size_t u = 0; u < t.size(); ++u) {
        if (rejected[u] || t[u] < best - kTieTol)
            continue;
        if (pick < 0 || row_ids[u] < row_ids[pick])
            pick = static_cast<int>(u);
    }
    choice.status = FlattestStatus::Found;
    choice.row = pick;
    choice.cosine = t[pick];
    return choice;
}

int select_pivot(const Vec& row, const std::vector<bool>& live_vars) {
    int best = -1;
    double mag = 0.0;
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (!live_vars[i])
            continue;
        norm_sq += row[i] * row[i];
        const double m = std::abs(row[i]);
        if (m > mag) { // strict: ties keep the lowest variable index
            mag = m;
            best = static_cast<int>(i);
        }
    }
    if (std::sqrt(norm_sq) < kZeroRowTol)
        throw ZeroRow("cannot pivot on a vacuous row");
    return best;
}

RawElimination eliminate_raw(const Problem& p, int k, int j) {
    const Vec& plane = p.rows[k];
    const double akj = plane[j];
    Vec ratio(p.n_vars);
    for (int i = 0; i < p.n_vars; ++i)
        ratio[i] = plane[i] / akj;
    const double rhs_ratio = p.rhs[k] / akj;

    RawElimination out;
    for (int u = 0; u < p.row_count(); ++u) {
        if (u == k)
            continue;
        Vec row = p.rows[u];
        double r = p.rhs[u];
        const double c = row[j];
        if (c != 0.0) {
            for (int i = 0; i < p.n_vars; ++i)
                if (i != j)
                    row[i] -= c * ratio[i];
            r -= c * rhs_ratio;
        }
        row[j] = 0.0;
        out.rows.push_back(std::move(row));
        out.rhs.push_back(r);
        out.row_ids.push_back(p.row_ids[u]);
    }

    out.obj_dir = p.obj_dir;
    out.obj_offset = p.obj_offset;
    const double dj = out.obj_dir[j];
    if (dj != 0.0) {
        for (int i = 0; i < p.n_vars; ++i)
            if (i != j)
                out.obj_dir[i] -= dj * ratio[i];
        out.obj_offset += dj * rhs_ratio;
    }
    out.obj_dir[j] = 0.0;
    return out;
}

EliminationResult eliminate(const Problem& p, int k, int j, int stage,
                            const Tolerances& tol) {
    EliminationResult result;
    result.record.plane_coeffs = p.rows[k];
    result.record.plane_rhs = p.rhs[k];
    result.record.pivot = j;
    result.record.stage = stage;
    result.record.row_id = p.row_ids[k];

    RawElimination raw = eliminate_raw(p, k, j);

    Problem q;
    q.n_vars = p.n_vars;
    q.rows = std::move(raw.rows);
    q.rhs = std::move(raw.rhs);
    q.row_ids = std::move(raw.row_ids);
    q.obj_dir = std::move(raw.obj_dir);
    q.obj_offset = raw.obj_offset;
    q.live_vars = p.live_vars;
    q.live_vars[j] = false;

    const VacuousSweep sweep = drop_vacuous_rows(q, tol.feas);
    if (sweep.infeasible) {
        result.infeasible = true;
        return result;
    }
    result.dropped_vacuous_ids = sweep.dropped_ids;
    result.reduced = normalize_rows(std::move(q));
    return result;
}

OneDimOutcome solve_1d(const Problem& p, const Tolerances& tol) {
    int j = -1;
    for (int i = 0; i < p.n_vars; ++i) {
        if (!p.live_vars[i])
            continue;
        if (j >= 0)
            throw Error("solve_1d requires exactly one live variable");
        j = i;
    }
    if (j < 0)
        throw Error("solve_1d requires exactly one live variable");

    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    for (int u = 0; u < p.row_count(); ++u) {
        const double a = p.rows[u][j];
        if (a > 0.0)
            upper = std::min(upper, p.rhs[u] / a);
        else if (a < 0.0)
            lower = std::max(lower, p.rhs[u] / a);
    }

    OneDimOutcome out;
    if (lower > upper + tol.feas) {
        out.status = SolveStatus::Infeasible;
        return out;
    }
    const double d1 = p.obj_dir[j];
    if (d1 > tol.dir) {
        if (!std::isfinite(upper)) {
            out.status = SolveStatus::Unbounded;
            return out;
        }
        out.status = SolveStatus::Optimal;
        out.x = upper;
    } else if (d1 < -tol.dir) {
        if (!std::isfinite(lower)) {
            out.status = SolveStatus::Unbounded;
            return out;
        }
        out.status = SolveStatus::Optimal;
        out.x = lower;
    } else {
        // Constant objective over the interval: any feasible value works.
        out.status = SolveStatus::Optimal;
        out.x = std::isfinite(upper) ? upper : (std::isfinite(lower) ? lower : 0.0);
    }
    return out;
}

Vec back_substitute(const std::vector<EliminationRecord>& trace, Vec x,
                    std::vector<bool> known) {
    if (x.size() != known.size())
        throw DimensionMismatch("x and known mask lengths differ");

    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
        const EliminationRecord& rec = *it;
        double s = rec.plane_rhs;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (static_cast<int>(i) == rec.pivot || rec.plane_coeffs[i] == 0.0)
                continue;
            if (!known[i])
                throw IncompleteTrace("plane references a variable that is not set");
            s -= rec.plane_coeffs[i] * x[i];
        }
        x[rec.pivot] = s / rec.plane_coeffs[rec.pivot];
        known[rec.pivot] = true;
    }
    for (bool k : known)
        if (!k)
            throw IncompleteTrace("a variable was never recovered");
    return x;
}

namespace {

struct McState {
    std::vector<Vec> points;   // feasible points for the current problem
    std::optional<Vec> source; // strictly interior start for resampling
};

enum class CandidateVerdict { NonRedundant, Redundant, Undecidable };

struct CandidateCheck {
    CandidateVerdict verdict = CandidateVerdict::Undecidable;
    std::vector<RayHit> hits;
    int no_hit_rays = 0;
};

CandidateCheck check_candidate_exact(const Problem& p, int k) {
    CandidateCheck chk;
    chk.verdict = is_redundant_exact(p, k) ? CandidateVerdict::Redundant
                                           : CandidateVerdict::NonRedundant;
    return chk;
}

// Monte Carlo verdict with the min-witness rule: accept NonRedundant only
// once enough rays land on the plane, resampling up to the retry cap, then
// fall back to the exact test when the enumeration fits.
CandidateCheck check_candidate_mc(const Problem& p, int k, McState& mc,
                                  const SolveConfig& cfg, std::mt19937_64& rng,
                                  const Vec& direction) {
    CandidateCheck chk;
    int attempts = 0;
    while (!mc.points.empty()) {
        const McVerdict v = is_redundant_mc(p, k, mc.points, direction);
        if (v.no_hit_rays > 0) {
            chk.no_hit_rays = v.no_hit_rays;
            return chk;
        }
        if (v.likely_redundant) {
            chk.verdict = CandidateVerdict::Redundant;
            return chk;
        }
        chk.hits.insert(chk.hits.end(), v.hits.begin(), v.hits.end());
        if (static_cast<int>(chk.hits.size()) >= cfg.min_hits) {
            chk.verdict = CandidateVerdict::NonRedundant;
            return chk;
        }
        if (attempts >= cfg.retry_cap || !mc.source)
            break;
        ++attempts;
        mc.points = hit_and_run_sample(p, *mc.source, cfg.samples, rng, cfg.tol.feas);
    }

    if (within_enumeration_cap(p.row_count() - 1, p.live_count())) {
        chk.verdict = is_redundant_exact(p, k) ? CandidateVerdict::Redundant
                                               : CandidateVerdict::NonRedundant;
        return chk;
    }
    if (!chk.hits.empty()) {
        // Cap exceeded: trust the witnesses we do have.
        chk.verdict = CandidateVerdict::NonRedundant;
        return chk;
    }
    chk.verdict = CandidateVerdict::Undecidable;
    return chk;
}

// Carries witness hits into the reduced space and replenishes the sample
// pool from the most interior seed available. Without a strictly interior
// seed the projected witnesses themselves serve as ray sources.
void reseed_mc(McState& mc, const std::vector<RayHit>& hits,
               const EliminationRecord& rec, const Problem& reduced,
               const SolveConfig& cfg, std::mt19937_64& rng) {
    mc.points.clear();
    mc.source.reset();
    if (hits.empty())
        return;

    std::vector<Vec> projected = reduced_feasible_points(hits, rec);

    const auto min_residual = [&reduced](const Vec& q) {
        const Vec r = residual(reduced, q);
        return r.empty() ? std::numeric_limits<double>::infinity()
                         : *std::min_element(r.begin(), r.end());
    };

    Vec centroid(reduced.n_vars, 0.0);
    for (const Vec& q : projected)
        for (int i = 0; i < reduced.n_vars; ++i)
            centroid[i] += q[i];
    for (double& c : centroid)
        c /= static_cast<double>(projected.size());

    const Vec* source = nullptr;
    if (min_residual(centroid) > cfg.tol.feas) {
        source = &centroid;
    } else {
        const Vec* best = nullptr;
        double best_res = -std::numeric_limits<double>::infinity();
        for (const Vec& q : projected) {
            const double r = min_residual(q);
            if (r > best_res) {
                best_res = r;
                best = &q;
            }
        }
        if (best && best_res > cfg.tol.feas)
            source = best;
    }

    if (source) {
        mc.source = *source;
        mc.points = hit_and_run_sample(reduced, *source, cfg.samples, rng,
                                       cfg.tol.feas);
    } else {
        mc.points = std::move(projected);
    }
}

struct FeasiblePointSearch {
    enum class Status { Point, Infeasible, TooLarge } status;
    Vec point;
};

FeasiblePointSearch find_feasible_point(const Problem& p, const McState& mc) {
    if (!mc.points.empty())
        return {FeasiblePointSearch::Status::Point, mc.points.front()};
    if (p.row_count() == 0)
        return {FeasiblePointSearch::Status::Point, Vec(p.n_vars, 0.0)};
    Problem q = p;
    q.obj_dir.assign(p.n_vars, 0.0);
    q.obj_offset = 0.0;
    const OracleResult r = oracle_solve(q);
    if (r.status == OracleStatus::TooLarge)
        return {FeasiblePointSearch::Status::TooLarge, {}};
    if (r.status == OracleStatus::NoFeasibleVertex)
        return {FeasiblePointSearch::Status::Infeasible, {}};
    return {FeasiblePointSearch::Status::Point, r.x};
}

// Back-substitutes, evaluates z from the original objective, and refuses to
// report Optimal at a point violating the original constraints.
SolveOutcome finish_at_point(const Problem& original, SolveOutcome out,
                             Vec x_partial, std::vector<bool> known,
                             const Tolerances& tol) {
    Vec x = back_substitute(out.trace, std::move(x_partial), std::move(known));
    const double z = objective_value(original, x);
    if (!is_feasible(original, x, tol.feas)) {
        out.status = SolveStatus::Stalled;
        out.note = "reduction terminated at a point violating the original constraints";
        return out;
    }
    out.status = SolveStatus::Optimal;
    out.x = std::move(x);
    out.z = z;
    return out;
}

} // namespace

SolveOutcome solve(const Problem& input, const std::optional<Vec>& interior_point,
                   const SolveConfig& cfg) {
    const Tolerances& tol = cfg.tol;
    const Problem original = input;
    SolveOutcome out;

    Problem p = input;
    {
        const VacuousSweep sweep = drop_vacuous_rows(p, tol.feas);
        if (sweep.infeasible) {
            out.status = SolveStatus::Infeasible;
            out.note = "contradictory vacuous row in the input";
            return out;
        }
    }
    p = normalize_rows(std::move(p));

    std::mt19937_64 rng(cfg.seed);
    McState mc;
    if (cfg.redundancy == RedundancyMode::MonteCarlo) {
        if (!interior_point)
            throw NotInterior("monte carlo redundancy mode requires an interior point");
        mc.source = *interior_point;
        mc.points = hit_and_run_sample(p, *interior_point, cfg.samples, rng, tol.feas);
    }

    while (p.live_count() > 1) {
        if (norm(p.obj_dir) <= tol.dir) {
            // The objective went constant mid-reduction: any feasible point
            // of the current system is optimal.
            const FeasiblePointSearch found = find_feasible_point(p, mc);
            if (found.status == FeasiblePointSearch::Status::Infeasible) {
                out.status = SolveStatus::Infeasible;
                out.note = "constant objective over an empty region";
                return out;
            }
            if (found.status == FeasiblePointSearch::Status::TooLarge) {
                out.status = SolveStatus::Stalled;
                out.note = "constant objective; feasible-point enumeration exceeds the cap";
                return out;
            }
            return finish_at_point(original, std::move(out), found.point,
                                   p.live_vars, tol);
        }
        if (p.row_count() == 0) {
            out.status = SolveStatus::Unbounded;
            out.note = "no constraints oppose the objective direction";
            return out;
        }

        StageInfo stage;
        stage.stage = static_cast<int>(out.trace.size()) + 1;

        std::set<int> undecided_ids;
        bool eliminated = false;
        while (!eliminated) {
            if (p.row_count() == 0) {
                out.stages.push_back(stage);
                out.status = SolveStatus::Unbounded;
                out.note = "every remaining plane was deleted as redundant";
                return out;
            }
            const Vec direction = unit_objective(p, tol.dir);
            const Vec t = cosines(p, tol.dir);
            std::vector<bool> rejected(p.row_count(), false);
            for (int u = 0; u < p.row_count(); ++u)
                rejected[u] = undecided_ids.count(p.row_ids[u]) > 0;

            const FlattestChoice choice = select_flattest(t, p.row_ids, rejected, tol.dir);
            if (choice.status == FlattestStatus::NoCandidates) {
                out.stages.push_back(stage);
                out.status = SolveStatus::Stalled;
                out.note = "every flattest candidate was rejected without a verdict";
                return out;
            }
            if (choice.status == FlattestStatus::UnboundedDirection) {
                out.stages.push_back(stage);
                out.status = SolveStatus::Unbounded;
                out.note = "no remaining plane opposes the objective direction";
                return out;
            }
            const int k = choice.row;

            CandidateCheck chk = cfg.redundancy == RedundancyMode::Exact
                                     ? check_candidate_exact(p, k)
                                     : check_candidate_mc(p, k, mc, cfg, rng, direction);
            if (chk.no_hit_rays > 0) {
                out.stages.push_back(stage);
                out.status = SolveStatus::Unbounded;
                out.note = "sample rays escaped without striking any plane";
                return out;
            }
            if (chk.verdict == CandidateVerdict::Redundant) {
                stage.deleted_row_ids.push_back(p.row_ids[k]);
                p.rows.erase(p.rows.begin() + k);
                p.rhs.erase(p.rhs.begin() + k);
                p.row_ids.erase(p.row_ids.begin() + k);
                continue;
            }
            if (chk.verdict == CandidateVerdict::Undecidable) {
                undecided_ids.insert(p.row_ids[k]);
                continue;
            }

            const int j = select_pivot(p.rows[k], p.live_vars);
            stage.row_id = p.row_ids[k];
            stage.pivot = j;
            stage.cosine = choice.cosine;

            EliminationResult elim = eliminate(p, k, j, stage.stage, tol);
            if (elim.infeasible) {
                out.stages.push_back(stage);
                out.status = SolveStatus::Infeasible;
                out.note = "elimination produced a contradictory vacuous row";
                return out;
            }
            out.trace.push_back(elim.record);
            out.stages.push_back(stage);
            if (cfg.redundancy == RedundancyMode::MonteCarlo)
                reseed_mc(mc, chk.hits, elim.record, elim.reduced, cfg, rng);
            p = std::move(elim.reduced);
            eliminated = true;
        }
    }

    const OneDimOutcome od = solve_1d(p, tol);
    if (od.status != SolveStatus::Optimal) {
        out.status = od.status;
        return out;
    }
    int survivor = -1;
    for (int i = 0; i < p.n_vars; ++i)
        if (p.live_vars[i])
            survivor = i;

    Vec x_partial(original.n_vars, 0.0);
    std::vector<bool> known(original.n_vars, false);
    x_partial[survivor] = od.x;
    known[survivor] = true;
    return finish_at_point(original, std::move(out), std::move(x_partial),
                           std::move(known), tol);
}

} // namespace flatlp
