#include "flatlp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flatlp {

int Problem::live_count() const {
    return static_cast<int>(std::count(live_vars.begin(), live_vars.end(), true));
}

Problem make_problem(int n_vars, Mat rows, Vec rhs, Vec obj_dir) {
    if (static_cast<int>(obj_dir.size()) != n_vars)
        throw DimensionMismatch("objective length does not match n_vars");
    if (rows.size() != rhs.size())
        throw DimensionMismatch("row count does not match rhs count");
    for (const Vec& row : rows)
        if (static_cast<int>(row.size()) != n_vars)
            throw DimensionMismatch("row width does not match n_vars");

    Problem p;
    p.n_vars = n_vars;
    p.rows = std::move(rows);
    p.rhs = std::move(rhs);
    p.obj_dir = std::move(obj_dir);
    p.live_vars.assign(n_vars, true);
    p.row_ids.resize(p.rows.size());
    std::iota(p.row_ids.begin(), p.row_ids.end(), 1);
    return p;
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("dot of vectors with different lengths");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) {
    return std::sqrt(dot(a, a));
}

double row_norm_live(const Problem& p, int u) {
    double s = 0.0;
    const Vec& row = p.rows[u];
    for (int i = 0; i < p.n_vars; ++i)
        if (p.live_vars[i])
            s += row[i] * row[i];
    return std::sqrt(s);
}

Problem normalize_rows(Problem p) {
    for (int u = 0; u < p.row_count(); ++u) {
        const double nu = row_norm_live(p, u);
        if (nu < kZeroRowTol)
            throw ZeroRow("row " + std::to_string(p.row_ids[u]) +
                          " has zero norm over live columns");
        for (double& c : p.rows[u])
            c /= nu;
        p.rhs[u] /= nu;
    }
    return p;
}

VacuousSweep drop_vacuous_rows(Problem& p, double tol_feas) {
    VacuousSweep sweep;
    Mat rows;
    Vec rhs;
    std::vector<int> ids;
    for (int u = 0; u < p.row_count(); ++u) {
        if (row_norm_live(p, u) >= kZeroRowTol) {
            rows.push_back(std::move(p.rows[u]));
            rhs.push_back(p.rhs[u]);
            ids.push_back(p.row_ids[u]);
            continue;
        }
        if (p.rhs[u] < -tol_feas) {
            sweep.infeasible = true;
            return sweep;
        }
        sweep.dropped_ids.push_back(p.row_ids[u]);
    }
    p.rows = std::move(rows);
    p.rhs = std::move(rhs);
    p.row_ids = std::move(ids);
    return sweep;
}

Vec residual(const Problem& p, const Vec& x) {
    if (static_cast<int>(x.size()) != p.n_vars)
        throw DimensionMismatch("point length does not match n_vars");
    Vec r(p.row_count());
    for (int u = 0; u < p.row_count(); ++u)
        r[u] = p.rhs[u] - dot(p.rows[u], x);
    return r;
}

bool is_feasible(const Problem& p, const Vec& x, double tol) {
    const Vec r = residual(p, x);
    return std::all_of(r.begin(), r.end(), [tol](double s) { return s >= -tol; });
}

double objective_value(const Problem& p, const Vec& x) {
    if (static_cast<int>(x.size()) != p.n_vars)
        throw DimensionMismatch("point length does not match n_vars");
    return p.obj_offset + dot(p.obj_dir, x);
}

Vec unit_objective(const Problem& p, double tol_dir) {
    const double dn = norm(p.obj_dir);
    if (dn <= tol_dir)
        throw DegenerateObjective("objective direction norm below tolerance");
    Vec d = p.obj_dir;
    for (double& c : d)
        c /= dn;
    return d;
}

} // namespace flatlp
