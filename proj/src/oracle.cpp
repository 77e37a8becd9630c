#include "flatlp/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace flatlp {

bool within_enumeration_cap(int m, int n_live) {
    if (n_live < 0 || n_live > m)
        return true; // zero combinations
    int k = std::min(n_live, m - n_live);
    unsigned long long c = 1;
    for (int i = 1; i <= k; ++i) {
        // c holds C(m-k+i, i) after each step, which is monotone in i.
        c = c * static_cast<unsigned long long>(m - k + i) /
            static_cast<unsigned long long>(i);
        if (c > kEnumerationCap)
            return false;
    }
    return c <= kEnumerationCap;
}

std::optional<Vec> solve_linear_system(Mat a, Vec b) {
    const int n = static_cast<int>(b.size());
    if (static_cast<int>(a.size()) != n)
        throw DimensionMismatch("system is not square");
    for (const Vec& row : a)
        if (static_cast<int>(row.size()) != n)
            throw DimensionMismatch("system is not square");

    constexpr double kPivotTol = 1e-10;

    Vec scale(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (double v : a[i])
            s = std::max(s, std::abs(v));
        if (s == 0.0)
            return std::nullopt;
        scale[i] = s;
    }

    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(a[col][col]) / scale[col];
        for (int i = col + 1; i < n; ++i) {
            const double cand = std::abs(a[i][col]) / scale[i];
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best < kPivotTol)
            return std::nullopt;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(b[piv], b[col]);
            std::swap(scale[piv], scale[col]);
        }
        for (int i = col + 1; i < n; ++i) {
            const double f = a[i][col] / a[col][col];
            if (f == 0.0)
                continue;
            a[i][col] = 0.0;
            for (int j = col + 1; j < n; ++j)
                a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }

    Vec x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j)
            s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

OracleResult oracle_solve(const Problem& p) {
    OracleResult best;

    std::vector<int> live_cols;
    for (int i = 0; i < p.n_vars; ++i)
        if (p.live_vars[i])
            live_cols.push_back(i);
    const int nl = static_cast<int>(live_cols.size());
    const int m = p.row_count();

    if (nl == 0 || m < nl)
        return best; // NoFeasibleVertex
    if (!within_enumeration_cap(m, nl)) {
        best.status = OracleStatus::TooLarge;
        return best;
    }

    std::vector<int> combo(nl);
    for (int i = 0; i < nl; ++i)
        combo[i] = i;

    Mat a(nl, Vec(nl));
    Vec b(nl);
    bool have_best = false;

    while (true) {
        for (int i = 0; i < nl; ++i) {
            const Vec& row = p.rows[combo[i]];
            for (int j = 0; j < nl; ++j)
                a[i][j] = row[live_cols[j]];
            b[i] = p.rhs[combo[i]];
        }

        if (auto sol = solve_linear_system(a, b)) {
            Vec x(p.n_vars, 0.0);
            for (int j = 0; j < nl; ++j)
                x[live_cols[j]] = (*sol)[j];
            if (is_feasible(p, x, kVertexFeasTol)) {
                const double z = objective_value(p, x);
                // Lexicographic enumeration order makes keep-first the
                // smallest active set on ties.
                if (!have_best || z > best.z) {
                    have_best = true;
                    best.status = OracleStatus::Optimal;
                    best.x = std::move(x);
                    best.z = z;
                    best.active_set = combo;
                }
            }
        }

        // next n_live-subset of [0, m) in lexicographic order
        int i = nl - 1;
        while (i >= 0 && combo[i] == m - nl + i)
            --i;
        if (i < 0)
            break;
        ++combo[i];
        for (int j = i + 1; j < nl; ++j)
            combo[j] = combo[j - 1] + 1;
    }

    return best;
}

} // namespace flatlp
