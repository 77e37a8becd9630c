// support.hpp - shared fixtures and test-only helpers.

#pragma once

#include <cmath>
#include <vector>

#include "flatlp/model.hpp"

namespace flatlp::test {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// x1 <= 1, x2 <= 1, -x1 <= 0, -x2 <= 0 (rows already unit norm).
inline Problem unit_square(Vec obj = {kInvSqrt2, kInvSqrt2}) {
    return make_problem(2,
                        {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}},
                        {1.0, 1.0, 0.0, 0.0}, std::move(obj));
}

// A ceiling plane (row id 1) floating well above a tent with apex (0, 1):
// it is the best-aligned plane for d = (0, 1) yet binds nowhere, so every
// upward ray exits through a tent side first. Interior point: (0, 0.5).
inline Problem redundant_ceiling() {
    Mat rows = {{0.0, 1.0},  {0.6, 0.8}, {-0.6, 0.8},
                {0.0, -1.0}, {1.0, 0.0}, {-1.0, 0.0}};
    Vec rhs = {5.0, 0.8, 0.8, 0.0, 10.0, 10.0};
    return normalize_rows(make_problem(2, std::move(rows), std::move(rhs),
                                       {0.0, 1.0}));
}

inline Vec ceiling_interior() { return {0.0, 0.5}; }

// Affine form c + sum coef_i x_i: the independent route for checking the
// elimination algebra by literal symbolic substitution.
struct LinForm {
    Vec coef;
    double constant = 0.0;

    double eval(const Vec& x) const {
        double s = constant;
        for (std::size_t i = 0; i < coef.size(); ++i)
            s += coef[i] * x[i];
        return s;
    }
};

// x_j expressed from the plane equality a.x = r.
inline LinForm pivot_expression(const Vec& plane, double rhs, int j) {
    LinForm e;
    e.coef.assign(plane.size(), 0.0);
    for (std::size_t i = 0; i < plane.size(); ++i)
        if (static_cast<int>(i) != j)
            e.coef[i] = -plane[i] / plane[j];
    e.constant = rhs / plane[j];
    return e;
}

// Replaces x_j with expr throughout f (expr must not mention x_j).
inline LinForm substitute(LinForm f, int j, const LinForm& expr) {
    const double w = f.coef[j];
    f.coef[j] = 0.0;
    for (std::size_t i = 0; i < f.coef.size(); ++i)
        f.coef[i] += w * expr.coef[i];
    f.constant += w * expr.constant;
    return f;
}

} // namespace flatlp::test
