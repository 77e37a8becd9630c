// model.hpp - LP problem representation, normalization, feasibility.
//
// A problem is stored as  A x <= r  with every live row scaled to unit
// Euclidean norm, so row coefficients double as outward unit normals.
// Eliminated ("dead") variables keep their columns: the column is exactly
// zero everywhere and live_vars records which variables still participate.
// Problems are value types; every operation returns a new value.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace flatlp {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ZeroRow : public Error {
public:
    using Error::Error;
};

class DegenerateObjective : public Error {
public:
    using Error::Error;
};

class NotInterior : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    using Error::Error;
};

class NotOnPlane : public Error {
public:
    using Error::Error;
};

class IncompleteTrace : public Error {
public:
    using Error::Error;
};

class OracleTooLarge : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct Tolerances {
    double feas = 1e-7;  // feasibility slack
    double norm = 1e-12; // permitted unit-norm drift
    double dir = 1e-10;  // minimum usable objective-direction norm
};

// Rows whose live-column norm falls below this are vacuous: trivially
// satisfied or a certificate of infeasibility, depending on the rhs sign.
inline constexpr double kZeroRowTol = 1e-14;

struct Problem {
    int n_vars = 0;
    Mat rows;                    // m x n_vars; dead columns exactly zero
    Vec rhs;                     // m
    Vec obj_dir;                 // kept unnormalized; dead entries exactly zero
    double obj_offset = 0.0;     // constant term accumulated by eliminations
    std::vector<bool> live_vars; // n_vars
    std::vector<int> row_ids;    // original 1-based input indices

    int row_count() const { return static_cast<int>(rows.size()); }
    int live_count() const;
};

// Builds a problem with all variables live and row ids 1..m. Rows are taken
// as given; call normalize_rows before handing the result to the solver.
Problem make_problem(int n_vars, Mat rows, Vec rhs, Vec obj_dir);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);

// Euclidean norm of row u restricted to live columns.
double row_norm_live(const Problem& p, int u);

/// Scales every row and its rhs by 1/N_u so coefficient squares sum to one.
/// Throws ZeroRow for rows below kZeroRowTol; apply the vacuous-row rule
/// (drop_vacuous_rows) first.
Problem normalize_rows(Problem p);

struct VacuousSweep {
    bool infeasible = false;      // a vacuous row demanded 0 <= rhs < -tol_feas
    std::vector<int> dropped_ids; // ids of satisfiable vacuous rows removed
};

// Removes rows whose live-column norm is below kZeroRowTol. Satisfiable ones
// (rhs >= -tol_feas) are dropped; an unsatisfiable one marks the problem
// infeasible and stops the sweep.
VacuousSweep drop_vacuous_rows(Problem& p, double tol_feas);

/// r - A x, componentwise.
Vec residual(const Problem& p, const Vec& x);

/// True iff every slack is >= -tol.
bool is_feasible(const Problem& p, const Vec& x, double tol);

/// obj_offset + obj_dir . x
double objective_value(const Problem& p, const Vec& x);

// Unit objective direction d/|d|; throws DegenerateObjective when |d| <= tol_dir.
Vec unit_objective(const Problem& p, double tol_dir);

} // namespace flatlp
