#include "doctest.h"

#include <cmath>
#include <random>

#include "flatlp/harness.hpp"
#include "flatlp/model.hpp"
#include "flatlp/oracle.hpp"
#include "flatlp/redundancy.hpp"

#include "support.hpp"

using namespace flatlp;
using test::kInvSqrt2;

namespace {

// Randomly rescales rows so normalization has real work to do.
Problem scaled_copy(const Problem& p, std::uint64_t seed) {
    Problem q = p;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    for (int u = 0; u < q.row_count(); ++u) {
        const double s = scale(rng);
        for (double& c : q.rows[u])
            c *= s;
        q.rhs[u] *= s;
    }
    return q;
}

} // namespace

TEST_CASE("normalize_rows scales rows to unit norm") {
    Problem p = make_problem(2, {{3.0, 4.0}}, {10.0}, {1.0, 0.0});
    p = normalize_rows(std::move(p));
    CHECK(p.rows[0][0] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(p.rows[0][1] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(p.rhs[0] == doctest::Approx(2.0).epsilon(1e-14));

    Problem q = make_problem(2, {{0.0, 2.0}}, {4.0}, {1.0, 0.0});
    q = normalize_rows(std::move(q));
    CHECK(q.rows[0][0] == 0.0);
    CHECK(q.rows[0][1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.rhs[0] == doctest::Approx(2.0).epsilon(1e-14));

    Problem r = make_problem(2, {{1.0, 0.0}}, {1.0}, {1.0, 0.0});
    r = normalize_rows(std::move(r));
    CHECK(r.rows[0][0] == 1.0);
    CHECK(r.rhs[0] == 1.0);
}

TEST_CASE("normalize_rows rejects zero rows") {
    Problem p = make_problem(2, {{0.0, 0.0}}, {1.0}, {1.0, 0.0});
    CHECK_THROWS_AS(normalize_rows(std::move(p)), ZeroRow);
}

TEST_CASE("normalize_rows is idempotent") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = generate_instance(3, 8, seed);
        const Problem raw = scaled_copy(inst.problem, seed * 7 + 1);
        const Problem once = normalize_rows(raw);
        const Problem twice = normalize_rows(once);
        for (int u = 0; u < once.row_count(); ++u) {
            for (int i = 0; i < once.n_vars; ++i)
                CHECK(std::abs(once.rows[u][i] - twice.rows[u][i]) <= 1e-12);
            CHECK(std::abs(once.rhs[u] - twice.rhs[u]) <= 1e-12);
        }
    }
}

TEST_CASE("normalize_rows preserves the feasible set") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coord(-12.0, 12.0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = generate_instance(2, 6, seed);
        const Problem raw = scaled_copy(inst.problem, seed);
        const Problem norm = normalize_rows(raw);
        for (int trial = 0; trial < 1000; ++trial) {
            const Vec x = {coord(rng), coord(rng)};
            CHECK(is_feasible(raw, x, 1e-9) == is_feasible(norm, x, 1e-9));
        }
    }
}

TEST_CASE("residual evaluates slacks componentwise") {
    const Problem p = make_problem(2, {{1.0, 0.0}, {0.0, 1.0}}, {1.0, 1.0},
                                   {0.0, 0.0});
    CHECK(residual(p, {1.0, 1.0}) == Vec{0.0, 0.0});
    CHECK(residual(p, {0.0, 0.0}) == Vec{1.0, 1.0});
    CHECK(residual(p, {2.0, 0.0}) == Vec{-1.0, 1.0});
    CHECK_THROWS_AS(residual(p, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("is_feasible honors the tolerance") {
    const Problem p = test::unit_square();
    CHECK(is_feasible(p, {0.5, 0.5}, 1e-7));
    CHECK(is_feasible(p, {1.0 + 1e-9, 1.0}, 1e-7));
    CHECK_FALSE(is_feasible(p, {2.0, 0.0}, 1e-7));
}

TEST_CASE("objective_value includes the accumulated offset") {
    Problem p = make_problem(2, {{1.0, 0.0}}, {1.0}, {1.0, 1.0});
    CHECK(objective_value(p, {1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));

    p.obj_dir = {0.0, 0.0};
    p.obj_offset = kInvSqrt2;
    CHECK(objective_value(p, {5.0, 5.0}) ==
          doctest::Approx(kInvSqrt2).epsilon(1e-15));

    p.obj_dir = {kInvSqrt2, kInvSqrt2};
    p.obj_offset = 0.0;
    CHECK(objective_value(p, {1.0, 1.0}) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(objective_value(p, {1.0}), DimensionMismatch);
}

TEST_CASE("unit_objective rejects a degenerate direction") {
    const Problem p = make_problem(1, {{1.0}}, {1.0}, {0.0});
    CHECK_THROWS_AS(unit_objective(p, 1e-10), DegenerateObjective);
}

TEST_CASE("drop_vacuous_rows applies the vacuous-row rule") {
    Problem p = make_problem(2, {{0.0, 0.0}, {1.0, 0.0}}, {0.5, 1.0}, {1.0, 0.0});
    const VacuousSweep sweep = drop_vacuous_rows(p, 1e-7);
    CHECK_FALSE(sweep.infeasible);
    CHECK(sweep.dropped_ids == std::vector<int>{1});
    CHECK(p.row_count() == 1);
    CHECK(p.row_ids == std::vector<int>{2});

    Problem q = make_problem(2, {{0.0, 0.0}}, {-0.5}, {1.0, 0.0});
    CHECK(drop_vacuous_rows(q, 1e-7).infeasible);
}

TEST_CASE("feasible points never beat the oracle optimum") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = generate_instance(2, 5, seed);
        const OracleResult best = oracle_solve(inst.problem);
        REQUIRE(best.status == OracleStatus::Optimal);

        std::mt19937_64 rng(seed);
        const auto points =
            hit_and_run_sample(inst.problem, inst.interior, 200, rng, 1e-7);
        for (const Vec& x : points) {
            if (!is_feasible(inst.problem, x, 0.0))
                continue;
            CHECK(objective_value(inst.problem, x) <= best.z + 1e-7);
        }
    }
}
