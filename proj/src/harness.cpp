#include "flatlp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "flatlp/numfmt.hpp"
#include "flatlp/oracle.hpp"

namespace flatlp {

namespace {

Vec random_unit_vector(int n, std::mt19937_64& rng,
                       std::normal_distribution<double>& gauss) {
    Vec v(n);
    while (true) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = gauss(rng);
            s += v[i] * v[i];
        }
        if (s > 1e-18) {
            const double inv = 1.0 / std::sqrt(s);
            for (double& c : v)
                c *= inv;
            return v;
        }
    }
}

} // namespace

Instance generate_instance(int n, int m, std::uint64_t seed, double box_bound) {
    if (n < 1 || m < 1)
        throw Error("generate_instance requires n >= 1 and m >= 1");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> slack(0.1, 1.0);

    Mat rows;
    Vec rhs;
    rows.reserve(m + 2 * n);
    rhs.reserve(m + 2 * n);

    // Random unit normals through the origin, pushed out by a positive
    // slack, so the origin is strictly interior with margin >= 0.1.
    for (int u = 0; u < m; ++u) {
        rows.push_back(random_unit_vector(n, rng, gauss));
        rhs.push_back(slack(rng));
    }
    // Box rows guarantee boundedness: x_i <= B, then -x_i <= B.
    for (int i = 0; i < n; ++i) {
        Vec row(n, 0.0);
        row[i] = 1.0;
        rows.push_back(std::move(row));
        rhs.push_back(box_bound);
    }
    for (int i = 0; i < n; ++i) {
        Vec row(n, 0.0);
        row[i] = -1.0;
        rows.push_back(std::move(row));
        rhs.push_back(box_bound);
    }

    Vec objective = random_unit_vector(n, rng, gauss);

    Instance inst;
    inst.problem = make_problem(n, std::move(rows), std::move(rhs),
                                std::move(objective));
    inst.interior.assign(n, 0.0);
    return inst;
}

ComparisonReport compare(const Problem& p,
                         const std::optional<Vec>& interior_point,
                         const SolveConfig& cfg) {
    using clock = std::chrono::steady_clock;
    ComparisonReport r;
    r.n = p.n_vars;
    r.m = p.row_count();

    bool solver_feasible = true;
    {
        const auto t0 = clock::now();
        try {
            r.outcome = solve(p, interior_point, cfg);
            r.solver_status = to_string(r.outcome.status);
            if (r.outcome.status == SolveStatus::Optimal) {
                r.z_solver = r.outcome.z;
                solver_feasible = is_feasible(p, r.outcome.x, cfg.tol.feas);
            }
            r.stages = r.outcome.stages;
        } catch (const Error&) {
            r.solver_status = "error";
        }
        r.wall_solver_ms =
            std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    }
    {
        const auto t0 = clock::now();
        try {
            const OracleResult o = oracle_solve(p);
            switch (o.status) {
            case OracleStatus::Optimal:
                r.oracle_status = "optimal";
                r.z_oracle = o.z;
                break;
            case OracleStatus::NoFeasibleVertex:
                r.oracle_status = "infeasible";
                break;
            case OracleStatus::TooLarge:
                r.oracle_status = "error";
                break;
            }
        } catch (const Error&) {
            r.oracle_status = "error";
        }
        r.wall_oracle_ms =
            std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    }

    r.agree = r.solver_status == r.oracle_status &&
              r.solver_status != "error" && solver_feasible;
    if (r.z_solver && r.z_oracle) {
        r.abs_gap = std::abs(*r.z_solver - *r.z_oracle);
        r.agree = r.agree &&
                  *r.abs_gap <= 1e-6 * std::max(1.0, std::abs(*r.z_oracle));
    }
    return r;
}

std::string csv_row(const ComparisonReport& r, bool include_timing) {
    std::ostringstream os;
    os << r.instance_id << ',' << r.n << ',' << r.m << ',' << r.seed << ','
       << r.solver_status << ',' << r.oracle_status << ',';
    if (r.z_solver)
        os << format_real(*r.z_solver);
    os << ',';
    if (r.z_oracle)
        os << format_real(*r.z_oracle);
    os << ',';
    if (r.abs_gap)
        os << format_real(*r.abs_gap);
    os << ',' << (r.agree ? "true" : "false") << ',';

    for (std::size_t s = 0; s < r.stages.size(); ++s) {
        if (s)
            os << ';';
        const StageInfo& st = r.stages[s];
        os << st.row_id << ':' << st.pivot + 1 << ':' << format_real(st.cosine);
    }
    os << ',';
    bool first = true;
    for (const StageInfo& st : r.stages)
        for (int id : st.deleted_row_ids) {
            if (!first)
                os << ';';
            first = false;
            os << id;
        }
    os << ',' << format_real(include_timing ? r.wall_solver_ms : 0.0) << ','
       << format_real(include_timing ? r.wall_oracle_ms : 0.0);
    return os.str();
}

BatchResult finalize_batch(std::vector<ComparisonReport> reports,
                           bool include_timing) {
    BatchResult result;
    std::ostringstream csv;
    csv << kCsvHeader << '\n';

    int agree_count = 0;
    double max_gap = 0.0;
    std::map<std::string, int> solver_counts;
    std::map<std::string, int> oracle_counts;
    std::map<std::pair<int, int>, std::pair<int, int>> per_nm; // (agree, total)

    for (const ComparisonReport& r : reports) {
        csv << csv_row(r, include_timing) << '\n';
        agree_count += r.agree ? 1 : 0;
        if (r.abs_gap)
            max_gap = std::max(max_gap, *r.abs_gap);
        ++solver_counts[r.solver_status];
        ++oracle_counts[r.oracle_status];
        auto& cell = per_nm[{r.n, r.m}];
        cell.first += r.agree ? 1 : 0;
        cell.second += 1;
    }

    std::ostringstream sum;
    const int total = static_cast<int>(reports.size());
    sum << "instances: " << total << '\n';
    sum << "agree: " << agree_count << '/' << total << '\n';
    sum << "max |z gap|: " << format_real(max_gap) << '\n';
    sum << "solver statuses:";
    for (const auto& [k, v] : solver_counts)
        sum << ' ' << k << '=' << v;
    sum << '\n';
    sum << "oracle statuses:";
    for (const auto& [k, v] : oracle_counts)
        sum << ' ' << k << '=' << v;
    sum << '\n';
    sum << "agreement per (n,m):";
    for (const auto& [k, v] : per_nm)
        sum << " (" << k.first << ',' << k.second << ")=" << v.first << '/'
            << v.second;
    sum << '\n';

    result.csv = csv.str();
    result.summary = sum.str();
    result.exit_code = agree_count == total ? 0 : 2;
    result.reports = std::move(reports);
    return result;
}

namespace {

struct MRule {
    enum class Kind { Multiple, Range, Fixed } kind;
    int a = 0;
    int b = 0;
};

MRule parse_m_rule(const std::string& rule) {
    MRule r{MRule::Kind::Fixed, 0, 0};
    if (rule.empty())
        throw Error("empty m-rule");
    if (rule.back() == 'n') {
        r.kind = MRule::Kind::Multiple;
        r.a = std::stoi(rule.substr(0, rule.size() - 1));
        if (r.a < 1)
            throw Error("m-rule multiplier must be positive");
        return r;
    }
    const auto dash = rule.find('-');
    if (dash != std::string::npos) {
        r.kind = MRule::Kind::Range;
        r.a = std::stoi(rule.substr(0, dash));
        r.b = std::stoi(rule.substr(dash + 1));
        if (r.a < 1 || r.b < r.a)
            throw Error("m-rule range must be 1 <= lo <= hi");
        return r;
    }
    r.a = std::stoi(rule);
    if (r.a < 1)
        throw Error("m-rule must be positive");
    return r;
}

} // namespace

BatchResult run_batch(const BatchConfig& cfg) {
    const MRule rule = parse_m_rule(cfg.m_rule);
    std::mt19937_64 meta(cfg.seed);

    std::vector<ComparisonReport> reports;
    int instance_id = 0;
    for (int n : cfg.n_list) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            ++instance_id;
            int m = 0;
            switch (rule.kind) {
            case MRule::Kind::Multiple:
                m = rule.a * n;
                break;
            case MRule::Kind::Range:
                m = std::uniform_int_distribution<int>(rule.a, rule.b)(meta);
                break;
            case MRule::Kind::Fixed:
                m = rule.a;
                break;
            }
            const std::uint64_t inst_seed = meta();

            const Instance inst = generate_instance(n, m, inst_seed, cfg.box_bound);
            SolveConfig solver_cfg = cfg.solver;
            solver_cfg.seed = inst_seed;

            ComparisonReport r = compare(inst.problem, inst.interior, solver_cfg);
            r.instance_id = instance_id;
            r.seed = inst_seed;
            r.m = m; // generated rows, excluding the boxes
            reports.push_back(std::move(r));
        }
    }
    return finalize_batch(std::move(reports), cfg.include_timing);
}

} // namespace flatlp
