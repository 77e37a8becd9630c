// flatlp.cpp - command-line front end: solve, gen, oracle, compare, bench.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "flatlp/harness.hpp"
#include "flatlp/model.hpp"
#include "flatlp/numfmt.hpp"
#include "flatlp/oracle.hpp"
#include "flatlp/problem_io.hpp"
#include "flatlp/reduce.hpp"

namespace {

using namespace flatlp;

struct SolverOpts {
    std::string input;
    std::string redundancy = "auto";
    int samples = 1000;
    int min_hits = 32;
    int retry_cap = 3;
    std::uint64_t seed = 0;
    double tol_feas = Tolerances{}.feas;
    double tol_norm = Tolerances{}.norm;
    double tol_dir = Tolerances{}.dir;
};

void add_solver_flags(CLI::App* cmd, SolverOpts& o) {
    cmd->add_option("--redundancy", o.redundancy,
                    "redundancy test: auto, exact, or mc")
        ->check(CLI::IsMember({"auto", "exact", "mc"}));
    cmd->add_option("--samples", o.samples, "rays per Monte Carlo query");
    cmd->add_option("--min-hits", o.min_hits, "witness hits required to eliminate");
    cmd->add_option("--retry-cap", o.retry_cap, "resampling attempts");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--tol-feas", o.tol_feas, "feasibility tolerance");
    cmd->add_option("--tol-norm", o.tol_norm, "row-norm tolerance");
    cmd->add_option("--tol-dir", o.tol_dir, "minimum objective-direction norm");
}

SolveConfig to_config(const SolverOpts& o, RedundancyMode mode) {
    SolveConfig cfg;
    cfg.redundancy = mode;
    cfg.samples = o.samples;
    cfg.min_hits = o.min_hits;
    cfg.retry_cap = o.retry_cap;
    cfg.seed = o.seed;
    cfg.tol = {o.tol_feas, o.tol_norm, o.tol_dir};
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

LoadedProblem load(const SolverOpts& o) {
    const ProblemFile f = parse_problem_file(read_file(o.input));
    return to_problem(f, {o.tol_feas, o.tol_norm, o.tol_dir});
}

// auto: exact while the enumeration fits, Monte Carlo beyond it.
RedundancyMode pick_mode(const std::string& name, const LoadedProblem& lp,
                         bool& needs_point) {
    RedundancyMode mode = RedundancyMode::Exact;
    if (name == "mc") {
        mode = RedundancyMode::MonteCarlo;
    } else if (name == "auto" &&
               !within_enumeration_cap(lp.problem.row_count(),
                                       lp.problem.live_count())) {
        mode = RedundancyMode::MonteCarlo;
    }
    needs_point = mode == RedundancyMode::MonteCarlo;
    return mode;
}

void print_outcome_text(const SolveOutcome& out) {
    std::cout << "status: " << to_string(out.status) << '\n';
    if (out.status == SolveStatus::Optimal) {
        std::cout << "x:";
        for (double v : out.x)
            std::cout << ' ' << format_real(v);
        std::cout << '\n';
        std::cout << "z: " << format_real(out.z) << '\n';
    }
    for (const StageInfo& st : out.stages) {
        std::cout << "stage " << st.stage << ':';
        if (st.row_id >= 0)
            std::cout << " plane " << st.row_id << " (cosine "
                      << format_real(st.cosine) << "), eliminated x"
                      << st.pivot + 1;
        if (!st.deleted_row_ids.empty()) {
            std::cout << " deleted";
            for (int id : st.deleted_row_ids)
                std::cout << ' ' << id;
        }
        std::cout << '\n';
    }
    if (!out.note.empty())
        std::cout << "note: " << out.note << '\n';
}

int run_solve(const SolverOpts& o, bool json, bool expect_optimal) {
    const LoadedProblem lp = load(o);
    SolveOutcome out;
    std::uint64_t seed = o.seed;
    if (lp.trivially_infeasible) {
        out.status = SolveStatus::Infeasible;
        out.note = "contradictory vacuous row in the input";
    } else {
        bool needs_point = false;
        const RedundancyMode mode = pick_mode(o.redundancy, lp, needs_point);
        if (needs_point && !lp.interior)
            throw Error("monte carlo redundancy mode needs a 'point' line in the input");
        out = solve(lp.problem, lp.interior, to_config(o, mode));
    }
    if (json)
        std::cout << write_solution_json(out, seed,
                                         {o.tol_feas, o.tol_norm, o.tol_dir});
    else
        print_outcome_text(out);
    if (expect_optimal && out.status != SolveStatus::Optimal)
        return 3;
    return 0;
}

int run_gen(int n, int m, std::uint64_t seed, double box_bound,
            const std::string& out_path) {
    const Instance inst = generate_instance(n, m, seed, box_bound);
    const std::string text =
        serialize_problem(to_problem_file(inst.problem, inst.interior));
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw Error("cannot write '" + out_path + "'");
        out << text;
    }
    return 0;
}

int run_oracle(const SolverOpts& o) {
    const LoadedProblem lp = load(o);
    const OracleResult r = oracle_solve(lp.problem);
    switch (r.status) {
    case OracleStatus::Optimal:
        std::cout << "status: optimal\n";
        std::cout << "x:";
        for (double v : r.x)
            std::cout << ' ' << format_real(v);
        std::cout << '\n';
        std::cout << "z: " << format_real(r.z) << '\n';
        std::cout << "active rows:";
        for (int u : r.active_set)
            std::cout << ' ' << lp.problem.row_ids[u];
        std::cout << '\n';
        return 0;
    case OracleStatus::NoFeasibleVertex:
        std::cout << "status: infeasible\n";
        return 0;
    case OracleStatus::TooLarge:
        throw OracleTooLarge("instance exceeds the enumeration cap");
    }
    return 0;
}

int run_compare(const SolverOpts& o) {
    const LoadedProblem lp = load(o);
    bool needs_point = false;
    const RedundancyMode mode = pick_mode(o.redundancy, lp, needs_point);
    if (needs_point && !lp.interior)
        throw Error("monte carlo redundancy mode needs a 'point' line in the input");

    const ComparisonReport r = compare(lp.problem, lp.interior, to_config(o, mode));
    std::cout << "solver: " << r.solver_status;
    if (r.z_solver)
        std::cout << " z=" << format_real(*r.z_solver);
    std::cout << '\n';
    std::cout << "oracle: " << r.oracle_status;
    if (r.z_oracle)
        std::cout << " z=" << format_real(*r.z_oracle);
    std::cout << '\n';
    if (r.abs_gap)
        std::cout << "abs gap: " << format_real(*r.abs_gap) << '\n';
    std::cout << "agree: " << (r.agree ? "true" : "false") << '\n';
    return r.agree ? 0 : 2;
}

int run_bench(const BatchConfig& cfg, const std::string& out_path) {
    const BatchResult result = run_batch(cfg);
    if (out_path.empty()) {
        std::cout << result.csv;
        std::cerr << result.summary;
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw Error("cannot write '" + out_path + "'");
        out << result.csv;
        std::cout << result.summary;
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flatlp - flattest-plane dimension-reduction LP solver, "
                 "exact vertex-enumeration oracle, and comparison harness"};
    app.require_subcommand(1);

    SolverOpts solve_opts;
    bool solve_json = false;
    bool expect_optimal = false;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a flatlp v1 problem file");
    solve_cmd->add_option("--input", solve_opts.input, "problem file")->required();
    add_solver_flags(solve_cmd, solve_opts);
    solve_cmd->add_flag("--json", solve_json, "emit solution JSON on stdout");
    solve_cmd->add_flag("--expect-optimal", expect_optimal,
                        "exit 3 unless the solver terminates Optimal");

    int gen_n = 0, gen_m = 0;
    std::uint64_t gen_seed = 0;
    double gen_box = 10.0;
    std::string gen_out;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random bounded instance");
    gen_cmd->add_option("--n", gen_n, "variables")->required();
    gen_cmd->add_option("--m", gen_m, "random rows (box rows are added on top)")
        ->required();
    gen_cmd->add_option("--seed", gen_seed, "random seed");
    gen_cmd->add_option("--box-bound", gen_box, "half-width of the bounding box");
    gen_cmd->add_option("--out", gen_out, "output file (stdout when omitted)");

    SolverOpts oracle_opts;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "exact solve by vertex enumeration");
    oracle_cmd->add_option("--input", oracle_opts.input, "problem file")->required();

    SolverOpts compare_opts;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "run solver and oracle side by side");
    compare_cmd->add_option("--input", compare_opts.input, "problem file")->required();
    add_solver_flags(compare_cmd, compare_opts);

    BatchConfig bench_cfg;
    SolverOpts bench_opts;
    std::string bench_mode = "exact";
    std::string bench_out;
    bool bench_no_timing = false;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "batch solver-vs-oracle comparison to CSV");
    bench_cmd->add_option("--n-list", bench_cfg.n_list, "dimensions, e.g. 2,3,4")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--m-rule", bench_cfg.m_rule,
                          "rows per instance: '<k>n', '<lo>-<hi>', or '<m>'");
    bench_cmd->add_option("--trials", bench_cfg.trials, "instances per dimension")
        ->required();
    bench_cmd->add_option("--seed", bench_cfg.seed, "master seed");
    bench_cmd->add_option("--mode", bench_mode, "redundancy test: exact or mc")
        ->check(CLI::IsMember({"exact", "mc"}));
    bench_cmd->add_option("--samples", bench_opts.samples, "rays per Monte Carlo query");
    bench_cmd->add_option("--min-hits", bench_opts.min_hits,
                          "witness hits required to eliminate");
    bench_cmd->add_option("--retry-cap", bench_opts.retry_cap, "resampling attempts");
    bench_cmd->add_option("--box-bound", bench_cfg.box_bound,
                          "half-width of the bounding box");
    bench_cmd->add_option("--out", bench_out, "CSV file (stdout when omitted)");
    bench_cmd->add_flag("--no-timing", bench_no_timing,
                        "zero the wall-time columns for reproducible output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(solve_cmd))
            return run_solve(solve_opts, solve_json, expect_optimal);
        if (app.got_subcommand(gen_cmd))
            return run_gen(gen_n, gen_m, gen_seed, gen_box, gen_out);
        if (app.got_subcommand(oracle_cmd))
            return run_oracle(oracle_opts);
        if (app.got_subcommand(compare_cmd))
            return run_compare(compare_opts);
        if (app.got_subcommand(bench_cmd)) {
            bench_cfg.solver = to_config(bench_opts, bench_mode == "mc"
                                                         ? RedundancyMode::MonteCarlo
                                                         : RedundancyMode::Exact);
            bench_cfg.include_timing = !bench_no_timing;
            return run_bench(bench_cfg, bench_out);
        }
    } catch (const Error& e) {
        std::cerr << "flatlp: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
