#include "flatlp/problem_io.hpp"

#include <cstdlib>
#include <sstream>

#include "flatlp/numfmt.hpp"

namespace flatlp {

namespace {

struct TokenLine {
    int number = 0; // 1-based physical line
    std::vector<std::string> tokens;
};

std::vector<TokenLine> tokenize(const std::string& text, int& last_line) {
    std::vector<TokenLine> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        TokenLine line;
        line.number = number;
        std::istringstream ts(raw);
        std::string tok;
        while (ts >> tok)
            line.tokens.push_back(tok);
        if (!line.tokens.empty())
            lines.push_back(std::move(line));
    }
    last_line = number;
    return lines;
}

double parse_real(const std::string& tok, int line) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + tok.size())
        throw ParseError(line, "expected a real number, got '" + tok + "'");
    return v;
}

int parse_positive_int(const std::string& tok, int line, const char* what) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end != begin + tok.size() || v < 1)
        throw ParseError(line, std::string("expected a positive integer for ") +
                                   what + ", got '" + tok + "'");
    return static_cast<int>(v);
}

Vec parse_reals(const TokenLine& line, std::size_t offset, int expected,
                const char* what) {
    if (line.tokens.size() - offset != static_cast<std::size_t>(expected))
        throw ParseError(line.number,
                         std::string("expected ") + std::to_string(expected) +
                             " values for " + what + ", got " +
                             std::to_string(line.tokens.size() - offset));
    Vec v(expected);
    for (int i = 0; i < expected; ++i)
        v[i] = parse_real(line.tokens[offset + i], line.number);
    return v;
}

} // namespace

ProblemFile parse_problem_file(const std::string& text) {
    int last_line = 0;
    const std::vector<TokenLine> lines = tokenize(text, last_line);
    std::size_t at = 0;
    const auto need = [&](const char* what) -> const TokenLine& {
        if (at >= lines.size())
            throw ParseError(last_line + 1, std::string("missing ") + what);
        return lines[at++];
    };

    ProblemFile f;
    {
        const TokenLine& header = need("header line 'n m'");
        if (header.tokens.size() != 2)
            throw ParseError(header.number, "header must be exactly 'n m'");
        f.n = parse_positive_int(header.tokens[0], header.number, "n");
        f.m = parse_positive_int(header.tokens[1], header.number, "m");
    }
    f.objective = parse_reals(need("objective line"), 0, f.n, "the objective");
    for (int u = 0; u < f.m; ++u) {
        const TokenLine& line = need("constraint line");
        const Vec coeffs = parse_reals(line, 0, f.n + 1, "a constraint row");
        f.rows.emplace_back(coeffs.begin(), coeffs.end() - 1);
        f.rhs.push_back(coeffs.back());
    }
    if (at < lines.size()) {
        const TokenLine& line = lines[at++];
        if (line.tokens[0] != "point")
            throw ParseError(line.number,
                             "unexpected line (only 'point ...' may follow the rows)");
        f.point = parse_reals(line, 1, f.n, "the interior point");
    }
    if (at < lines.size())
        throw ParseError(lines[at].number, "trailing content after the point line");
    return f;
}

std::string serialize_problem(const ProblemFile& f) {
    std::ostringstream os;
    os << "# flatlp v1\n";
    os << f.n << ' ' << f.m << '\n';
    for (int i = 0; i < f.n; ++i)
        os << (i ? " " : "") << format_real(f.objective[i]);
    os << '\n';
    for (int u = 0; u < f.m; ++u) {
        for (int i = 0; i < f.n; ++i)
            os << format_real(f.rows[u][i]) << ' ';
        os << format_real(f.rhs[u]) << '\n';
    }
    if (f.point) {
        os << "point";
        for (double v : *f.point)
            os << ' ' << format_real(v);
        os << '\n';
    }
    return os.str();
}

ProblemFile to_problem_file(const Problem& p, const std::optional<Vec>& point) {
    ProblemFile f;
    f.n = p.n_vars;
    f.m = p.row_count();
    f.objective = p.obj_dir;
    f.rows = p.rows;
    f.rhs = p.rhs;
    f.point = point;
    return f;
}

LoadedProblem to_problem(const ProblemFile& f, const Tolerances& tol) {
    LoadedProblem out;
    Problem raw = make_problem(f.n, f.rows, f.rhs, f.objective);
    const VacuousSweep sweep = drop_vacuous_rows(raw, tol.feas);
    if (sweep.infeasible) {
        // Keep the raw problem so downstream consumers (oracle, solver entry
        // sweep) can still see the contradiction for themselves.
        out.problem = make_problem(f.n, f.rows, f.rhs, f.objective);
        out.trivially_infeasible = true;
        return out;
    }
    out.dropped_row_ids = sweep.dropped_ids;
    out.problem = normalize_rows(std::move(raw));
    if (f.point) {
        const Vec res = residual(out.problem, *f.point);
        for (double s : res)
            if (s <= tol.feas)
                throw NotInterior("declared point is not strictly feasible");
        out.interior = *f.point;
    }
    return out;
}

std::string write_solution_json(const SolveOutcome& outcome, std::uint64_t seed,
                                const Tolerances& tol) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"status\": \"" << to_string(outcome.status) << "\",\n";
    if (outcome.status == SolveStatus::Optimal) {
        os << "  \"x\": [";
        for (std::size_t i = 0; i < outcome.x.size(); ++i)
            os << (i ? ", " : "") << format_real(outcome.x[i]);
        os << "],\n";
        os << "  \"z\": " << format_real(outcome.z) << ",\n";
    }
    os << "  \"stages\": [";
    for (std::size_t s = 0; s < outcome.stages.size(); ++s) {
        const StageInfo& st = outcome.stages[s];
        os << (s ? "," : "") << "\n    {\"stage\": " << st.stage
           << ", \"k\": " << st.row_id << ", \"j\": " << st.pivot + 1
           << ", \"t\": " << format_real(st.cosine) << ", \"deleted\": [";
        for (std::size_t i = 0; i < st.deleted_row_ids.size(); ++i)
            os << (i ? ", " : "") << st.deleted_row_ids[i];
        os << "]}";
    }
    if (!outcome.stages.empty())
        os << "\n  ";
    os << "],\n";
    os << "  \"seed\": " << seed << ",\n";
    os << "  \"tolerances\": {\"feas\": " << format_real(tol.feas)
       << ", \"norm\": " << format_real(tol.norm)
       << ", \"dir\": " << format_real(tol.dir) << "}\n";
    os << "}\n";
    return os.str();
}

} // namespace flatlp
