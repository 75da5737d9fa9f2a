// Command-line interface: compute <op>, table <name>, audit, factor.
// Exit codes: 0 success, 2 usage error, 3 size guard exceeded,
// 4 audit found a refuted identity, 5 internal error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixedpart/audit.hpp"
#include "mixedpart/factor.hpp"
#include "mixedpart/mixed.hpp"
#include "mixedpart/oracle.hpp"
#include "mixedpart/stirling.hpp"
#include "mixedpart/version.hpp"

namespace {

using mixedpart::BallSpec;
using mixedpart::CellSpec;
using mixedpart::Count;
using mixedpart::SizeGuard;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;
constexpr int kExitRefuted = 4;
constexpr int kExitInternal = 5;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<unsigned> parse_uint_list(const std::string& text, const char* what) {
    std::vector<unsigned> out;
    if (text.empty()) return out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            const long v = std::stol(item);
            if (v < 0) throw std::out_of_range("negative");
            out.push_back(static_cast<unsigned>(v));
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": expected comma-separated nonnegative integers, got '" +
                             text + "'");
        }
    }
    return out;
}

std::pair<unsigned long, unsigned long> parse_range(const std::string& text, const char* what) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const unsigned long v = std::stoul(text);
            return {v, v};
        }
        return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": expected LO..HI, got '" + text + "'");
    }
}

// ---------------------------------------------------------------- compute

struct OpArgs {
    std::optional<long> n, k, r, t, x;
    std::optional<std::uint64_t> m;
    std::optional<std::string> balls, cells, parts;
    bool allow_empty = false;
    bool no_units = false;
    bool direct = false;
    SizeGuard guard;

    unsigned req_u(const std::optional<long>& v, const char* name) const {
        if (!v) throw UsageError(std::string("missing required flag --") + name);
        if (*v < 0) throw UsageError(std::string("--") + name + " must be nonnegative");
        return static_cast<unsigned>(*v);
    }
    unsigned n_u() const { return req_u(n, "n"); }
    unsigned k_u() const { return req_u(k, "k"); }
    unsigned r_u() const { return req_u(r, "r"); }
    unsigned t_u() const { return req_u(t, "t"); }
    long x_l() const {
        if (!x) throw UsageError("missing required flag --x");
        return *x;
    }
    std::uint64_t m_u() const {
        if (!m) throw UsageError("missing required flag --m");
        return *m;
    }
    BallSpec balls_spec() const {
        if (!balls) throw UsageError("missing required flag --balls");
        return BallSpec(parse_uint_list(*balls, "--balls"));
    }
    CellSpec cells_spec() const {
        if (!cells) throw UsageError("missing required flag --cells");
        return CellSpec(parse_uint_list(*cells, "--cells"));
    }
};

struct OpEntry {
    const char* name;
    const char* args_help;
    Count (*eval)(const OpArgs&);
};

const std::vector<OpEntry>& op_registry() {
    using namespace mixedpart;
    static const std::vector<OpEntry> ops = {
        {"binomial", "--n --k", [](const OpArgs& a) { return binomial(a.n_u(), a.k_u()); }},
        {"multinomial", "--parts",
         [](const OpArgs& a) {
             if (!a.parts) throw UsageError("missing required flag --parts");
             const auto v = parse_uint_list(*a.parts, "--parts");
             return multinomial(std::vector<unsigned long>(v.begin(), v.end()));
         }},
        {"stirling2", "--n --k", [](const OpArgs& a) { return stirling2(a.n_u(), a.k_u()); }},
        {"stirling2-cumulative", "--n --k",
         [](const OpArgs& a) { return stirling2_cumulative(a.n_u(), a.k_u()); }},
        {"bell", "--n", [](const OpArgs& a) { return bell(a.n_u()); }},
        {"falling-factorial", "--x --k",
         [](const OpArgs& a) { return falling_factorial(a.x_l(), a.k_u()); }},
        {"mixed-count", "--balls --cells [--allow-empty] [--r]",
         [](const OpArgs& a) {
             return mixed_count({a.balls_spec(), a.cells_spec(), a.allow_empty,
                                 a.r ? a.r_u() : 0u},
                                a.guard);
         }},
        {"mixed-count-empty-expansion", "--balls --cells",
         [](const OpArgs& a) {
             return mixed_count_empty_expansion(a.balls_spec(), a.cells_spec(), a.guard);
         }},
        {"b0", "--n --k --r", [](const OpArgs& a) { return b0_nkr(a.n_u(), a.k_u(), a.r_u()); }},
        {"b", "--n --k --r", [](const OpArgs& a) { return b_nkr(a.n_u(), a.k_u(), a.r_u()); }},
        {"b-recurrence", "--n --k --r",
         [](const OpArgs& a) { return b_nkr_recurrence(a.n_u(), a.k_u(), a.r_u()); }},
        {"b-inclusion-exclusion", "--n --k --r",
         [](const OpArgs& a) { return b_nkr_inclusion_exclusion(a.n_u(), a.k_u(), a.r_u()); }},
        {"mixed-multinomial", "--n --cells",
         [](const OpArgs& a) { return mixed_distinct_balls_multinomial(a.n_u(), a.cells_spec()); }},
        {"mixed-signsum", "--n --cells",
         [](const OpArgs& a) { return mixed_distinct_balls_signsum(a.n_u(), a.cells_spec()); }},
        {"mixed-ball-removal", "--n --cells",
         [](const OpArgs& a) { return mixed_ball_removal_recurrence(a.n_u(), a.cells_spec()); }},
        {"product-labeled", "--balls --k",
         [](const OpArgs& a) { return product_formula_labeled_cells(a.balls_spec(), a.k_u()); }},
        {"surjective-labeled", "--balls --k",
         [](const OpArgs& a) { return surjective_formula_labeled_cells(a.balls_spec(), a.k_u()); }},
        {"rstirling", "--n --k --r",
         [](const OpArgs& a) { return r_stirling2(a.n_u(), a.k_u(), a.r_u()); }},
        {"rstirling-via-b", "--n --k --r",
         [](const OpArgs& a) { return r_stirling_via_B(a.n_u(), a.k_u(), a.r_u()); }},
        {"rstirling-corollary", "--n --k --r",
         [](const OpArgs& a) { return r_stirling_corollary_recurrence(a.n_u(), a.k_u(), a.r_u()); }},
        {"rbell", "--n --r [--direct]",
         [](const OpArgs& a) {
             return a.direct ? r_bell_direct(a.n_u(), a.r_u()) : r_bell(a.n_u(), a.r_u());
         }},
        {"rbell-polynomial", "--n --r --x",
         [](const OpArgs& a) {
             if (a.x_l() < 0) throw UsageError("--x must be nonnegative here");
             return r_bell_polynomial(a.n_u(), a.r_u(), static_cast<unsigned long>(a.x_l()));
         }},
        {"rbell-theorem-sum", "--n --r",
         [](const OpArgs& a) { return r_bell_theorem_sum(a.n_u(), a.r_u()); }},
        {"rmixed-stirling", "--n --cells --r",
         [](const OpArgs& a) { return r_mixed_stirling(a.n_u(), a.cells_spec(), a.r_u(), a.guard); }},
        {"rmixed-stirling-theorem", "--n --k --t --r",
         [](const OpArgs& a) {
             return r_mixed_stirling_theorem(a.n_u(), a.k_u(), a.t_u(), a.r_u());
         }},
        {"rmixed-composition", "--n --cells --r",
         [](const OpArgs& a) {
             return r_mixed_stirling_composition(a.n_u(), a.cells_spec(), a.r_u(), a.guard);
         }},
        {"rmixed-bell", "--n --cells --r",
         [](const OpArgs& a) { return r_mixed_bell(a.n_u(), a.cells_spec(), a.r_u(), a.guard); }},
        {"ordered-factorizations", "--m --k [--no-units]",
         [](const OpArgs& a) {
             return a.no_units ? mixedpart::ordered_factorizations_no_units(a.m_u(), a.k_u())
                               : mixedpart::ordered_factorizations_with_units(a.m_u(), a.k_u());
         }},
        {"total-ordered-factorizations", "--m",
         [](const OpArgs& a) { return total_ordered_factorizations(a.m_u()); }},
        {"multiplicative-partitions", "--m",
         [](const OpArgs& a) { return unordered_multiplicative_partitions(a.m_u()); }},
        {"oracle-count", "--balls --cells [--allow-empty] [--r]",
         [](const OpArgs& a) {
             return oracle_count({a.balls_spec(), a.cells_spec(), a.allow_empty,
                                  a.r ? a.r_u() : 0u},
                                 a.guard);
         }},
    };
    return ops;
}

std::string echo_args(const OpArgs& a) {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const char* name, const std::string& v) {
        if (!first) os << ' ';
        os << name << '=' << v;
        first = false;
    };
    if (a.balls) put("balls", *a.balls);
    if (a.cells) put("cells", *a.cells);
    if (a.parts) put("parts", *a.parts);
    if (a.n) put("n", std::to_string(*a.n));
    if (a.k) put("k", std::to_string(*a.k));
    if (a.t) put("t", std::to_string(*a.t));
    if (a.r) put("r", std::to_string(*a.r));
    if (a.x) put("x", std::to_string(*a.x));
    if (a.m) put("m", std::to_string(*a.m));
    if (a.allow_empty) put("allow-empty", "true");
    if (a.no_units) put("no-units", "true");
    if (a.direct) put("direct", "true");
    return os.str();
}

json json_args(const OpArgs& a) {
    json j = json::object();
    if (a.balls) j["balls"] = *a.balls;
    if (a.cells) j["cells"] = *a.cells;
    if (a.parts) j["parts"] = *a.parts;
    if (a.n) j["n"] = std::to_string(*a.n);
    if (a.k) j["k"] = std::to_string(*a.k);
    if (a.t) j["t"] = std::to_string(*a.t);
    if (a.r) j["r"] = std::to_string(*a.r);
    if (a.x) j["x"] = std::to_string(*a.x);
    if (a.m) j["m"] = std::to_string(*a.m);
    if (a.allow_empty) j["allow-empty"] = true;
    if (a.no_units) j["no-units"] = true;
    if (a.direct) j["direct"] = true;
    return j;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    out.flush();
    if (!out) {
        std::cerr << "error: cannot write to '" << out_path << "'\n";
        return kExitInternal;
    }
    return kExitOk;
}

int run_compute(const std::string& name, const OpArgs& args, bool list_ops,
                const std::string& format, const std::string& out_path) {
    if (list_ops) {
        std::ostringstream os;
        for (const auto& op : op_registry()) os << op.name << ' ' << op.args_help << '\n';
        return emit(os.str(), out_path);
    }
    for (const auto& op : op_registry()) {
        if (name != op.name) continue;
        const Count result = op.eval(args);
        std::ostringstream os;
        if (format == "json") {
            json j;
            j["op"] = op.name;
            j["args"] = json_args(args);
            j["result"] = result.get_str();
            os << j.dump(2) << '\n';
        } else {
            os << "op: " << op.name << '\n';
            os << "args: " << echo_args(args) << '\n';
            os << "result: " << result.get_str() << '\n';
        }
        return emit(os.str(), out_path);
    }
    throw UsageError("unknown operation '" + name + "' (see: mixedpart compute --list)");
}

// ------------------------------------------------------------------ table

int run_table(const std::string& name, const std::string& n_range, long r_flag,
              const std::string& format, const std::string& out_path) {
    const auto [n_lo, n_hi] = parse_range(n_range, "--n");
    if (n_lo > n_hi) throw UsageError("--n: empty range");
    std::vector<std::vector<Count>> rows;
    for (unsigned long n = n_lo; n <= n_hi; ++n) {
        std::vector<Count> row;
        if (name == "stirling2") {
            for (unsigned long k = 0; k <= n; ++k) row.push_back(mixedpart::stirling2(n, k));
        } else if (name == "bell") {
            row.push_back(mixedpart::bell(n));
        } else if (name == "rstirling") {
            if (r_flag < 0) throw UsageError("table rstirling requires --r");
            for (unsigned long k = 0; k <= n; ++k)
                row.push_back(mixedpart::r_stirling2(n, k, static_cast<unsigned>(r_flag)));
        } else {
            throw UsageError("unknown table '" + name + "' (stirling2, bell, rstirling)");
        }
        rows.push_back(std::move(row));
    }
    std::ostringstream os;
    if (format == "json") {
        json j;
        j["table"] = name;
        j["n"] = {n_lo, n_hi};
        if (r_flag >= 0) j["r"] = r_flag;
        json jrows = json::array();
        for (const auto& row : rows) {
            json jr = json::array();
            for (const auto& v : row) jr.push_back(v.get_str());
            jrows.push_back(std::move(jr));
        }
        j["rows"] = std::move(jrows);
        os << j.dump(2) << '\n';
    } else {
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].get_str();
            os << '\n';
        }
    }
    return emit(os.str(), out_path);
}

// ------------------------------------------------------------------ audit

json report_to_json(const mixedpart::AuditReport& report) {
    json j;
    j["tool"] = "mixedpart audit report";
    j["version"] = report.version;
    j["guard"] = {{"max_balls", report.guard.max_balls},
                  {"max_total_cells", report.guard.max_total_cells},
                  {"max_states", report.guard.max_states}};
    j["grid"] = report.grid.describe();
    json verdicts = json::array();
    for (const auto& v : report.verdicts) {
        json jv;
        jv["identity"] = v.identity;
        jv["points_checked"] = v.points_checked;
        jv["points_skipped"] = v.points_skipped;
        jv["status"] = mixedpart::to_string(v.status);
        jv["failures_total"] = v.failures_total;
        json cexs = json::array();
        for (const auto& c : v.counterexamples) {
            cexs.push_back({{"point", c.point},
                            {"formula", c.formula_value.get_str()},
                            {"oracle", c.oracle_value.get_str()}});
        }
        jv["counterexamples"] = std::move(cexs);
        verdicts.push_back(std::move(jv));
    }
    j["verdicts"] = std::move(verdicts);
    return j;
}

int run_audit(const std::string& grid_spec, const std::vector<std::string>& only,
              const SizeGuard& guard, const std::string& format, const std::string& out_path) {
    const mixedpart::AuditGrid grid =
        grid_spec.empty() ? mixedpart::AuditGrid{} : mixedpart::AuditGrid::parse(grid_spec);
    const auto report = mixedpart::run_audit(grid, guard, only);
    const std::string text =
        format == "json" ? report_to_json(report).dump(2) + "\n" : report.to_text();
    const int rc = emit(text, out_path);
    if (rc != kExitOk) return rc;
    return report.any_refuted() ? kExitRefuted : kExitOk;
}

// ----------------------------------------------------------------- factor

int run_factor(std::uint64_t m, const std::string& format, const std::string& out_path) {
    const auto fm = mixedpart::factorize(m);
    std::ostringstream os;
    if (format == "json") {
        json j;
        j["m"] = std::to_string(m);
        json factors = json::array();
        for (const auto& [p, a] : fm.factors)
            factors.push_back({{"prime", std::to_string(p)}, {"exponent", a}});
        j["factors"] = std::move(factors);
        j["big_omega"] = fm.big_omega();
        if (m >= 2) {
            j["total_ordered_factorizations"] =
                mixedpart::total_ordered_factorizations(m).get_str();
            j["unordered_multiplicative_partitions"] =
                mixedpart::unordered_multiplicative_partitions(m).get_str();
        }
        os << j.dump(2) << '\n';
    } else {
        os << "m: " << m << '\n';
        os << "factorization:";
        if (fm.factors.empty()) os << " 1";
        bool first = true;
        for (const auto& [p, a] : fm.factors) {
            os << (first ? " " : " * ") << p;
            if (a > 1) os << '^' << a;
            first = false;
        }
        os << '\n';
        os << "big_omega: " << fm.big_omega() << '\n';
        if (m >= 2) {
            os << "total_ordered_factorizations: "
               << mixedpart::total_ordered_factorizations(m).get_str() << '\n';
            os << "unordered_multiplicative_partitions: "
               << mixedpart::unordered_multiplicative_partitions(m).get_str() << '\n';
        }
    }
    return emit(os.str(), out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact counting of set/multiset partitions into mixed "
                 "distinguishable/indistinguishable cells, with an enumeration "
                 "oracle, identity audit and factorization counts"};
    app.set_version_flag("--version", std::string("mixedpart ") + mixedpart::kVersion);
    app.require_subcommand(1);

    std::string format = "text";
    std::string out_path;
    SizeGuard guard;

    auto add_common = [&](CLI::App* cmd, bool with_guard) {
        cmd->add_option("--format", format, "Output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", out_path, "Write output to PATH instead of stdout");
        if (with_guard) {
            cmd->add_option("--guard-max-balls", guard.max_balls, "Oracle guard: max total balls");
            cmd->add_option("--guard-max-cells", guard.max_total_cells,
                            "Oracle guard: max total cells");
            cmd->add_option("--guard-max-states", guard.max_states,
                            "Oracle guard: max projected states");
        }
    };

    // compute
    auto* compute = app.add_subcommand("compute", "Evaluate one counting operation");
    std::string op_name;
    OpArgs op_args;
    bool list_ops = false;
    long arg_n = 0, arg_k = 0, arg_r = 0, arg_t = 0, arg_x = 0;
    std::uint64_t arg_m = 0;
    std::string arg_balls, arg_cells, arg_parts;
    compute->add_option("name", op_name, "Operation name (see --list)");
    compute->add_flag("--list", list_ops, "List available operations");
    auto* on = compute->add_option("--n", arg_n, "Number of balls / main size parameter");
    auto* ok_ = compute->add_option("--k", arg_k, "Number of blocks / cells / factors");
    auto* orr = compute->add_option("--r", arg_r, "Restricted prefix size / unlabeled cells");
    auto* ot = compute->add_option("--t", arg_t, "Size of the unlabeled cell group");
    auto* ox = compute->add_option("--x", arg_x, "Evaluation point");
    auto* om = compute->add_option("--m", arg_m, "Integer to factor");
    auto* oballs = compute->add_option("--balls", arg_balls, "Ball multiplicities, e.g. 2,1,1");
    auto* ocells = compute->add_option("--cells", arg_cells, "Cell group sizes, e.g. 2,1");
    auto* oparts = compute->add_option("--parts", arg_parts, "Multinomial parts, e.g. 2,1,1");
    compute->add_flag("--allow-empty", op_args.allow_empty, "Allow empty cells");
    compute->add_flag("--no-units", op_args.no_units, "Require every factor >= 2");
    compute->add_flag("--direct", op_args.direct, "Use the direct-definition r-Bell form");
    add_common(compute, true);

    // table
    auto* table = app.add_subcommand("table", "Print a table of values");
    std::string table_name, table_n;
    long table_r = -1;
    table->add_option("name", table_name, "stirling2, bell, or rstirling")->required();
    table->add_option("--n", table_n, "Row range LO..HI")->required();
    table->add_option("--r", table_r, "r parameter (rstirling)");
    add_common(table, false);

    // audit
    auto* audit = app.add_subcommand("audit", "Check every registered identity against the oracle");
    std::string grid_spec;
    bool default_grid = false;
    std::vector<std::string> only;
    audit->add_option("--grid", grid_spec,
                      "Grid ranges, e.g. n=0..6,k=1..3,c=1..3,r=1..3,m=2..200");
    audit->add_flag("--default-grid", default_grid, "Use the default grid (same as no --grid)");
    audit->add_option("--only", only, "Restrict to these identity ids")->take_all();
    add_common(audit, true);

    // factor
    auto* factor = app.add_subcommand("factor", "Factorize m and report factorization counts");
    std::uint64_t factor_m = 0;
    factor->add_option("--m", factor_m, "Positive integer up to 2^64-1")->required();
    add_common(factor, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compute->parsed()) {
            if (on->count()) op_args.n = arg_n;
            if (ok_->count()) op_args.k = arg_k;
            if (orr->count()) op_args.r = arg_r;
            if (ot->count()) op_args.t = arg_t;
            if (ox->count()) op_args.x = arg_x;
            if (om->count()) op_args.m = arg_m;
            if (oballs->count()) op_args.balls = arg_balls;
            if (ocells->count()) op_args.cells = arg_cells;
            if (oparts->count()) op_args.parts = arg_parts;
            op_args.guard = guard;
            if (!list_ops && op_name.empty())
                throw UsageError("compute: operation name required (see --list)");
            return run_compute(op_name, op_args, list_ops, format, out_path);
        }
        if (table->parsed()) return run_table(table_name, table_n, table_r, format, out_path);
        if (audit->parsed()) {
            if (default_grid && !grid_spec.empty())
                throw UsageError("audit: --default-grid conflicts with --grid");
            return run_audit(grid_spec, only, guard, format, out_path);
        }
        if (factor->parsed()) return run_factor(factor_m, format, out_path);
        throw UsageError("no subcommand given");
    } catch (const mixedpart::SizeGuardExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGuard;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
