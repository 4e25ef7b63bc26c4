#include <bstlevels/cli.hpp>
#include <bstlevels/level_gf.hpp>
#include <bstlevels/oracle.hpp>
#include <bstlevels/series.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace bstlevels
{

namespace
{

constexpr int decimal_places = 10;
constexpr int largest_tested_level = 5;
constexpr int sample_reference_levels = 4;

struct Options
{
    std::string format = "text";
    bool cap_override = false;

    std::string kind = "B";
    int k = 1;
    int n = 1;
    std::size_t order = 30;
    std::string expr;
    int n_max = 1;
    int k_max = 0;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

bool json_mode(const Options &o)
{
    return o.format == "json";
}

int enumeration_limit(const Options &o)
{
    return o.cap_override ? override_enumeration_limit : default_enumeration_limit;
}

std::string fraction_string(const Rational &r)
{
    return r.numerator().get_str() + "/" + r.denominator().get_str();
}

void warn_large_level(int k, std::ostream &err)
{
    if (k > largest_tested_level) {
        err << "warning: k = " << k << " is beyond the routinely tested range (k <= " << largest_tested_level
            << "); expression sizes grow quickly\n";
    }
}

const PLExpr &select_gf(const GFBundle &b, const std::string &kind)
{
    if (kind == "A") {
        return b.A;
    }
    if (kind == "Bprime") {
        return b.Bprime;
    }
    return b.B;
}

int cmd_gf(const Options &o, std::ostream &out, std::ostream &err)
{
    warn_large_level(o.k, err);
    const GFBundle &b = default_level_gf().bundle(o.k);
    const PLExpr &e = select_gf(b, o.kind);
    if (json_mode(o)) {
        nlohmann::json j = {{"kind", o.kind}, {"k", o.k}, {"term_count", e.size()}, {"terms", to_json(e)}};
        out << j.dump() << '\n';
    } else {
        out << format_pl(e) << '\n';
    }
    return exit_ok;
}

int cmd_ck(const Options &o, std::ostream &out, std::ostream &err)
{
    warn_large_level(o.k, err);
    const Rational c = extract_ck(o.k);
    if (json_mode(o)) {
        nlohmann::json j = {{"k", o.k}, {"c", c.str()}, {"decimal", c.to_decimal(decimal_places)}};
        out << j.dump() << '\n';
    } else {
        out << c.str() << " ≈ " << c.to_decimal(decimal_places) << '\n';
    }
    return exit_ok;
}

int cmd_series(const Options &o, std::ostream &out, std::ostream &err)
{
    PLExpr e;
    if (!o.expr.empty()) {
        e = parse_pl(o.expr);
    } else {
        warn_large_level(o.k, err);
        e = select_gf(default_level_gf().bundle(o.k), o.kind);
    }
    const Series s = expand(e, o.order);
    auto j = nlohmann::json::array();
    for (const auto &c : s.coeffs()) {
        j.push_back(fraction_string(c));
    }
    out << j.dump() << '\n';
    return exit_ok;
}

int cmd_oracle(const Options &o, std::ostream &out, std::ostream &)
{
    const LevelTable table = enumerate_levels(o.n, enumeration_limit(o), o.threads);
    const Integer trees = factorial(static_cast<unsigned long>(o.n));
    const Rational prot(Integer(o.n) * trees - table.count(1) - table.count(2), trees);
    if (json_mode(o)) {
        nlohmann::json counts = nlohmann::json::object();
        for (int k = 1; k <= o.n; ++k) {
            counts[std::to_string(k)] = table.count(k).get_str();
        }
        nlohmann::json j = {{"n", o.n},
                            {"counts", counts},
                            {"d_n", table.two_leaf_parents.get_str()},
                            {"protected_expectation", prot.str()}};
        out << j.dump() << '\n';
        return exit_ok;
    }
    out << "n = " << o.n << "  (" << trees.get_str() << " trees)\n";
    out << std::left << std::setw(7) << "level" << std::setw(16) << "a_{n,k}" << "a_{n,k}/n!\n";
    for (int k = 1; k <= o.n; ++k) {
        out << std::setw(7) << k << std::setw(16) << table.count(k).get_str() << Rational(table.count(k), trees).str()
            << '\n';
    }
    out << "d_n = " << table.two_leaf_parents.get_str() << '\n';
    out << "E(Prot_n) = " << prot.str() << '\n';
    return exit_ok;
}

int cmd_verify(const Options &o, std::ostream &out, std::ostream &err, const CliHooks &hooks)
{
    const int k_max = o.k_max == 0 ? std::min(o.n_max, largest_tested_level) : o.k_max;
    if (o.n_max > enumeration_limit(o)) {
        err << "error: --n-max " << o.n_max << " exceeds the enumeration cap " << enumeration_limit(o)
            << (o.cap_override ? "\n" : " (use --cap-override to raise it)\n");
        return exit_usage;
    }
    warn_large_level(std::min(k_max, symbolic_level_limit), err);
    // Levels past the symbolic limit are checked through the truncated-series route.
    const LevelSeries fallback = k_max > symbolic_level_limit
                                     ? level_series(k_max, static_cast<std::size_t>(o.n_max))
                                     : LevelSeries{};

    bool all_ok = true;
    std::ostringstream details;
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream matrix;
    matrix << std::left << std::setw(5) << "n";
    for (int k = 1; k <= k_max; ++k) {
        matrix << std::setw(6) << ("k=" + std::to_string(k));
    }
    matrix << '\n';

    for (int n = 1; n <= o.n_max; ++n) {
        const LevelTable table = enumerate_levels(n, enumeration_limit(o), o.threads);
        const Integer trees = factorial(static_cast<unsigned long>(n));
        matrix << std::setw(5) << n;
        for (int k = 1; k <= k_max; ++k) {
            const bool use_series = k > symbolic_level_limit;
            Rational per_tree;
            if (hooks.expected_count) {
                per_tree = hooks.expected_count(k, n);
            } else if (use_series) {
                per_tree = fallback.A[static_cast<std::size_t>(k - 1)].coeff(static_cast<std::size_t>(n));
            } else {
                per_tree = expected_level_count(k, n);
            }
            const Rational symbolic = per_tree * Rational(trees);
            const Integer oracle = table.count(k);
            const bool ok = symbolic == Rational(oracle);
            all_ok = all_ok && ok;
            matrix << std::setw(6) << (ok ? (use_series ? "ok*" : "ok") : "FAIL");
            rows.push_back({{"n", n},
                            {"k", k},
                            {"oracle", oracle.get_str()},
                            {"symbolic", symbolic.str()},
                            {"route", use_series ? "series" : "symbolic"},
                            {"pass", ok}});
            if (!ok) {
                details << "mismatch at n=" << n << " k=" << k << ": oracle " << oracle.get_str() << ", symbolic "
                        << symbolic.str() << '\n';
            }
        }
        matrix << '\n';
    }

    if (json_mode(o)) {
        nlohmann::json j = {{"n_max", o.n_max}, {"k_max", k_max}, {"pass", all_ok}, {"checks", rows}};
        out << j.dump() << '\n';
    } else {
        if (k_max > symbolic_level_limit) {
            matrix << "(ok* = checked through the truncated-series recursion)\n";
        }
        out << matrix.str() << details.str() << (all_ok ? "all checks passed\n" : "verification FAILED\n");
    }
    return all_ok ? exit_ok : exit_mismatch;
}

int cmd_sample(const Options &o, std::ostream &out, std::ostream &)
{
    const SampleResult r = sample_levels(o.n, o.trials, o.seed, o.threads);
    if (json_mode(o)) {
        nlohmann::json levels = nlohmann::json::array();
        for (int k = 1; k <= r.max_level(); ++k) {
            const Rational f = r.frequency(k);
            nlohmann::json row = {{"k", k},
                                  {"count", std::to_string(r.histogram[static_cast<std::size_t>(k - 1)])},
                                  {"frequency", f.str()},
                                  {"decimal", f.to_decimal(decimal_places)}};
            if (k <= sample_reference_levels) {
                row["c_k"] = extract_ck(k).str();
                row["deviation"] = abs(f - extract_ck(k)).to_decimal(decimal_places);
            }
            levels.push_back(row);
        }
        nlohmann::json j = {{"n", o.n}, {"trials", std::to_string(o.trials)}, {"seed", std::to_string(o.seed)},
                            {"levels", levels}};
        out << j.dump() << '\n';
        return exit_ok;
    }
    out << "n = " << o.n << ", trials = " << o.trials << ", seed = " << o.seed << '\n';
    out << std::left << std::setw(7) << "level" << std::setw(15) << "frequency" << std::setw(15) << "c_k"
        << "|deviation|\n";
    for (int k = 1; k <= r.max_level(); ++k) {
        const Rational f = r.frequency(k);
        out << std::setw(7) << k << std::setw(15) << f.to_decimal(decimal_places);
        if (k <= sample_reference_levels) {
            const Rational c = extract_ck(k);
            out << std::setw(15) << c.to_decimal(decimal_places) << abs(f - c).to_decimal(decimal_places);
        }
        out << '\n';
    }
    return exit_ok;
}

int cmd_bounds(const Options &o, std::ostream &out, std::ostream &)
{
    const Rational q = qk(o.k);
    const Rational p = pk(o.k);
    const Rational g = gamma_k(o.k);
    const long threshold = gamma_threshold(o.k);
    if (json_mode(o)) {
        nlohmann::json j = {{"k", o.k},
                            {"Q", q.str()},
                            {"P", p.str()},
                            {"gamma", g.str()},
                            {"valid_for_n_at_least", std::to_string(threshold)}};
        out << j.dump() << '\n';
        return exit_ok;
    }
    const auto line = [&](const std::string &name, const Rational &v) {
        out << name << " = " << v.str() << " ≈ " << v.to_decimal(decimal_places) << '\n';
    };
    line("Q_" + std::to_string(o.k), q);
    line("P_" + std::to_string(o.k), p);
    line("gamma_" + std::to_string(o.k), g);
    out << "a_{n,k}/(n n!) >= gamma_" << o.k << " for n >= " << threshold << '\n';
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const CliHooks &hooks)
{
    Options o;
    CLI::App app{"Exact level statistics of random binary search trees"};
    app.name("bstlevels");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--cap-override", o.cap_override,
                 "Raise the exhaustive enumeration cap to " + std::to_string(override_enumeration_limit));

    const auto add_kind = [&](CLI::App *sub) {
        sub->add_option("--kind", o.kind, "Generating function: B, Bprime or A")
            ->check(CLI::IsMember({"A", "B", "Bprime"}));
    };
    const auto add_k = [&](CLI::App *sub, bool required) {
        auto *opt = sub->add_option("--k", o.k, "Level (>= 1)")->check(CLI::PositiveNumber);
        if (required) {
            opt->required();
        }
    };

    auto *gf = app.add_subcommand("gf", "Print B_k, B_k' or A_k in canonical form");
    add_kind(gf);
    add_k(gf, true);

    auto *ck = app.add_subcommand("ck", "Print the limit constant c_k");
    add_k(ck, true);

    auto *series = app.add_subcommand("series", "Print exact series coefficients as a JSON array");
    add_kind(series);
    add_k(series, false);
    series->add_option("--expr", o.expr, "Expression in the text grammar instead of a generating function");
    series->add_option("--order", o.order, "Highest power of x")->check(CLI::NonNegativeNumber);

    auto *oracle = app.add_subcommand("oracle", "Exhaustive level counts over all n! trees");
    oracle->add_option("--n", o.n, "Tree size")->required()->check(CLI::PositiveNumber);
    oracle->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

    auto *verify = app.add_subcommand("verify", "Compare symbolic coefficients with exhaustive counts");
    verify->add_option("--n-max", o.n_max, "Largest tree size")->required()->check(CLI::PositiveNumber);
    verify->add_option("--k-max", o.k_max, "Largest level (default: min(n-max, 5))")->check(CLI::PositiveNumber);
    verify->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

    auto *sample = app.add_subcommand("sample", "Monte Carlo level frequencies");
    sample->add_option("--n", o.n, "Tree size")->required()->check(CLI::PositiveNumber);
    sample->add_option("--trials", o.trials, "Number of random trees")->check(CLI::PositiveNumber);
    sample->add_option("--seed", o.seed, "Master seed");
    sample->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

    auto *bounds = app.add_subcommand("bounds", "Perfect-subtree lower bounds Q_k, P_k, gamma_k");
    add_k(bounds, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        if (gf->parsed()) {
            return cmd_gf(o, out, err);
        }
        if (ck->parsed()) {
            return cmd_ck(o, out, err);
        }
        if (series->parsed()) {
            return cmd_series(o, out, err);
        }
        if (oracle->parsed()) {
            return cmd_oracle(o, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(o, out, err, hooks);
        }
        if (sample->parsed()) {
            return cmd_sample(o, out, err);
        }
        if (bounds->parsed()) {
            return cmd_bounds(o, out, err);
        }
    } catch (const LimitError &e) {
        err << "error: " << e.what() << (o.cap_override ? "\n" : " (use --cap-override to raise it)\n");
        return exit_usage;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const StructureError &e) {
        err << "internal error: " << e.what() << '\n';
        return exit_mismatch;
    }
    return exit_usage;
}

} // namespace bstlevels
