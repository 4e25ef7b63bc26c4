// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#include <bstlevels/level_gf.hpp>
#include <bstlevels/oracle.hpp>
#include <bstlevels/pl_expr.hpp>
#include <bstlevels/series.hpp>
#include <bstlevels/tree.hpp>

#include "golden.hpp"
#include "support/random_expr.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace bstlevels;

namespace
{

struct Criterion
{
    const char *name;
    std::function<bool(std::ostream &)> check;
};

bool constants_reproduction(std::ostream &note)
{
    const Rational expected[] = {Rational(1, 3), Rational(3, 10), Rational(1721, 8100), Rational::parse(golden::c4)};
    bool ok = true;
    for (int k = 1; k <= 4; ++k) {
        const Rational c = extract_ck(k);
        ok = ok && c == expected[k - 1];
        note << "c_" << k << "=" << c << ' ';
    }
    return ok;
}

bool closed_forms(std::ostream &note)
{
    const bool b2 = compute_B(2) == parse_pl(golden::B2);
    const bool b3p = compute_Bprime(3) == parse_pl(golden::B3_prime);
    const bool a2 = compute_A(2) == parse_pl(golden::A2);
    const bool a3 = compute_A(3) == parse_pl(golden::A3);
    note << std::boolalpha << "B_2 " << b2 << ", B_3' " << b3p << ", A_2 " << a2 << ", A_3 " << a3;
    return b2 && b3p && a2 && a3;
}

bool oracle_equivalence(std::ostream &note)
{
    constexpr int n_max = 9;
    const LevelSeries fallback = level_series(n_max, n_max);
    bool ok = true;
    int symbolic_checks = 0;
    int series_checks = 0;
    for (int n = 1; n <= n_max; ++n) {
        const LevelTable table = enumerate_levels(n);
        const Integer trees = factorial(static_cast<unsigned long>(n));
        const Integer next = factorial(static_cast<unsigned long>(n + 1));
        for (int k = 1; k <= n; ++k) {
            Rational per_tree;
            if (k <= symbolic_level_limit) {
                per_tree = expected_level_count(k, n);
                ++symbolic_checks;
            } else {
                per_tree = fallback.A[static_cast<std::size_t>(k - 1)].coeff(static_cast<std::size_t>(n));
                ++series_checks;
            }
            if (per_tree * Rational(trees) != Rational(table.count(k))) {
                note << "[mismatch n=" << n << " k=" << k << "] ";
                ok = false;
            }
        }
        ok = ok && table.total() == n * trees;
        if (n >= 2) {
            ok = ok && 3 * table.count(1) == next;
        }
        if (n >= 4) {
            ok = ok && 10 * table.count(2) == 3 * next;
            ok = ok && 30 * table.two_leaf_parents == next;
            ok = ok && protected_expectation(n) == Rational(11 * n - 19, 30);
        }
    }
    note << symbolic_checks << " symbolic + " << series_checks << " series-route (k > " << symbolic_level_limit
         << ") comparisons";
    return ok;
}

bool local_patterns(std::ostream &note)
{
    int pattern = 0;
    for_each_permutation(5, [&](std::span<const int> p) {
        const Tree t = build_tree(Permutation({p.begin(), p.end()}));
        const int v = p[2];
        if (t.left(v) != 0 && t.right(v) != 0 && t.is_leaf(t.left(v)) && t.is_leaf(t.right(v))) {
            ++pattern;
        }
    });
    const Rational q2 = Rational(count_perfect_trees(3), factorial(3));
    const Rational q3 = Rational(count_perfect_trees(7), factorial(7));
    note << pattern << "/120 patterns, Q_2=" << q2 << ", Q_3=" << q3 << ", P_3=" << pk(3);
    return pattern == 4 && q2 == Rational(1, 3) && q3 == Rational(1, 63) && pk(3) == Rational(1, 2268) &&
           qk(2) == q2 && qk(3) == q3;
}

bool ode_residuals(std::ostream &note)
{
    const PLExpr inv1mx = PLExpr::term(1, -1, 0);
    bool ok = true;
    for (int k = 1; k <= 5; ++k) {
        const PLExpr &A = compute_A(k);
        ok = ok && (differentiate(A) - Rational(2) * inv1mx * A - compute_Bprime(k)).empty();
        PLExpr rhs = PLExpr::constant(1);
        if (k > 1) {
            PLExpr inner = inv1mx;
            for (int j = 1; j <= k - 2; ++j) {
                inner -= compute_B(j);
            }
            const PLExpr prev = compute_B(k - 1);
            rhs = Rational(2) * prev * inner - prev * prev;
        }
        ok = ok && differentiate(compute_B(k)) == rhs;
    }
    note << "k = 1..5";
    return ok;
}

bool structure_theorem(std::ostream &note)
{
    bool ok = true;
    for (int k = 1; k <= 5; ++k) {
        const PLExpr &A = compute_A(k);
        ok = ok && A.min_pow1mx() >= -2 && !A.coeff(-2, 0).is_zero();
        for (const auto &[key, c] : A.terms()) {
            ok = ok && (key.pow1mx >= 0 || key.powlog == 0);
        }
        note << "|A_" << k << "|=" << A.size() << ' ';
    }
    return ok;
}

bool convergence(std::ostream &note)
{
    const Rational c3 = extract_ck(3);
    const Series s = expand(compute_A(3), 80);
    Rational previous(1);
    bool shrinking = true;
    for (std::size_t n : {20U, 40U, 80U}) {
        const Rational gap = abs(s.coeff(n) / Rational(static_cast<long>(n + 1)) - c3);
        shrinking = shrinking && gap < previous;
        previous = gap;
    }
    const bool close = previous < Rational(1, 100);
    note << "gap(80)=" << previous.to_decimal(6) << "; MC";

    const Rational tolerance(2, 1000);
    const SampleResult r = sample_levels(100000, 1000, 7);
    bool mc = true;
    for (int k = 1; k <= 4; ++k) {
        const Rational dev = abs(r.frequency(k) - extract_ck(k));
        note << " |f_" << k << "-c_" << k << "|=" << dev.to_decimal(6);
        mc = mc && dev <= tolerance;
    }
    return shrinking && close && mc;
}

bool calculus_properties(std::ostream &note)
{
    std::mt19937 rng(1000);
    std::uniform_int_distribution<int> order_dist(1, 20);
    int failures = 0;
    constexpr int trials = 1000;
    for (int i = 0; i < trials; ++i) {
        const PLExpr a = testing::random_expr(rng);
        const PLExpr b = testing::random_expr(rng);
        const PLExpr c = testing::random_expr(rng);
        const auto N = static_cast<std::size_t>(order_dist(rng));
        const bool ok = differentiate(integrate(a)) == a &&
                        integrate(differentiate(a)) == a - PLExpr::constant(value_at_zero(a)) &&
                        a + b == b + a && a * b == b * a && (a + b) + c == a + (b + c) &&
                        (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
                        expand(a + b, N) == expand(a, N) + expand(b, N) &&
                        expand(a * b, N) == expand(a, N) * expand(b, N) && parse_pl(format_pl(a)) == a &&
                        pl_from_json(to_json(a)) == a;
        failures += ok ? 0 : 1;
    }
    note << trials - failures << "/" << trials << " expressions";
    return failures == 0;
}

} // namespace

int main()
{
    const Criterion criteria[] = {
        {"1 constants reproduction", constants_reproduction},
        {"2 closed-form golden tests", closed_forms},
        {"3 oracle equivalence (n <= 9)", oracle_equivalence},
        {"4 local-pattern and perfect-tree checks", local_patterns},
        {"5 ODE residuals", ode_residuals},
        {"6 structure theorem", structure_theorem},
        {"7 convergence at desk scale", convergence},
        {"8 calculus property suite", calculus_properties},
    };

    int failed = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::ostringstream note;
        bool ok = false;
        try {
            ok = c.check(note);
        } catch (const std::exception &e) {
            note << "exception: " << e.what();
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", elapsed.count());
        std::cout << (ok ? "PASS " : "FAIL ") << c.name << " (" << timing << "): " << note.str() << std::endl;
        failed += ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
