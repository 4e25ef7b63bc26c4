#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bstlevels/level_gf.hpp>
#include <bstlevels/oracle.hpp>
#include <bstlevels/tree.hpp>

#include <cmath>

using namespace bstlevels;

namespace
{

/// Height of the perfect subtree rooted at `label`, or 0 if that subtree is not perfect.
int perfect_height(const Tree &t, int label)
{
    const int l = t.left(label);
    const int r = t.right(label);
    if (l == 0 && r == 0) {
        return 1;
    }
    if (l == 0 || r == 0) {
        return 0;
    }
    const int hl = perfect_height(t, l);
    return hl > 0 && hl == perfect_height(t, r) ? hl + 1 : 0;
}

} // namespace

TEST_CASE("level table at n = 4")
{
    const LevelTable t = enumerate_levels(4);
    CHECK(t.count(1) == 40);
    CHECK(t.count(2) == 36);
    CHECK(t.count(3) == 12);
    CHECK(t.count(4) == 8);
    CHECK(t.count(5) == 0);
    CHECK(t.two_leaf_parents == 4);
    CHECK(t.total() == 96);

    // the level sequence at n = 4 is not log-concave
    CHECK(t.count(3) * t.count(3) < t.count(2) * t.count(4));
}

TEST_CASE("level tables for n <= 9")
{
    for (int n = 1; n <= 9; ++n) {
        const LevelTable t = enumerate_levels(n);
        const Integer trees = factorial(static_cast<unsigned long>(n));
        const Integer next = factorial(static_cast<unsigned long>(n + 1));
        CHECK(t.total() == n * trees);
        for (int k = 1; k < n; ++k) {
            CHECK(t.count(k + 1) <= t.count(k));
        }
        // the path trees give exactly 2^(n-1) vertices at level n
        CHECK(t.count(n) == Integer(1UL << (n - 1)));
        if (n >= 2) {
            CHECK(3 * t.count(1) == next);
        }
        if (n >= 4) {
            CHECK(10 * t.count(2) == 3 * next);
            CHECK(30 * t.two_leaf_parents == next);
            CHECK(protected_expectation(n) == Rational(11 * n - 19, 30));
        }
    }
}

TEST_CASE("protected expectation small cases")
{
    CHECK(protected_expectation(4) == Rational(5, 6));
    CHECK(protected_expectation(7) == Rational(29, 15));
    CHECK(protected_expectation(2) == Rational(0));
    CHECK(protected_expectation(1) == Rational(0));
}

TEST_CASE("enumeration guards")
{
    CHECK_THROWS_AS(enumerate_levels(11), LimitError);
    CHECK_THROWS_AS(enumerate_levels(20), LimitError);
    CHECK_THROWS_AS(enumerate_levels(0), std::invalid_argument);
    CHECK_NOTHROW(enumerate_levels(3, 3));
}

TEST_CASE("enumeration does not depend on the thread count")
{
    const LevelTable one = enumerate_levels(8, 10, 1);
    const LevelTable many = enumerate_levels(8, 10, 5);
    CHECK(one.counts == many.counts);
    CHECK(one.two_leaf_parents == many.two_leaf_parents);
}

TEST_CASE("perfect tree frequencies")
{
    CHECK(Rational(count_perfect_trees(3), factorial(3)) == qk(2));
    CHECK(Rational(count_perfect_trees(7), factorial(7)) == qk(3));
    CHECK(Rational(count_perfect_trees(1), factorial(1)) == qk(1));
}

TEST_CASE("two leaf children at an interior position")
{
    // n = 5, middle vertex: exactly 4 of 120 permutations
    int hits = 0;
    for_each_permutation(5, [&](std::span<const int> p) {
        const Tree t = build_tree(Permutation({p.begin(), p.end()}));
        const int v = p[2];
        if (t.left(v) != 0 && t.right(v) != 0 && t.is_leaf(t.left(v)) && t.is_leaf(t.right(v))) {
            ++hits;
        }
    });
    CHECK(hits == 4);
    CHECK(Rational(hits, 120) == pk(2));

    // the event depends only on the 5-window: 1/30 at each interior position of n = 7
    for (std::size_t pos : {2U, 3U, 4U}) {
        int count = 0;
        for_each_permutation(7, [&](std::span<const int> p) {
            const Tree t = build_tree(Permutation({p.begin(), p.end()}));
            const int v = p[pos];
            if (t.left(v) != 0 && t.right(v) != 0 && t.is_leaf(t.left(v)) && t.is_leaf(t.right(v))) {
                ++count;
            }
        });
        CHECK(count * 30 == 5040);
    }
}

TEST_CASE("perfect level-3 subtree at the middle of n = 9 has probability P_3")
{
    int hits = 0;
    for_each_permutation(9, [&](std::span<const int> p) {
        const Tree t = build_tree(Permutation({p.begin(), p.end()}));
        if (perfect_height(t, p[4]) == 3) {
            ++hits;
        }
    });
    CHECK(Rational(hits, 362880) == pk(3));
    CHECK(hits == 160);
}

TEST_CASE("sampling")
{
    SUBCASE("single vertex")
    {
        const SampleResult r = sample_levels(1, 17, 3);
        CHECK(r.max_level() == 1);
        CHECK(r.frequency(1) == Rational(1));
    }
    SUBCASE("frequencies sum to one exactly")
    {
        const SampleResult r = sample_levels(500, 40, 11);
        Rational sum;
        for (int k = 1; k <= r.max_level(); ++k) {
            sum += r.frequency(k);
        }
        CHECK(sum == Rational(1));
        CHECK(r.frequency(r.max_level() + 1) == Rational(0));
    }
    SUBCASE("seeded output is independent of threads")
    {
        const SampleResult a = sample_levels(2000, 100, 42, 1);
        const SampleResult b = sample_levels(2000, 100, 42, 4);
        const SampleResult c = sample_levels(2000, 100, 42, 0);
        CHECK(a.histogram == b.histogram);
        CHECK(a.histogram == c.histogram);
        CHECK(sample_levels(2000, 100, 43, 1).histogram != a.histogram);
    }
    SUBCASE("random permutations are permutations and reproducible")
    {
        const auto p = random_permutation(1000, 9);
        CHECK_NOTHROW(Permutation{p});
        CHECK(p == random_permutation(1000, 9));
        CHECK(trial_seed(7, 0) != trial_seed(7, 1));
        CHECK(trial_seed(7, 0) != trial_seed(8, 0));
    }
    SUBCASE("guards")
    {
        CHECK_THROWS_AS(sample_levels(0, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(sample_levels(5, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("Q_4 by Monte Carlo at n = 15")
{
    // Exhaustive counting over 15! permutations is infeasible; 4e6 samples
    // give mean 4e6/59535 ~ 67.2 perfect trees.
    const std::uint64_t trials = 4'000'000;
    const Rational q4 = qk(4);
    REQUIRE(q4 == Rational(1, 59535));
    const double mean = static_cast<double>(trials) * q4.to_double();
    const double sigma = std::sqrt(mean * (1.0 - q4.to_double()));
    const auto hits = static_cast<double>(sample_perfect_count(15, trials, 2024));
    CHECK(std::abs(hits - mean) <= 3.0 * sigma);
}
