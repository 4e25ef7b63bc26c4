#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bstlevels/oracle.hpp>
#include <bstlevels/tree.hpp>

#include <map>
#include <stdexcept>

using namespace bstlevels;

namespace
{

std::map<int, int> level_map(const Tree &t)
{
    const auto lv = levels(t);
    std::map<int, int> out;
    for (std::size_t i = 0; i < lv.size(); ++i) {
        out[static_cast<int>(i + 1)] = lv[i];
    }
    return out;
}

std::vector<int> level_histogram(const Tree &t)
{
    std::vector<int> out;
    for (int lv : levels(t)) {
        if (static_cast<std::size_t>(lv) > out.size()) {
            out.resize(static_cast<std::size_t>(lv), 0);
        }
        ++out[static_cast<std::size_t>(lv - 1)];
    }
    return out;
}

} // namespace

TEST_CASE("permutation validation")
{
    CHECK_NOTHROW(Permutation({2, 1, 3}));
    CHECK_THROWS_AS(Permutation({1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::from_digits("12a"), std::invalid_argument);
    CHECK_THROWS_AS(build_tree(Permutation({})), std::invalid_argument);
    CHECK_THROWS_AS(build_tree_naive(Permutation({})), std::invalid_argument);
}

TEST_CASE("tree of 328794615")
{
    const auto p = Permutation::from_digits("328794615");
    const Tree t = build_tree(p);
    CHECK(t.root() == 9);
    CHECK(t.left(9) == 8);
    CHECK(t.right(9) == 6);
    CHECK(t.left(8) == 3);
    CHECK(t.right(8) == 7);
    CHECK(t.left(3) == 0);
    CHECK(t.right(3) == 2);
    CHECK(t.left(6) == 4);
    CHECK(t.right(6) == 5);
    CHECK(t.left(5) == 1);
    CHECK(t.right(5) == 0);
    CHECK(t == build_tree_naive(p));
    CHECK(inorder(t) == p);

    const std::map<int, int> expected{{2, 1}, {7, 1}, {4, 1}, {1, 1}, {3, 2}, {8, 2}, {5, 2}, {6, 2}, {9, 3}};
    CHECK(level_map(t) == expected);
    CHECK(two_leaf_parents(t) == 0);
}

TEST_CASE("small trees")
{
    const Tree single = build_tree(Permutation({1}));
    CHECK(level_map(single) == std::map<int, int>{{1, 1}});
    CHECK(inorder(single) == Permutation({1}));
    CHECK(is_perfect(single));

    const Tree t132 = build_tree(Permutation::from_digits("132"));
    CHECK(t132.left(3) == 1);
    CHECK(t132.right(3) == 2);
    CHECK(is_perfect(t132));
    CHECK(two_leaf_parents(t132) == 1);

    CHECK_FALSE(is_perfect(build_tree(Permutation::from_digits("123"))));
    CHECK(inorder(build_tree(Permutation::from_digits("21"))) == Permutation::from_digits("21"));

    // a path of n vertices puts the root at level n
    CHECK(level_histogram(build_tree(Permutation::from_digits("1234"))) == std::vector<int>{1, 1, 1, 1});

    const Tree perfect7 = build_tree(Permutation::from_digits("1527364"));
    CHECK(is_perfect(perfect7));
    CHECK(level_histogram(perfect7) == std::vector<int>{4, 2, 1});
}

TEST_CASE("only children keep their side")
{
    const Tree left_only = build_tree(Permutation::from_digits("12"));
    CHECK(left_only.left(2) == 1);
    CHECK(left_only.right(2) == 0);
    const Tree right_only = build_tree(Permutation::from_digits("21"));
    CHECK(right_only.left(2) == 0);
    CHECK(right_only.right(2) == 1);
    CHECK_FALSE(left_only == right_only);
}

TEST_CASE("exhaustive structural properties for n <= 8")
{
    for (int n = 1; n <= 8; ++n) {
        bool ok = true;
        for_each_permutation(n, [&](std::span<const int> entries) {
            const Permutation p({entries.begin(), entries.end()});
            const Tree fast = build_tree(p);
            const Tree naive = build_tree_naive(p);
            ok = ok && fast == naive && inorder(fast) == p;

            // leaf iff smaller than every neighbor in p
            const auto lv = levels(fast);
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const bool smaller_left = i == 0 || entries[i] < entries[i - 1];
                const bool smaller_right = i + 1 == entries.size() || entries[i] < entries[i + 1];
                const bool leaf = lv[static_cast<std::size_t>(entries[i] - 1)] == 1;
                ok = ok && leaf == (smaller_left && smaller_right);
            }
        });
        CHECK_MESSAGE(ok, "n = " << n);
    }
}

TEST_CASE("large random permutations")
{
    const int n = 100000;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const Permutation p(random_permutation(n, seed));
        const Tree t = build_tree(p);
        CHECK(inorder(t) == p);
        CHECK(t == build_tree_naive(p));
    }
}

TEST_CASE("tree constructor rejects malformed shapes")
{
    CHECK_THROWS_AS(Tree({{0, 0}, {0, 0}}), std::invalid_argument);          // 1 has no parent
    CHECK_THROWS_AS(Tree({{0, 0}, {1, 1}}), std::invalid_argument);          // two parents
    CHECK_THROWS_AS(Tree({{2, 0}, {0, 0}}), std::invalid_argument);          // child larger than parent
    CHECK_NOTHROW(Tree({{0, 0}, {0, 1}}));
}
