#ifndef BSTLEVELS_ORACLE_HPP
#define BSTLEVELS_ORACLE_HPP

#include <bstlevels/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bstlevels
{

inline constexpr int default_enumeration_limit = 10;

class LimitError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Exact level counts over all n! trees of size n.
struct LevelTable
{
    int n = 0;
    /// counts[k - 1] = a_{n,k}, for k = 1..n
    std::vector<Integer> counts;
    /// d_n: vertices with two leaf children, summed over all trees
    Integer two_leaf_parents;

    /// a_{n,k}; zero for k outside 1..n.
    [[nodiscard]] Integer count(int k) const;
    [[nodiscard]] Integer total() const;
};

/// Exhaustive enumeration of all permutations of 1..n.
///
/// Work is split by the first entry across `threads` workers (0 = hardware
/// concurrency); the result does not depend on the split. Throws
/// std::invalid_argument for n < 1 and LimitError for n > limit.
LevelTable enumerate_levels(int n, int limit = default_enumeration_limit, unsigned threads = 0);

/// Expected number of vertices at level >= 3: (n*n! - a_{n,1} - a_{n,2}) / n!.
Rational protected_expectation(int n, int limit = default_enumeration_limit);

/// Calls fn on every permutation of 1..n in lexicographic order.
void for_each_permutation(int n, const std::function<void(std::span<const int>)> &fn);

/// Number of permutations of 1..n whose tree is perfect.
Integer count_perfect_trees(int n, int limit = default_enumeration_limit);

struct SampleResult
{
    int n = 0;
    std::uint64_t trials = 0;
    /// histogram[k - 1]: level-k vertices over all trials
    std::vector<std::uint64_t> histogram;

    /// Exact fraction of sampled vertices at level k.
    [[nodiscard]] Rational frequency(int k) const;
    [[nodiscard]] int max_level() const { return static_cast<int>(histogram.size()); }
};

/// Seed for trial `index`, derived from the master seed by a fixed rule.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

/// Uniformly random permutation of 1..n determined by the seed.
std::vector<int> random_permutation(int n, std::uint64_t seed);

/// Level histogram over `trials` trees of uniformly random permutations.
/// Output depends only on (n, trials, seed), never on `threads`.
SampleResult sample_levels(int n, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

/// Number of perfect trees among `trials` random permutations of length n.
std::uint64_t sample_perfect_count(int n, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

} // namespace bstlevels

#endif
