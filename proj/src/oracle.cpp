#include <bstlevels/oracle.hpp>
#include <bstlevels/tree.hpp>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <string>
#include <thread>

namespace bstlevels
{

Integer LevelTable::count(int k) const
{
    if (k < 1 || static_cast<std::size_t>(k) > counts.size()) {
        return 0;
    }
    return counts[static_cast<std::size_t>(k - 1)];
}

Integer LevelTable::total() const
{
    Integer out = 0;
    for (const auto &c : counts) {
        out += c;
    }
    return out;
}

namespace
{

unsigned resolve_threads(unsigned threads, std::size_t tasks)
{
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));
}

/// Runs task(i) for i in [0, tasks) on a small worker pool.
template <class Task>
void parallel_for(std::size_t tasks, unsigned threads, Task &&task)
{
    const unsigned workers = resolve_threads(threads, tasks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks; i = next++) {
            task(i);
        }
    };
    if (workers <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
}

void check_enumeration_size(int n, int limit)
{
    if (n < 1) {
        throw std::invalid_argument("n must be at least 1");
    }
    if (n > limit) {
        throw LimitError("n = " + std::to_string(n) + " exceeds the enumeration limit " + std::to_string(limit));
    }
}

struct Scratch
{
    explicit Scratch(std::size_t n) : left(n), right(n), level(n) { stack.reserve(n); }

    std::vector<int> left;
    std::vector<int> right;
    std::vector<int> level;
    std::vector<int> stack;
};

} // namespace

LevelTable enumerate_levels(int n, int limit, unsigned threads)
{
    check_enumeration_size(n, limit);
    const auto size = static_cast<std::size_t>(n);

    struct Partial
    {
        std::vector<std::uint64_t> counts;
        std::uint64_t two_leaf = 0;
    };
    std::vector<Partial> partial(size);

    // Task i enumerates the permutations starting with i + 1.
    parallel_for(size, threads, [&](std::size_t task) {
        Partial &out = partial[task];
        out.counts.assign(size, 0);
        Scratch s(size);
        std::vector<int> p(size);
        p[0] = static_cast<int>(task + 1);
        for (std::size_t j = 1, v = 1; j < size; ++v) {
            if (v != task + 1) {
                p[j++] = static_cast<int>(v);
            }
        }
        do {
            detail::build_children(p, s.left, s.right, s.stack);
            detail::compute_levels(s.left, s.right, s.level);
            for (std::size_t i = 0; i < size; ++i) {
                ++out.counts[static_cast<std::size_t>(s.level[i] - 1)];
                const int l = s.left[i];
                const int r = s.right[i];
                if (l != 0 && r != 0 && s.level[static_cast<std::size_t>(l - 1)] == 1 &&
                    s.level[static_cast<std::size_t>(r - 1)] == 1) {
                    ++out.two_leaf;
                }
            }
        } while (std::next_permutation(p.begin() + 1, p.end()));
    });

    LevelTable table;
    table.n = n;
    table.counts.assign(size, 0);
    table.two_leaf_parents = 0;
    for (const auto &part : partial) {
        for (std::size_t k = 0; k < size; ++k) {
            table.counts[k] += Integer(static_cast<unsigned long>(part.counts[k]));
        }
        table.two_leaf_parents += Integer(static_cast<unsigned long>(part.two_leaf));
    }
    return table;
}

Rational protected_expectation(int n, int limit)
{
    const LevelTable table = enumerate_levels(n, limit);
    const Integer trees = factorial(static_cast<unsigned long>(n));
    const Integer protected_count = Integer(n) * trees - table.count(1) - table.count(2);
    return Rational(protected_count, trees);
}

void for_each_permutation(int n, const std::function<void(std::span<const int>)> &fn)
{
    if (n < 0) {
        throw std::invalid_argument("negative permutation length");
    }
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    do {
        fn(p);
    } while (std::next_permutation(p.begin(), p.end()));
}

Integer count_perfect_trees(int n, int limit)
{
    check_enumeration_size(n, limit);
    Integer out = 0;
    for_each_permutation(n, [&](std::span<const int> p) {
        if (is_perfect(build_tree(Permutation({p.begin(), p.end()})))) {
            out += 1;
        }
    });
    return out;
}

Rational SampleResult::frequency(int k) const
{
    if (k < 1 || k > max_level()) {
        return Rational();
    }
    const Integer total = Integer(static_cast<unsigned long>(n)) * Integer(static_cast<unsigned long>(trials));
    return Rational(Integer(static_cast<unsigned long>(histogram[static_cast<std::size_t>(k - 1)])), total);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index)
{
    // splitmix64 finalizer applied to the index-th step from the master seed
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<int> random_permutation(int n, std::uint64_t seed)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::mt19937_64 rng(seed);
    for (std::size_t i = p.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(p[i - 1], p[pick(rng)]);
    }
    return p;
}

namespace
{

constexpr std::uint64_t trials_per_chunk = 16;

} // namespace

SampleResult sample_levels(int n, std::uint64_t trials, std::uint64_t seed, unsigned threads)
{
    if (n < 1 || trials < 1) {
        throw std::invalid_argument("sampling needs n >= 1 and trials >= 1");
    }
    const auto size = static_cast<std::size_t>(n);
    const std::size_t chunks = static_cast<std::size_t>((trials + trials_per_chunk - 1) / trials_per_chunk);
    std::vector<std::vector<std::uint64_t>> partial(chunks);

    parallel_for(chunks, threads, [&](std::size_t chunk) {
        auto &hist = partial[chunk];
        Scratch s(size);
        const std::uint64_t first = chunk * trials_per_chunk;
        const std::uint64_t last = std::min(trials, first + trials_per_chunk);
        for (std::uint64_t t = first; t < last; ++t) {
            const auto p = random_permutation(n, trial_seed(seed, t));
            detail::build_children(p, s.left, s.right, s.stack);
            detail::compute_levels(s.left, s.right, s.level);
            for (int lv : s.level) {
                if (static_cast<std::size_t>(lv) > hist.size()) {
                    hist.resize(static_cast<std::size_t>(lv), 0);
                }
                ++hist[static_cast<std::size_t>(lv - 1)];
            }
        }
    });

    SampleResult out;
    out.n = n;
    out.trials = trials;
    for (const auto &hist : partial) {
        if (hist.size() > out.histogram.size()) {
            out.histogram.resize(hist.size(), 0);
        }
        for (std::size_t k = 0; k < hist.size(); ++k) {
            out.histogram[k] += hist[k];
        }
    }
    return out;
}

std::uint64_t sample_perfect_count(int n, std::uint64_t trials, std::uint64_t seed, unsigned threads)
{
    if (n < 1) {
        throw std::invalid_argument("n must be at least 1");
    }
    const std::size_t chunks = static_cast<std::size_t>((trials + 1023) / 1024);
    std::vector<std::uint64_t> partial(chunks, 0);
    parallel_for(chunks, threads, [&](std::size_t chunk) {
        const std::uint64_t first = chunk * 1024;
        const std::uint64_t last = std::min(trials, first + 1024);
        for (std::uint64_t t = first; t < last; ++t) {
            if (is_perfect(build_tree(Permutation(random_permutation(n, trial_seed(seed, t)))))) {
                ++partial[chunk];
            }
        }
    });
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

} // namespace bstlevels
