#ifndef BSTLEVELS_LEVEL_GF_HPP
#define BSTLEVELS_LEVEL_GF_HPP

#include <bstlevels/pl_expr.hpp>
#include <bstlevels/rational.hpp>
#include <bstlevels/series.hpp>

#include <deque>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace bstlevels
{

/// Generating functions for one level k.
///
/// B is the EGF of trees whose root is at level k, A the EGF of (tree,
/// level-k vertex) pairs, and c the rational limit of a_{n,k}/(n+1)!, i.e.
/// the coefficient of (1-x)^-2 in A.
struct GFBundle
{
    int k = 0;
    PLExpr B;
    PLExpr Bprime;
    PLExpr A;
    Rational c;
};

/// Raised when a computed bundle violates the expected shape. Signals an
/// algebra bug rather than bad input.
class StructureError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Memoized bundles 1..k. Bundles are computed in order by a single writer
/// under a lock; returned references stay valid for the cache's lifetime.
class LevelGF
{
public:
    /// Throws std::invalid_argument for k < 1, StructureError on shape violations.
    const GFBundle &bundle(int k);

private:
    void extend();

    std::mutex mutex_;
    std::deque<GFBundle> bundles_;
};

/// Process-wide cache used by the free functions below.
LevelGF &default_level_gf();

PLExpr compute_B(int k);
PLExpr compute_Bprime(int k);
PLExpr compute_A(int k);
Rational extract_ck(int k);

/// [x^n] A_k = a_{n,k} / n!, the expected number of level-k vertices.
Rational expected_level_count(int k, int n);

/// Largest level whose A_k is computed symbolically by the acceptance checks
/// (k = 8 takes tens of seconds; k = 9 is out of desk-scale reach).
inline constexpr int symbolic_level_limit = 8;

/// Truncated series of B_k and A_k through x^order, computed by running the
/// same recursions directly on power series. Cheap for every k; used to
/// reach levels beyond symbolic_level_limit.
struct LevelSeries
{
    std::vector<Series> B;
    std::vector<Series> A;
};

/// Series for levels 1..k_max. Throws std::invalid_argument for k_max < 1.
LevelSeries level_series(int k_max, std::size_t order);

/// Probability that a random permutation of length 2^k - 1 gives a perfect tree.
Rational qk(int k);
/// Probability that a fixed interior position roots a perfect level-k subtree.
Rational pk(int k);
/// Lower-bound constant P_k / 2 on a_{n,k}/(n n!).
Rational gamma_k(int k);
/// Smallest n for which the gamma_k bound is established: 2^(k+1).
long gamma_threshold(int k);

/// Throws StructureError unless A has the expected shape: no power of (1-x)
/// below -2, no log multiplying a negative power, nonzero (1-x)^-2 term.
void check_a_shape(const PLExpr &A);

} // namespace bstlevels

#endif
