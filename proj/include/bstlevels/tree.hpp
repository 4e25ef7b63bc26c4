#ifndef BSTLEVELS_TREE_HPP
#define BSTLEVELS_TREE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bstlevels
{

/// A permutation of 1..n, validated on construction.
class Permutation
{
public:
    /// Throws std::invalid_argument unless entries is a bijection on 1..n.
    explicit Permutation(std::vector<int> entries);
    /// Parses a digit string such as "328794615" (n <= 9 only).
    static Permutation from_digits(const std::string &digits);

    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::span<const int> entries() const { return entries_; }
    [[nodiscard]] int operator[](std::size_t i) const { return entries_[i]; }

    friend bool operator==(const Permutation &, const Permutation &) = default;

private:
    std::vector<int> entries_;
};

/// Decreasing binary tree with vertices labeled 1..n; the root is n.
///
/// Children are stored by label, 0 meaning "no child". Left and right are
/// kept distinct even for an only child.
class Tree
{
public:
    struct Children
    {
        int left = 0;
        int right = 0;
    };

    Tree() = default;
    explicit Tree(std::vector<Children> children);

    [[nodiscard]] std::size_t size() const { return children_.size(); }
    [[nodiscard]] int root() const { return static_cast<int>(children_.size()); }
    [[nodiscard]] int left(int label) const { return children_[static_cast<std::size_t>(label - 1)].left; }
    [[nodiscard]] int right(int label) const { return children_[static_cast<std::size_t>(label - 1)].right; }
    [[nodiscard]] bool is_leaf(int label) const { return left(label) == 0 && right(label) == 0; }

    friend bool operator==(const Tree &a, const Tree &b);

private:
    std::vector<Children> children_;
};

/// Reference builder: recursively roots each substring at its maximum. O(n^2)
/// worst case, recursion depth equals tree height.
Tree build_tree_naive(const Permutation &p);

/// Linear-time monotone-stack (Cartesian tree) builder.
Tree build_tree(const Permutation &p);

Permutation inorder(const Tree &t);

/// level[label - 1]: 1 for leaves, otherwise 1 + min level of the children.
std::vector<int> levels(const Tree &t);

bool is_perfect(const Tree &t);

/// Vertices having two leaf children.
std::size_t two_leaf_parents(const Tree &t);

namespace detail
{

/// Cartesian-tree construction on raw buffers (left/right indexed by label - 1).
void build_children(std::span<const int> p, std::span<int> left, std::span<int> right, std::vector<int> &stack);

/// Level of each label, using the fact that children always carry smaller labels.
void compute_levels(std::span<const int> left, std::span<const int> right, std::span<int> level);

} // namespace detail

} // namespace bstlevels

#endif
