#include <bstlevels/tree.hpp>

#include <algorithm>
#include <stdexcept>

namespace bstlevels
{

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries))
{
    const auto n = entries_.size();
    std::vector<bool> seen(n + 1, false);
    for (int v : entries_) {
        if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("not a permutation of 1.." + std::to_string(n));
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::from_digits(const std::string &digits)
{
    std::vector<int> entries;
    for (char c : digits) {
        if (c < '1' || c > '9') {
            throw std::invalid_argument("bad permutation digit '" + std::string(1, c) + "'");
        }
        entries.push_back(c - '0');
    }
    return Permutation(std::move(entries));
}

Tree::Tree(std::vector<Children> children) : children_(std::move(children))
{
    const int n = static_cast<int>(children_.size());
    std::vector<int> parents(children_.size() + 1, 0);
    for (int v = 1; v <= n; ++v) {
        for (int c : {left(v), right(v)}) {
            if (c == 0) {
                continue;
            }
            if (c < 0 || c >= v) {
                throw std::invalid_argument("child label must be smaller than its parent");
            }
            if (++parents[static_cast<std::size_t>(c)] > 1) {
                throw std::invalid_argument("vertex with two parents");
            }
        }
    }
    for (int v = 1; v < n; ++v) {
        if (parents[static_cast<std::size_t>(v)] != 1) {
            throw std::invalid_argument("non-root vertex without parent");
        }
    }
}

bool operator==(const Tree &a, const Tree &b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.children_.size(); ++i) {
        if (a.children_[i].left != b.children_[i].left || a.children_[i].right != b.children_[i].right) {
            return false;
        }
    }
    return true;
}

namespace
{

int build_naive(std::span<const int> p, std::vector<Tree::Children> &children)
{
    if (p.empty()) {
        return 0;
    }
    const auto top = std::max_element(p.begin(), p.end());
    const auto at = static_cast<std::size_t>(top - p.begin());
    auto &node = children[static_cast<std::size_t>(*top - 1)];
    node.left = build_naive(p.first(at), children);
    node.right = build_naive(p.subspan(at + 1), children);
    return *top;
}

} // namespace

Tree build_tree_naive(const Permutation &p)
{
    if (p.size() == 0) {
        throw std::invalid_argument("empty permutation");
    }
    std::vector<Tree::Children> children(p.size());
    build_naive(p.entries(), children);
    return Tree(std::move(children));
}

namespace detail
{

void build_children(std::span<const int> p, std::span<int> left, std::span<int> right, std::vector<int> &stack)
{
    stack.clear();
    std::fill(left.begin(), left.end(), 0);
    std::fill(right.begin(), right.end(), 0);
    for (int v : p) {
        // Everything popped is smaller and lies to the left of v; the last
        // popped element is the maximum of that run and becomes v's left child.
        int last = 0;
        while (!stack.empty() && stack.back() < v) {
            last = stack.back();
            stack.pop_back();
        }
        left[static_cast<std::size_t>(v - 1)] = last;
        if (!stack.empty()) {
            right[static_cast<std::size_t>(stack.back() - 1)] = v;
        }
        stack.push_back(v);
    }
}

void compute_levels(std::span<const int> left, std::span<const int> right, std::span<int> level)
{
    const std::size_t n = level.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int l = left[i];
        const int r = right[i];
        if (l == 0 && r == 0) {
            level[i] = 1;
        } else if (l == 0) {
            level[i] = 1 + level[static_cast<std::size_t>(r - 1)];
        } else if (r == 0) {
            level[i] = 1 + level[static_cast<std::size_t>(l - 1)];
        } else {
            level[i] = 1 + std::min(level[static_cast<std::size_t>(l - 1)], level[static_cast<std::size_t>(r - 1)]);
        }
    }
}

} // namespace detail

Tree build_tree(const Permutation &p)
{
    const std::size_t n = p.size();
    if (n == 0) {
        throw std::invalid_argument("empty permutation");
    }
    std::vector<int> left(n);
    std::vector<int> right(n);
    std::vector<int> stack;
    stack.reserve(n);
    detail::build_children(p.entries(), left, right, stack);
    std::vector<Tree::Children> children(n);
    for (std::size_t i = 0; i < n; ++i) {
        children[i] = {left[i], right[i]};
    }
    return Tree(std::move(children));
}

Permutation inorder(const Tree &t)
{
    std::vector<int> out;
    out.reserve(t.size());
    std::vector<int> stack;
    int cur = t.size() == 0 ? 0 : t.root();
    while (cur != 0 || !stack.empty()) {
        while (cur != 0) {
            stack.push_back(cur);
            cur = t.left(cur);
        }
        cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        cur = t.right(cur);
    }
    return Permutation(std::move(out));
}

std::vector<int> levels(const Tree &t)
{
    const std::size_t n = t.size();
    std::vector<int> left(n);
    std::vector<int> right(n);
    for (std::size_t i = 0; i < n; ++i) {
        left[i] = t.left(static_cast<int>(i + 1));
        right[i] = t.right(static_cast<int>(i + 1));
    }
    std::vector<int> out(n);
    detail::compute_levels(left, right, out);
    return out;
}

bool is_perfect(const Tree &t)
{
    // height[v] of the perfect subtree rooted at v, or -1 if not perfect
    const int n = static_cast<int>(t.size());
    std::vector<int> height(t.size() + 1, 0);
    for (int v = 1; v <= n; ++v) {
        const int l = t.left(v);
        const int r = t.right(v);
        if (l == 0 && r == 0) {
            height[static_cast<std::size_t>(v)] = 1;
        } else if (l != 0 && r != 0 && height[static_cast<std::size_t>(l)] > 0 &&
                   height[static_cast<std::size_t>(l)] == height[static_cast<std::size_t>(r)]) {
            height[static_cast<std::size_t>(v)] = height[static_cast<std::size_t>(l)] + 1;
        } else {
            height[static_cast<std::size_t>(v)] = -1;
        }
    }
    return n > 0 && height[static_cast<std::size_t>(n)] > 0;
}

std::size_t two_leaf_parents(const Tree &t)
{
    std::size_t out = 0;
    const int n = static_cast<int>(t.size());
    for (int v = 1; v <= n; ++v) {
        const int l = t.left(v);
        const int r = t.right(v);
        if (l != 0 && r != 0 && t.is_leaf(l) && t.is_leaf(r)) {
            ++out;
        }
    }
    return out;
}

} // namespace bstlevels
