#ifndef BSTLEVELS_SERIES_HPP
#define BSTLEVELS_SERIES_HPP

#include <bstlevels/pl_expr.hpp>
#include <bstlevels/rational.hpp>

#include <cstddef>
#include <vector>

namespace bstlevels
{

/// Power series in x known exactly through x^order.
class Series
{
public:
    /// The zero series of the given order.
    explicit Series(std::size_t order) : coeffs_(order + 1) {}
    /// Takes coefficients of x^0..x^N; order is N. Throws on an empty vector.
    explicit Series(std::vector<Rational> coeffs);

    [[nodiscard]] std::size_t order() const { return coeffs_.size() - 1; }
    [[nodiscard]] const std::vector<Rational> &coeffs() const { return coeffs_; }

    /// Coefficient of x^n. Throws std::out_of_range when n > order.
    [[nodiscard]] const Rational &coeff(std::size_t n) const;
    Rational &operator[](std::size_t n) { return coeffs_[n]; }
    const Rational &operator[](std::size_t n) const { return coeffs_[n]; }

    [[nodiscard]] Series truncated(std::size_t order) const;

    friend bool operator==(const Series &, const Series &) = default;

private:
    std::vector<Rational> coeffs_;
};

/// Coefficientwise sum; the result has the smaller of the two orders.
Series operator+(const Series &a, const Series &b);
/// Cauchy product truncated to the smaller order.
Series operator*(const Series &a, const Series &b);

/// Termwise derivative; order drops by one (order-0 input gives the zero series of order 0).
Series differentiate(const Series &s);

/// Exact coefficients of e through x^order.
Series expand(const PLExpr &e, std::size_t order);

/// Series of (1-x)^b for any integer b.
Series one_minus_x_series(int b, std::size_t order);
/// Series of ln(1/(1-x)) = sum_{m>=1} x^m / m.
Series log_series(std::size_t order);

} // namespace bstlevels

#endif
