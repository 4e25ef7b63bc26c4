#ifndef BSTLEVELS_PL_EXPR_HPP
#define BSTLEVELS_PL_EXPR_HPP

#include <bstlevels/rational.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace bstlevels
{

/// Monomial (1-x)^pow1mx * L^powlog, where L = ln(1/(1-x)).
struct PLKey
{
    int pow1mx = 0;
    int powlog = 0;

    friend auto operator<=>(const PLKey &, const PLKey &) = default;
};

struct PLTerm
{
    Rational coeff;
    int pow1mx = 0;
    int powlog = 0;
};

/// Finite rational combination of (1-x)^b * ln(1/(1-x))^c with integer b
/// (possibly negative) and c >= 0.
///
/// Always normalized: one entry per (b, c) key, no zero coefficients, keys
/// ascending. Polynomials in x are re-expanded in the (1-x) basis on
/// construction, so x itself is stored as 1 - (1-x).
class PLExpr
{
public:
    using TermMap = std::map<PLKey, Rational>;

    PLExpr() = default;

    static PLExpr constant(const Rational &value);
    /// coeff * (1-x)^pow1mx * L^powlog. Throws std::invalid_argument if powlog < 0.
    static PLExpr term(const Rational &coeff, int pow1mx, int powlog);
    static PLExpr x();
    static PLExpr x_pow(int n);
    /// sum_i coeffs[i] x^i
    static PLExpr polynomial(std::span<const Rational> coeffs);
    static PLExpr log_pow(int c) { return term(1, 0, c); }

    [[nodiscard]] const TermMap &terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    /// Coefficient of (1-x)^pow1mx L^powlog, zero if absent.
    [[nodiscard]] Rational coeff(int pow1mx, int powlog) const;

    /// True when every power of (1-x) is non-negative, i.e. the expression
    /// lies in the unextended class.
    [[nodiscard]] bool in_pl() const;
    [[nodiscard]] int min_pow1mx() const;
    [[nodiscard]] int max_powlog() const;

    /// Adds coeff * (1-x)^pow1mx L^powlog in place.
    void add_term(const Rational &coeff, int pow1mx, int powlog);

    PLExpr &operator+=(const PLExpr &o);
    PLExpr &operator-=(const PLExpr &o);
    PLExpr &operator*=(const Rational &s);

    friend PLExpr operator+(PLExpr a, const PLExpr &b) { return a += b; }
    friend PLExpr operator-(PLExpr a, const PLExpr &b) { return a -= b; }
    friend PLExpr operator-(PLExpr a) { return a *= Rational(-1); }
    friend PLExpr operator*(const PLExpr &a, const PLExpr &b);
    friend PLExpr operator*(PLExpr a, const Rational &s) { return a *= s; }
    friend PLExpr operator*(const Rational &s, PLExpr a) { return a *= s; }

    friend bool operator==(const PLExpr &, const PLExpr &) = default;

private:
    TermMap terms_;
};

/// Multiplies by (1-x)^shift; exact and cheaper than a general product.
PLExpr shift_pow1mx(const PLExpr &e, int shift);

PLExpr differentiate(const PLExpr &e);

/// Antiderivative F with F(0) = 0.
PLExpr integrate(const PLExpr &e);

/// Value at x = 0: the sum of coefficients of log-free terms.
Rational value_at_zero(const PLExpr &e);

class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string &what, std::size_t position);
    [[nodiscard]] std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Grammar:
///   expression := term ('+' term)*
///   term       := (rational | factor) ('*' factor)*
///   factor     := 'x' ['^' int] | '(1-x)' ['^' int] | 'L' ['^' int]
///   rational   := int ['/' posint]
/// A term may start with a factor, meaning coefficient 1. Whitespace between
/// tokens is ignored. Throws ParseError.
PLExpr parse_pl(std::string_view text);

/// Canonical text in ascending (pow1mx, powlog) order, e.g. "1 + -1*(1-x)".
/// The empty expression formats as "0".
std::string format_pl(const PLExpr &e);

nlohmann::json to_json(const PLExpr &e);
/// Throws std::invalid_argument on schema violations.
PLExpr pl_from_json(const nlohmann::json &j);

} // namespace bstlevels

#endif
