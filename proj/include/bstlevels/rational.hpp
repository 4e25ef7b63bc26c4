#ifndef BSTLEVELS_RATIONAL_HPP
#define BSTLEVELS_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace bstlevels
{

/// Arbitrary-precision integer used for exact counts.
using Integer = mpz_class;

/// Exact fraction backed by GMP.
///
/// The value is always kept in lowest terms with a positive denominator, so
/// two equal rationals have identical numerator and denominator.
class Rational
{
public:
    Rational() = default;
    Rational(long value) : q_(value) {}
    Rational(long num, long den);
    explicit Rational(const Integer &value) : q_(value) {}
    Rational(const Integer &num, const Integer &den);
    explicit Rational(mpq_class q);

    /// Parses "a" or "a/b" (b > 0 after sign handling). Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    [[nodiscard]] Integer numerator() const { return q_.get_num(); }
    [[nodiscard]] Integer denominator() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class &raw() const { return q_; }

    [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
    [[nodiscard]] int sign() const { return sgn(q_); }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }

    /// "num/den", or just "num" when the denominator is 1.
    [[nodiscard]] std::string str() const;

    /// Decimal expansion rounded half-to-even at `places` digits after the point.
    [[nodiscard]] std::string to_decimal(int places) const;

    [[nodiscard]] double to_double() const { return q_.get_d(); }

    Rational &operator+=(const Rational &o)
    {
        q_ += o.q_;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        q_ -= o.q_;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        q_ *= o.q_;
        return *this;
    }
    /// Throws std::domain_error on division by zero.
    Rational &operator/=(const Rational &o);

    /// this += a * b without temporaries.
    void add_product(const Rational &a, const Rational &b);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

Rational abs(const Rational &r);

std::ostream &operator<<(std::ostream &os, const Rational &r);

Integer factorial(unsigned long n);

/// Binomial coefficient C(n, k) for non-negative arguments.
Integer binomial(unsigned long n, unsigned long k);

} // namespace bstlevels

#endif
