#include <bstlevels/rational.hpp>

#include <ostream>
#include <stdexcept>
#include <utility>

namespace bstlevels
{

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational::Rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q))
{
    if (q_.get_den() == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    q_.canonicalize();
}

namespace
{

bool is_decimal_integer(std::string_view s, bool allow_sign)
{
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    return Integer(std::string(s), 10);
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_decimal_integer(num_text, true)) {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(num_text));
    }
    const auto den_text = text.substr(slash + 1);
    if (!is_decimal_integer(den_text, false)) {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    const Integer den = parse_integer(den_text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parse_integer(num_text), den);
}

std::string Rational::str() const
{
    if (is_integer()) {
        return q_.get_num().get_str();
    }
    return q_.get_str();
}

std::string Rational::to_decimal(int places) const
{
    if (places < 0) {
        throw std::invalid_argument("negative decimal places");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));

    // |q| * 10^places = whole + frac, 0 <= frac < 1
    const Integer num = ::abs(q_.get_num()) * scale;
    const Integer &den = q_.get_den();
    Integer whole;
    Integer rem;
    mpz_fdiv_qr(whole.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

    const int half = cmp(Integer(2 * rem), den);
    if (half > 0 || (half == 0 && mpz_odd_p(whole.get_mpz_t()))) {
        whole += 1;
    }

    std::string digits = whole.get_str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places)) {
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(places), 1, '.');
    }
    if (sign() < 0 && whole != 0) {
        digits.insert(0, 1, '-');
    }
    return digits;
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero()) {
        throw std::domain_error("division by zero");
    }
    q_ /= o.q_;
    return *this;
}

void Rational::add_product(const Rational &a, const Rational &b)
{
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), tmp.get_mpq_t());
}

Rational abs(const Rational &r)
{
    return r.sign() < 0 ? -r : r;
}

std::ostream &operator<<(std::ostream &os, const Rational &r)
{
    return os << r.str();
}

Integer factorial(unsigned long n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

Integer binomial(unsigned long n, unsigned long k)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

} // namespace bstlevels
