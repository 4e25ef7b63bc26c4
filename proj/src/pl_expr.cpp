#include <bstlevels/pl_expr.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace bstlevels
{

PLExpr PLExpr::constant(const Rational &value)
{
    return term(value, 0, 0);
}

PLExpr PLExpr::term(const Rational &coeff, int pow1mx, int powlog)
{
    PLExpr out;
    out.add_term(coeff, pow1mx, powlog);
    return out;
}

PLExpr PLExpr::x()
{
    return x_pow(1);
}

PLExpr PLExpr::x_pow(int n)
{
    if (n < 0) {
        throw std::invalid_argument("negative power of x");
    }
    // x^n = (1 - (1-x))^n = sum_j C(n,j) (-1)^j (1-x)^j
    PLExpr out;
    for (int j = 0; j <= n; ++j) {
        Rational c(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j)));
        out.add_term(j % 2 == 0 ? c : -c, j, 0);
    }
    return out;
}

PLExpr PLExpr::polynomial(std::span<const Rational> coeffs)
{
    PLExpr out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_zero()) {
            out += x_pow(static_cast<int>(i)) * coeffs[i];
        }
    }
    return out;
}

Rational PLExpr::coeff(int pow1mx, int powlog) const
{
    const auto it = terms_.find(PLKey{pow1mx, powlog});
    return it == terms_.end() ? Rational() : it->second;
}

bool PLExpr::in_pl() const
{
    return terms_.empty() || terms_.begin()->first.pow1mx >= 0;
}

int PLExpr::min_pow1mx() const
{
    return terms_.empty() ? 0 : terms_.begin()->first.pow1mx;
}

int PLExpr::max_powlog() const
{
    int out = 0;
    for (const auto &[key, c] : terms_) {
        out = std::max(out, key.powlog);
    }
    return out;
}

void PLExpr::add_term(const Rational &coeff, int pow1mx, int powlog)
{
    if (powlog < 0) {
        throw std::invalid_argument("negative power of the logarithm");
    }
    if (coeff.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(PLKey{pow1mx, powlog}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

PLExpr &PLExpr::operator+=(const PLExpr &o)
{
    for (const auto &[key, c] : o.terms_) {
        add_term(c, key.pow1mx, key.powlog);
    }
    return *this;
}

PLExpr &PLExpr::operator-=(const PLExpr &o)
{
    for (const auto &[key, c] : o.terms_) {
        add_term(-c, key.pow1mx, key.powlog);
    }
    return *this;
}

PLExpr &PLExpr::operator*=(const Rational &s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[key, c] : terms_) {
        c *= s;
    }
    return *this;
}

namespace
{

/// Coefficients scaled to integers over the lcm of their denominators.
struct ScaledTerms
{
    std::vector<std::pair<PLKey, Integer>> terms;
    Integer denominator = 1;
};

ScaledTerms scale_to_integers(const PLExpr::TermMap &terms)
{
    ScaledTerms out;
    for (const auto &[key, c] : terms) {
        mpz_lcm(out.denominator.get_mpz_t(), out.denominator.get_mpz_t(), c.raw().get_den_mpz_t());
    }
    out.terms.reserve(terms.size());
    for (const auto &[key, c] : terms) {
        Integer scaled = out.denominator / c.denominator();
        scaled *= c.numerator();
        out.terms.emplace_back(key, std::move(scaled));
    }
    return out;
}

} // namespace

PLExpr operator*(const PLExpr &a, const PLExpr &b)
{
    // Integer accumulation avoids a gcd per partial product.
    const ScaledTerms sa = scale_to_integers(a.terms_);
    const ScaledTerms sb = scale_to_integers(b.terms_);
    std::map<PLKey, Integer> acc;
    for (const auto &[ka, ca] : sa.terms) {
        for (const auto &[kb, cb] : sb.terms) {
            const PLKey key{ka.pow1mx + kb.pow1mx, ka.powlog + kb.powlog};
            auto &slot = acc[key];
            mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
    }
    const Integer denominator = sa.denominator * sb.denominator;
    PLExpr out;
    for (auto &[key, num] : acc) {
        if (num != 0) {
            out.terms_.emplace_hint(out.terms_.end(), key, Rational(num, denominator));
        }
    }
    return out;
}

PLExpr shift_pow1mx(const PLExpr &e, int shift)
{
    PLExpr out;
    for (const auto &[key, c] : e.terms()) {
        out.add_term(c, key.pow1mx + shift, key.powlog);
    }
    return out;
}

PLExpr differentiate(const PLExpr &e)
{
    // d/dx (1-x)^b L^c = -b (1-x)^(b-1) L^c + c (1-x)^(b-1) L^(c-1)
    PLExpr out;
    for (const auto &[key, a] : e.terms()) {
        const auto [b, c] = key;
        if (b != 0) {
            out.add_term(a * Rational(-b), b - 1, c);
        }
        if (c != 0) {
            out.add_term(a * Rational(c), b - 1, c - 1);
        }
    }
    return out;
}

PLExpr integrate(const PLExpr &e)
{
    // Terms are grouped by b = pow1mx (keys are sorted by b first).
    //   b == -1: int (1-x)^-1 L^c = L^(c+1) / (c+1)
    //   b != -1: integration by parts on c gives
    //     int sum_c a_c (1-x)^b L^c = -(1-x)^(b+1) sum_m S_m L^m,
    //     S_m = sum_{c>=m} a_c c! / (m! (b+1)^(c-m+1)),
    //   evaluated top-down as S_m = (a_m + (m+1) S_{m+1}) / (b+1).
    // Every output key (b+1, m) is distinct, so terms are inserted directly.
    PLExpr out;
    const auto &terms = e.terms();
    for (auto it = terms.begin(); it != terms.end();) {
        const int b = it->first.pow1mx;
        auto group_end = it;
        int max_c = 0;
        while (group_end != terms.end() && group_end->first.pow1mx == b) {
            max_c = std::max(max_c, group_end->first.powlog);
            ++group_end;
        }
        if (b == -1) {
            for (; it != group_end; ++it) {
                const int c = it->first.powlog;
                out.add_term(it->second / Rational(c + 1), 0, c + 1);
            }
            continue;
        }
        std::vector<Rational> a(static_cast<std::size_t>(max_c) + 1);
        for (; it != group_end; ++it) {
            a[static_cast<std::size_t>(it->first.powlog)] = it->second;
        }
        const Rational inv(1, b + 1);
        Rational s;
        for (int m = max_c; m >= 0; --m) {
            s *= Rational(m + 1);
            s += a[static_cast<std::size_t>(m)];
            s *= inv;
            out.add_term(-s, b + 1, m);
        }
    }
    out.add_term(-value_at_zero(out), 0, 0);
    return out;
}

Rational value_at_zero(const PLExpr &e)
{
    Rational out;
    for (const auto &[key, a] : e.terms()) {
        if (key.powlog == 0) {
            out += a;
        }
    }
    return out;
}

ParseError::ParseError(const std::string &what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
{
}

namespace
{

class Parser
{
public:
    explicit Parser(std::string_view text) : text_(text) {}

    PLExpr expression()
    {
        PLExpr out = term();
        skip_space();
        while (peek() == '+') {
            ++pos_;
            out += term();
            skip_space();
        }
        if (pos_ != text_.size()) {
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        }
        return out;
    }

private:
    PLExpr term()
    {
        skip_space();
        PLExpr out;
        if (peek() == 'x' || peek() == '(' || peek() == 'L') {
            out = factor();
        } else {
            out = PLExpr::constant(rational());
        }
        skip_space();
        while (peek() == '*') {
            ++pos_;
            out = out * factor();
            skip_space();
        }
        return out;
    }

    PLExpr factor()
    {
        skip_space();
        const std::size_t start = pos_;
        if (consume("(1-x)")) {
            return PLExpr::term(1, optional_exponent(), 0);
        }
        if (consume("x")) {
            const int n = optional_exponent();
            if (n < 0) {
                fail_at("negative power of x", start);
            }
            return PLExpr::x_pow(n);
        }
        if (consume("L")) {
            const int c = optional_exponent();
            if (c < 0) {
                fail_at("negative power of L", start);
            }
            return PLExpr::log_pow(c);
        }
        fail("expected factor 'x', '(1-x)' or 'L'");
    }

    int optional_exponent()
    {
        skip_space();
        if (peek() != '^') {
            return 1;
        }
        ++pos_;
        skip_space();
        const std::size_t start = pos_;
        const Integer v = integer(true);
        if (!v.fits_sint_p() || v > 100000 || v < -100000) {
            fail_at("exponent out of range", start);
        }
        return static_cast<int>(v.get_si());
    }

    Rational rational()
    {
        skip_space();
        const Integer num = integer(true);
        skip_space();
        if (peek() != '/') {
            return Rational(num);
        }
        ++pos_;
        skip_space();
        const std::size_t den_pos = pos_;
        const Integer den = integer(false);
        if (den == 0) {
            fail_at("zero denominator", den_pos);
        }
        return Rational(num, den);
    }

    Integer integer(bool allow_sign)
    {
        const std::size_t start = pos_;
        std::string digits;
        if (allow_sign && (peek() == '-' || peek() == '+')) {
            if (peek() == '-') {
                digits.push_back('-');
            }
            ++pos_;
        }
        const std::size_t first_digit = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            digits.push_back(text_[pos_++]);
        }
        if (pos_ == first_digit) {
            fail_at("expected integer", start);
        }
        return Integer(digits, 10);
    }

    bool consume(std::string_view token)
    {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string &what) const { throw ParseError(what, pos_); }
    [[noreturn]] static void fail_at(const std::string &what, std::size_t at) { throw ParseError(what, at); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

PLExpr parse_pl(std::string_view text)
{
    return Parser(text).expression();
}

std::string format_pl(const PLExpr &e)
{
    if (e.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[key, a] : e.terms()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << a.str();
        if (key.pow1mx == 1) {
            os << "*(1-x)";
        } else if (key.pow1mx != 0) {
            os << "*(1-x)^" << key.pow1mx;
        }
        if (key.powlog == 1) {
            os << "*L";
        } else if (key.powlog != 0) {
            os << "*L^" << key.powlog;
        }
    }
    return os.str();
}

nlohmann::json to_json(const PLExpr &e)
{
    auto out = nlohmann::json::array();
    for (const auto &[key, a] : e.terms()) {
        out.push_back({{"num", a.numerator().get_str()},
                       {"den", a.denominator().get_str()},
                       {"b", key.pow1mx},
                       {"c", key.powlog}});
    }
    return out;
}

PLExpr pl_from_json(const nlohmann::json &j)
{
    if (!j.is_array()) {
        throw std::invalid_argument("expression JSON must be an array");
    }
    PLExpr out;
    for (const auto &t : j) {
        if (!t.is_object() || !t.contains("num") || !t.contains("den") || !t.contains("b") ||
            !t.contains("c") || !t["num"].is_string() || !t["den"].is_string() ||
            !t["b"].is_number_integer() || !t["c"].is_number_integer()) {
            throw std::invalid_argument("malformed expression term: " + t.dump());
        }
        const Rational a = Rational::parse(t["num"].get<std::string>() + "/" + t["den"].get<std::string>());
        const int c = t["c"].get<int>();
        if (c < 0) {
            throw std::invalid_argument("negative log power in term: " + t.dump());
        }
        out.add_term(a, t["b"].get<int>(), c);
    }
    return out;
}

} // namespace bstlevels
