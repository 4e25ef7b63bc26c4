#include <bstlevels/series.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace bstlevels
{

Series::Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) {
        throw std::invalid_argument("series needs at least one coefficient");
    }
}

const Rational &Series::coeff(std::size_t n) const
{
    if (n > order()) {
        throw std::out_of_range("coefficient x^" + std::to_string(n) + " beyond series order " +
                                std::to_string(order()));
    }
    return coeffs_[n];
}

Series Series::truncated(std::size_t order) const
{
    const std::size_t keep = std::min(order, this->order()) + 1;
    return Series(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(keep)));
}

Series operator+(const Series &a, const Series &b)
{
    Series out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= out.order(); ++i) {
        out[i] = a[i] + b[i];
    }
    return out;
}

Series operator*(const Series &a, const Series &b)
{
    Series out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= out.order(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j <= out.order(); ++j) {
            out[i + j].add_product(a[i], b[j]);
        }
    }
    return out;
}

Series differentiate(const Series &s)
{
    if (s.order() == 0) {
        return Series(0);
    }
    Series out(s.order() - 1);
    for (std::size_t i = 0; i <= out.order(); ++i) {
        out[i] = s[i + 1] * Rational(static_cast<long>(i + 1));
    }
    return out;
}

Series one_minus_x_series(int b, std::size_t order)
{
    Series out(order);
    if (b >= 0) {
        const auto ub = static_cast<std::size_t>(b);
        for (std::size_t n = 0; n <= std::min(order, ub); ++n) {
            Rational c(binomial(ub, n));
            out[n] = n % 2 == 0 ? c : -c;
        }
    } else {
        // [x^n] (1-x)^(-m) = C(n+m-1, m-1)
        const auto m = static_cast<unsigned long>(-b);
        for (std::size_t n = 0; n <= order; ++n) {
            out[n] = Rational(binomial(n + m - 1, m - 1));
        }
    }
    return out;
}

Series log_series(std::size_t order)
{
    Series out(order);
    for (std::size_t m = 1; m <= order; ++m) {
        out[m] = Rational(1, static_cast<long>(m));
    }
    return out;
}

Series expand(const PLExpr &e, std::size_t order)
{
    // Group by log power: sum_c P_c(x) * L^c with P_c a combination of (1-x)^b.
    std::map<int, Series> by_log;
    for (const auto &[key, a] : e.terms()) {
        auto it = by_log.try_emplace(key.powlog, order).first;
        const Series base = one_minus_x_series(key.pow1mx, order);
        for (std::size_t n = 0; n <= order; ++n) {
            it->second[n].add_product(a, base[n]);
        }
    }

    Series out(order);
    const Series log1 = log_series(order);
    Series log_power = one_minus_x_series(0, order);
    int current = 0;
    for (const auto &[c, poly] : by_log) {
        while (current < c) {
            log_power = log_power * log1;
            ++current;
        }
        out = out + poly * log_power;
    }
    return out;
}

} // namespace bstlevels
