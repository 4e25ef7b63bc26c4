#include <bstlevels/level_gf.hpp>
#include <bstlevels/series.hpp>

#include <string>

namespace bstlevels
{

namespace
{

void require_level(int k)
{
    if (k < 1) {
        throw std::invalid_argument("level k must be at least 1, got " + std::to_string(k));
    }
}

void structure_check(bool ok, int k, const std::string &what)
{
    if (!ok) {
        throw StructureError("level " + std::to_string(k) + ": " + what);
    }
}

} // namespace

void check_a_shape(const PLExpr &A)
{
    if (!A.empty() && A.min_pow1mx() < -2) {
        throw StructureError("A has a power of (1-x) below -2");
    }
    for (const auto &[key, c] : A.terms()) {
        if (key.pow1mx < 0 && key.powlog != 0) {
            throw StructureError("A has a logarithm multiplying a negative power of (1-x)");
        }
    }
    if (A.coeff(-2, 0).is_zero()) {
        throw StructureError("A has no (1-x)^-2 term");
    }
}

const GFBundle &LevelGF::bundle(int k)
{
    require_level(k);
    std::lock_guard lock(mutex_);
    while (bundles_.size() < static_cast<std::size_t>(k)) {
        extend();
    }
    return bundles_[static_cast<std::size_t>(k - 1)];
}

void LevelGF::extend()
{
    const int k = static_cast<int>(bundles_.size()) + 1;
    GFBundle b;
    b.k = k;
    if (k == 1) {
        b.B = PLExpr::x();
        b.Bprime = PLExpr::constant(1);
    } else {
        // B_k' = 2 B_{k-1} (1/(1-x) - B_1 - ... - B_{k-2}) - B_{k-1}^2
        //      = B_{k-1} (2/(1-x) - 2 (B_1 + ... + B_{k-2}) - B_{k-1})
        PLExpr lower;
        for (int j = 1; j <= k - 2; ++j) {
            lower += bundles_[static_cast<std::size_t>(j - 1)].B;
        }
        const PLExpr &prev = bundles_[static_cast<std::size_t>(k - 2)].B;
        const PLExpr factor = PLExpr::term(2, -1, 0) - lower * Rational(2) - prev;
        b.Bprime = prev * factor;
        b.B = integrate(b.Bprime);
    }
    structure_check(b.B.in_pl(), k, "B has a negative power of (1-x)");
    structure_check(value_at_zero(b.B).is_zero(), k, "B(0) != 0");

    // A_k = (1-x)^-2 * int_0^x B_k'(t) (1-t)^2 dt
    b.A = shift_pow1mx(integrate(shift_pow1mx(b.Bprime, 2)), -2);
    structure_check(value_at_zero(b.A).is_zero(), k, "A(0) != 0");
    structure_check(expand(b.A, 0).coeff(0).is_zero(), k, "A has a nonzero constant coefficient");
    check_a_shape(b.A);

    b.c = b.A.coeff(-2, 0);
    structure_check(b.c.sign() > 0 && b.c <= Rational(1), k, "c outside (0, 1]");
    if (k > 1) {
        structure_check(b.c <= bundles_.back().c, k, "c increased from the previous level");
    }
    bundles_.push_back(std::move(b));
}

LevelGF &default_level_gf()
{
    static LevelGF cache;
    return cache;
}

PLExpr compute_B(int k)
{
    return default_level_gf().bundle(k).B;
}

PLExpr compute_Bprime(int k)
{
    return default_level_gf().bundle(k).Bprime;
}

PLExpr compute_A(int k)
{
    return default_level_gf().bundle(k).A;
}

Rational extract_ck(int k)
{
    return default_level_gf().bundle(k).c;
}

Rational expected_level_count(int k, int n)
{
    if (n < 0) {
        throw std::invalid_argument("n must be non-negative");
    }
    const auto order = static_cast<std::size_t>(n);
    return expand(default_level_gf().bundle(k).A, order).coeff(order);
}

namespace
{

/// Antiderivative with zero constant term; order rises by one.
Series integrate_series(const Series &s)
{
    Series out(s.order() + 1);
    for (std::size_t i = 0; i <= s.order(); ++i) {
        out[i + 1] = s[i] / Rational(static_cast<long>(i + 1));
    }
    return out;
}

} // namespace

LevelSeries level_series(int k_max, std::size_t order)
{
    require_level(k_max);
    LevelSeries out;
    const Series geometric = one_minus_x_series(-1, order);
    Series lower(order);
    for (int k = 1; k <= k_max; ++k) {
        Series b_prime(order);
        if (k == 1) {
            b_prime[0] = 1;
        } else {
            const Series &prev = out.B.back();
            if (k > 2) {
                lower = lower + out.B[static_cast<std::size_t>(k - 3)];
            }
            Series factor(order);
            for (std::size_t i = 0; i <= order; ++i) {
                factor[i] = Rational(2) * (geometric[i] - lower[i]) - prev[i];
            }
            b_prime = prev * factor;
        }
        out.B.push_back(integrate_series(b_prime).truncated(order));

        // A' = 2 A / (1-x) + B'  =>  (n+1) a_{n+1} = 2 (a_0 + ... + a_n) + b'_n, a_0 = 0
        Series a(order);
        Rational prefix;
        for (std::size_t n = 0; n < order; ++n) {
            prefix += a[n];
            a[n + 1] = (Rational(2) * prefix + b_prime[n]) / Rational(static_cast<long>(n + 1));
        }
        out.A.push_back(std::move(a));
    }
    return out;
}

Rational qk(int k)
{
    require_level(k);
    // Q_{j+1} = Q_j^2 / (2^(j+1) - 1)
    Rational q(1);
    for (int j = 1; j < k; ++j) {
        Integer denom;
        mpz_ui_pow_ui(denom.get_mpz_t(), 2, static_cast<unsigned long>(j + 1));
        denom -= 1;
        q = q * q / Rational(denom);
    }
    return q;
}

Rational pk(int k)
{
    require_level(k);
    // P_k = Q_k * 2 / ((2^k + 1) 2^k)
    Integer pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(k));
    return qk(k) * Rational(Integer(2), Integer((pow2 + 1) * pow2));
}

Rational gamma_k(int k)
{
    return pk(k) / Rational(2);
}

long gamma_threshold(int k)
{
    require_level(k);
    if (k > 60) {
        throw std::invalid_argument("level too large for the gamma threshold");
    }
    return 1L << (k + 1);
}

} // namespace bstlevels
