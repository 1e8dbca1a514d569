#include <doctest.h>

#include <cmath>

#include "sphlap/coefficients.hpp"
#include "sphlap/error.hpp"
#include "sphlap/high_precision.hpp"
#include "sphlap/oracles.hpp"

using namespace sphlap;

namespace {

std::vector<Rational> row(std::initializer_list<Rational> r) { return r; }

// n-th derivative of sin(t)/t by the Leibniz rule on sin(t) * t^-1:
//   sum_i C(n,i) sin^(n-i)(t) (-1)^i i! t^-(i+1).
HighPrecisionReal j0_derivative(long n, double t_value, long bits)
{
    const HighPrecisionReal t(t_value, bits);
    const HighPrecisionReal s = sin(t);
    const HighPrecisionReal c = cos(t);
    HighPrecisionReal sum(bits);
    BigInt binom = 1;
    BigInt fact = 1;
    for (long i = 0; i <= n; ++i) {
        if (i > 0) {
            binom = binom * (n - i + 1) / i;
            fact *= i;
        }
        // d^m sin = sin, cos, -sin, -cos for m mod 4 = 0..3.
        const long m = (n - i) % 4;
        const HighPrecisionReal trig = m == 0 ? s : m == 1 ? c : m == 2 ? -s : -c;
        const BigInt magnitude = binom * fact;
        const Rational weight(i % 2 == 0 ? magnitude : BigInt(-magnitude));
        sum = sum + HighPrecisionReal(weight, bits) * trig / pow(t, i + 1);
    }
    return sum;
}

} // namespace

TEST_CASE("rows of the derivative expansion, orders 1 to 4")
{
    const CoeffTable t = build_coeff_table(4);
    CHECK(t.l_max() == 4);
    CHECK(t.row(0) == row({Rational(1)}));
    CHECK(t.row(1) == row({Rational(-1)}));
    CHECK(t.row(2) == row({Rational(3, 2), Rational(1, 2)}));
    CHECK(t.row(3) == row({Rational(-5, 2), Rational(-3, 2)}));
    CHECK(t.row(4) == row({Rational(35, 8), Rational(15, 4), Rational(3, 8)}));
    CHECK(build_coeff_table(1).row(1) == row({Rational(-1)}));
    CHECK(build_coeff_table(2).row(2) == row({Rational(3, 2), Rational(1, 2)}));
}

TEST_CASE("table bounds")
{
    const CoeffTable t = build_coeff_table(3);
    CHECK_THROWS_AS(t.row(4), RangeError);
    CHECK_THROWS_AS(t.row(-1), RangeError);
    CHECK(t.at(3, 5).is_zero());
    CHECK(t.at(2, -1).is_zero());
    CHECK_THROWS_AS(build_coeff_table(-1), DomainError);
    CHECK(build_coeff_table(0).row(0) == row({Rational(1)}));
}

TEST_CASE("c0 closed form")
{
    CHECK(c0_closed_form(1) == Rational(-1));
    CHECK(c0_closed_form(3) == Rational(-5, 2));
    CHECK(c0_closed_form(4) == Rational(35, 8));
    CHECK_THROWS_AS(c0_closed_form(0), DomainError);
}

TEST_CASE("column 0 matches the closed form up to l = 60")
{
    const CoeffTable t = build_coeff_table(60);
    for (long l = 1; l <= 60; ++l) {
        CAPTURE(l);
        CHECK(t.at(l, 0) == c0_closed_form(l));
    }
}

TEST_CASE("three-term recursion holds when re-checked from the top down")
{
    const CoeffTable t = build_coeff_table(60);
    for (long l = 59; l >= 1; --l) {
        const Rational down(-(2 * l + 1), l + 1);
        const Rational back(l, l + 1);
        for (long k = 0; 2 * k <= l + 1; ++k) {
            CAPTURE(l);
            CAPTURE(k);
            CHECK(t.at(l + 1, k) == down * t.at(l, k) + back * t.at(l - 1, k - 1));
        }
    }
}

TEST_CASE("sign pattern: every entry of row l has sign (-1)^l")
{
    const CoeffTable t = build_coeff_table(12);
    for (long l = 0; l <= 12; ++l) {
        for (const auto& c : t.row(l)) {
            CHECK(c.sign() == (l % 2 == 0 ? 1 : -1));
        }
    }
}

TEST_CASE("rows reproduce j_l(0) = 0 for even l >= 2")
{
    const CoeffTable t = build_coeff_table(60);
    for (long l = 2; l <= 60; l += 2) {
        Rational sum;
        const auto& r = t.row(l);
        for (long k = 0; k < static_cast<long>(r.size()); ++k) {
            const long n = l - 2 * k;
            sum += r[static_cast<std::size_t>(k)] * Rational((n / 2) % 2 == 0 ? 1 : -1, n + 1);
        }
        CAPTURE(l);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("derivative expansion")
{
    const CoeffTable t = build_coeff_table(4);
    const auto e3 = derivative_expansion(3, t);
    CHECK(e3.terms == std::vector<ExpansionTerm>{{3, Rational(-5, 2)}, {1, Rational(-3, 2)}});
    CHECK(derivative_expansion(0, t).terms == std::vector<ExpansionTerm>{{0, Rational(1)}});
    CHECK(derivative_expansion(2, t).terms == std::vector<ExpansionTerm>{{2, Rational(3, 2)}, {0, Rational(1, 2)}});
    CHECK_THROWS_AS(derivative_expansion(5, t), RangeError);
}

TEST_CASE("expansion reconstructs j_l from derivatives of sin(t)/t")
{
    constexpr long bits = 256;
    const CoeffTable t = build_coeff_table(6);
    for (long l = 1; l <= 6; ++l) {
        for (double x : {0.7, 1.3, 2.9}) {
            HighPrecisionReal sum(bits);
            for (const auto& term : derivative_expansion(l, t).terms) {
                sum = sum + HighPrecisionReal(term.coefficient, bits) * j0_derivative(term.derivative_order, x, bits);
            }
            const double direct = sph_bessel_j(l, x);
            CAPTURE(l);
            CAPTURE(x);
            CHECK(std::abs(sum.to_double() - direct) <= 1e-12 * std::abs(direct));
        }
    }
}

TEST_CASE("with_entry leaves the original untouched")
{
    const CoeffTable t = build_coeff_table(4);
    const CoeffTable mutated = t.with_entry(2, 1, Rational(1, 3));
    CHECK(mutated.at(2, 1) == Rational(1, 3));
    CHECK(t.at(2, 1) == Rational(1, 2));
    CHECK_THROWS_AS(t.with_entry(2, 2, Rational(1)), RangeError);
}
