#include "sphlap/exact_arith.hpp"

#include <algorithm>
#include <cctype>

#include "sphlap/error.hpp"
#include "sphlap/high_precision.hpp"

namespace sphlap {

Rational::Rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::from_mpq(const mpq_class& q)
{
    return Rational(mpq_class(q));
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.is_zero()) {
        throw DomainError("division by zero");
    }
    return Rational::from_mpq(a.value_ / b.value_);
}

std::string Rational::to_string() const
{
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::parse(std::string_view text)
{
    const auto fail = [&] {
        return DomainError("malformed rational '" + std::string(text) + "' (expected NUM/DEN)");
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw fail();
    }
    std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    const auto all_digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    const bool negative = !num.empty() && num.front() == '-';
    if (negative) {
        num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) {
        throw fail();
    }
    BigInt n(std::string(num), 10);
    const BigInt d(std::string(den), 10);
    if (d == 0) {
        throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
    }
    if (negative) {
        n = -n;
    }
    return Rational(n, d);
}

Rational rational_arith(const Rational& a, const Rational& b, ArithOp op)
{
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw DomainError("unknown arithmetic operation");
}

BigInt double_factorial(long n)
{
    if (n < -1) {
        throw DomainError("double factorial of " + std::to_string(n));
    }
    BigInt out = 1;
    for (long k = n; k > 1; k -= 2) {
        out *= k;
    }
    return out;
}

BigInt factorial(long n)
{
    if (n < 0) {
        throw DomainError("factorial of " + std::to_string(n));
    }
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

// --- RationalPolynomial ---

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, std::size_t power)
{
    std::vector<Rational> coeffs(power + 1);
    coeffs[power] = c;
    return RationalPolynomial(std::move(coeffs));
}

Rational RationalPolynomial::coeff(std::size_t power) const
{
    return power < coeffs_.size() ? coeffs_[power] : Rational{};
}

void RationalPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

RationalPolynomial RationalPolynomial::scaled(const Rational& factor) const
{
    std::vector<Rational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c * factor);
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::shifted(std::size_t power) const
{
    if (is_zero()) {
        return {};
    }
    std::vector<Rational> out(power);
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::abs_coeffs() const
{
    std::vector<Rational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c.abs());
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b)
{
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a.coeff(i) + b.coeff(i);
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b)
{
    return a + b.scaled(Rational(-1));
}

HighPrecisionReal poly_eval(const RationalPolynomial& poly, const HighPrecisionReal& p)
{
    const long bits = p.precision_bits();
    HighPrecisionReal acc(bits);
    const auto& c = poly.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * p + HighPrecisionReal(*it, bits);
    }
    return acc;
}

} // namespace sphlap
