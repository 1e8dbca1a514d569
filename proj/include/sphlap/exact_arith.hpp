#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace sphlap {

using BigInt = mpz_class;

/// Arbitrary-precision rational kept in canonical form: reduced, positive
/// denominator, zero stored as 0/1. Equality is therefore structural.
class Rational {
public:
    Rational() = default;
    Rational(long num) : value_(num) {}
    Rational(const BigInt& num) : value_(num) {}
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    static Rational from_mpq(const mpq_class& q);

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }
    const mpq_class& mpq() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }

    Rational operator-() const { return from_mpq(-value_); }
    Rational abs() const { return from_mpq(::abs(value_)); }

    friend Rational operator+(const Rational& a, const Rational& b) { return from_mpq(a.value_ + b.value_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return from_mpq(a.value_ - b.value_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return from_mpq(a.value_ * b.value_); }
    // Throws DomainError when b is zero.
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }

    /// "NUM/DEN" in base 10, e.g. "-5/2", "3/1", "0/1".
    std::string to_string() const;
    /// Inverse of to_string. Accepts only `-?[0-9]+/[0-9]+` with a nonzero
    /// denominator; the result is canonicalized.
    static Rational parse(std::string_view text);

    double to_double() const { return value_.get_d(); }

private:
    explicit Rational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }
    mpq_class value_{0};
};

enum class ArithOp { add, sub, mul, div };

Rational rational_arith(const Rational& a, const Rational& b, ArithOp op);

/// n!! = n(n-2)(n-4)...; 1 for n in {-1, 0}. Throws DomainError for n < -1.
BigInt double_factorial(long n);
BigInt factorial(long n);

class HighPrecisionReal;

/// Dense polynomial in one variable p with rational coefficients, stored by
/// ascending power. Trailing zeros are always trimmed, so the zero polynomial
/// has no coefficients and degree -1.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs);

    /// c * p^power
    static RationalPolynomial monomial(const Rational& c, std::size_t power);

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient of p^power, zero beyond the degree.
    Rational coeff(std::size_t power) const;

    RationalPolynomial scaled(const Rational& factor) const;
    RationalPolynomial shifted(std::size_t power) const; // times p^power

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
    friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

    /// Coefficient-wise absolute value; used for rounding-error bounds.
    RationalPolynomial abs_coeffs() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Horner evaluation at the precision carried by `p`.
HighPrecisionReal poly_eval(const RationalPolynomial& poly, const HighPrecisionReal& p);

} // namespace sphlap
