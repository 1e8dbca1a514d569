#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace sphlap {

class Rational;

/// Binary floating-point number with an explicit significand width, backed
/// by MPFR with round-to-nearest. Binary operations produce a result at the
/// larger of the two operand precisions.
class HighPrecisionReal {
public:
    explicit HighPrecisionReal(long precision_bits);
    HighPrecisionReal(double value, long precision_bits);
    HighPrecisionReal(const Rational& value, long precision_bits);
    HighPrecisionReal(const HighPrecisionReal& other);
    HighPrecisionReal(HighPrecisionReal&& other) noexcept;
    HighPrecisionReal& operator=(const HighPrecisionReal& other);
    HighPrecisionReal& operator=(HighPrecisionReal&& other) noexcept;
    ~HighPrecisionReal();

    long precision_bits() const { return static_cast<long>(mpfr_get_prec(value_)); }
    /// Copy rounded to a different precision.
    HighPrecisionReal rounded_to(long precision_bits) const;

    static HighPrecisionReal pi(long precision_bits);

    friend HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b);
    friend HighPrecisionReal operator-(const HighPrecisionReal& a, const HighPrecisionReal& b);
    friend HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b);
    friend HighPrecisionReal operator/(const HighPrecisionReal& a, const HighPrecisionReal& b);
    HighPrecisionReal operator-() const;

    friend HighPrecisionReal atan(const HighPrecisionReal& x);
    friend HighPrecisionReal sin(const HighPrecisionReal& x);
    friend HighPrecisionReal cos(const HighPrecisionReal& x);
    friend HighPrecisionReal abs(const HighPrecisionReal& x);
    friend HighPrecisionReal pow(const HighPrecisionReal& x, long n);

    friend bool operator<(const HighPrecisionReal& a, const HighPrecisionReal& b);

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    /// Binary exponent e with 0.5 <= |x|/2^e < 1; meaningless for zero.
    long exponent() const { return static_cast<long>(mpfr_get_exp(value_)); }

    /// Shortest decimal string (scientific notation when needed) that reads
    /// back to exactly this value at this precision.
    std::string to_string() const;
    /// Parses a decimal string at the given precision; round-to-nearest.
    static HighPrecisionReal parse(const std::string& text, long precision_bits);

    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

private:
    mpfr_t value_;
};

} // namespace sphlap
