#include "sphlap/high_precision.hpp"

#include <algorithm>
#include <stdexcept>

#include "sphlap/error.hpp"
#include "sphlap/exact_arith.hpp"

namespace sphlap {

namespace {

long checked_precision(long bits)
{
    if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) {
        throw DomainError("precision out of range: " + std::to_string(bits) + " bits");
    }
    return bits;
}

// Places a digit string d1 d2 ... dn with value 0.d1d2...dn * 10^exp into
// positional or scientific notation.
std::string format_decimal(const std::string& digits, long exp, bool negative)
{
    std::string out = negative ? "-" : "";
    const long n = static_cast<long>(digits.size());
    if (exp > 0 && exp <= 21) {
        if (exp >= n) {
            out += digits + std::string(static_cast<std::size_t>(exp - n), '0') + ".0";
        } else {
            out += digits.substr(0, static_cast<std::size_t>(exp)) + "." +
                   digits.substr(static_cast<std::size_t>(exp));
        }
    } else if (exp <= 0 && exp > -5) {
        out += "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
    } else {
        out += digits.substr(0, 1);
        if (n > 1) {
            out += "." + digits.substr(1);
        }
        out += "e" + std::to_string(exp - 1);
    }
    return out;
}

} // namespace

HighPrecisionReal::HighPrecisionReal(long precision_bits)
{
    mpfr_init2(value_, checked_precision(precision_bits));
    mpfr_set_zero(value_, 1);
}

HighPrecisionReal::HighPrecisionReal(double value, long precision_bits)
    : HighPrecisionReal(precision_bits)
{
    mpfr_set_d(value_, value, MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(const Rational& value, long precision_bits)
    : HighPrecisionReal(precision_bits)
{
    mpfr_set_q(value_, value.mpq().get_mpq_t(), MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(const HighPrecisionReal& other)
{
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(HighPrecisionReal&& other) noexcept
{
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

HighPrecisionReal& HighPrecisionReal::operator=(const HighPrecisionReal& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

HighPrecisionReal& HighPrecisionReal::operator=(HighPrecisionReal&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

HighPrecisionReal::~HighPrecisionReal() { mpfr_clear(value_); }

HighPrecisionReal HighPrecisionReal::rounded_to(long precision_bits) const
{
    HighPrecisionReal out(precision_bits);
    mpfr_set(out.value_, value_, MPFR_RNDN);
    return out;
}

HighPrecisionReal HighPrecisionReal::pi(long precision_bits)
{
    HighPrecisionReal out(precision_bits);
    mpfr_const_pi(out.value_, MPFR_RNDN);
    return out;
}

#define SPHLAP_BINARY_OP(op, fn)                                                   \
    HighPrecisionReal operator op(const HighPrecisionReal& a, const HighPrecisionReal& b) \
    {                                                                              \
        HighPrecisionReal out(std::max(a.precision_bits(), b.precision_bits()));   \
        fn(out.value_, a.value_, b.value_, MPFR_RNDN);                             \
        return out;                                                                \
    }

SPHLAP_BINARY_OP(+, mpfr_add)
SPHLAP_BINARY_OP(-, mpfr_sub)
SPHLAP_BINARY_OP(*, mpfr_mul)
SPHLAP_BINARY_OP(/, mpfr_div)

#undef SPHLAP_BINARY_OP

HighPrecisionReal HighPrecisionReal::operator-() const
{
    HighPrecisionReal out(precision_bits());
    mpfr_neg(out.value_, value_, MPFR_RNDN);
    return out;
}

#define SPHLAP_UNARY_FN(name, fn)                                \
    HighPrecisionReal name(const HighPrecisionReal& x)           \
    {                                                            \
        HighPrecisionReal out(x.precision_bits());               \
        fn(out.value_, x.value_, MPFR_RNDN);                     \
        return out;                                              \
    }

SPHLAP_UNARY_FN(atan, mpfr_atan)
SPHLAP_UNARY_FN(sin, mpfr_sin)
SPHLAP_UNARY_FN(cos, mpfr_cos)
SPHLAP_UNARY_FN(abs, mpfr_abs)

#undef SPHLAP_UNARY_FN

HighPrecisionReal pow(const HighPrecisionReal& x, long n)
{
    HighPrecisionReal out(x.precision_bits());
    mpfr_pow_si(out.value_, x.value_, n, MPFR_RNDN);
    return out;
}

bool operator<(const HighPrecisionReal& a, const HighPrecisionReal& b)
{
    return mpfr_less_p(a.value_, b.value_) != 0;
}

std::string HighPrecisionReal::to_string() const
{
    if (mpfr_nan_p(value_)) {
        return "nan";
    }
    if (mpfr_inf_p(value_)) {
        return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    }
    if (mpfr_zero_p(value_)) {
        return mpfr_signbit(value_) ? "-0.0" : "0.0";
    }
    const std::size_t max_digits = mpfr_get_str_ndigits(10, mpfr_get_prec(value_));
    HighPrecisionReal back(precision_bits());
    for (std::size_t n = 1; n <= max_digits; ++n) {
        mpfr_exp_t exp = 0;
        char* raw = mpfr_get_str(nullptr, &exp, 10, n, value_, MPFR_RNDN);
        std::string digits(raw);
        mpfr_free_str(raw);
        const bool negative = !digits.empty() && digits[0] == '-';
        if (negative) {
            digits.erase(0, 1);
        }
        const std::string text = format_decimal(digits, exp, negative);
        mpfr_set_str(back.value_, text.c_str(), 10, MPFR_RNDN);
        if (mpfr_equal_p(back.value_, value_) || n == max_digits) {
            // Strip trailing zeros produced by mpfr_get_str padding.
            while (digits.size() > 1 && digits.back() == '0') {
                digits.pop_back();
            }
            return format_decimal(digits, exp, negative);
        }
    }
    return {};
}

HighPrecisionReal HighPrecisionReal::parse(const std::string& text, long precision_bits)
{
    HighPrecisionReal out(precision_bits);
    if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw DomainError("not a decimal number: '" + text + "'");
    }
    return out;
}

} // namespace sphlap
