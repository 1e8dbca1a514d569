#include "sphlap/closed_form.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphlap/error.hpp"

namespace sphlap {

Rational j0_derivative_at_zero(long n)
{
    if (n < 0) {
        throw DomainError("negative derivative order");
    }
    if (n % 2 != 0) {
        return {};
    }
    const long half = n / 2;
    return Rational(half % 2 == 0 ? 1 : -1, n + 1);
}

TransformParts laplace_j0_derivative(long n)
{
    if (n < 0) {
        throw DomainError("negative derivative order");
    }
    TransformParts out;
    out.arctan_poly = RationalPolynomial::monomial(Rational(1), static_cast<std::size_t>(n));
    std::vector<Rational> constant(static_cast<std::size_t>(std::max(n, 0L)));
    for (long m = 0; m < n; ++m) {
        constant[static_cast<std::size_t>(n - m - 1)] = -j0_derivative_at_zero(m);
    }
    out.const_poly = RationalPolynomial(std::move(constant));
    return out;
}

ClosedFormTransform build_closed_form(long l, const CoeffTable& table)
{
    const auto& row = table.row(l);
    ClosedFormTransform cf;
    cf.l = l;
    if (l == 0) {
        cf.arctan_poly = RationalPolynomial({Rational(1)});
        cf.integer_form = scaled_integer_form(cf);
        return cf;
    }
    std::vector<Rational> arctan(static_cast<std::size_t>(l) + 1);
    std::vector<Rational> constant(static_cast<std::size_t>(l));
    const long inner_max = (l - 1) / 2;
    for (long k = 0; k < static_cast<long>(row.size()); ++k) {
        const Rational& c = row[static_cast<std::size_t>(k)];
        arctan[static_cast<std::size_t>(l - 2 * k)] += c;
        // Empty when inner_max - k < 0.
        for (long m = 0; m <= inner_max - k; ++m) {
            const Rational boundary(m % 2 == 0 ? 1 : -1, 2 * m + 1);
            constant[static_cast<std::size_t>(l - 2 * k - 2 * m - 1)] -= c * boundary;
        }
    }
    cf.arctan_poly = RationalPolynomial(std::move(arctan));
    cf.const_poly = RationalPolynomial(std::move(constant));
    cf.integer_form = scaled_integer_form(cf);
    return cf;
}

ScaledIntegerForm scaled_integer_form(const ClosedFormTransform& cf)
{
    ScaledIntegerForm form;
    form.denominator = 1;
    for (const auto* poly : {&cf.arctan_poly, &cf.const_poly}) {
        for (const auto& c : poly->coeffs()) {
            mpz_lcm(form.denominator.get_mpz_t(), form.denominator.get_mpz_t(), c.mpq().get_den_mpz_t());
        }
    }
    const auto numerators = [&](const RationalPolynomial& poly) {
        std::vector<BigInt> out;
        out.reserve(poly.coeffs().size());
        for (const auto& c : poly.coeffs()) {
            out.push_back(c.numerator() * (form.denominator / c.denominator()));
        }
        return out;
    };
    form.arctan_num = numerators(cf.arctan_poly);
    form.const_num = numerators(cf.const_poly);
    return form;
}

long cancellation_reserve_bits(long l, double p)
{
    return static_cast<long>(std::ceil(2.0 * static_cast<double>(l) * std::log2(std::max(p, 2.0))));
}

namespace {

constexpr long guard_bits = 32;
constexpr long bound_bits = 32;
constexpr long max_working_bits = 1L << 22;

void check_point(double p)
{
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw DomainError("transform is defined for finite p > 0, got p=" + std::to_string(p));
    }
}

// Scratch registers for one evaluation. Kept per thread and re-sized with
// set_prec, which does not reallocate when shrinking, so repeated
// evaluations avoid allocator traffic.
struct Registers {
    Registers()
        : p(working_min), p2(working_min), acc(working_min), arctan(working_min), value(working_min),
          even(working_min), bound_p2(bound_bits), bound(bound_bits), bound_total(bound_bits), bound_even(bound_bits)
    {
    }
    void set_working(long bits)
    {
        for (HighPrecisionReal* r : {&p, &p2, &acc, &arctan, &value, &even}) {
            mpfr_set_prec(r->get(), bits);
        }
    }
    static constexpr long working_min = 64;
    HighPrecisionReal p, p2, acc, arctan, value, even;
    HighPrecisionReal bound_p2, bound, bound_total, bound_even;
};

Registers& scratch()
{
    thread_local Registers registers;
    return registers;
}

// Horner in p^2 over one parity class of integer coefficients, starting at
// `first`. With single-signed coefficients and p > 0 the magnitude bound
// equals |value| and is not accumulated separately.
void horner_p2(const std::vector<BigInt>& c, std::size_t first, Registers& r)
{
    mpfr_set_zero(r.acc.get(), 1);
    mpfr_set_zero(r.bound.get(), 1);
    if (c.size() <= first) {
        return;
    }
    int signs = 0; // bit 0: positive seen, bit 1: negative seen
    for (std::size_t i = first; i < c.size(); i += 2) {
        const int s = sgn(c[i]);
        signs |= s > 0 ? 1 : s < 0 ? 2 : 0;
    }
    const bool track_bound = signs == 3;
    const std::size_t top = first + 2 * ((c.size() - 1 - first) / 2);
    for (std::size_t i = top + 2; i > first;) {
        i -= 2;
        mpfr_mul(r.acc.get(), r.acc.get(), r.p2.get(), MPFR_RNDN);
        mpfr_add_z(r.acc.get(), r.acc.get(), c[i].get_mpz_t(), MPFR_RNDN);
        if (track_bound) {
            mpfr_mul(r.bound.get(), r.bound.get(), r.bound_p2.get(), MPFR_RNDU);
            if (sgn(c[i]) < 0) {
                mpfr_sub_z(r.bound.get(), r.bound.get(), c[i].get_mpz_t(), MPFR_RNDU);
            } else {
                mpfr_add_z(r.bound.get(), r.bound.get(), c[i].get_mpz_t(), MPFR_RNDU);
            }
        }
    }
    if (!track_bound) {
        mpfr_abs(r.bound.get(), r.acc.get(), MPFR_RNDU);
    }
}

// Value of the polynomial in r.acc and the sum of its term magnitudes in
// r.bound. Closed-form polynomials have a single parity, so normally one of
// the two classes is all zeros and is skipped outright.
void eval_poly(const std::vector<BigInt>& c, Registers& r)
{
    mpfr_set_zero(r.acc.get(), 1);
    mpfr_set_zero(r.bound.get(), 1);
    if (c.empty()) {
        return;
    }
    bool has_even = false;
    bool has_odd = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        (i % 2 == 0 ? has_even : has_odd) |= sgn(c[i]) != 0;
    }
    if (has_even && has_odd) {
        horner_p2(c, 0, r);
        mpfr_set(r.even.get(), r.acc.get(), MPFR_RNDN);
        mpfr_set(r.bound_even.get(), r.bound.get(), MPFR_RNDU);
    }
    if (has_odd) {
        horner_p2(c, 1, r);
        mpfr_mul(r.acc.get(), r.acc.get(), r.p.get(), MPFR_RNDN);
        mpfr_mul(r.bound.get(), r.bound.get(), r.p.get(), MPFR_RNDU);
        if (has_even) {
            mpfr_add(r.acc.get(), r.acc.get(), r.even.get(), MPFR_RNDN);
            mpfr_add(r.bound.get(), r.bound.get(), r.bound_even.get(), MPFR_RNDU);
        }
    } else {
        horner_p2(c, 0, r);
    }
}

} // namespace

HighPrecisionReal evaluate_unguarded(const ClosedFormTransform& cf, double p, long working_bits)
{
    check_point(p);
    const HighPrecisionReal pv(p, working_bits);
    const HighPrecisionReal one(1.0, working_bits);
    return poly_eval(cf.arctan_poly, pv) * atan(one / pv) + poly_eval(cf.const_poly, pv);
}

EvalResult evaluate(const ClosedFormTransform& cf, double p, long out_precision_bits)
{
    check_point(p);
    if (out_precision_bits < 24) {
        throw DomainError("output precision must be at least 24 bits");
    }
    const long reserve = cancellation_reserve_bits(cf.l, p);
    long working = out_precision_bits + reserve + guard_bits;
    ScaledIntegerForm local;
    const ScaledIntegerForm* form = &cf.integer_form;
    if (sgn(form->denominator) == 0) {
        local = scaled_integer_form(cf);
        form = &local;
    }
    for (;;) {
        Registers& r = scratch();
        r.set_working(working);
        mpfr_set_d(r.p.get(), p, MPFR_RNDN);
        mpfr_sqr(r.p2.get(), r.p.get(), MPFR_RNDN);
        mpfr_sqr(r.bound_p2.get(), r.p.get(), MPFR_RNDU);

        HighPrecisionReal& arctan = r.arctan;
        mpfr_ui_div(arctan.get(), 1, r.p.get(), MPFR_RNDN);
        mpfr_atan(arctan.get(), arctan.get(), MPFR_RNDN);

        HighPrecisionReal& value = r.value;
        HighPrecisionReal& bound = r.bound_total;
        // Everything below is scaled by the common denominator until the end.
        eval_poly(form->arctan_num, r);
        mpfr_mul(value.get(), r.acc.get(), arctan.get(), MPFR_RNDN);
        mpfr_mul(bound.get(), r.bound.get(), arctan.get(), MPFR_RNDU);

        eval_poly(form->const_num, r);
        mpfr_add(value.get(), value.get(), r.acc.get(), MPFR_RNDN);
        mpfr_add(bound.get(), bound.get(), r.bound.get(), MPFR_RNDU);

        // Bits lost to cancellation: magnitude of the terms over the sum.
        // Horner rounding is bounded by about (degree + 6) ulps of that
        // magnitude, hence the degree-dependent headroom.
        const long measured = value.is_zero() ? working : std::max(0L, bound.exponent() - value.exponent() + 1);
        const long headroom = 8 + static_cast<long>(std::bit_width(static_cast<unsigned long>(cf.l + 6)));
        if (out_precision_bits + measured + headroom <= working || working >= max_working_bits) {
            mpfr_div_z(value.get(), value.get(), form->denominator.get_mpz_t(), MPFR_RNDN);
            return EvalResult{value.rounded_to(out_precision_bits), working, std::max(reserve, measured)};
        }
        working = std::min(max_working_bits, out_precision_bits + measured + 2 * guard_bits);
    }
}

bool recurrence_identity_check(long l, const CoeffTable& table)
{
    if (l < 1 || l + 1 > table.l_max()) {
        throw RangeError("recurrence check at l=" + std::to_string(l) + " needs 1 <= l < l_max=" +
                         std::to_string(table.l_max()));
    }
    const auto prev = build_closed_form(l - 1, table);
    const auto cur = build_closed_form(l, table);
    const auto next = build_closed_form(l + 1, table);
    const Rational down(-(2 * l + 1), l + 1);
    const Rational back(l, l + 1);
    // L[j_l'] = p L[j_l] - j_l(0); j_l(0) = 0 for l >= 1.
    const RationalPolynomial arctan_rhs = cur.arctan_poly.shifted(1).scaled(down) + prev.arctan_poly.scaled(back);
    const RationalPolynomial const_rhs = cur.const_poly.shifted(1).scaled(down) + prev.const_poly.scaled(back);
    return next.arctan_poly == arctan_rhs && next.const_poly == const_rhs;
}

// --- rendering ---

namespace {

struct Term {
    Rational coeff;
    std::size_t power;
};

std::vector<Term> descending_terms(const RationalPolynomial& poly)
{
    std::vector<Term> out;
    const auto& c = poly.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        if (!c[i].is_zero()) {
            out.push_back({c[i], i});
        }
    }
    return out;
}

std::string plain_term(const Rational& c, std::size_t power)
{
    if (power == 0) {
        return c.to_string();
    }
    std::string out = "(" + c.to_string() + ")p";
    if (power >= 2) {
        out += "^" + std::to_string(power);
    }
    return out;
}

// First term carries its sign inside; later terms are joined with " + " / " - ".
std::string plain_poly(const std::vector<Term>& terms)
{
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (i == 0) {
            out += plain_term(t.coeff, t.power);
        } else {
            out += t.coeff.sign() < 0 ? " - " : " + ";
            out += plain_term(t.coeff.abs(), t.power);
        }
    }
    return out;
}

std::string render_plain(const ClosedFormTransform& cf)
{
    const auto arctan_terms = descending_terms(cf.arctan_poly);
    std::string out;
    if (arctan_terms.size() == 1 && arctan_terms[0].power > 0) {
        out = plain_poly(arctan_terms);
    } else {
        out = "(" + plain_poly(arctan_terms) + ")";
    }
    out += "*atan(1/p)";
    for (const auto& t : descending_terms(cf.const_poly)) {
        out += t.coeff.sign() < 0 ? " - " : " + ";
        out += plain_term(t.coeff.abs(), t.power);
    }
    return out;
}

std::string latex_term(const Rational& magnitude, std::size_t power)
{
    std::string coeff;
    if (magnitude.denominator() == 1) {
        coeff = magnitude.numerator().get_str();
    } else {
        coeff = "\\frac{" + magnitude.numerator().get_str() + "}{" + magnitude.denominator().get_str() + "}";
    }
    if (power == 0) {
        return coeff;
    }
    std::string var = power == 1 ? "p" : "p^{" + std::to_string(power) + "}";
    return magnitude == Rational(1) ? var : coeff + " " + var;
}

std::string latex_poly(const std::vector<Term>& terms, bool leading)
{
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const bool negative = terms[i].coeff.sign() < 0;
        if (i == 0 && leading) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        out += latex_term(terms[i].coeff.abs(), terms[i].power);
    }
    return out;
}

std::string render_latex(const ClosedFormTransform& cf)
{
    const auto arctan_terms = descending_terms(cf.arctan_poly);
    std::string out;
    if (arctan_terms.size() == 1) {
        const auto& t = arctan_terms[0];
        if (t.coeff == Rational(1) && t.power == 0) {
            out = "";
        } else {
            out = latex_poly(arctan_terms, true);
        }
    } else {
        out = "\\left(" + latex_poly(arctan_terms, true) + "\\right)";
    }
    out += "\\arctan\\frac{1}{p}";
    out += latex_poly(descending_terms(cf.const_poly), false);
    return out;
}

nlohmann::ordered_json rational_array(const RationalPolynomial& poly)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : poly.coeffs()) {
        arr.push_back(c.to_string());
    }
    return arr;
}

} // namespace

std::string render(const ClosedFormTransform& cf, RenderFormat format)
{
    switch (format) {
    case RenderFormat::plain:
        return render_plain(cf);
    case RenderFormat::latex:
        return render_latex(cf);
    case RenderFormat::json: {
        nlohmann::ordered_json j;
        j["l"] = cf.l;
        j["P"] = rational_array(cf.arctan_poly);
        j["Q"] = rational_array(cf.const_poly);
        return j.dump();
    }
    }
    return {};
}

} // namespace sphlap
