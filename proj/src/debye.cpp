#include "sphlap/debye.hpp"

#include <cmath>
#include <numbers>

#include "sphlap/error.hpp"
#include "sphlap/oracles.hpp"

namespace sphlap {

double DebyeParams::prefactor() const
{
    return m * length / (std::numbers::pi * v);
}

void DebyeParams::validate() const
{
    if (!(m > 0.0 && length > 0.0 && v > 0.0 && omega_l > 0.0)) {
        throw DomainError("Debye parameters must all be strictly positive");
    }
}

double memory_function(double t, const DebyeParams& params, const std::function<double(double)>& j2)
{
    params.validate();
    if (t < 0.0) {
        throw DomainError("memory function needs t >= 0");
    }
    const double w = params.omega_l;
    const double x = w * t;
    const double j2_value = x == 0.0 ? 0.0 : j2(x);
    return params.prefactor() / 3.0 * w * w * w * (sph_bessel_j(0, x) - 2.0 * j2_value);
}

double memory_function(double t, const DebyeParams& params)
{
    return memory_function(t, params, [](double x) { return sph_bessel_j(2, x); });
}

double memory_transform(double p, const DebyeParams& params)
{
    params.validate();
    if (!(p > 0.0)) {
        throw DomainError("memory transform needs p > 0");
    }
    const double w = params.omega_l;
    return params.prefactor() * (w * p - p * p * std::atan(w / p));
}

double memory_transform_via_closed_form(double p, const DebyeParams& params, const ClosedFormTransform& cf0,
                                        const ClosedFormTransform& cf2)
{
    params.validate();
    if (cf0.l != 0 || cf2.l != 2) {
        throw DomainError("memory_transform_via_closed_form needs the order-0 and order-2 transforms");
    }
    const double w = params.omega_l;
    const double q = p / w;
    constexpr long bits = 64;
    const HighPrecisionReal j0 = evaluate(cf0, q, bits).value;
    const HighPrecisionReal j2 = evaluate(cf2, q, bits).value;
    const double bracket = (j0 - HighPrecisionReal(2.0, bits) * j2).to_double();
    return params.prefactor() / 3.0 * w * w * bracket;
}

} // namespace sphlap
