#pragma once

#include <functional>

#include "sphlap/closed_form.hpp"

namespace sphlap {

/// One-dimensional Debye heat bath: oscillator mass, line length, sound
/// speed and cutoff frequency. All strictly positive.
struct DebyeParams {
    double m = 1.0;
    double length = 1.0;
    double v = 1.0;
    double omega_l = 1.0;

    /// m L / (pi v), the density of states times the oscillator mass.
    double prefactor() const;
    void validate() const; // throws DomainError
};

/// Memory kernel mu(t) = (m L / 3 pi v) omega_L^3 [j_0(omega_L t) - 2 j_2(omega_L t)].
double memory_function(double t, const DebyeParams& params);

/// Same kernel with a caller-supplied j_2; lets tests substitute the misprinted form.
double memory_function(double t, const DebyeParams& params, const std::function<double(double)>& j2);

/// (m L / pi v) [omega_L p - p^2 atan(omega_L / p)].
double memory_transform(double p, const DebyeParams& params);

/// (m L / 3 pi v) omega_L^2 [L[j_0](q) - 2 L[j_2](q)] with q = p / omega_L,
/// using closed forms of order 0 and 2.
double memory_transform_via_closed_form(double p, const DebyeParams& params, const ClosedFormTransform& cf0,
                                        const ClosedFormTransform& cf2);

} // namespace sphlap
