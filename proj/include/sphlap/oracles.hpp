#pragma once

#include <functional>
#include <numbers>

#include "sphlap/error.hpp"

namespace sphlap {

/// Spherical Bessel function of the first kind, j_l(t) for t >= 0.
///
/// Leading series for t < 1e-3 (l+1), Miller downward recurrence normalized
/// against j_0 or j_1 for t < l, upward recurrence otherwise.
double sph_bessel_j(long l, double t);

/// j_2 with coefficient 2 on cos(t)/t^2 instead of 3. This is a known
/// misprint of the explicit second-order function; it is kept only so that
/// tests can show it is wrong.
double sph_bessel_j2_misprinted(double t);

struct QuadratureConfig {
    double abs_tolerance = 1e-11;
    long max_subintervals = 200000;
    /// Integration stops at T with amplitude * exp(-p T) / p < abs_tolerance * tail_cutoff_factor.
    double tail_cutoff_factor = 1.0;
    /// When that T would exceed this horizon, quadrature_transform integrates
    /// up to a shorter cutoff and adds the tail in closed form from the
    /// finite Hankel expansion of j_l.
    double analytic_tail_beyond = 2000.0;
};

struct OracleResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long subintervals_used = 0;
};

/// Raised when the error target is not met within max_subintervals or the
/// bisection depth limit.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, OracleResult partial) : Error(what), partial_(partial) {}
    const OracleResult& partial() const { return partial_; }

private:
    OracleResult partial_;
};

/// Integrates f(t) exp(-p t) over [0, T] on panels of width `panel_width`
/// (each bisected adaptively, 20-point Gauss-Legendre with a two-halves
/// comparison as error estimate). T is chosen so that
/// amplitude_bound * exp(-p T) / p falls below the tolerance; that tail
/// bound is part of the returned error estimate.
OracleResult laplace_quadrature(const std::function<double(double)>& f, double p, const QuadratureConfig& cfg,
                                double amplitude_bound = 1.0, double panel_width = std::numbers::pi);

/// Laplace transform of j_l at p > 0 by direct quadrature.
OracleResult quadrature_transform(long l, double p, const QuadratureConfig& cfg = {});

/// i^(l+1) Q_l(i p), with Q_l the Legendre function of the second kind,
/// computed by forward recurrence in complex double arithmetic.
///
/// Throws UnsupportedError for l > 40 or when the estimated error
/// amplification of the forward recurrence is too large at this p, and
/// ConsistencyError when the result has a non-negligible imaginary part.
double legendre_q_oracle(long l, double p);

} // namespace sphlap
