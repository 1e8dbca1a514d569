#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sphlap/debye.hpp"
#include "sphlap/error.hpp"
#include "sphlap/oracles.hpp"

using namespace sphlap;

namespace {

constexpr double pi = std::numbers::pi;

struct Forms {
    CoeffTable table = build_coeff_table(2);
    ClosedFormTransform cf0 = build_closed_form(0, table);
    ClosedFormTransform cf2 = build_closed_form(2, table);
};

const Forms& forms()
{
    static const Forms f;
    return f;
}

DebyeParams with_omega(double omega)
{
    DebyeParams p;
    p.omega_l = omega;
    return p;
}

} // namespace

TEST_CASE("memory function examples")
{
    const DebyeParams unit;
    CHECK(memory_function(0.0, unit) == doctest::Approx(1.0 / (3.0 * pi)).epsilon(1e-15));
    const double expected = (sph_bessel_j(0, 1.0) - 2.0 * sph_bessel_j(2, 1.0)) / (3.0 * pi);
    CHECK(memory_function(1.0, unit) == doctest::Approx(expected).epsilon(1e-14));

    DebyeParams heavy;
    heavy.m = 2.0;
    for (double t : {0.0, 0.4, 1.0, 7.5}) {
        CHECK(memory_function(t, heavy) == doctest::Approx(2.0 * memory_function(t, unit)).epsilon(1e-15));
    }
}

TEST_CASE("memory function at zero is the integrated density of states")
{
    for (double omega : {0.5, 1.0, 3.0}) {
        DebyeParams params;
        params.m = 1.7;
        params.length = 2.0;
        params.v = 0.3;
        params.omega_l = omega;
        CHECK(memory_function(0.0, params) == doctest::Approx(params.prefactor() * omega * omega * omega / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("parameter validation")
{
    DebyeParams bad;
    bad.v = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK_THROWS_AS(memory_transform(1.0, bad), DomainError);
    CHECK_THROWS_AS(memory_transform(0.0, DebyeParams{}), DomainError);
    CHECK_THROWS_AS(memory_function(-1.0, DebyeParams{}), DomainError);
    CHECK_THROWS_AS(memory_transform_via_closed_form(1.0, DebyeParams{}, forms().cf2, forms().cf2), DomainError);
}

TEST_CASE("memory transform examples")
{
    const DebyeParams unit;
    CHECK(memory_transform(1.0, unit) == doctest::Approx((1.0 - pi / 4.0) / pi).epsilon(1e-14));
    CHECK(memory_transform(1.0, unit) == doctest::Approx(0.0683099).epsilon(1e-6));

    // omega p - p^2 atan(omega/p) = omega^3 / (3 p) + O(p^-3).
    const double p = 1e3;
    CHECK(memory_transform(p, unit) == doctest::Approx(unit.prefactor() / (3.0 * p)).epsilon(0.01));

    CHECK(std::abs(memory_transform(1.0, with_omega(1e-6))) < 1e-12);
}

TEST_CASE("closed-form route examples")
{
    const auto& f = forms();
    const DebyeParams unit;
    CHECK(std::abs(memory_transform_via_closed_form(1.0, unit, f.cf0, f.cf2) - memory_transform(1.0, unit)) <= 1e-12);
    const DebyeParams fast = with_omega(2.0);
    CHECK(std::abs(memory_transform_via_closed_form(0.5, fast, f.cf0, f.cf2) - memory_transform(0.5, fast)) <= 1e-12);

    DebyeParams heavy;
    heavy.m = 2.0;
    const double ratio =
        memory_transform_via_closed_form(0.8, heavy, f.cf0, f.cf2) / memory_transform_via_closed_form(0.8, unit, f.cf0, f.cf2);
    CHECK(ratio == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("route equivalence over a parameter grid")
{
    const auto& f = forms();
    for (double p : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        for (double omega : {0.5, 1.0, 3.0}) {
            const DebyeParams params = with_omega(omega);
            const double direct = memory_transform(p, params);
            const double routed = memory_transform_via_closed_form(p, params, f.cf0, f.cf2);
            CAPTURE(p);
            CAPTURE(omega);
            CHECK(std::abs(direct - routed) <= 1e-12 * std::abs(direct));
        }
    }
}

TEST_CASE("quadrature of the kernel matches the transform")
{
    const DebyeParams unit;
    // |j_0| <= 1 and |j_2| <= 1, so |mu| <= prefactor * omega^3.
    const double amplitude = unit.prefactor() * std::pow(unit.omega_l, 3);
    for (double p : {0.5, 1.0, 2.0}) {
        const OracleResult quad =
            laplace_quadrature([&](double t) { return memory_function(t, unit); }, p, QuadratureConfig{}, amplitude);
        CAPTURE(p);
        CHECK(std::abs(quad.value - memory_transform(p, unit)) <= 1e-6);
    }
}

TEST_CASE("kernel equals the integral over the density of states")
{
    // prefactor * int_0^omega w^2 cos(w t) dw, done by hand.
    const auto direct = [](double t, const DebyeParams& params) {
        const double w = params.omega_l;
        const double x = w * t;
        return params.prefactor() * w * w * w *
               (std::sin(x) / x + 2.0 * std::cos(x) / (x * x) - 2.0 * std::sin(x) / (x * x * x));
    };
    for (double omega : {0.5, 1.0, 3.0}) {
        const DebyeParams params = with_omega(omega);
        for (double t : {0.5, 1.0, 2.0, 10.0}) {
            CAPTURE(omega);
            CAPTURE(t);
            CHECK(memory_function(t, params) == doctest::Approx(direct(t, params)).epsilon(1e-12));
            CHECK_FALSE(memory_function(t, params, sph_bessel_j2_misprinted) ==
                        doctest::Approx(direct(t, params)).epsilon(1e-6));
        }
    }
}

TEST_CASE("misprinted j_2 makes the kernel non-integrable at zero")
{
    const DebyeParams unit;
    CHECK_THROWS_AS(laplace_quadrature([&](double t) { return memory_function(t, unit, sph_bessel_j2_misprinted); },
                                       1.0, QuadratureConfig{}, 2.0 * unit.prefactor()),
                    NonConvergenceError);
}
