#pragma once

#include <string>
#include <vector>

#include "sphlap/coefficients.hpp"
#include "sphlap/exact_arith.hpp"
#include "sphlap/high_precision.hpp"

namespace sphlap {

/// Laplace transform of j_l in the form
///
///     L[j_l](p) = P_l(p) * atan(1/p) + Q_{l-1}(p),
///
/// with exact rational polynomials. P_l has degree l and only powers of the
/// parity of l; Q_{l-1} has degree l-1 and the opposite parity (zero for l = 0).
struct ClosedFormTransform;

/// Both polynomials of a transform over one common denominator:
/// P = arctan_num / denominator, Q = const_num / denominator.
struct ScaledIntegerForm {
    BigInt denominator = 0; // 0: not built
    std::vector<BigInt> arctan_num;
    std::vector<BigInt> const_num;
};

ScaledIntegerForm scaled_integer_form(const ClosedFormTransform& cf);

struct ClosedFormTransform {
    long l = 0;
    RationalPolynomial arctan_poly;
    RationalPolynomial const_poly;
    /// Evaluation cache filled by build_closed_form. If the polynomials are
    /// edited afterwards, reset it (or assign scaled_integer_form again).
    ScaledIntegerForm integer_form;
};

/// Arctan and polynomial parts of the transform of some function.
struct TransformParts {
    RationalPolynomial arctan_poly;
    RationalPolynomial const_poly;
};

/// d^n/dt^n (sin t / t) at t = 0: (-1)^(n/2)/(n+1) for even n, 0 for odd n.
Rational j0_derivative_at_zero(long n);

/// Transform of the n-th derivative of j_0, from L[f'] = p L[f] - f(0)
/// applied n times: p^n atan(1/p) - sum_{m<n} p^(n-m-1) j_0^(m)(0).
TransformParts laplace_j0_derivative(long n);

/// Assembles the closed form of order l from row l of the coefficient table.
/// Throws RangeError when l > table.l_max().
ClosedFormTransform build_closed_form(long l, const CoeffTable& table);

struct EvalResult {
    HighPrecisionReal value;
    long precision_used_bits;
    long estimated_cancellation_bits;
};

/// ceil(2 l log2(max(p, 2))): the number of leading bits that the arctan and
/// polynomial parts share at large p and cancel in the sum.
long cancellation_reserve_bits(long l, double p);

/// Evaluates the transform at p > 0 with relative error at most
/// 2^(4 - out_precision_bits). Working precision starts at
/// out + reserve + 32 guard bits and is raised when the measured
/// cancellation (magnitude of the terms versus the sum) exceeds the reserve.
/// Throws DomainError for p <= 0 or out_precision_bits < 24.
EvalResult evaluate(const ClosedFormTransform& cf, double p, long out_precision_bits);

/// The same expression at a fixed working precision with no reserve. Used
/// to show what goes wrong without the reserve.
HighPrecisionReal evaluate_unguarded(const ClosedFormTransform& cf, double p, long working_bits);

/// Checks, as exact polynomial identities, that the closed forms of orders
/// l-1, l, l+1 satisfy the transform of
///     j_{l+1} = -(2l+1)/(l+1) j_l' + l/(l+1) j_{l-1},
/// separately for the arctan part and the polynomial part.
/// Requires 1 <= l and l+1 <= table.l_max().
bool recurrence_identity_check(long l, const CoeffTable& table);

enum class RenderFormat { plain, json, latex };

/// plain: "((3/2)p^2 + 1/2)*atan(1/p) - (3/2)p"
/// json:  {"l":2,"P":["1/2","0/1","3/2"],"Q":["0/1","-3/2"]}
/// latex: display-math body, e.g. "\left(\frac{3}{2} p^{2} + \frac{1}{2}\right)\arctan\frac{1}{p} - \frac{3}{2} p"
std::string render(const ClosedFormTransform& cf, RenderFormat format);

} // namespace sphlap
