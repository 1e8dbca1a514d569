#pragma once

#include <vector>

#include "sphlap/exact_arith.hpp"

namespace sphlap {

/// Triangular table of the rationals C_k^(l), 0 <= 2k <= l <= l_max, that
/// express j_l as a combination of derivatives of j_0:
///
///     j_l = sum_k C_k^(l) d^(l-2k)/dt^(l-2k) j_0.
///
/// Built once by the two-term recursion for k = 0 and the three-term
/// recursion for k >= 1; rows are immutable afterwards.
class CoeffTable {
public:
    long l_max() const { return static_cast<long>(rows_.size()) - 1; }

    /// Row l: C_0^(l), ..., C_{floor(l/2)}^(l). Throws RangeError past l_max.
    const std::vector<Rational>& row(long l) const;
    /// C_k^(l), zero outside the triangle 0 <= 2k <= l. Throws RangeError
    /// when l > l_max.
    Rational at(long l, long k) const;

    /// Copy with one stored entry replaced. Exists for negative controls.
    CoeffTable with_entry(long l, long k, const Rational& value) const;

private:
    friend CoeffTable build_coeff_table(long l_max);
    std::vector<std::vector<Rational>> rows_;
};

CoeffTable build_coeff_table(long l_max);

/// (-1)^l (2l-1)!! / l!  for l >= 1.
Rational c0_closed_form(long l);

struct ExpansionTerm {
    long derivative_order;
    Rational coefficient;
    friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
};

struct DerivativeExpansion {
    long l;
    std::vector<ExpansionTerm> terms; // derivative orders l, l-2, ...
};

DerivativeExpansion derivative_expansion(long l, const CoeffTable& table);

} // namespace sphlap
