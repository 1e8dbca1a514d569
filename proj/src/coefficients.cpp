#include "sphlap/coefficients.hpp"

#include <string>

#include "sphlap/error.hpp"

namespace sphlap {

namespace {

void check_row(long l, long l_max)
{
    if (l < 0 || l > l_max) {
        throw RangeError("order l=" + std::to_string(l) + " outside coefficient table [0, " +
                         std::to_string(l_max) + "]");
    }
}

} // namespace

CoeffTable build_coeff_table(long l_max)
{
    if (l_max < 0) {
        throw DomainError("l_max must be non-negative");
    }
    CoeffTable table;
    auto& rows = table.rows_;
    rows.reserve(static_cast<std::size_t>(l_max) + 1);
    // j_0 = 1 * j_0 and j_1 = -j_0'.
    rows.push_back({Rational(1)});
    if (l_max >= 1) {
        rows.push_back({Rational(-1)});
    }
    for (long l = 1; l < l_max; ++l) {
        const Rational down(-(2 * l + 1), l + 1);
        const Rational back(l, l + 1);
        const auto entry = [&](long row, long k) {
            return (k >= 0 && 2 * k <= row) ? rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)]
                                            : Rational{};
        };
        std::vector<Rational> next;
        next.reserve(static_cast<std::size_t>((l + 1) / 2) + 1);
        // k = 0 has no C_{-1} contribution, which is the two-term recursion.
        for (long k = 0; 2 * k <= l + 1; ++k) {
            next.push_back(down * entry(l, k) + back * entry(l - 1, k - 1));
        }
        rows.push_back(std::move(next));
    }
    return table;
}

const std::vector<Rational>& CoeffTable::row(long l) const
{
    check_row(l, l_max());
    return rows_[static_cast<std::size_t>(l)];
}

Rational CoeffTable::at(long l, long k) const
{
    const auto& r = row(l);
    if (k < 0 || k >= static_cast<long>(r.size())) {
        return {};
    }
    return r[static_cast<std::size_t>(k)];
}

CoeffTable CoeffTable::with_entry(long l, long k, const Rational& value) const
{
    check_row(l, l_max());
    CoeffTable copy = *this;
    auto& r = copy.rows_[static_cast<std::size_t>(l)];
    if (k < 0 || k >= static_cast<long>(r.size())) {
        throw RangeError("entry (" + std::to_string(l) + ", " + std::to_string(k) + ") outside the triangle");
    }
    r[static_cast<std::size_t>(k)] = value;
    return copy;
}

Rational c0_closed_form(long l)
{
    if (l < 1) {
        throw DomainError("c0_closed_form requires l >= 1");
    }
    const Rational magnitude(double_factorial(2 * l - 1), factorial(l));
    return (l % 2 == 0) ? magnitude : -magnitude;
}

DerivativeExpansion derivative_expansion(long l, const CoeffTable& table)
{
    const auto& r = table.row(l);
    DerivativeExpansion out{l, {}};
    for (std::size_t k = 0; k < r.size(); ++k) {
        out.terms.push_back({l - 2 * static_cast<long>(k), r[k]});
    }
    return out;
}

} // namespace sphlap
