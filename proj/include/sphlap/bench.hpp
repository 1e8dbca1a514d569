#pragma once

#include <string>
#include <vector>

#include "sphlap/oracles.hpp"

namespace sphlap {

struct BenchEntry {
    long l;
    double p;
    double closed_form_ns; // median
    double quadrature_ns;  // median
    double speedup;        // quadrature_ns / closed_form_ns
    double closed_form_value;
    double quadrature_value;
    double quadrature_error_estimate;
};

struct BenchReport {
    std::vector<BenchEntry> entries;
    std::string environment;
    long reps = 0;
    /// Output precision of the closed-form evaluations.
    long closed_form_bits = 53;
    /// One-off cost of the coefficient table (not part of per-entry timings).
    double table_build_ns = 0.0;
    /// What the closed form is timed against.
    std::string reference = "adaptive panel quadrature of the defining integral (quadrature_transform)";
};

/// Times closed-form evaluation against quadrature_transform for every
/// (l, p) pair: one warm-up call, then `reps` timed calls of each route in
/// turn, reporting medians. Throws ConsistencyError when the two routes
/// disagree beyond the quadrature error budget.
BenchReport run_benchmark(const std::vector<long>& l_values, const std::vector<double>& p_values, long reps,
                          const QuadratureConfig& cfg = {});

struct GrowthFit {
    double p;         // the p at which the fit was taken
    double log_a;     // intercept of ln(speedup)
    double b;         // exponent: speedup ~ a exp(b l)
    double residual;  // RMS of ln(speedup) residuals
    long points;
};

/// Least-squares fit of ln(speedup) against l at the p value with the most
/// distinct orders. Throws InsufficientDataError if no p has at least 4.
GrowthFit fit_growth(const BenchReport& report);

/// Host and compiler descriptor for reports.
std::string host_environment();

} // namespace sphlap
