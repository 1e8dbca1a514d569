#include "sphlap/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include <sys/utsname.h>

#include "sphlap/closed_form.hpp"
#include "sphlap/coefficients.hpp"
#include "sphlap/error.hpp"

namespace sphlap {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ns(F&& f)
{
    const auto start = Clock::now();
    f();
    const auto stop = Clock::now();
    return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Keeps results observable so the timed calls are not optimized away.
volatile double sink = 0.0;

} // namespace

std::string host_environment()
{
    std::string out;
    utsname info{};
    if (uname(&info) == 0) {
        out = std::string(info.sysname) + " " + info.release + " " + info.machine;
    }
#if defined(__clang__)
    out += ", clang " __clang_version__;
#elif defined(__GNUC__)
    out += ", gcc " __VERSION__;
#endif
    return out;
}

BenchReport run_benchmark(const std::vector<long>& l_values, const std::vector<double>& p_values, long reps,
                          const QuadratureConfig& cfg)
{
    if (reps < 5) {
        throw DomainError("benchmark needs at least 5 repetitions");
    }
    for (double p : p_values) {
        if (!(p > 0.0)) {
            throw DomainError("benchmark p values must be positive");
        }
    }
    BenchReport report;
    report.reps = reps;
    report.environment = host_environment();
    if (l_values.empty() || p_values.empty()) {
        return report;
    }
    const long l_max = *std::max_element(l_values.begin(), l_values.end());
    if (l_max < 0 || *std::min_element(l_values.begin(), l_values.end()) < 0) {
        throw DomainError("benchmark orders must be non-negative");
    }

    CoeffTable table;
    report.table_build_ns = time_ns([&] { table = build_coeff_table(l_max); });

    for (long l : l_values) {
        const ClosedFormTransform cf = build_closed_form(l, table);
        for (double p : p_values) {
            const double cf_value = evaluate(cf, p, report.closed_form_bits).value.to_double();
            const OracleResult quad = quadrature_transform(l, p, cfg);
            const double budget = 10.0 * (quad.error_estimate + cfg.abs_tolerance);
            if (!(std::abs(cf_value - quad.value) <= budget)) {
                throw ConsistencyError("bench values disagree at l=" + std::to_string(l) + ", p=" +
                                       std::to_string(p));
            }
            std::vector<double> cf_times;
            std::vector<double> quad_times;
            cf_times.reserve(static_cast<std::size_t>(reps));
            quad_times.reserve(static_cast<std::size_t>(reps));
            for (long r = 0; r < reps; ++r) {
                cf_times.push_back(time_ns([&] { sink = evaluate(cf, p, report.closed_form_bits).value.to_double(); }));
            }
            for (long r = 0; r < reps; ++r) {
                quad_times.push_back(time_ns([&] { sink = quadrature_transform(l, p, cfg).value; }));
            }
            BenchEntry e{};
            e.l = l;
            e.p = p;
            e.closed_form_ns = median(cf_times);
            e.quadrature_ns = median(quad_times);
            e.speedup = e.quadrature_ns / e.closed_form_ns;
            e.closed_form_value = cf_value;
            e.quadrature_value = quad.value;
            e.quadrature_error_estimate = quad.error_estimate;
            report.entries.push_back(e);
        }
    }
    return report;
}

GrowthFit fit_growth(const BenchReport& report)
{
    std::map<double, std::map<long, double>> by_p;
    for (const auto& e : report.entries) {
        if (e.speedup > 0.0) {
            by_p[e.p][e.l] = std::log(e.speedup);
        }
    }
    const std::map<long, double>* best = nullptr;
    double best_p = 0.0;
    for (const auto& [p, series] : by_p) {
        if (best == nullptr || series.size() > best->size()) {
            best = &series;
            best_p = p;
        }
    }
    if (best == nullptr || best->size() < 4) {
        throw InsufficientDataError("growth fit needs at least 4 distinct orders at a common p");
    }
    const double n = static_cast<double>(best->size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [l, y] : *best) {
        const double x = static_cast<double>(l);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double log_a = (sy - b * sx) / n;
    double ss = 0.0;
    for (const auto& [l, y] : *best) {
        const double r = y - (log_a + b * static_cast<double>(l));
        ss += r * r;
    }
    return GrowthFit{best_p, log_a, b, std::sqrt(ss / n), static_cast<long>(best->size())};
}

} // namespace sphlap
