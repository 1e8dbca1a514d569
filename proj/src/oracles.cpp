#include "sphlap/oracles.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace sphlap {

// --- spherical Bessel ---

namespace {

double series_j(long l, double t)
{
    double prefactor = 1.0;
    for (long i = 1; i <= l; ++i) {
        prefactor *= t / static_cast<double>(2 * i + 1);
    }
    const double x = -0.5 * t * t;
    double term = 1.0;
    double sum = 1.0;
    for (long k = 1; k < 30; ++k) {
        term *= x / (static_cast<double>(k) * static_cast<double>(2 * l + 2 * k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return prefactor * sum;
}

double miller_j(long l, double t)
{
    const long start = l + 20 + static_cast<long>(std::ceil(std::sqrt(40.0 * static_cast<double>(l))));
    double above = 0.0;
    double current = 1e-300;
    double at_l = 0.0;
    double j1 = 0.0;
    for (long k = start; k >= 1; --k) {
        const double below = static_cast<double>(2 * k + 1) / t * current - above;
        above = current;
        current = below;
        if (k - 1 == l) {
            at_l = current;
        }
        if (k - 1 == 1) {
            j1 = current;
        }
        if (std::abs(current) > 1e250) {
            above *= 1e-250;
            current *= 1e-250;
            at_l *= 1e-250;
            j1 *= 1e-250;
        }
    }
    // current is now the unnormalized j_0.
    const double true_j0 = std::sin(t) / t;
    const double true_j1 = std::sin(t) / (t * t) - std::cos(t) / t;
    if (std::abs(true_j0) >= std::abs(true_j1)) {
        return at_l * (true_j0 / current);
    }
    return at_l * (true_j1 / j1);
}

double upward_j(long l, double t)
{
    double prev = std::sin(t) / t;
    if (l == 0) {
        return prev;
    }
    double cur = std::sin(t) / (t * t) - std::cos(t) / t;
    for (long k = 1; k < l; ++k) {
        const double next = static_cast<double>(2 * k + 1) / t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

double sph_bessel_j(long l, double t)
{
    if (l < 0 || t < 0.0) {
        throw DomainError("sph_bessel_j needs l >= 0 and t >= 0");
    }
    if (t == 0.0) {
        return l == 0 ? 1.0 : 0.0;
    }
    if (t < 1e-3 * static_cast<double>(l + 1)) {
        return series_j(l, t);
    }
    if (l == 0) {
        return std::sin(t) / t;
    }
    if (t < static_cast<double>(l)) {
        return miller_j(l, t);
    }
    return upward_j(l, t);
}

double sph_bessel_j2_misprinted(double t)
{
    return (3.0 / (t * t) - 1.0) * std::sin(t) / t - 2.0 * std::cos(t) / (t * t);
}

// --- quadrature ---

namespace {

constexpr int gauss_points = 20;

struct GaussRule {
    std::array<double, gauss_points> nodes{};
    std::array<double, gauss_points> weights{};
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
GaussRule make_gauss_rule()
{
    GaussRule rule;
    constexpr int n = gauss_points;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

const GaussRule& gauss_rule()
{
    static const GaussRule rule = make_gauss_rule();
    return rule;
}

class PanelIntegrator {
public:
    PanelIntegrator(const std::function<double(double)>& f, double p, long max_subintervals)
        : f_(f), p_(p), max_subintervals_(max_subintervals)
    {
    }

    void integrate(double a, double b, double tol)
    {
        integrate(a, b, rule(a, b), tol, 0);
    }

    OracleResult result() const { return {sum_, error_, leaves_}; }
    bool converged() const { return converged_; }

private:
    static constexpr int max_depth = 40;

    double rule(double a, double b) const
    {
        const auto& g = gauss_rule();
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double s = 0.0;
        for (int i = 0; i < gauss_points; ++i) {
            const double t = mid + half * g.nodes[static_cast<std::size_t>(i)];
            s += g.weights[static_cast<std::size_t>(i)] * f_(t) * std::exp(-p_ * t);
        }
        return s * half;
    }

    void integrate(double a, double b, double whole, double tol, int depth)
    {
        const double m = 0.5 * (a + b);
        const double left = rule(a, m);
        const double right = rule(m, b);
        const double refined = left + right;
        const double err = std::abs(refined - whole) + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(refined);
        const bool budget_left = leaves_ + 2 <= max_subintervals_;
        if (err <= tol || depth >= max_depth || !budget_left) {
            if (err > tol) {
                converged_ = false;
            }
            sum_ += refined;
            error_ += err;
            leaves_ += 2;
            return;
        }
        integrate(a, m, left, 0.5 * tol, depth + 1);
        integrate(m, b, right, 0.5 * tol, depth + 1);
    }

    const std::function<double(double)>& f_;
    double p_;
    long max_subintervals_;
    double sum_ = 0.0;
    double error_ = 0.0;
    long leaves_ = 0;
    bool converged_ = true;
};

void check_config(double p, const QuadratureConfig& cfg)
{
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw DomainError("quadrature needs finite p > 0");
    }
    if (!(cfg.abs_tolerance > 0.0) || cfg.max_subintervals < 8) {
        throw DomainError("invalid quadrature configuration");
    }
}

double cutoff_for(double p, const QuadratureConfig& cfg, double amplitude_bound)
{
    const double target = cfg.abs_tolerance * cfg.tail_cutoff_factor;
    return std::max(0.0, std::log(amplitude_bound / (p * target)) / p);
}

// Panels [k w, (k+1) w] for k < count; tolerance shared in proportion to width.
OracleResult integrate_panels(const std::function<double(double)>& f, double p, const QuadratureConfig& cfg,
                              double panel_width, long panel_count)
{
    PanelIntegrator integrator(f, p, cfg.max_subintervals);
    const double per_panel_tol = cfg.abs_tolerance / static_cast<double>(panel_count);
    for (long k = 0; k < panel_count; ++k) {
        integrator.integrate(k * panel_width, (k + 1) * panel_width, per_panel_tol);
    }
    OracleResult out = integrator.result();
    if (!integrator.converged()) {
        throw NonConvergenceError("quadrature did not reach tolerance within " +
                                      std::to_string(cfg.max_subintervals) + " subintervals",
                                  out);
    }
    return out;
}

// E_n(w) = int_1^inf exp(-w s) s^-n ds by Lentz's continued fraction; |w| >~ 1.
std::complex<double> expint_n(int n, std::complex<double> w)
{
    using C = std::complex<double>;
    constexpr double tiny = 1e-300;
    C b = w + static_cast<double>(n);
    C c = 1.0 / tiny;
    C d = 1.0 / b;
    C h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (n - 1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const C del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) {
            break;
        }
    }
    return h * std::exp(-w);
}

// int_T^inf j_l(t) exp(-p t) dt from
//   j_l(t) = Re[(-i)^(l+1) e^(it)/t sum_k i^k (l+k)!/(k!(l-k)!) (2t)^-k].
double hankel_tail(long l, double p, double cutoff)
{
    using C = std::complex<double>;
    const C w(p * cutoff, -cutoff);
    C sum = 0.0;
    double a = 1.0; // (l+k)!/(k!(l-k)!) / 2^k
    C ik = 1.0;
    double t_pow = 1.0;
    for (long k = 0; k <= l; ++k) {
        sum += ik * (a / t_pow) * expint_n(static_cast<int>(k + 1), w);
        a *= static_cast<double>((l + k + 1) * (l - k)) / (2.0 * static_cast<double>(k + 1));
        ik *= C(0.0, 1.0);
        t_pow *= cutoff;
    }
    C phase = 1.0;
    for (long k = 0; k < (l + 1) % 4; ++k) {
        phase *= C(0.0, -1.0);
    }
    return (phase * sum).real();
}

} // namespace

OracleResult laplace_quadrature(const std::function<double(double)>& f, double p, const QuadratureConfig& cfg,
                                double amplitude_bound, double panel_width)
{
    check_config(p, cfg);
    const double cutoff = cutoff_for(p, cfg, amplitude_bound);
    const long panels = std::max(1L, static_cast<long>(std::ceil(cutoff / panel_width)));
    if (panels > cfg.max_subintervals) {
        throw NonConvergenceError("tail cutoff needs " + std::to_string(panels) + " panels", OracleResult{});
    }
    OracleResult out = integrate_panels(f, p, cfg, panel_width, panels);
    const double end = static_cast<double>(panels) * panel_width;
    out.error_estimate += amplitude_bound * std::exp(-p * end) / p;
    return out;
}

OracleResult quadrature_transform(long l, double p, const QuadratureConfig& cfg)
{
    check_config(p, cfg);
    if (l < 0) {
        throw DomainError("negative order");
    }
    const auto integrand = [l](double t) { return sph_bessel_j(l, t); };
    if (cutoff_for(p, cfg, 1.0) <= cfg.analytic_tail_beyond) {
        return laplace_quadrature(integrand, p, cfg);
    }
    // Past l^2 the Hankel sum is dominated by its first terms.
    const double pi = std::numbers::pi;
    const long panels = static_cast<long>(std::ceil(std::max(50.0, static_cast<double>(l * l)) / pi));
    OracleResult out = integrate_panels(integrand, p, cfg, pi, panels);
    const double tail = hankel_tail(l, p, static_cast<double>(panels) * pi);
    out.value += tail;
    out.error_estimate += 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(tail) + 1.0 / (panels * pi));
    return out;
}

// --- Legendre Q ---

double legendre_q_oracle(long l, double p)
{
    constexpr long max_order = 40;
    constexpr double max_relative_error = 1e-10;
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw DomainError("legendre_q_oracle needs finite p > 0");
    }
    if (l < 0) {
        throw DomainError("negative order");
    }
    if (l > max_order) {
        throw UnsupportedError("Legendre-Q forward recurrence not used beyond l=" + std::to_string(max_order));
    }
    using C = std::complex<double>;
    const C z(0.0, p);
    const C q0 = 0.5 * std::log((z + 1.0) / (z - 1.0));
    C q_prev = q0;
    C q_cur = z * q0 - 1.0;
    C p_prev = 1.0;
    C p_cur = z;
    if (l == 0) {
        q_cur = q0;
        p_cur = 1.0;
    }
    for (long k = 1; k < l; ++k) {
        const double a = static_cast<double>(2 * k + 1);
        const double b = static_cast<double>(k);
        const double c = static_cast<double>(k + 1);
        const C q_next = (a * z * q_cur - b * q_prev) / c;
        const C p_next = (a * z * p_cur - b * p_prev) / c;
        q_prev = q_cur;
        q_cur = q_next;
        p_prev = p_cur;
        p_cur = p_next;
    }
    // Rounding in Q_0 propagates along the dominant P_l solution.
    const double amplification = std::abs(p_cur) * std::abs(q0) / std::abs(q_cur);
    const double estimate = 4.0 * static_cast<double>(l + 1) * std::numeric_limits<double>::epsilon() * amplification;
    if (!(estimate <= max_relative_error)) {
        throw UnsupportedError("Legendre-Q forward recurrence too ill-conditioned at l=" + std::to_string(l) +
                               ", p=" + std::to_string(p));
    }
    C phase = 1.0;
    for (long k = 0; k < (l + 1) % 4; ++k) {
        phase *= C(0.0, 1.0);
    }
    const C value = phase * q_cur;
    if (std::abs(value.imag()) > 1e-10 * std::abs(value.real())) {
        throw ConsistencyError("Legendre-Q oracle: residual imaginary part " + std::to_string(value.imag()) +
                               " against real part " + std::to_string(value.real()));
    }
    return value.real();
}

} // namespace sphlap
