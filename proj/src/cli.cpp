#include "sphlap/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sphlap/bench.hpp"
#include "sphlap/closed_form.hpp"
#include "sphlap/coefficients.hpp"
#include "sphlap/debye.hpp"
#include "sphlap/error.hpp"
#include "sphlap/oracles.hpp"

namespace sphlap::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double quadrature_tolerance = 1e-8;
constexpr double legendre_tolerance = 1e-9;
// Coefficient tables grow quadratically in l; beyond this the CLI refuses.
constexpr long max_order = 2000;

void check_order(long l)
{
    if (l > max_order) {
        throw RangeError("order " + std::to_string(l) + " exceeds the supported maximum " + std::to_string(max_order));
    }
}

const CLI::Validator non_negative_integer(
    [](std::string& text) {
        long v = 0;
        if (!CLI::detail::lexical_cast(text, v)) {
            return "expected a non-negative integer, got '" + text + "'";
        }
        return v < 0 ? "must be non-negative, got " + text : std::string();
    },
    "NONNEGATIVE INTEGER");

const CLI::Validator positive_real(
    [](std::string& text) {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(text, v) || !std::isfinite(v)) {
            return "expected a finite number, got '" + text + "'";
        }
        return v >= std::numeric_limits<double>::min() ? std::string() : "must be positive, got " + text;
    },
    "POSITIVE");

json number_or_null(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

int run_coeffs(long l, const std::string& format, std::ostream& out)
{
    check_order(l);
    const CoeffTable table = build_coeff_table(l);
    const auto& row = table.row(l);
    if (format == "plain") {
        out << "l=" << l << ":";
        for (const auto& c : row) {
            out << " " << c.to_string();
        }
        out << "\n";
        return ok;
    }
    json j;
    j["l"] = l;
    j["coeffs"] = json::array();
    for (const auto& c : row) {
        j["coeffs"].push_back(c.to_string());
    }
    out << j.dump() << "\n";
    return ok;
}

int run_closed_form(long l, const std::string& format, std::ostream& out)
{
    check_order(l);
    const ClosedFormTransform cf = build_closed_form(l, build_coeff_table(l));
    const RenderFormat f = format == "plain" ? RenderFormat::plain
                           : format == "latex" ? RenderFormat::latex
                                               : RenderFormat::json;
    out << render(cf, f) << "\n";
    return ok;
}

int run_eval(long l, double p, long bits, const std::string& format, std::ostream& out)
{
    check_order(l);
    const ClosedFormTransform cf = build_closed_form(l, build_coeff_table(l));
    const EvalResult r = evaluate(cf, p, bits);
    if (format == "plain") {
        out << r.value.to_string() << "\n";
        return ok;
    }
    json j;
    j["l"] = l;
    j["p"] = p;
    j["bits"] = bits;
    j["value"] = r.value.to_string();
    j["precision_used_bits"] = r.precision_used_bits;
    j["estimated_cancellation_bits"] = r.estimated_cancellation_bits;
    out << j.dump() << "\n";
    return ok;
}

int run_validate(long l_max, const std::vector<double>& p_grid, std::ostream& out)
{
    check_order(l_max);
    const CoeffTable table = build_coeff_table(l_max);
    json rows = json::array();
    bool all_pass = true;
    for (long l = 0; l <= l_max; ++l) {
        const ClosedFormTransform cf = build_closed_form(l, table);
        for (double p : p_grid) {
            const double closed = evaluate(cf, p, 64).value.to_double();
            const OracleResult quad = quadrature_transform(l, p);
            const double quad_residual = std::abs(closed - quad.value);
            std::optional<double> legendre;
            std::optional<double> legendre_residual;
            try {
                legendre = legendre_q_oracle(l, p);
                legendre_residual = std::abs(closed - *legendre);
            } catch (const UnsupportedError&) {
            }
            const bool pass = quad_residual <= quadrature_tolerance &&
                              (!legendre_residual || *legendre_residual <= legendre_tolerance);
            all_pass = all_pass && pass;
            json row;
            row["l"] = l;
            row["p"] = p;
            row["closed_form"] = closed;
            row["quadrature"] = quad.value;
            row["quadrature_error_estimate"] = quad.error_estimate;
            row["quadrature_residual"] = quad_residual;
            row["legendre_q"] = number_or_null(legendre);
            row["legendre_q_residual"] = number_or_null(legendre_residual);
            row["pass"] = pass;
            rows.push_back(row);
        }
    }
    json j;
    j["l_max"] = l_max;
    j["p_grid"] = p_grid;
    j["tolerance"] = {{"quadrature", quadrature_tolerance}, {"legendre_q", legendre_tolerance}};
    j["rows"] = rows;
    j["pass"] = all_pass;
    out << j.dump() << "\n";
    return all_pass ? ok : domain_error;
}

int run_debye(const DebyeParams& params, double p, std::ostream& out)
{
    const CoeffTable table = build_coeff_table(2);
    const double direct = memory_transform(p, params);
    const double via = memory_transform_via_closed_form(p, params, build_closed_form(0, table),
                                                        build_closed_form(2, table));
    json j;
    j["params"] = {{"m", params.m}, {"len", params.length}, {"v", params.v}, {"omega_l", params.omega_l}};
    j["p"] = p;
    j["direct"] = direct;
    j["via_closed_form"] = via;
    j["difference"] = via - direct;
    out << j.dump() << "\n";
    return ok;
}

void write_csv(const BenchReport& report, std::ostream& out)
{
    out << "l,p,closed_ns,quad_ns,speedup\n";
    out << std::setprecision(17);
    for (const auto& e : report.entries) {
        out << e.l << "," << e.p << "," << e.closed_form_ns << "," << e.quadrature_ns << "," << e.speedup << "\n";
    }
}

int run_bench(const std::vector<long>& l_list, const std::vector<double>& p_list, long reps,
              const std::string& format, const std::string& csv_path, std::ostream& out)
{
    for (long l : l_list) {
        check_order(l);
    }
    const BenchReport report = run_benchmark(l_list, p_list, reps);
    if (!csv_path.empty()) {
        std::ofstream file(csv_path);
        if (!file) {
            throw DomainError("cannot write " + csv_path);
        }
        write_csv(report, file);
    }
    if (format == "csv") {
        write_csv(report, out);
        return ok;
    }
    json j;
    j["environment"] = report.environment;
    j["reference"] = report.reference;
    j["reps"] = report.reps;
    j["closed_form_bits"] = report.closed_form_bits;
    j["table_build_ns"] = report.table_build_ns;
    j["entries"] = json::array();
    for (const auto& e : report.entries) {
        j["entries"].push_back({{"l", e.l},
                                {"p", e.p},
                                {"closed_form_ns", e.closed_form_ns},
                                {"quadrature_ns", e.quadrature_ns},
                                {"speedup", e.speedup},
                                {"closed_form_value", e.closed_form_value},
                                {"quadrature_value", e.quadrature_value}});
    }
    try {
        const GrowthFit fit = fit_growth(report);
        j["growth"] = {{"p", fit.p}, {"b", fit.b}, {"log_a", fit.log_a}, {"residual", fit.residual},
                       {"points", fit.points}};
    } catch (const InsufficientDataError&) {
        j["growth"] = nullptr;
    }
    out << j.dump() << "\n";
    return ok;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Closed-form Laplace transforms of spherical Bessel functions", "sphlap"};
    app.require_subcommand(1);

    long l = 0;
    long l_max = 0;
    long bits = 64;
    long reps = 7;
    double p = 1.0;
    std::string format = "json";
    std::string csv_path;
    std::vector<double> p_grid;
    std::vector<long> l_list;
    std::vector<double> p_list;
    DebyeParams debye;

    auto* coeffs = app.add_subcommand("coeffs", "coefficient row C_k^(l) of the derivative expansion");
    coeffs->add_option("--l", l, "order")->required()->check(non_negative_integer);
    coeffs->add_option("--format", format)->check(CLI::IsMember({"json", "plain"}));

    auto* closed = app.add_subcommand("closed-form", "closed-form transform P_l(p) atan(1/p) + Q_{l-1}(p)");
    closed->add_option("--l", l, "order")->required()->check(non_negative_integer);
    closed->add_option("--format", format)->check(CLI::IsMember({"json", "plain", "latex"}));

    auto* eval = app.add_subcommand("eval", "evaluate the transform at p");
    eval->add_option("--l", l, "order")->required()->check(non_negative_integer);
    eval->add_option("--p", p, "transform variable")->required()->check(positive_real);
    eval->add_option("--bits", bits, "output precision in bits")->check(CLI::Range(24L, 1L << 20));
    eval->add_option("--format", format)->check(CLI::IsMember({"json", "plain"}));

    auto* validate = app.add_subcommand("validate", "compare the closed form against both oracles");
    validate->add_option("--l-max", l_max, "largest order")->required()->check(non_negative_integer);
    validate->add_option("--p-grid", p_grid, "comma-separated p values")
        ->required()
        ->delimiter(',')
        ->check(positive_real);

    auto* debye_cmd = app.add_subcommand("debye", "Debye memory kernel transform by two routes");
    debye_cmd->add_option("--m", debye.m, "oscillator mass")->check(positive_real);
    debye_cmd->add_option("--len", debye.length, "line length")->check(positive_real);
    debye_cmd->add_option("--v", debye.v, "sound speed")->check(positive_real);
    debye_cmd->add_option("--omega-l", debye.omega_l, "cutoff frequency")->check(positive_real);
    debye_cmd->add_option("--p", p, "transform variable")->required()->check(positive_real);

    auto* bench = app.add_subcommand("bench", "time closed form against quadrature");
    bench->add_option("--l-list", l_list, "comma-separated orders")
        ->required()
        ->delimiter(',')
        ->check(non_negative_integer);
    bench->add_option("--p-list", p_list, "comma-separated p values")
        ->required()
        ->delimiter(',')
        ->check(positive_real);
    bench->add_option("--reps", reps, "repetitions per route (>= 5)")->check(CLI::Range(5L, 1L << 30));
    bench->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    bench->add_option("--csv", csv_path, "also write CSV to this file");

    std::vector<std::string> argv_storage{"sphlap"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (coeffs->parsed()) {
            return run_coeffs(l, format, out);
        }
        if (closed->parsed()) {
            return run_closed_form(l, format, out);
        }
        if (eval->parsed()) {
            return run_eval(l, p, bits, format, out);
        }
        if (validate->parsed()) {
            return run_validate(l_max, p_grid, out);
        }
        if (debye_cmd->parsed()) {
            return run_debye(debye, p, out);
        }
        if (bench->parsed()) {
            return run_bench(l_list, p_list, reps, format, csv_path, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return domain_error;
    }
    return usage_error;
}

} // namespace sphlap::cli
