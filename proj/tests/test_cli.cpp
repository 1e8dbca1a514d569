#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sphlap/cli.hpp"
#include "sphlap/closed_form.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = sphlap::cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

// Emitted JSON is one line plus newline; re-dumping must reproduce it.
void check_round_trip(const std::string& text)
{
    REQUIRE(!text.empty());
    REQUIRE(text.back() == '\n');
    const std::string body = text.substr(0, text.size() - 1);
    CHECK(json::parse(body).dump() == body);
}

} // namespace

TEST_CASE("coeffs")
{
    const Run r = run({"coeffs", "--l", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"l\":4,\"coeffs\":[\"35/8\",\"15/4\",\"3/8\"]}\n");
    CHECK(r.err.empty());
    CHECK(run({"coeffs", "--l", "4", "--format", "plain"}).out == "l=4: 35/8 15/4 3/8\n");
}

TEST_CASE("closed-form output matches the library rendering")
{
    const auto cf = sphlap::build_closed_form(3, sphlap::build_coeff_table(3));
    CHECK(run({"closed-form", "--l", "3"}).out == sphlap::render(cf, sphlap::RenderFormat::json) + "\n");
    CHECK(run({"closed-form", "--l", "3", "--format", "plain"}).out ==
          sphlap::render(cf, sphlap::RenderFormat::plain) + "\n");
    CHECK(run({"closed-form", "--l", "3", "--format", "latex"}).out ==
          sphlap::render(cf, sphlap::RenderFormat::latex) + "\n");
}

TEST_CASE("eval")
{
    const Run r = run({"eval", "--l", "0", "--p", "1"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["bits"] == 64);
    const double value = std::stod(j["value"].get<std::string>());
    CHECK(value == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-16));
    CHECK(j["precision_used_bits"].get<long>() >= 64);

    const Run plain = run({"eval", "--l", "2", "--p", "1", "--bits", "53", "--format", "plain"});
    CHECK(plain.code == 0);
    CHECK(std::stod(plain.out) == doctest::Approx(std::numbers::pi / 2.0 - 1.5).epsilon(1e-14));
}

TEST_CASE("eval value string is the shortest round-trip decimal at the chosen precision")
{
    const Run r = run({"eval", "--l", "0", "--p", "1", "--bits", "53"});
    const json j = json::parse(r.out);
    // pi/4 rounded to a double prints as the shortest round-trip double string.
    CHECK(j["value"] == "0.7853981633974483");
}

TEST_CASE("validate")
{
    const Run r = run({"validate", "--l-max", "5", "--p-grid", "0.5,1,2"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["rows"].size() == 18);
    for (const auto& row : j["rows"]) {
        CHECK(row["quadrature_residual"].get<double>() < 1e-8);
        if (!row["legendre_q_residual"].is_null()) {
            CHECK(row["legendre_q_residual"].get<double>() < 1e-9);
        }
    }
}

TEST_CASE("debye")
{
    const Run r = run({"debye", "--m", "1", "--len", "1", "--v", "1", "--omega-l", "1", "--p", "1"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["direct"].get<double>() == doctest::Approx((1.0 - std::numbers::pi / 4.0) / std::numbers::pi));
    CHECK(std::abs(j["difference"].get<double>()) <= 1e-12);
    CHECK(j["params"]["omega_l"] == 1.0);
}

TEST_CASE("bench output and CSV file")
{
    const auto path = std::filesystem::temp_directory_path() / "sphlap_bench_test.csv";
    std::filesystem::remove(path);
    const Run r = run({"bench", "--l-list", "0,1,2,3", "--p-list", "1", "--reps", "5", "--csv", path.string()});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["reps"] == 5);
    CHECK(j["entries"].size() == 4);
    CHECK_FALSE(j["growth"].is_null());
    CHECK_FALSE(j["reference"].get<std::string>().empty());

    std::ifstream in(path);
    REQUIRE(in);
    std::string line;
    std::getline(in, line);
    CHECK(line == "l,p,closed_ns,quad_ns,speedup");
    long rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == 4);
    std::filesystem::remove(path);

    const Run csv = run({"bench", "--l-list", "2", "--p-list", "1", "--reps", "5", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("l,p,closed_ns,quad_ns,speedup\n2,1,", 0) == 0);
}

TEST_CASE("JSON outputs round-trip byte for byte")
{
    check_round_trip(run({"coeffs", "--l", "7"}).out);
    check_round_trip(run({"closed-form", "--l", "6"}).out);
    check_round_trip(run({"eval", "--l", "5", "--p", "0.3", "--bits", "100"}).out);
    check_round_trip(run({"validate", "--l-max", "2", "--p-grid", "0.5,3"}).out);
    check_round_trip(run({"debye", "--p", "0.7", "--omega-l", "3"}).out);
    check_round_trip(run({"bench", "--l-list", "0,1,2,3", "--p-list", "1", "--reps", "5"}).out);
}

TEST_CASE("usage errors exit 2 and name the flag")
{
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
        {{"coeffs", "--l", "-1"}, "--l"},
        {{"coeffs", "--l", "two"}, "--l"},
        {{"eval", "--l", "1", "--p", "0"}, "--p"},
        {{"eval", "--l", "1", "--p", "-3"}, "--p"},
        {{"eval", "--l", "1", "--p", "1x"}, "--p"},
        {{"eval", "--l", "1", "--p", "1", "--bits", "8"}, "--bits"},
        {{"validate", "--l-max", "2", "--p-grid", "1,zero"}, "--p-grid"},
        {{"debye", "--p", "1", "--v", "0"}, "--v"},
        {{"bench", "--l-list", "0", "--p-list", "1", "--reps", "4"}, "--reps"},
        {{"eval", "--l", "1", "--p", "1", "--unknown"}, "--unknown"},
        {{"closed-form", "--l", "1", "--format", "csv"}, "--format"},
    };
    for (const auto& [args, flag] : cases) {
        const Run r = run(args);
        CAPTURE(args.front());
        CAPTURE(r.err);
        CHECK(r.code == 2);
        CHECK(r.err.find(flag) != std::string::npos);
        CHECK(r.out.empty());
    }
    CHECK(run({}).code == 2);
    CHECK(run({"eval", "--p", "1"}).code == 2);
}

TEST_CASE("domain errors exit 1")
{
    const Run big = run({"coeffs", "--l", "2001"});
    CHECK(big.code == 1);
    CHECK(big.err.find("2001") != std::string::npos);
    const Run csv = run({"bench", "--l-list", "0", "--p-list", "1", "--reps", "5", "--csv", "/nonexistent-dir/x.csv"});
    CHECK(csv.code == 1);
}

TEST_CASE("help exits 0")
{
    const Run r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("eval") != std::string::npos);
}
