#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <sstream>

#include "ncverify/harness.hpp"

using namespace ncverify;
using harness::json;

namespace {

harness::Scenario parse_one(const json& j) { return harness::scenario_from_json(j); }

}  // namespace

TEST_CASE("scenario parsing accepts the documented shape", "[harness]") {
    const json cfg = json::parse(R"({
        "scenarios": [
            {"id": "a", "algebra": "free", "check": "hs-tail", "d": 2,
             "t_grid": [0.1, 0.5], "p_list": [2, 4, "inf"], "seed": 7,
             "instances": 3, "tolerance": 1e-8, "quad_points": 512}
        ]
    })");
    const auto scens = harness::parse_config(cfg);
    REQUIRE(scens.size() == 1);
    const auto& s = scens[0];
    CHECK(s.id == "a");
    CHECK(s.algebra == "free");
    CHECK(s.check == "hs-tail");
    CHECK(s.d == 2);
    CHECK(s.t_grid == std::vector<double>{0.1, 0.5});
    CHECK(s.p_list == std::vector<int>{2, 4});
    CHECK(s.p_inf);
    CHECK(s.seed.has_value());
    CHECK(*s.seed == 7);
    CHECK(s.instances == 3);
    CHECK(s.tolerance == 1e-8);
    CHECK(s.quad_points == 512);

    // A bare array works too.
    CHECK(harness::parse_config(json::parse(R"([{"id": "b", "check": "hankel"}])")).size() == 1);

    CHECK_THROWS_AS(parse_one(json::parse(R"({"check": "hs-tail"})")), std::invalid_argument);
    CHECK_THROWS_AS(parse_one(json::parse(R"({"id": "x", "check": "hs-tail", "algebra": "weird"})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_one(json::parse(R"({"id": "x", "check": "hs-tail", "p_list": [3]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_one(json::parse(R"({"id": "x", "check": "hs-tail", "p_list": ["sup"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_one(json::parse(R"({"id": "x"})")), std::invalid_argument);
}

TEST_CASE("tail decay row reproduces the closed ratio", "[harness]") {
    const json j = {{"id", "demo"},
                    {"algebra", "free"},
                    {"check", "hs-tail"},
                    {"d", 2},
                    {"t_grid", json::array({0.5})},
                    {"p_list", json::array({4})},
                    {"polynomial", json::array({{{"word", "g1*g2"}, {"re", 1.0}},
                                                {{"word", "g2*g1"}, {"re", 1.0}}})}};
    const auto rows = harness::run_check(parse_one(j));
    REQUIRE(rows.size() == 1);
    const auto& r = rows[0];
    CHECK(r.status == "pass");
    CHECK(r.p == "4");
    CHECK(r.t == 0.5);
    CHECK(std::abs(r.ratio - std::exp(-1.0)) < 1e-12);
    CHECK(r.slack > 0.0);
}

TEST_CASE("moment comparison row matches the degree-one example", "[harness]") {
    const json j = {{"id", "demo"},
                    {"algebra", "free"},
                    {"check", "moment-cmp"},
                    {"d", 1},
                    {"pairs", json::array({json::array({2, 4, 1})})},
                    {"polynomial", json::array({{{"word", "e"}, {"re", 1.0}},
                                                {{"word", "g1"}, {"re", 1.0}}})}};
    const auto rows = harness::run_check(parse_one(j));
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0].lhs - std::pow(6.0, 0.25)) < 1e-12);
    CHECK(std::abs(rows[0].rhs - 3.0 * std::sqrt(2.0)) < 1e-12);
    CHECK(rows[0].status == "pass");
}

TEST_CASE("torus sharpness row sits at ratio one", "[harness]") {
    const json j = {{"id", "sharp"},
                    {"algebra", "qtorus"},
                    {"check", "sharpness"},
                    {"d", 3},
                    {"theta12", 0.3},
                    {"t_grid", json::array({0.5})},
                    {"p_list", json::array({4})}};
    const auto rows = harness::run_check(parse_one(j));
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0].ratio - 1.0) < 1e-10);
    CHECK(rows[0].status == "pass");
}

TEST_CASE("seeded rows are reproducible", "[harness]") {
    const json j = {{"id", "rep"},   {"algebra", "free"},          {"check", "hs-tail"},
                    {"d", 2},        {"t_grid", json::array({0.3, 1.0})}, {"p_list", json::array({2, 4})},
                    {"seed", 42},    {"instances", 4}};
    const auto a = harness::run_check(parse_one(j));
    const auto b = harness::run_check(parse_one(j));
    REQUIRE(a.size() == b.size());
    REQUIRE(!a.empty());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].params == b[i].params);
        CHECK(a[i].lhs == b[i].lhs);
        CHECK(a[i].rhs == b[i].rhs);
        CHECK(a[i].ratio == b[i].ratio);
        CHECK(a[i].slack == b[i].slack);
        CHECK(a[i].status == b[i].status);
    }
}

TEST_CASE("violated premises surface as hard failures", "[harness]") {
    // A length-one word sits outside the degree-3 tail, so the claimed decay
    // rate is wrong and the harness must say so.
    const json j = {{"id", "red"},
                    {"algebra", "free"},
                    {"check", "hs-tail"},
                    {"d", 3},
                    {"t_grid", json::array({1.0})},
                    {"p_list", json::array({2})},
                    {"polynomial", json::array({{{"word", "g1"}, {"re", 1.0}}})}};
    const auto summary = harness::run_all({parse_one(j)});
    REQUIRE(summary.rows.size() == 1);
    CHECK(summary.rows[0].status == "fail");
    CHECK(summary.hard_total == 1);
    CHECK(summary.hard_failed == 1);
    CHECK_FALSE(summary.hard_pass());
}

TEST_CASE("estimate rows never count as hard failures", "[harness]") {
    const json j = {{"id", "est"},
                    {"algebra", "free"},
                    {"check", "hs-tail"},
                    {"d", 3},
                    {"t_grid", json::array({1.0})},
                    {"p_list", json::array({"inf"})},
                    {"polynomial", json::array({{{"word", "g1"}, {"re", 1.0}}})}};
    const auto summary = harness::run_all({parse_one(j)});
    REQUIRE(summary.rows.size() == 1);
    CHECK(summary.rows[0].status == "estfail");
    CHECK(summary.hard_total == 0);
    CHECK(summary.hard_pass());
    CHECK(summary.est_failed == 1);
    CHECK_FALSE(summary.estimates_pass());
}

TEST_CASE("csv output has the pinned header and column count", "[harness]") {
    const json j = {{"id", "csv"},
                    {"algebra", "free"},
                    {"check", "sharpness"},
                    {"d", 2},
                    {"t_grid", json::array({0.25, 1.0})},
                    {"p_list", json::array({2, 4})}};
    const auto rows = harness::run_check(parse_one(j));
    REQUIRE(rows.size() == 4);
    std::ostringstream os;
    harness::write_csv(rows, os);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == harness::kCsvHeader);
    std::size_t data_lines = 0;
    while (std::getline(is, line)) {
        ++data_lines;
        CHECK(std::count(line.begin(), line.end(), ',') == 12);
    }
    CHECK(data_lines == rows.size());

    const json arr = harness::rows_to_json(rows);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == rows.size());
    CHECK(arr[0].at("scenario") == "csv");
    CHECK(arr[0].at("status") == "pass");
}

TEST_CASE("weyl cross-check rows agree on a faithful support", "[harness]") {
    const json j = {{"id", "weyl"},
                    {"algebra", "qtorus"},
                    {"check", "weyl-xval"},
                    {"p_list", json::array({2, 4})},
                    {"weyl", {{"a", 1}, {"b", 5}}},
                    {"monomials", json::array({{{"alpha", json::array({1, 0})}, {"re", 1.0}},
                                               {{"alpha", json::array({0, 1})}, {"re", 0.5}, {"im", -0.25}}})}};
    const auto rows = harness::run_check(parse_one(j));
    REQUIRE(rows.size() == 3);  // trace, p=2, p=4 at window 1
    for (const auto& r : rows) CHECK(r.status == "pass");
}

TEST_CASE("run_all orders rows by scenario id", "[harness]") {
    const json jb = {{"id", "b-last"}, {"algebra", "free"}, {"check", "hankel"}, {"d", 1},
                     {"r_list", json::array({0.5})}, {"tolerance", 1e-6}, {"N", 20}};
    const json ja = {{"id", "a-first"}, {"algebra", "free"}, {"check", "sharpness"}, {"d", 1},
                     {"t_grid", json::array({0.5})}, {"p_list", json::array({2})}};
    const auto summary = harness::run_all({parse_one(jb), parse_one(ja)});
    REQUIRE(summary.rows.size() >= 2);
    CHECK(summary.rows.front().scenario == "a-first");
    CHECK(summary.rows.back().scenario == "b-last");
    CHECK(summary.hard_pass());
}

TEST_CASE("unknown checks and missing seeds are rejected", "[harness]") {
    CHECK_THROWS_AS(harness::run_check(parse_one(json{{"id", "x"}, {"check", "no-such-check"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(harness::run_check(parse_one(json{
                        {"id", "x"}, {"algebra", "free"}, {"check", "hs-tail"}, {"d", 1},
                        {"t_grid", json::array({0.5})}, {"p_list", json::array({2})}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(harness::run_check(parse_one(json{
                        {"id", "x"}, {"algebra", "qgauss"}, {"check", "hankel"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(harness::run_check(parse_one(json{
                        {"id", "x"}, {"algebra", "qtorus"}, {"check", "weyl-xval"},
                        {"p_list", json::array({2})}})),
                    std::invalid_argument);
}

TEST_CASE("default battery is well formed", "[harness]") {
    const auto scens = harness::default_scenarios();
    REQUIRE(scens.size() > 30);
    std::set<std::string> ids;
    for (const auto& s : scens) {
        CHECK(ids.insert(s.id).second);
        CHECK((s.algebra == "free" || s.algebra == "qgauss" || s.algebra == "qtorus"));
    }
    // Every catalogue check appears at least once.
    std::set<std::string> checks;
    for (const auto& s : scens) checks.insert(s.check);
    for (const char* c :
         {"hs-tail", "hs-low", "gap-tail", "gap-low", "sharpness", "hc-smoothing", "sharp-order",
          "moment-cmp", "moment-cmp-q", "hc-q", "kernel-lemma", "avg-identity", "hankel", "haagerup-psd",
          "qcr", "gram-psd", "weyl-xval", "axioms", "time-sharpness"})
        CHECK(checks.count(c) == 1);
}
