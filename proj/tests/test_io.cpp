#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "io.hpp"
#include <morrey/constructions.hpp>
#include <morrey/errors.hpp>

using namespace morrey;
using morrey::io::json;

TEST_CASE("numbers serialise with inf as a string and NaN as null")
{
    CHECK(io::number(1.5) == json(1.5));
    CHECK(io::number(infinity) == json("inf"));
    CHECK(io::number(-infinity) == json("-inf"));
    CHECK(io::number(std::nan("")).is_null());
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(2.8284271247461903) == "2.8284271247461903");
    CHECK(io::format_double(infinity) == "inf");
}

TEST_CASE("profile JSON round trip in array and object form")
{
    const RadialProfile f({{0, 1, 2, 0.5}, {2, infinity, 1, 1.5}});
    const auto j = io::profile_to_json(f);
    REQUIRE(j.is_array());
    CHECK(j[1]["hi"].is_null());
    const auto back = io::profile_from_json(j);
    REQUIRE(back.segments().size() == 2);
    CHECK(back.segments()[1].hi == infinity);
    CHECK(back.segments()[0].exponent == 0.5);
    CHECK_FALSE(back.truncated());

    const auto g = theorem13_function(make_theorem13_spec(1, 1, 1.5, 2, 8));
    const auto jg = io::profile_to_json(g);
    REQUIRE(jg.is_object());
    CHECK(jg["faithful_radius"] == json(4.0));
    const auto gb = io::profile_from_json(jg);
    CHECK(gb.faithful_radius() == 4);
    CHECK(gb.segments().size() == g.segments().size());
    for (std::size_t i = 0; i < g.segments().size(); ++i) {
        CHECK(gb.segments()[i].hi == g.segments()[i].hi);
    }

    const auto parsed = io::profile_from_json(
        json::parse(R"([{"lo": 0, "hi": "inf", "coeff": 1, "exponent": 0.5}])"));
    CHECK(parsed.segments()[0].hi == infinity);
}

TEST_CASE("malformed profile JSON is rejected")
{
    CHECK_THROWS_AS(io::profile_from_json(json::parse(R"({"faithful_radius": 3})")), invalid_argument);
    CHECK_THROWS_AS(io::profile_from_json(json::parse(R"(3)")), invalid_argument);
    CHECK_THROWS_AS(io::profile_from_json(json::parse(R"([{"lo": 0, "hi": 1, "coeff": 1}])")), invalid_argument);
    CHECK_THROWS_AS(io::profile_from_json(json::parse(R"([{"lo": 0, "hi": 1, "coeff": "x", "exponent": 0}])")),
                    invalid_argument);
    CHECK_THROWS_AS(io::profile_from_json(json::parse(R"([{"lo": null, "hi": 1, "coeff": 1, "exponent": 0}])")),
                    invalid_argument);
    CHECK_THROWS_AS(io::profile_from_json(json::parse(R"([{"lo": 2, "hi": 1, "coeff": 1, "exponent": 0}])")),
                    invalid_argument);
}

TEST_CASE("verdict JSON")
{
    const auto finite = io::verdict_to_json(NormVerdict::finite(2.5, {1.0, 0.0}));
    CHECK(finite["kind"] == "finite");
    CHECK(finite["value"] == json(2.5));
    CHECK(finite["witness"]["radius"] == json(1.0));
    CHECK_FALSE(finite["witness"].contains("level"));
    const auto inf = io::verdict_to_json(NormVerdict::infinite(Divergence::large_radius, 0.25));
    CHECK(inf["kind"] == "infinite");
    CHECK(inf["growth"] == json(0.25));
    CHECK_FALSE(inf.contains("value"));
}

TEST_CASE("report CSV files")
{
    ExperimentReport r;
    r.id = "demo";
    r.title = "demo, with comma";
    r.parameters = {{"q", 2}};
    r.labels = {{"verdict", "ok"}};
    r.checks = {abs_check("value \"quoted\"", 1, 1, 0.1), flag_check("flag", false)};
    r.tables = {{"growth/fit", {"r", "value"}, {{1, 2}, {3, infinity}}}};
    CHECK_FALSE(r.passed());
    const auto csv = io::checks_csv(r);
    CHECK(csv.rfind("experiment,check,kind,value,expected,tolerance,pass\n", 0) == 0);
    CHECK(csv.find("demo,\"value \"\"quoted\"\"\",abs,1,1,0.1,true") != std::string::npos);
    CHECK(csv.find("demo,flag,flag,0,1,0,false") != std::string::npos);

    const auto dir = std::filesystem::temp_directory_path() / "morrey_io_test";
    std::filesystem::remove_all(dir);
    const auto files = io::write_report_csv(dir, r);
    CHECK(files.size() == 3);
    std::ifstream in(dir / "demo_growth_fit.csv");
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "r,value\n1,2\n3,inf\n");
    std::filesystem::remove_all(dir);

    const auto j = io::report_to_json(r);
    CHECK(j["pass"] == false);
    CHECK(j["tool_version"] == tool_version);
    CHECK(j["checks"].size() == 2);
}

TEST_CASE("measured wall time stays out of report files")
{
    ExperimentReport r;
    r.id = "t";
    r.checks = {time_check("runtime seconds", 0.123, 1)};
    CHECK(r.passed());
    CHECK(io::checks_csv(r).find("t,runtime seconds,time,,1,0,true") != std::string::npos);
    CHECK(io::report_to_json(r)["checks"][0]["value"].is_null());
    r.checks = {time_check("runtime seconds", 2, 1)};
    CHECK_FALSE(r.passed());
}
