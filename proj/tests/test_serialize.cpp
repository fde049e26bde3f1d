// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "prelog/serialize.hpp"
#include "test_support.hpp"

using namespace prelog;

TEST_CASE("spectral density JSON round-trips exactly", "[serialize][property]")
{
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = test_support::random_density(gen);
        const auto text = to_json(s).dump();
        CHECK(spectral_density_from_json(json::parse(text)) == s);
    }
    const auto j = to_json(make_rect_band(0.25));
    CHECK(j["segments"].size() == 3);
    CHECK(j["segments"][0][0] == -0.5);
    CHECK(j["segments"][2][1] == 0.5);
    CHECK(j["variance"] == 1.0);
}

TEST_CASE("spectral density JSON validation", "[serialize]")
{
    auto parse = [](const char* text) { return spectral_density_from_json(json::parse(text)); };
    CHECK(parse(R"({"segments": [[-0.5, 0, 0], [0, 0.5, 2]], "variance": 1})").variance() == 1.0);
    CHECK_THROWS_AS(parse(R"({"segments": [[-0.5, 0.5, 1]], "variance": 2})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"segments": [[-0.49, 0.5, 1]]})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"segments": [[-0.5, 0.5]]})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"segments": [["a", 0.5, 1]]})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"variance": 1})"), ValidationError);
    CHECK_THROWS_AS(parse(R"([1, 2])"), ValidationError);
}

TEST_CASE("binary sample paths", "[serialize]")
{
    const auto path = simulate_gaussian(make_rect_band(0.1), {0.5, 0.0}, 257, 99);
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    write_binary(buf, path);
    const auto bytes = buf.str();
    REQUIRE(bytes.size() == 16 + 257 * 16);
    // little-endian header: n then seed
    CHECK(static_cast<unsigned char>(bytes[0]) == 1);
    CHECK(static_cast<unsigned char>(bytes[1]) == 1);
    CHECK(static_cast<unsigned char>(bytes[8]) == 99);

    const auto back = read_binary(buf);
    CHECK(back.values == path.values);
    CHECK(back.seed == 99);

    std::stringstream truncated(bytes.substr(0, 40));
    CHECK_THROWS_AS(read_binary(truncated), ValidationError);
}

TEST_CASE("CSV writers", "[serialize]")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);

    SamplePath p{{complex{1.0, -2.0}, complex{0.5, 0.25}}, "x", 0};
    std::ostringstream os;
    write_csv(os, p);
    CHECK(os.str() == "k,re,im\n0,1,-2\n1,0.5,0.25\n");

    BoundCurve c{BoundKind::upper_coherent, {{10.0, 2.0, std::nullopt}, {100.0, 4.5, 0.25}}};
    std::ostringstream cs;
    write_csv(cs, c);
    CHECK(cs.str() == "snr,value,upsilon_star\n10,2,\n100,4.5,0.25\n");
    CHECK(to_json(c)["kind"] == "UPPER_COHERENT");
    CHECK(to_json(c)["points"][0]["upsilon_star"].is_null());

    const auto report = prelog_report(onoff_model(1.0 / 16.0), std::vector<double>{1e4}, default_upsilon_grid());
    std::ostringstream rs;
    write_csv(rs, report);
    CHECK(rs.str().find("# note1-gap: true\n") != std::string::npos);
    CHECK(rs.str().find("# analytic_limit: none\n") != std::string::npos);
    CHECK(to_json(report)["upper_prelog"] == 0.5);
    CHECK(to_json(report)["analytic_limit"].is_null());
}
