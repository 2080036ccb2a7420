#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "ramf/eisenstein.hpp"
#include "ramf/json_io.hpp"

using namespace ramf;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = cli::run(args, o, e);
    return {c, o.str(), e.str()};
}

std::string fixture(const std::string& name) { return std::string(RAMF_FIXTURE_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("ramf_test_" + name)).string();
}

}  // namespace

TEST_CASE("characters subcommand") {
    auto r = run({"characters", "--modulus", "4"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["count"] == 2);
    CHECK(j["characters"][1]["values"][3][0].get<double>() == -1.0);
}

TEST_CASE("eisenstein subcommand") {
    auto r = run({"eisenstein", "--level", "1", "--weights", "1,1", "--z", "i", "--bound", "400"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    EisensteinSpec spec;
    cplx v = EisensteinSeries(spec)(kI);
    CHECK(complex_from_json(j["value"]) == v);
    CHECK(j["tail"].get<double>() > 0);
    auto g = run({"eisenstein", "--grid", "0,0.5,2,1,2,2", "--bound", "50"});
    REQUIRE(g.code == 0);
    CHECK(g.out.rfind("x,y,re,im\n", 0) == 0);
    CHECK(std::count(g.out.begin(), g.out.end(), '\n') == 5);
    auto bad = run({"eisenstein", "--level", "4", "--chi", "1", "--weights", "1,1"});
    CHECK(bad.code == 1);
}

TEST_CASE("complex point syntax") {
    auto a = Json::parse(run({"eisenstein", "--z", "1/3+2i", "--bound", "40"}).out);
    auto b = Json::parse(run({"eisenstein", "--z", "0.33333333333333331,2", "--bound", "40"}).out);
    CHECK(a["value"] == b["value"]);
}

TEST_CASE("check-fe on the fixture") {
    auto r = run({"check-fe", "--F", fixture("e11.json"), "--G", fixture("e11.json"), "--level", "1", "--D", "1", "--phi",
                  fixture("bump.json"), "--tol", "1e-6"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["verdict"] == "PASS");
}

TEST_CASE("check-converse exit codes") {
    auto ok = run({"check-converse", "--F1", fixture("e11.json"), "--F2", fixture("e11.json"), "--level", "1",
                   "--family-lo", "0.25", "--family-hi", "4"});
    CHECK(ok.code == 0);
    Json f = read_json_file(fixture("e11.json"));
    for (auto& t : f["terms"])
        if (t["k"] == -1 && t["n"] == 1) t["a"][0] = 1.1 * t["a"][0].get<double>();
    std::string p = temp_path("perturbed.json"), rep = temp_path("report.json");
    write_text_file(p, dump17(f));
    auto bad = run({"check-converse", "--F1", fixture("e11.json"), "--F2", p, "--level", "1", "--family-lo", "0.25",
                    "--family-hi", "4", "--report", rep});
    CHECK(bad.code == 2);
    auto j = read_json_file(rep);
    CHECK(j["verdict"] == "FAIL");
    CHECK(j["witnesses"][0]["D"] == 1);
    std::remove(p.c_str());
    std::remove(rep.c_str());
}

TEST_CASE("usage errors and help") {
    CHECK(run({"characters", "--bogus"}).code == 1);
    CHECK(run({"nosuch"}).code == 1);
    CHECK(run({}).code == 1);
    auto h = run({"check-fe", "--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("--tol") != std::string::npos);
}

TEST_CASE("config files sit under explicit flags") {
    std::string c = temp_path("config.json");
    write_text_file(c, "{\"modulus\": 5}");
    CHECK(Json::parse(run({"characters", "--config", c}).out)["count"] == 4);
    CHECK(Json::parse(run({"characters", "--config", c, "--modulus", "4"}).out)["count"] == 2);
    std::remove(c.c_str());
}

TEST_CASE("expansion subcommands") {
    auto e = run({"eval", "--form", fixture("e11.json"), "--z", "i"});
    REQUIRE(e.code == 0);
    cplx v = complex_from_json(Json::parse(e.out)["points"][0]["value"]);
    EisensteinSpec spec;
    CHECK(std::abs(v - EisensteinSeries(spec)(kI)) < 1e-8);
    auto op = run({"operators", "--form", fixture("e11.json"), "--op", "eigen-split", "--weights", "1,1"});
    REQUIRE(op.code == 0);
    CHECK(Json::parse(op.out)["lambda"] == -2);
    auto tw = run({"twist", "--form", fixture("e11.json"), "--D", "4", "--chi", "1"});
    REQUIRE(tw.code == 0);
    CHECK(Json::parse(tw.out)["M"] == 4);
    auto ls = run({"lseries", "--form", fixture("e11.json"), "--phi", fixture("bump.json")});
    REQUIRE(ls.code == 0);
    auto lj = Json::parse(ls.out);
    CHECK(std::abs(complex_from_json(lj["series"]["value"]) - complex_from_json(lj["integral"]["value"])) < 1e-6);
}

TEST_CASE("output does not depend on the thread count") {
    std::vector<std::string> a{"eisenstein", "--level", "4", "--weights", "2,2", "--z", "0.2+0.9i", "--threads", "1"};
    auto b = a;
    b.back() = "4";
    CHECK(run(a).out == run(b).out);
}
