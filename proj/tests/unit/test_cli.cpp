#include "helpers.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using qnet::Json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qnet");
    std::ostringstream out, err;
    const int code = qnet::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("qnet-test-" + name);
    std::ofstream(path) << body;
    return path.string();
}

const std::string chain =
    temp_file("chain.json", R"({"theory":"CMON","places":["a","b"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}}}})");

} // namespace

TEST_CASE("validate") {
    const Run ok = run({"validate", chain});
    CHECK(ok.code == 0);
    CHECK(Json::parse(ok.out)["valid"] == true);
    const auto bad = temp_file("bad.json", R"({"theory":"CMON","places":["a"],"transitions":{"t":{"src":{"z":1},"tgt":{}}}})");
    const Run r = run({"validate", bad});
    CHECK(r.code == 1);
    CHECK(Json::parse(r.out)["diagnostics"].size() == 1);
}

TEST_CASE("reach as JSON and DOT") {
    const Run r = run({"reach", chain, "--marking", R"({"a":2})", "--steps", "2"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["markings"].size() == 3);
    const Run d = run({"reach", chain, "--marking", R"({"a":2})", "--steps", "1", "--dot"});
    CHECK(d.code == 0);
    CHECK(d.out.rfind("digraph", 0) == 0);
}

TEST_CASE("translate and homset") {
    const auto mon = temp_file("mon.json", R"({"theory":"MON","places":["a","b"],"transitions":{"t":{"src":["a","b","a"],"tgt":["b"]}}})");
    const Run t = run({"translate", "--via", "c", mon});
    REQUIRE(t.code == 0);
    CHECK(Json::parse(t.out)["transitions"]["t"]["src"] == Json::parse(R"({"a":2,"b":1})"));
    const Run h = run({"homset", chain, "--from", R"({"a":2})", "--to", R"({"b":2})", "--layers", "2", "--width", "2"});
    REQUIRE(h.code == 0);
    CHECK(Json::parse(h.out)["classes"].size() == 1);
}

TEST_CASE("homgroup, lin and cones") {
    const auto g = temp_file("g.json", R"({"theory":"ABGRP","places":["a"],"transitions":{"t":{"src":{"a":2},"tgt":{}}}})");
    CHECK(Json::parse(run({"homgroup", g, "--from", R"({"a":1})", "--to", "{}"}).out)["nonempty"] == false);
    CHECK(Json::parse(run({"homgroup", g, "--from", R"({"a":2})", "--to", "{}"}).out)["nonempty"] == true);
    CHECK(Json::parse(run({"lin", chain}).out)["linearizations"].size() == 1);
    CHECK(Json::parse(run({"linsum", chain}).out)["transitions"].contains("0.t"));
    CHECK(Json::parse(run({"coproduct", chain, chain}).out)["net"]["places"].size() == 4);
    CHECK(Json::parse(run({"product", chain, chain}).out)["net"]["places"].size() == 4);
}

TEST_CASE("check suites") {
    const Run r = run({"check", "--suite", "freecat", "--cases", "10", "--seed", "3"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["suites"].size() == 1);
    CHECK(run({"check", "--suite", "freecat", "--cases", "10", "--seed", "3"}).out == r.out);
}

TEST_CASE("errors and exit codes") {
    const Run r = run({"reach", chain, "--marking", R"({"z":1})", "--steps", "1"});
    CHECK(r.code == 1);
    CHECK(Json::parse(r.err)["error"]["kind"] == "unmapped_name");
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"translate", "--via", "q", chain}).code == 2);
    CHECK(run({"validate", "/nonexistent/net.json"}).code == 1);
}
