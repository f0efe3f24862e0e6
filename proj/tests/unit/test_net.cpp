#include "helpers.hpp"

using namespace qnet;
using testing::error_kind;
using testing::net_of;

namespace {

const char* chain = R"({"theory":"CMON","places":["a","b"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}}}})";

}

TEST_CASE("validation reports unknown places") {
    QNet net = net_of(chain);
    CHECK(validate_net(net).empty());
    net.transitions["u"] = {unit(Theory::cmon, "z"), neutral(Theory::cmon)};
    const auto ds = validate_net(net);
    REQUIRE(ds.size() == 1);
    CHECK(ds.front().where.find("u") != std::string::npos);
    CHECK(error_kind([&] { require_valid(net); }) == ErrorKind::invalid_argument);
}

TEST_CASE("validation reports theory mismatches") {
    QNet net = net_of(chain);
    net.transitions["u"] = {unit(Theory::mon, "a"), neutral(Theory::cmon)};
    CHECK_FALSE(validate_net(net).empty());
}

TEST_CASE("morphism squares") {
    const QNet p = net_of(chain);
    const QNet q = net_of(R"({"theory":"CMON","places":["x"],"transitions":{"s":{"src":{"x":1},"tgt":{"x":1}}}})");
    const NetMorphism h{p, q, {{"t", "s"}}, {{"a", "x"}, {"b", "x"}}};
    CHECK(validate_morphism(h).empty());
    const NetMorphism bad{q, p, {{"s", "t"}}, {{"x", "a"}}};
    CHECK_FALSE(validate_morphism(bad).empty());
    CHECK(compose(h, identity_morphism(p)) == h);
    CHECK(compose(identity_morphism(q), h) == h);
}

TEST_CASE("enumerated morphisms are valid and distinct") {
    const QNet p = net_of(chain);
    const QNet q = net_of(R"({"theory":"CMON","places":["x","y"],"transitions":{"s":{"src":{"x":1},"tgt":{"y":1}},"r":{"src":{"y":1},"tgt":{"x":1}}}})");
    const auto hs = enumerate_morphisms(p, q);
    CHECK(hs.size() == 2);
    for (const auto& h : hs) CHECK(validate_morphism(h).empty());
    CHECK(hs[0] != hs[1]);
}

TEST_CASE("net functor translates arcs") {
    const QNet mon = net_of(R"({"theory":"MON","places":["a","b","c"],"transitions":{"t":{"src":["a","b","a"],"tgt":["c"]}}})");
    const QNet flat = apply_net_functor(Arrow::c, mon);
    CHECK(flat.theory == Theory::cmon);
    CHECK(flat.transitions.at("t").src == FreeElem::from_counts(Theory::cmon, {{"a", 2}, {"b", 1}}));
    CHECK(error_kind([&] { apply_net_functor(Arrow::a, mon); }) == ErrorKind::theory_mismatch);
}

TEST_CASE("coproduct injections") {
    const QNet p = net_of(chain);
    const NetCone c = coproduct(p, p);
    CHECK(c.net.places.size() == 4);
    CHECK(c.net.transitions.size() == 2);
    CHECK(validate_morphism(c.first).empty());
    CHECK(validate_morphism(c.second).empty());
}

TEST_CASE("product transitions enumerate marginal fibers") {
    const QNet p = net_of(R"({"theory":"CMON","places":["a"],"transitions":{"t":{"src":{"a":2},"tgt":{}}}})");
    const QNet q = net_of(R"({"theory":"CMON","places":["x","y"],"transitions":{"s":{"src":{"x":1,"y":1},"tgt":{}}}})");
    const NetCone c = product(p, q);
    CHECK(c.net.places.size() == 2);
    // {a,a} over {x,y}: the only fiber element is {(a,x),(a,y)}.
    CHECK(c.net.transitions.size() == 1);
    CHECK(validate_morphism(c.first).empty());
    CHECK(validate_morphism(c.second).empty());
    CHECK(marginal_fiber(FreeElem::from_names(Theory::cmon, {"a", "b"}), FreeElem::from_names(Theory::cmon, {"x", "y"}))
              .size() == 2);
    const QNet g = net_of(R"({"theory":"ABGRP","places":["a"],"transitions":{}})");
    CHECK(error_kind([&] { product(g, g); }) == ErrorKind::infinite_result);
}
