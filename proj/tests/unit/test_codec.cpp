#include "helpers.hpp"

using namespace qnet;
using testing::elem;
using testing::error_kind;
using testing::net_of;

TEST_CASE("element encodings roundtrip") {
    for (Theory q : all_theories) {
        const FreeElem x = q == Theory::grp ? elem(q, R"([["a","+"],["b","-"]])")
                                            : FreeElem::from_names(q, {"b", "a", "b"});
        CHECK(decode_elem(encode(x), q) == x);
        CHECK(elem_from_key(q, elem_key(x)) == x);
    }
    CHECK(encode(FreeElem::from_counts(Theory::abgrp, {{"a", -2}})) == parse_json(R"({"a":-2})"));
}

TEST_CASE("malformed input is a parse error") {
    CHECK(error_kind([] { parse_json("{"); }) == ErrorKind::parse_error);
    CHECK(error_kind([] { elem(Theory::cmon, R"(["a"])"); }) == ErrorKind::parse_error);
    CHECK(error_kind([] { elem(Theory::grp, R"([["a","*"]])"); }) == ErrorKind::parse_error);
    CHECK(error_kind([] { net_of(R"({"theory":"RING","places":[],"transitions":{}})"); }) != ErrorKind::ill_typed);
}

TEST_CASE("nets, terms and morphisms roundtrip") {
    const QNet net = net_of(R"({"theory":"MON","places":["a","b"],"transitions":{"t":{"src":["a","b"],"tgt":["b"]}}})");
    CHECK(decode_net(encode(net)) == net);
    const MorTerm term = MorTerm::comp(MorTerm::gen("t"), MorTerm::combine(MorTerm::ident(unit(Theory::mon, "a")),
                                                                             MorTerm::ident(unit(Theory::mon, "b"))));
    CHECK(decode_term(encode(term), Theory::mon) == term);
    const NetMorphism id = identity_morphism(net);
    CHECK(decode_morphism(encode(id), net, net) == id);
    const ReflexiveQNet r = add_identities(net);
    CHECK(decode_reflexive(encode(r)) == r);
    const QGraph g = free_edges(r);
    CHECK(decode_graph(encode(g)) == g);
}
