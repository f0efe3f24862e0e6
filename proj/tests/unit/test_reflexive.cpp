#include "helpers.hpp"

using namespace qnet;
using testing::error_kind;
using testing::net_of;

namespace {

QNet loop_net() {
    return net_of(R"({"theory":"CMON","places":["a","b"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}},"u":{"src":{"b":1},"tgt":{"a":1}}}})");
}

} // namespace

TEST_CASE("identities are added and forgotten") {
    const ReflexiveQNet r = add_identities(loop_net());
    CHECK(validate_reflexive(r).empty());
    CHECK(r.e.at("a") == "id.a");
    CHECK(r.net.transitions.size() == 4);
    const QNet back = forget_identities(r);
    CHECK(back.transitions.size() == 4);
    CHECK(error_kind([&] { add_identities(back); }) == ErrorKind::invalid_argument);
}

TEST_CASE("phi_A is a bijection on small hom-sets") {
    const QNet p = loop_net();
    const ReflexiveQNet r = add_identities(loop_net());
    const auto left = enumerate_reflexive_morphisms(add_identities(p), r);
    const auto right = enumerate_morphisms(p, forget_identities(r));
    CHECK(left.size() == right.size());
    for (const auto& h : left) CHECK(phi_A_inv(phi_A(h), r) == h);
    for (const auto& k : right) CHECK(phi_A(phi_A_inv(k, r)) == k);
}

TEST_CASE("unit and counit satisfy the triangle identities") {
    const QNet p = loop_net();
    const ReflexiveQNet r = add_identities(p);
    CHECK(validate_morphism(unit_A(p)).empty());
    CHECK(validate_reflexive_morphism(counit_A(r)).empty());
    // counit o add_identities(unit) = id
    const ReflexiveMorphism lifted = add_identities(unit_A(p));
    const ReflexiveMorphism c = counit_A(add_identities(p));
    REQUIRE(lifted.target == c.source);
    for (const auto& [t, image] : lifted.f) CHECK(c.f.at(image) == t);
    for (const auto& [x, image] : lifted.g) CHECK(c.g.at(image) == x);
    // The adjoined identities of forget(add_identities(P)) avoid the names already there.
    CHECK(c.source.e.at("a") == "id.id.a");
}

TEST_CASE("free edges of a reflexive net") {
    const ReflexiveQNet r = add_identities(loop_net());
    const QGraph g = free_edges(r);
    CHECK(validate_graph(g).empty());
    CHECK(g.generators.size() == 4);
    const FreeElem tu = FreeElem::from_names(Theory::cmon, {"t", "u"});
    CHECK(edge_src(g, tu) == FreeElem::from_names(Theory::cmon, {"a", "b"}));
    CHECK(edge_tgt(g, tu) == FreeElem::from_names(Theory::cmon, {"a", "b"}));
}

TEST_CASE("underlying view names roundtrip") {
    const UnderlyingView view(free_edges(add_identities(loop_net())));
    const FreeElem tt = FreeElem::from_names(Theory::cmon, {"t", "t"});
    const Name n = view.name_of(tt);
    CHECK(view.edge_of(n) == tt);
    CHECK(view.arcs(tt).src == FreeElem::from_counts(Theory::cmon, {{"a", 2}}));
    const ReflexiveQNet sub = view.materialize({tt});
    CHECK(validate_reflexive(sub).empty());
    CHECK(sub.net.transitions.contains(n));
    CHECK(error_kind([&] { view.edge_of("not a key"); }) == ErrorKind::unmapped_name);
}

TEST_CASE("phi_B transposes through the view") {
    const ReflexiveQNet p = add_identities(loop_net());
    const QGraph g = free_edges(p);
    const UnderlyingView view(g);
    GraphMorphism h{free_edges(p), g, {}, {{"a", "a"}, {"b", "b"}}};
    for (const auto& n : g.generators) h.f[n] = unit(Theory::cmon, n);
    REQUIRE(validate_graph_morphism(h).empty());
    const ReflexiveMorphism k = phi_B(h, view);
    CHECK(validate_reflexive_morphism(k).empty());
    CHECK(phi_B_inv(k, view) == h);
}
