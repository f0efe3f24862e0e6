#include "helpers.hpp"

#include "oracles.hpp"
#include "qnet/symmetry.hpp"

using namespace qnet;
using testing::elem;
using testing::error_kind;
using testing::net_of;

namespace {

FreeElem word(std::vector<Name> names) { return FreeElem::from_names(Theory::mon, names); }

MorTerm id(const FreeElem& x) { return MorTerm::ident(x); }

} // namespace

TEST_CASE("braiding types") {
    const QNet net = net_of(R"({"theory":"MON","places":["a","b"],"transitions":{}})");
    const MorTerm g = braiding(word({"a"}), word({"b", "b"}));
    CHECK(mor_src(g, net) == word({"a", "b", "b"}));
    CHECK(mor_tgt(g, net) == word({"b", "b", "a"}));
}

TEST_CASE("symmetric equality") {
    const QNet net = net_of(R"({"theory":"MON","places":["a","b"],"transitions":{"t":{"src":["a"],"tgt":["b"]}}})");
    const MorTerm t = MorTerm::gen("t");
    const MorTerm g = braiding(word({"a"}), word({"b"}));
    CHECK(sym_equal(MorTerm::comp(braiding(word({"b"}), word({"a"})), g), id(word({"a", "b"})), net).kind ==
          EqVerdict::Kind::equal);
    // Without symmetries these differ; with them the braid slides through t.
    const MorTerm left = MorTerm::comp(braiding(word({"b"}), word({"a"})), MorTerm::combine(t, id(word({"a"}))));
    const MorTerm right = MorTerm::comp(MorTerm::combine(id(word({"a"})), t), braiding(word({"a"}), word({"a"})));
    CHECK(sym_equal(left, right, net).kind == EqVerdict::Kind::equal);
    CHECK(sym_equal(g, id(word({"a", "b"})), net).kind != EqVerdict::Kind::equal);
    // Swapping identical letters is not the identity in the symmetric category.
    CHECK(sym_equal(braiding(word({"a"}), word({"a"})), id(word({"a", "a"})), net).kind == EqVerdict::Kind::distinct);
}

TEST_CASE("forgetting symmetries lands in the commutative category") {
    const QNet net = net_of(R"({"theory":"MON","places":["a","b"],"transitions":{"t":{"src":["a"],"tgt":["b"]}}})");
    const MorTerm term = MorTerm::comp(braiding(word({"b"}), word({"a"})), MorTerm::combine(MorTerm::gen("t"), id(word({"a"}))));
    const QNet flat = apply_net_functor(Arrow::c, net);
    const MorTerm image = forget_symmetries(term, Arrow::c);
    CHECK(mor_src(image, flat) == translate(Arrow::c, mor_src(term, net)));
    CHECK(mor_tgt(image, flat) == translate(Arrow::c, mor_tgt(term, net)));
    CHECK(mor_equal(image, MorTerm::combine(MorTerm::gen("t"), id(unit(Theory::cmon, "a"))), flat).kind ==
          EqVerdict::Kind::equal);
}

TEST_CASE("linearizations of a commutative net") {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b","c"],"transitions":{"t":{"src":{"a":2,"b":1},"tgt":{"c":1}},"u":{"src":{"c":1},"tgt":{"a":1,"b":1}}}})");
    const auto lins = linearizations(net);
    CHECK(lins.size() == 3 * 2);
    for (const auto& l : lins) {
        CHECK(l.theory == Theory::mon);
        CHECK(validate_net(l).empty());
        CHECK(apply_net_functor(Arrow::c, l) == net);
    }
    const QNet sum = linearization_sum(net);
    CHECK(sum.transitions.size() == 12);
    CHECK(sum.transitions.contains("0.t"));
    CHECK(multiset_orderings(FreeElem::from_counts(Theory::cmon, {{"a", 2}, {"b", 2}})) == 6);
    CHECK(error_kind([] { linearizations(net_of(R"({"theory":"MON","places":[],"transitions":{}})")); }) ==
          ErrorKind::unsupported_theory);
}

TEST_CASE("ABGRP linearizations place negatives last") {
    const QNet net = net_of(R"({"theory":"ABGRP","places":["a","b"],"transitions":{"t":{"src":{"a":1,"b":-1},"tgt":{}}}})");
    const auto lins = linearizations(net);
    REQUIRE(lins.size() == 1);
    CHECK(apply_net_functor(Arrow::e, lins.front()) == net);
    CHECK(lins.front().transitions.at("t").src == elem(Theory::grp, R"([["a","+"],["b","-"]])"));
}

TEST_CASE("multiset orderings match brute force") {
    for (const auto& letters : std::vector<std::vector<Name>>{{}, {"a"}, {"a", "a", "b"}, {"a", "b", "c", "a", "b"}}) {
        CHECK(multiset_orderings(FreeElem::from_names(Theory::cmon, letters)) == oracle::distinct_orderings(letters));
    }
}
