#include "helpers.hpp"

using namespace qnet;
using testing::elem;
using testing::error_kind;
using testing::net_of;

namespace {

const MorTerm t = MorTerm::gen("t");
const MorTerm s = MorTerm::gen("s");

MorTerm id(const FreeElem& x) { return MorTerm::ident(x); }

EqVerdict::Kind verdict(const MorTerm& a, const MorTerm& b, const QNet& net) { return mor_equal(a, b, net).kind; }

} // namespace

TEST_CASE("typing of terms") {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}}}})");
    CHECK(mor_src(MorTerm::combine(t, t), net) == FreeElem::from_names(Theory::cmon, {"a", "a"}));
    CHECK(error_kind([&] { mor_src(MorTerm::comp(t, t), net); }) == ErrorKind::ill_typed);
    CHECK(error_kind([&] { mor_src(MorTerm::invert(t), net); }) == ErrorKind::unsupported_theory);
    CHECK(error_kind([&] { mor_src(MorTerm::gen("nope"), net); }) == ErrorKind::unmapped_name);
}

TEST_CASE("interchange in CMON") {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b","c","d"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}},"s":{"src":{"c":1},"tgt":{"d":1}}}})");
    const FreeElem a = unit(Theory::cmon, "a"), b = unit(Theory::cmon, "b");
    const FreeElem c = unit(Theory::cmon, "c"), d = unit(Theory::cmon, "d");
    const MorTerm parallel = MorTerm::combine(t, s);
    const MorTerm t_first = MorTerm::comp(MorTerm::combine(id(b), s), MorTerm::combine(t, id(c)));
    const MorTerm s_first = MorTerm::comp(MorTerm::combine(t, id(d)), MorTerm::combine(id(a), s));
    CHECK(verdict(parallel, t_first, net) == EqVerdict::Kind::equal);
    CHECK(verdict(t_first, s_first, net) == EqVerdict::Kind::equal);
    CHECK(verdict(MorTerm::comp(id(b), t), t, net) == EqVerdict::Kind::equal);
}

TEST_CASE("collective tokens") {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b","c"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}},"s":{"src":{"b":1},"tgt":{"c":1}}}})");
    const FreeElem b = unit(Theory::cmon, "b");
    // Tokens are indistinguishable, so it does not matter which b the s consumes.
    CHECK(verdict(MorTerm::combine(MorTerm::comp(s, t), id(b)), MorTerm::combine(t, s), net) == EqVerdict::Kind::equal);

    // Two loops on a single token cannot be reordered.
    const QNet loops = net_of(R"({"theory":"CMON","places":["a"],"transitions":{"t":{"src":{"a":1},"tgt":{"a":1}},"s":{"src":{"a":1},"tgt":{"a":1}}}})");
    CHECK(verdict(MorTerm::comp(s, t), MorTerm::comp(t, s), loops) == EqVerdict::Kind::distinct);
    const FreeElem aa = FreeElem::from_counts(Theory::cmon, {{"a", 2}});
    const MorTerm ts = MorTerm::comp(MorTerm::combine(s, id(unit(Theory::cmon, "a"))), MorTerm::combine(t, id(unit(Theory::cmon, "a"))));
    const MorTerm st = MorTerm::comp(MorTerm::combine(t, id(unit(Theory::cmon, "a"))), MorTerm::combine(s, id(unit(Theory::cmon, "a"))));
    CHECK(mor_src(ts, loops) == aa);
    CHECK(verdict(ts, st, loops) == EqVerdict::Kind::equal);
}

TEST_CASE("MON keeps positions apart") {
    const QNet net = net_of(R"({"theory":"MON","places":["a","b"],"transitions":{"t":{"src":["a"],"tgt":["b"]}}})");
    const FreeElem a = unit(Theory::mon, "a"), b = unit(Theory::mon, "b");
    const MorTerm left = MorTerm::combine(t, id(a));
    const MorTerm right = MorTerm::combine(id(a), t);
    CHECK(mor_src(left, net) == mor_src(right, net));
    CHECK(verdict(left, right, net) == EqVerdict::Kind::distinct);
    const MorTerm both1 = MorTerm::comp(MorTerm::combine(id(b), t), MorTerm::combine(t, id(a)));
    const MorTerm both2 = MorTerm::comp(MorTerm::combine(t, id(b)), MorTerm::combine(id(a), t));
    CHECK(verdict(both1, both2, net) == EqVerdict::Kind::equal);
    CHECK(verdict(both1, MorTerm::combine(t, t), net) == EqVerdict::Kind::equal);
}

TEST_CASE("ABGRP inverses cancel") {
    const QNet net = net_of(R"({"theory":"ABGRP","places":["a","b"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}}}})");
    const FreeElem a = unit(Theory::abgrp, "a");
    const FreeElem b = unit(Theory::abgrp, "b");
    CHECK(mor_src(MorTerm::invert(t), net) == invert(a));
    CHECK(verdict(MorTerm::combine(t, MorTerm::invert(t)), id(neutral(Theory::abgrp)), net) == EqVerdict::Kind::equal);
    // Borrowing: t fired on a token of a that is paid back afterwards.
    const MorTerm borrowed = MorTerm::combine({t, MorTerm::invert(t), t});
    CHECK(verdict(borrowed, t, net) == EqVerdict::Kind::equal);
    CHECK(verdict(MorTerm::combine(t, t), MorTerm::combine(t, id(combine(b, invert(a)))), net) ==
          EqVerdict::Kind::distinct);
}

TEST_CASE("SEMILAT absorbs repeated firings") {
    const QNet net = net_of(R"({"theory":"SEMILAT","places":["a","b"],"transitions":{"t":{"src":["a"],"tgt":["a","b"]}}})");
    CHECK(verdict(MorTerm::combine(t, t), t, net) == EqVerdict::Kind::equal);
}

TEST_CASE("layered forms") {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b","c"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}},"s":{"src":{"b":1},"tgt":{"c":1}}}})");
    const LayeredForm f = layered(MorTerm::comp(s, t), net);
    CHECK(f.layers.size() == 2);
    CHECK(form_src(f) == unit(Theory::cmon, "a"));
    CHECK(form_tgt(f, net) == unit(Theory::cmon, "c"));
    CHECK(layered(to_term(f), net) == f);
    CHECK(occurrences(f) == FreeElem::from_names(Theory::cmon, {"s", "t"}));
    CHECK(layered(id(unit(Theory::cmon, "a")), net).layers.empty());
    const LayeredForm g = greedy_canonical(layered(MorTerm::comp(MorTerm::combine(t, id(unit(Theory::cmon, "c"))),
                                                                 MorTerm::combine(id(unit(Theory::cmon, "a")), s)),
                                                   net),
                                           net);
    CHECK(g.layers.size() == 1);
}

TEST_CASE("single layers and reachability") {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}}}})");
    const FreeElem aa = FreeElem::from_counts(Theory::cmon, {{"a", 2}});
    CHECK(single_layers(net, aa, std::nullopt).size() == 2);
    CHECK(single_layers(net, aa, 1).size() == 1);
    const ReachResult r = reachable(net, aa, 2);
    CHECK(r.markings.size() == 3);
    CHECK(r.edges.size() == 3);
    const QNet source = net_of(R"({"theory":"CMON","places":["a"],"transitions":{"t":{"src":{},"tgt":{"a":1}}}})");
    CHECK(error_kind([&] { single_layers(source, neutral(Theory::cmon), std::nullopt); }) ==
          ErrorKind::infinite_result);
    CHECK(reachable(source, neutral(Theory::cmon), 2, 1).markings.size() == 3);
}

TEST_CASE("hom-set enumeration") {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}}}})");
    const FreeElem aa = FreeElem::from_counts(Theory::cmon, {{"a", 2}});
    const FreeElem bb = FreeElem::from_counts(Theory::cmon, {{"b", 2}});
    CHECK(hom_enumerate(net, aa, bb, 2, 2).size() == 1);
    CHECK(hom_enumerate(net, aa, aa, 2, 2).size() == 1);
    CHECK(hom_enumerate(net, bb, aa, 2, 2).empty());
    const QNet mon = net_of(R"({"theory":"MON","places":["a","b"],"transitions":{"t":{"src":["a"],"tgt":["b"]}}})");
    const FreeElem ab = FreeElem::from_names(Theory::mon, {"a", "b"});
    CHECK(hom_enumerate(mon, FreeElem::from_names(Theory::mon, {"a", "a"}), FreeElem::from_names(Theory::mon, {"b", "b"}), 2, 2)
              .size() == 1);
    CHECK(hom_enumerate(mon, ab, ab, 1, 1).size() == 1);
}

TEST_CASE("group hom-sets") {
    const QNet net = net_of(R"({"theory":"ABGRP","places":["a","b"],"transitions":{"t":{"src":{"a":2},"tgt":{"b":1}}}})");
    const FreeElem a = unit(Theory::abgrp, "a");
    const FreeElem b = unit(Theory::abgrp, "b");
    CHECK(hom_nonempty_group(net, combine(a, a), b));
    CHECK(hom_nonempty_group(net, b, combine(a, a)));
    CHECK_FALSE(hom_nonempty_group(net, a, b));
    const auto w = hom_group_witness(net, neutral(Theory::abgrp), elem(Theory::abgrp, R"({"a":-4,"b":2})"));
    REQUIRE(w.has_value());
    CHECK(mor_tgt(*w, net) == elem(Theory::abgrp, R"({"a":-4,"b":2})"));
    const QNet cmon = net_of(R"({"theory":"CMON","places":["a"],"transitions":{}})");
    CHECK(error_kind([&] { hom_nonempty_group(cmon, neutral(Theory::cmon), neutral(Theory::cmon)); }) ==
          ErrorKind::unsupported_theory);
}

TEST_CASE("underlying net truncation") {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}}}})");
    const UnderlyingNet u = underlying_net(net, {2, 2, 2});
    CHECK(u.truncated);
    CHECK(validate_net(u.net).empty());
    CHECK(validate_morphism(u.unit).empty());
}
