#include "helpers.hpp"

using namespace qnet;
using testing::elem;
using testing::error_kind;

TEST_CASE("canonical payloads") {
    CHECK(FreeElem::from_names(Theory::cmon, {"b", "a", "b"}).counts() == std::map<Name, std::int64_t>{{"a", 1}, {"b", 2}});
    CHECK(FreeElem::from_names(Theory::semilat, {"b", "a", "b"}).counts() ==
          std::map<Name, std::int64_t>{{"a", 1}, {"b", 1}});
    CHECK(FreeElem::from_names(Theory::mon, {"b", "a", "b"}).size() == 3);
    CHECK(FreeElem::from_counts(Theory::abgrp, {{"a", 0}, {"b", -2}}).counts() ==
          std::map<Name, std::int64_t>{{"b", -2}});
    CHECK(error_kind([] { FreeElem::from_counts(Theory::cmon, {{"a", -1}}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("group words reduce freely") {
    const auto w = FreeElem::from_word(Theory::grp, {{"a", false}, {"b", false}, {"b", true}, {"a", true}, {"c", false}});
    CHECK(w == unit(Theory::grp, "c"));
    const auto x = elem(Theory::grp, R"([["a","+"],["b","-"]])");
    CHECK(combine(x, invert(x)).empty());
    CHECK(combine(invert(x), x).empty());
    CHECK(is_canonical(x));
}

TEST_CASE("combine respects the theory") {
    const auto a = unit(Theory::mon, "a");
    const auto b = unit(Theory::mon, "b");
    CHECK(combine(a, b) != combine(b, a));
    CHECK(combine(unit(Theory::cmon, "a"), unit(Theory::cmon, "b")) ==
          combine(unit(Theory::cmon, "b"), unit(Theory::cmon, "a")));
    CHECK(combine(unit(Theory::semilat, "a"), unit(Theory::semilat, "a")) == unit(Theory::semilat, "a"));
    CHECK(error_kind([&] { combine(a, unit(Theory::cmon, "b")); }) == ErrorKind::theory_mismatch);
    CHECK(error_kind([&] { invert(a); }) == ErrorKind::unsupported_theory);
}

TEST_CASE("power and difference") {
    const auto ab = FreeElem::from_names(Theory::abgrp, {"a", "b"});
    CHECK(power(ab, -2) == FreeElem::from_counts(Theory::abgrp, {{"a", -2}, {"b", -2}}));
    CHECK(power(ab, 0).empty());
    const auto x = FreeElem::from_names(Theory::cmon, {"a", "a", "b"});
    const auto y = FreeElem::from_names(Theory::cmon, {"a"});
    CHECK(leq(y, x));
    CHECK_FALSE(leq(x, y));
    CHECK(difference(x, y) == FreeElem::from_names(Theory::cmon, {"a", "b"}));
}

TEST_CASE("lift and extend are homomorphic") {
    const NameMap g{{"a", "x"}, {"b", "x"}};
    CHECK(lift(g, FreeElem::from_names(Theory::cmon, {"a", "b"})) == FreeElem::from_counts(Theory::cmon, {{"x", 2}}));
    CHECK(lift(g, FreeElem::from_names(Theory::semilat, {"a", "b"})) == unit(Theory::semilat, "x"));
    CHECK(error_kind([&] { lift(g, unit(Theory::cmon, "z")); }) == ErrorKind::unmapped_name);
    const std::map<Name, FreeElem> images{{"a", FreeElem::from_names(Theory::mon, {"x", "y"})},
                                          {"b", neutral(Theory::mon)}};
    CHECK(extend(images, FreeElem::from_names(Theory::mon, {"a", "b", "a"})) ==
          FreeElem::from_names(Theory::mon, {"x", "y", "x", "y"}));
}

TEST_CASE("translations along the arrows") {
    const auto w = FreeElem::from_names(Theory::mon, {"a", "b", "a"});
    CHECK(translate(Arrow::c, w) == FreeElem::from_counts(Theory::cmon, {{"a", 2}, {"b", 1}}));
    CHECK(translate(Arrow::a, translate(Arrow::c, w)) == FreeElem::from_names(Theory::semilat, {"a", "b"}));
    CHECK(translate(Arrow::e, translate(Arrow::d, w)) == translate(Arrow::b, translate(Arrow::c, w)));
    const auto g = elem(Theory::grp, R"([["a","+"],["b","-"],["a","+"]])");
    CHECK(translate(Arrow::e, g) == FreeElem::from_counts(Theory::abgrp, {{"a", 2}, {"b", -1}}));
    for (Arrow f : all_arrows) CHECK(arrow_from_string(to_string(f)) == f);
    CHECK(error_kind([] { arrow_from_string("z"); }) == ErrorKind::parse_error);
}

TEST_CASE("theory names roundtrip") {
    for (Theory q : all_theories) CHECK(theory_from_string(to_string(q)) == q);
    CHECK(is_word_theory(Theory::grp));
    CHECK_FALSE(is_commutative(Theory::mon));
    CHECK(has_inverses(Theory::abgrp));
}
