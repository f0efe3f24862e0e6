#include "helpers.hpp"

#include "oracles.hpp"
#include "qnet/check.hpp"

using namespace qnet;

namespace {

bool source_free(const QNet& net) {
    for (const auto& [t, a] : net.transitions) {
        if (a.src.empty()) return true;
    }
    return false;
}

} // namespace

TEST_CASE("rewrite moves preserve source, target and occurrences") {
    for (Theory q : {Theory::cmon, Theory::mon, Theory::semilat, Theory::abgrp}) {
        for (std::uint64_t i = 0; i < 40; ++i) {
            auto rng = sample::case_rng(11, i);
            const QNet net = sample::net(rng, q, 3, 3, 2);
            const FreeElem x = sample::element(rng, q, {net.places.begin(), net.places.end()}, 3);
            const LayeredForm f = layered(sample::term_from(rng, net, x, 3), net);
            for (const auto& g : rewrite_neighbors(f, net)) {
                CHECK(form_src(g) == form_src(f));
                CHECK(form_tgt(g, net) == form_tgt(f, net));
                CHECK(occurrences(g) == occurrences(f));
            }
            CHECK(form_equal(greedy_canonical(f, net), f, net).kind == EqVerdict::Kind::equal);
        }
    }
}

TEST_CASE("mor_equal agrees with firing-sequence oracles on random pairs") {
    std::size_t decided = 0;
    for (Theory q : {Theory::cmon, Theory::mon}) {
        for (std::uint64_t i = 0; i < 150; ++i) {
            auto rng = sample::case_rng(5, i);
            const QNet net = sample::net(rng, q, 2, 2, 2);
            const FreeElem x = sample::element(rng, q, {net.places.begin(), net.places.end()}, 2);
            const MorTerm a = sample::term_from(rng, net, x, 3);
            const MorTerm b = sample::term_from(rng, net, x, 3);
            if (mor_tgt(a, net) != mor_tgt(b, net)) continue;
            const EqVerdict v = mor_equal(a, b, net);
            if (v.kind == EqVerdict::Kind::unknown) continue;
            ++decided;
            const bool expected = q == Theory::cmon ? oracle::cmon_equal(net, a, b) : oracle::mon_equal(net, a, b);
            CHECK_MESSAGE((v.kind == EqVerdict::Kind::equal) == expected, to_display(a), " vs ", to_display(b));
        }
    }
    CHECK(decided > 20);
}

TEST_CASE("reachability matches the token game on random nets") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        auto rng = sample::case_rng(17, i);
        const QNet net = sample::net(rng, Theory::cmon, 3, 3, 2);
        if (source_free(net)) continue;
        const FreeElem m = sample::element(rng, Theory::cmon, {net.places.begin(), net.places.end()}, 3);
        std::set<oracle::Counts> mine;
        for (const auto& r : reachable(net, m, 3).markings) mine.insert(r.counts());
        CHECK(mine == oracle::token_game(net, m.counts(), 3));
    }
}

TEST_CASE("group hom-sets match bounded search on random nets") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto rng = sample::case_rng(23, i);
        const QNet net = sample::net(rng, Theory::abgrp, 2, 2, 2);
        const std::vector<Name> places(net.places.begin(), net.places.end());
        const auto points = oracle::box_search(net, 8);
        for (std::int64_t u = -2; u <= 2; ++u) {
            for (std::int64_t v = -2; v <= 2; ++v) {
                std::map<Name, std::int64_t> counts{{places[0], u}};
                std::vector<std::int64_t> point{u};
                if (places.size() > 1) {
                    counts[places[1]] = v;
                    point.push_back(v);
                } else if (v != 0) {
                    continue;
                }
                const FreeElem y = FreeElem::from_counts(Theory::abgrp, counts);
                CHECK(hom_nonempty_group(net, neutral(Theory::abgrp), y) == points.contains(point));
            }
        }
    }
}

TEST_CASE("SEMILAT reachable markings are sets") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto rng = sample::case_rng(29, i);
        const QNet net = sample::net(rng, Theory::semilat, 3, 3, 2);
        const FreeElem m = sample::element(rng, Theory::semilat, {net.places.begin(), net.places.end()}, 3);
        for (const auto& r : reachable(net, m, 2).markings) {
            for (const auto& [p, k] : r.counts()) CHECK(k == 1);
        }
    }
}
