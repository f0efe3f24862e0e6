#include <benchmark/benchmark.h>

#include "qnet/codec.hpp"
#include "qnet/freecat.hpp"
#include "qnet/lattice.hpp"
#include "qnet/symmetry.hpp"

using namespace qnet;

namespace {

QNet net_of(const char* json) { return decode_net(parse_json(json)); }

// t1 + ... + tn fired in one layer against the same firings one at a time.
void BM_MorEqualInterchange(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    QNet net{Theory::cmon, {}, {}};
    std::vector<MorTerm> gens;
    for (std::size_t i = 0; i < n; ++i) {
        const Name a = "a" + std::to_string(i), b = "b" + std::to_string(i), t = "t" + std::to_string(i);
        net.places.insert(a);
        net.places.insert(b);
        net.transitions[t] = {unit(Theory::cmon, a), unit(Theory::cmon, b)};
        gens.push_back(MorTerm::gen(t));
    }
    const MorTerm parallel = MorTerm::combine(gens);
    MorTerm serial = MorTerm::ident(mor_src(parallel, net));
    FreeElem done = neutral(Theory::cmon);
    FreeElem todo = mor_src(parallel, net);
    for (std::size_t i = 0; i < n; ++i) {
        const Arcs& arcs = net.transitions.at("t" + std::to_string(i));
        todo = difference(todo, arcs.src);
        const MorTerm step = MorTerm::combine({MorTerm::ident(done), gens[i], MorTerm::ident(todo)});
        serial = MorTerm::comp(step, serial);
        done = combine(done, arcs.tgt);
    }
    for (auto _ : state) benchmark::DoNotOptimize(mor_equal(parallel, serial, net));
}
BENCHMARK(BM_MorEqualInterchange)->DenseRange(2, 8, 2);

void BM_ReachableCmon(benchmark::State& state) {
    const QNet net = net_of(R"({"theory":"CMON","places":["a","b","c"],"transitions":{"t":{"src":{"a":1},"tgt":{"b":1}},"u":{"src":{"b":1},"tgt":{"c":1}},"v":{"src":{"c":1},"tgt":{"a":1}}}})");
    const FreeElem m = FreeElem::from_counts(Theory::cmon, {{"a", state.range(0)}});
    for (auto _ : state) benchmark::DoNotOptimize(reachable(net, m, 4));
}
BENCHMARK(BM_ReachableCmon)->RangeMultiplier(2)->Range(2, 8);

void BM_LatticeMembership(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < dim + 2; ++i) {
        IntVector v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = static_cast<std::int64_t>((i * 7 + j * 3) % 5) - 2;
        gens.push_back(v);
    }
    const IntVector target(dim, 1);
    for (auto _ : state) {
        const IntegerLattice l(gens, dim);
        benchmark::DoNotOptimize(l.coefficients(target));
    }
}
BENCHMARK(BM_LatticeMembership)->DenseRange(2, 10, 2);

void BM_SymEqualHexagon(benchmark::State& state) {
    const QNet net = net_of(R"({"theory":"MON","places":["a","b"],"transitions":{}})");
    const auto n = static_cast<std::size_t>(state.range(0));
    const FreeElem x = FreeElem::from_names(Theory::mon, std::vector<Name>(n, "a"));
    const FreeElem y = FreeElem::from_names(Theory::mon, std::vector<Name>(n, "b"));
    const FreeElem z = FreeElem::from_names(Theory::mon, std::vector<Name>(n, "a"));
    const MorTerm lhs = braiding(x, combine(y, z));
    const MorTerm rhs = MorTerm::comp(MorTerm::combine(MorTerm::ident(y), braiding(x, z)),
                                      MorTerm::combine(braiding(x, y), MorTerm::ident(z)));
    for (auto _ : state) benchmark::DoNotOptimize(sym_equal(lhs, rhs, net));
}
BENCHMARK(BM_SymEqualHexagon)->DenseRange(1, 4, 1);

} // namespace

BENCHMARK_MAIN();
