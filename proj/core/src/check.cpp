#include "qnet/check.hpp"

#include <array>
#include <sstream>

#include "qnet/freecat.hpp"
#include "qnet/symmetry.hpp"

namespace qnet {

namespace sample {

Rng case_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

std::vector<Name> place_names(std::size_t n, std::string_view prefix) {
    std::vector<Name> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
    return out;
}

namespace {

std::size_t below(Rng& rng, std::size_t n) { return n == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(Rng& rng) { return below(rng, 2) == 1; }

} // namespace

FreeElem element(Rng& rng, Theory theory, const std::vector<Name>& places, std::size_t max_size) {
    if (places.empty()) return neutral(theory);
    const std::size_t n = below(rng, max_size + 1);
    std::vector<Letter> word;
    for (std::size_t i = 0; i < n; ++i) {
        word.push_back({places[below(rng, places.size())], has_inverses(theory) && coin(rng)});
    }
    return FreeElem::from_word(theory, word);
}

QNet net(Rng& rng, Theory theory, std::size_t max_places, std::size_t max_transitions, std::size_t max_payload) {
    const auto places = place_names(1 + below(rng, max_places));
    QNet out{theory, {places.begin(), places.end()}, {}};
    const std::size_t n = below(rng, max_transitions + 1);
    for (std::size_t i = 0; i < n; ++i) {
        out.transitions["t" + std::to_string(i)] =
            Arcs{element(rng, theory, places, max_payload), element(rng, theory, places, max_payload)};
    }
    return out;
}

NetMorphism morphism_from(Rng& rng, const QNet& source, std::size_t max_places) {
    const auto places = place_names(1 + below(rng, max_places), "q");
    NetMorphism h{source, QNet{source.theory, {places.begin(), places.end()}, {}}, {}, {}};
    for (const auto& p : source.places) h.g[p] = places[below(rng, places.size())];
    std::size_t fresh = 0;
    for (const auto& [t, a] : source.transitions) {
        const Arcs image{lift(h.g, a.src), lift(h.g, a.tgt)};
        Name chosen;
        for (const auto& [u, b] : h.target.transitions) {
            if (b == image && coin(rng)) chosen = u;
        }
        if (chosen.empty()) {
            chosen = "u" + std::to_string(fresh++);
            h.target.transitions[chosen] = image;
        }
        h.f[t] = chosen;
    }
    if (coin(rng)) {
        h.target.transitions["u" + std::to_string(fresh)] =
            Arcs{element(rng, source.theory, places, 2), element(rng, source.theory, places, 2)};
    }
    return h;
}

MorTerm term_from(Rng& rng, const QNet& net, const FreeElem& from, std::size_t max_layers) {
    const std::vector<std::pair<Name, Arcs>> ts(net.transitions.begin(), net.transitions.end());
    FreeElem cur = from;
    std::optional<MorTerm> out;
    const std::size_t steps = 1 + below(rng, max_layers);
    for (std::size_t k = 0; k < steps; ++k) {
        MorTerm step = MorTerm::ident(cur);
        if (has_inverses(net.theory)) {
            if (ts.empty()) break;
            const auto& [t, a] = ts[below(rng, ts.size())];
            const bool inv = coin(rng);
            const MorTerm g = inv ? MorTerm::invert(MorTerm::gen(t)) : MorTerm::gen(t);
            const FreeElem s = inv ? invert(a.src) : a.src;
            if (net.theory == Theory::grp) step = MorTerm::combine(MorTerm::ident(combine(cur, invert(s))), g);
            else step = MorTerm::combine(g, MorTerm::ident(combine(invert(s), cur)));
        } else {
            const auto layers = single_layers(net, cur, 2);
            if (layers.empty()) break;
            step = to_term(LayeredForm{cur, {layers[below(rng, layers.size())]}});
        }
        cur = mor_tgt(step, net);
        out = out ? MorTerm::comp(step, *out) : step;
    }
    return out ? *out : MorTerm::ident(from);
}

} // namespace sample

namespace {

using sample::Rng;

std::size_t below(Rng& rng, std::size_t n) { return n == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

constexpr std::array<Theory, 5> all_theories{Theory::cmon, Theory::mon, Theory::abgrp, Theory::grp, Theory::semilat};
constexpr std::array<Arrow, 5> all_arrows{Arrow::a, Arrow::b, Arrow::c, Arrow::d, Arrow::e};

class Recorder {
  public:
    explicit Recorder(SuiteReport& r) : report_(r) {}

    void expect(bool ok, const std::string& where, const std::string& what) {
        if (!ok) report_.failures.push_back(where + ": " + what);
    }

    template <class F>
    void run_case(const std::string& where, F&& body) {
        ++report_.cases;
        try {
            body();
        } catch (const std::exception& e) {
            report_.failures.push_back(where + ": unexpected error: " + e.what());
        }
    }

  private:
    SuiteReport& report_;
};

std::string label(std::string_view group, std::size_t i) {
    std::ostringstream os;
    os << group << " case " << i;
    return os.str();
}

void monad_law_suite(const CheckOptions& o, Recorder& rec) {
    std::uint64_t index = 0;
    for (Theory q : all_theories) {
        for (std::size_t i = 0; i < o.cases; ++i, ++index) {
            const std::string where = label(to_string(q), i);
            rec.run_case(where, [&] {
                Rng rng = sample::case_rng(o.seed, index);
                const auto ps = sample::place_names(1 + below(rng, 4));
                const auto qs = sample::place_names(1 + below(rng, 4), "q");
                const auto rs = sample::place_names(1 + below(rng, 4), "r");
                const FreeElem x = sample::element(rng, q, ps, 4);
                const FreeElem y = sample::element(rng, q, ps, 4);
                const FreeElem z = sample::element(rng, q, ps, 4);
                std::map<Name, FreeElem> f, g, units;
                for (const auto& p : ps) {
                    f[p] = sample::element(rng, q, qs, 3);
                    units[p] = unit(q, p);
                }
                for (const auto& p : qs) g[p] = sample::element(rng, q, rs, 3);
                std::map<Name, FreeElem> gf;
                for (const auto& [p, fp] : f) gf[p] = extend(g, fp);

                for (const auto& p : ps) rec.expect(extend(f, unit(q, p)) == f[p], where, "left unit law");
                rec.expect(extend(units, x) == x, where, "right unit law");
                rec.expect(extend(g, extend(f, x)) == extend(gf, x), where, "associativity law");
                rec.expect(is_canonical(x) && is_canonical(combine(x, y)) && is_canonical(extend(f, x)), where,
                           "canonical form");
                rec.expect(combine(combine(x, y), z) == combine(x, combine(y, z)), where, "operation associative");
                rec.expect(combine(x, neutral(q)) == x && combine(neutral(q), x) == x, where, "neutral element");
                rec.expect(extend(f, combine(x, y)) == combine(extend(f, x), extend(f, y)), where,
                           "extension is a homomorphism");
                if (is_commutative(q)) rec.expect(combine(x, y) == combine(y, x), where, "commutativity");
                if (q == Theory::semilat) rec.expect(combine(x, x) == x, where, "idempotence");
                if (has_inverses(q)) rec.expect(combine(x, invert(x)) == neutral(q), where, "inverse");
                NameMap rename;
                std::map<Name, FreeElem> rename_units;
                for (const auto& p : ps) {
                    rename[p] = qs[below(rng, qs.size())];
                    rename_units[p] = unit(q, rename[p]);
                }
                rec.expect(lift(rename, x) == extend(rename_units, x), where, "lift is extension of units");
            });
        }
    }
}

void monad_morphism_suite(const CheckOptions& o, Recorder& rec) {
    std::uint64_t index = 1u << 20;
    for (Arrow a : all_arrows) {
        const Theory s = arrow_source(a);
        const Theory t = arrow_target(a);
        for (std::size_t i = 0; i < o.cases; ++i, ++index) {
            const std::string where = label(std::string("arrow ") + std::string(to_string(a)), i);
            rec.run_case(where, [&] {
                Rng rng = sample::case_rng(o.seed, index);
                const auto ps = sample::place_names(1 + below(rng, 4));
                const auto qs = sample::place_names(1 + below(rng, 4), "q");
                const FreeElem x = sample::element(rng, s, ps, 4);
                const FreeElem y = sample::element(rng, s, ps, 4);
                NameMap g;
                std::map<Name, FreeElem> f, tf;
                for (const auto& p : ps) {
                    g[p] = qs[below(rng, qs.size())];
                    f[p] = sample::element(rng, s, qs, 3);
                    tf[p] = translate(a, f[p]);
                }
                rec.expect(translate(a, lift(g, x)) == lift(g, translate(a, x)), where, "naturality square");
                rec.expect(translate(a, unit(s, ps[0])) == unit(t, ps[0]), where, "unit preserved");
                rec.expect(translate(a, extend(f, x)) == extend(tf, translate(a, x)), where, "multiplication preserved");
                rec.expect(translate(a, neutral(s)) == neutral(t), where, "neutral preserved");
                rec.expect(translate(a, combine(x, y)) == combine(translate(a, x), translate(a, y)), where,
                           "operation preserved");
                if (has_inverses(s)) {
                    rec.expect(translate(a, invert(x)) == invert(translate(a, x)), where, "inverse preserved");
                }
            });
        }
    }
}

void netfunctor_suite(const CheckOptions& o, Recorder& rec) {
    std::uint64_t index = 0;
    for (Arrow a : all_arrows) {
        for (std::size_t i = 0; i < o.cases; ++i, ++index) {
            const std::string where = label(std::string("arrow ") + std::string(to_string(a)), i);
            rec.run_case(where, [&] {
                Rng rng = sample::case_rng(o.seed, index);
                const QNet p = sample::net(rng, arrow_source(a), 4, 3, 3);
                const NetMorphism h1 = sample::morphism_from(rng, p, 4);
                const NetMorphism h2 = sample::morphism_from(rng, h1.target, 4);
                rec.expect(validate_morphism(h1).empty() && validate_morphism(h2).empty(), where,
                           "generated morphisms are valid");
                const NetMorphism fh1 = apply_net_functor(a, h1);
                const NetMorphism fh2 = apply_net_functor(a, h2);
                rec.expect(validate_net(apply_net_functor(a, p)).empty(), where, "image net is valid");
                rec.expect(validate_morphism(fh1).empty() && validate_morphism(fh2).empty(), where,
                           "image morphisms are valid");
                rec.expect(apply_net_functor(a, identity_morphism(p)) == identity_morphism(apply_net_functor(a, p)),
                           where, "identities preserved");
                rec.expect(apply_net_functor(a, compose(h2, h1)) == compose(fh2, fh1), where,
                           "composition preserved");
            });
        }
    }
}

// A reflexive net whose identities are existing loops when available.
ReflexiveQNet reflexive_net(Rng& rng, Theory q, std::size_t max_places, std::size_t max_transitions) {
    ReflexiveQNet r{sample::net(rng, q, max_places, max_transitions, 2), {}};
    for (const auto& p : r.net.places) {
        const FreeElem u = unit(q, p);
        Name chosen;
        for (const auto& [t, a] : r.net.transitions) {
            if (a.src == u && a.tgt == u && below(rng, 2) == 1) chosen = t;
        }
        if (chosen.empty()) {
            chosen = "e." + p;
            r.net.transitions[chosen] = Arcs{u, u};
        }
        r.e[p] = chosen;
    }
    return r;
}

void adj_a_suite(const CheckOptions& o, Recorder& rec) {
    std::uint64_t index = 0;
    for (Theory q : {Theory::cmon, Theory::semilat}) {
        for (std::size_t i = 0; i < o.cases; ++i, ++index) {
            const std::string where = label(to_string(q), i);
            rec.run_case(where, [&] {
                Rng rng = sample::case_rng(o.seed, index);
                const QNet p = sample::net(rng, q, 2, 2, 2);
                const ReflexiveQNet r = reflexive_net(rng, q, 2, 2);
                const auto left = enumerate_reflexive_morphisms(add_identities(p), r);
                const auto right = enumerate_morphisms(p, forget_identities(r));
                rec.expect(left.size() == right.size(), where,
                           "hom-set sizes differ: " + std::to_string(left.size()) + " vs " +
                               std::to_string(right.size()));
                for (const auto& h : left) {
                    const NetMorphism k = phi_A(h);
                    rec.expect(validate_morphism(k).empty(), where, "transpose is valid");
                    rec.expect(phi_A_inv(k, r) == h, where, "inverse transpose after transpose");
                }
                for (const auto& k : right) {
                    const ReflexiveMorphism h = phi_A_inv(k, r);
                    rec.expect(validate_reflexive_morphism(h).empty(), where, "inverse transpose is valid");
                    rec.expect(phi_A(h) == k, where, "transpose after inverse transpose");
                }
                const ReflexiveMorphism counit = counit_A(r);
                rec.expect(validate_reflexive_morphism(counit).empty(), where, "counit is valid");
                rec.expect(validate_morphism(unit_A(p)).empty(), where, "unit is valid");
            });
        }
    }
}

void adj_b_suite(const CheckOptions& o, Recorder& rec) {
    std::uint64_t index = 0;
    for (Theory q : all_theories) {
        for (std::size_t i = 0; i < o.cases; ++i, ++index) {
            const std::string where = label(to_string(q), i);
            rec.run_case(where, [&] {
                Rng rng = sample::case_rng(o.seed, index);
                const QGraph graph = free_edges(reflexive_net(rng, q, 3, 3));
                const std::vector<Name> gens(graph.generators.begin(), graph.generators.end());
                const std::vector<Name> vertices(graph.vertices.begin(), graph.vertices.end());

                NameMap rename;
                for (const auto& v : vertices) rename[v] = "x." + v;
                QNet p{q, {}, {}};
                std::map<Name, FreeElem> images;
                NameMap g;
                for (const auto& v : vertices) {
                    p.places.insert(rename[v]);
                    g[rename[v]] = v;
                }
                const std::size_t extras = below(rng, 2);
                for (std::size_t k = 0; k < extras; ++k) {
                    const Name y = "y." + std::to_string(k);
                    p.places.insert(y);
                    g[y] = vertices[below(rng, vertices.size())];
                }
                const std::size_t edges = 1 + below(rng, 3);
                for (std::size_t k = 0; k < edges; ++k) {
                    const FreeElem e = sample::element(rng, q, gens, 2);
                    const Name t = "u" + std::to_string(k);
                    p.transitions[t] = Arcs{lift(rename, edge_src(graph, e)), lift(rename, edge_tgt(graph, e))};
                    images[t] = e;
                }
                const ReflexiveQNet rp = add_identities(p);
                for (const auto& [place, t] : rp.e) images[t] = graph.ident.at(g.at(place));
                const GraphMorphism h{free_edges(rp), graph, images, g};
                rec.expect(validate_graph_morphism(h).empty(), where, "generated graph morphism is valid");

                const UnderlyingView view(graph);
                const ReflexiveMorphism k = phi_B(h, view);
                rec.expect(validate_reflexive_morphism(k).empty(), where, "transpose is valid");
                const GraphMorphism back = phi_B_inv(k, view);
                rec.expect(back == h, where, "inverse transpose after transpose");
                rec.expect(validate_graph_morphism(back).empty(), where, "all three squares commute");
                rec.expect(phi_B(back, view) == k, where, "transpose after inverse transpose");
            });
        }
    }
}

void freecat_suite(const CheckOptions& o, Recorder& rec) {
    std::uint64_t index = 0;
    for (Theory q : {Theory::cmon, Theory::mon, Theory::semilat, Theory::abgrp}) {
        for (std::size_t i = 0; i < o.cases; ++i, ++index) {
            const std::string where = label(to_string(q), i);
            rec.run_case(where, [&] {
                Rng rng = sample::case_rng(o.seed, index);
                const QNet net = sample::net(rng, q, 3, 3, 2);
                const std::vector<Name> places(net.places.begin(), net.places.end());
                const FreeElem x = sample::element(rng, q, places, 3);
                const FreeElem x2 = sample::element(rng, q, places, 2);
                const MorTerm f = sample::term_from(rng, net, x, 2);
                const MorTerm f2 = sample::term_from(rng, net, x2, 1);
                const MorTerm g = sample::term_from(rng, net, mor_tgt(f, net), 1);
                const MorTerm g2 = sample::term_from(rng, net, mor_tgt(f2, net), 1);
                const auto equal = [&](const MorTerm& a, const MorTerm& b) {
                    return mor_equal(a, b, net).kind == EqVerdict::Kind::equal;
                };

                const LayeredForm lf = layered(f, net);
                rec.expect(form_src(lf) == mor_src(f, net) && form_tgt(lf, net) == mor_tgt(f, net), where,
                           "layered form keeps the boundary");
                rec.expect(layered(to_term(lf), net) == lf, where, "term readback is exact");
                rec.expect(equal(MorTerm::comp(MorTerm::ident(mor_tgt(f, net)), f), f), where, "left identity");
                rec.expect(equal(MorTerm::comp(f, MorTerm::ident(x)), f), where, "right identity");
                rec.expect(equal(MorTerm::combine(MorTerm::comp(g, f), MorTerm::comp(g2, f2)),
                                 MorTerm::comp(MorTerm::combine(g, g2), MorTerm::combine(f, f2))),
                           where, "interchange law");
                if (is_commutative(q)) {
                    rec.expect(equal(MorTerm::combine(f, f2), MorTerm::combine(f2, f)), where, "commutativity");
                }
                if (q == Theory::semilat) rec.expect(equal(MorTerm::combine(f, f), f), where, "idempotence");
                if (q == Theory::abgrp) {
                    rec.expect(hom_nonempty_group(net, x, mor_tgt(f, net)), where, "lattice test finds a morphism");
                    const auto w = hom_group_witness(net, x, mor_tgt(f, net));
                    rec.expect(w && mor_src(*w, net) == x && mor_tgt(*w, net) == mor_tgt(f, net), where,
                               "witness is well typed");
                    rec.expect(equal(MorTerm::combine(f, MorTerm::invert(f)), MorTerm::ident(neutral(q))), where,
                               "inverse");
                }
            });
        }
    }
}

void symmetry_suite(const CheckOptions& o, Recorder& rec) {
    for (std::size_t i = 0; i < o.cases; ++i) {
        const std::string where = label("MON", i);
        rec.run_case(where, [&] {
            Rng rng = sample::case_rng(o.seed, 2 * i);
            const QNet net = sample::net(rng, Theory::mon, 3, 3, 2);
            const std::vector<Name> places(net.places.begin(), net.places.end());
            const FreeElem x = sample::element(rng, Theory::mon, places, 2);
            const FreeElem y = sample::element(rng, Theory::mon, places, 2);
            const auto equal = [&](const MorTerm& a, const MorTerm& b) {
                return sym_equal(a, b, net).kind == EqVerdict::Kind::equal;
            };
            rec.expect(equal(MorTerm::comp(braiding(y, x), braiding(x, y)), MorTerm::ident(combine(x, y))), where,
                       "braiding is involutive");
            rec.expect(equal(braiding(x, neutral(Theory::mon)), MorTerm::ident(x)), where, "unit braiding");
            for (const auto& [t, a] : net.transitions) {
                const MorTerm lhs = MorTerm::comp(braiding(a.tgt, y), MorTerm::combine(MorTerm::gen(t), MorTerm::ident(y)));
                const MorTerm rhs = MorTerm::comp(MorTerm::combine(MorTerm::ident(y), MorTerm::gen(t)), braiding(a.src, y));
                rec.expect(equal(lhs, rhs), where, "braiding is natural in " + t);
                const QNet flat = apply_net_functor(Arrow::c, net);
                rec.expect(mor_equal(forget_symmetries(lhs, Arrow::c), forget_symmetries(rhs, Arrow::c), flat).kind ==
                               EqVerdict::Kind::equal,
                           where, "forgetting symmetries preserves equality");
            }
        });
    }
    for (std::size_t i = 0; i < o.cases; ++i) {
        const std::string where = label("CMON linearization", i);
        rec.run_case(where, [&] {
            Rng rng = sample::case_rng(o.seed, 2 * i + 1);
            const QNet net = sample::net(rng, Theory::cmon, 3, 2, 3);
            const auto lins = linearizations(net);
            std::size_t expected = 1;
            for (const auto& [t, a] : net.transitions) expected *= multiset_orderings(a.src) * multiset_orderings(a.tgt);
            rec.expect(lins.size() == expected, where, "linearization count");
            for (const auto& l : lins) rec.expect(apply_net_functor(Arrow::c, l) == net, where, "linearization abelianizes back");
            rec.expect(linearization_sum(net).transitions.size() == expected * net.transitions.size(), where,
                       "summed net size");
        });
    }
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"monad", "netfunctor", "adjA", "adjB", "freecat", "symmetry"};
    return names;
}

SuiteReport run_suite(std::string_view name, const CheckOptions& options) {
    SuiteReport report;
    report.name = std::string(name);
    Recorder rec(report);
    if (name == "monad") {
        monad_law_suite(options, rec);
        monad_morphism_suite(options, rec);
    } else if (name == "monad.laws") monad_law_suite(options, rec);
    else if (name == "monad.morphisms") monad_morphism_suite(options, rec);
    else if (name == "netfunctor") netfunctor_suite(options, rec);
    else if (name == "adjA") adj_a_suite(options, rec);
    else if (name == "adjB") adj_b_suite(options, rec);
    else if (name == "freecat") freecat_suite(options, rec);
    else if (name == "symmetry") symmetry_suite(options, rec);
    else throw Error(ErrorKind::invalid_argument, "unknown suite '" + std::string(name) + "'");
    return report;
}

} // namespace qnet
