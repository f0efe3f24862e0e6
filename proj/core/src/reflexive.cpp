#include "qnet/reflexive.hpp"

#include <algorithm>

#include "qnet/codec.hpp"

namespace qnet {

namespace {

bool has_identity_prefix(const Name& n) { return n.starts_with(identity_prefix); }

void check_e(const ReflexiveQNet& r, Diagnostics& out) {
    for (const auto& p : r.net.places) {
        auto it = r.e.find(p);
        if (it == r.e.end()) {
            out.push_back({"place " + p, "has no identity transition"});
            continue;
        }
        auto t = r.net.transitions.find(it->second);
        if (t == r.net.transitions.end()) {
            out.push_back({"place " + p, "identity '" + it->second + "' is not a transition"});
            continue;
        }
        const FreeElem u = unit(r.net.theory, p);
        if (t->second.src != u || t->second.tgt != u) {
            out.push_back({"place " + p, "identity '" + it->second + "' is not a loop on the place"});
        }
    }
    for (const auto& [p, t] : r.e) {
        if (!r.net.places.contains(p)) out.push_back({"e", "maps undeclared place '" + p + "'"});
    }
}

void require_empty(const Diagnostics& d, const std::string& what) {
    if (!d.empty()) throw Error(ErrorKind::invalid_argument, what + ": " + d.front().where + ": " + d.front().message);
}

// Recovers the reflexive net behind a graph whose identity images are single
// generators (the shape produced by free_edges).
ReflexiveQNet as_reflexive_net(const QGraph& graph) {
    ReflexiveQNet r;
    r.net.theory = graph.theory;
    r.net.places = graph.vertices;
    for (const auto& gen : graph.generators) r.net.transitions[gen] = Arcs{graph.src.at(gen), graph.tgt.at(gen)};
    for (const auto& [v, x] : graph.ident) {
        const auto names = x.support();
        if (names.size() != 1 || x != unit(graph.theory, *names.begin())) {
            throw Error(ErrorKind::invalid_argument, "graph identity at '" + v + "' is not a generator");
        }
        r.e[v] = *names.begin();
    }
    return r;
}

} // namespace

Diagnostics validate_reflexive(const ReflexiveQNet& r) {
    Diagnostics out = validate_net(r.net);
    check_e(r, out);
    return out;
}

Diagnostics validate_reflexive_morphism(const ReflexiveMorphism& h) {
    Diagnostics out = validate_reflexive(h.source);
    for (auto& d : validate_reflexive(h.target)) out.push_back(d);
    if (!out.empty()) return out;
    out = validate_morphism(NetMorphism{h.source.net, h.target.net, h.f, h.g});
    if (!out.empty()) return out;
    for (const auto& [p, t] : h.source.e) {
        const Name& image = h.f.at(t);
        const Name& expected = h.target.e.at(h.g.at(p));
        if (image != expected) {
            out.push_back({"place " + p, "identity square fails: f(e(p)) = " + image + " but e'(g(p)) = " + expected});
        }
    }
    return out;
}

void require_valid(const ReflexiveQNet& r) { require_empty(validate_reflexive(r), "invalid reflexive net"); }

void require_valid(const ReflexiveMorphism& h) {
    require_empty(validate_reflexive_morphism(h), "invalid reflexive morphism");
}

namespace {

ReflexiveQNet adjoin_identities(const QNet& net, const std::string& prefix) {
    ReflexiveQNet r{net, {}};
    for (const auto& p : net.places) {
        const Name id = prefix + p;
        const FreeElem u = unit(net.theory, p);
        r.net.transitions[id] = Arcs{u, u};
        r.e[p] = id;
    }
    return r;
}

// Shortest repetition of the identity prefix that no transition starts with.
// Only nets that already carry identities (such as forget(add_identities(P)))
// need more than one.
std::string fresh_identity_prefix(const QNet& net) {
    std::string prefix(identity_prefix);
    auto clashes = [&] {
        return std::any_of(net.transitions.begin(), net.transitions.end(),
                           [&](const auto& t) { return t.first.starts_with(prefix); });
    };
    while (clashes()) prefix += identity_prefix;
    return prefix;
}

} // namespace

ReflexiveQNet add_identities(const QNet& net) {
    require_valid(net);
    for (const auto& [t, arcs] : net.transitions) {
        if (has_identity_prefix(t)) {
            throw Error(ErrorKind::invalid_argument,
                        "transition '" + t + "' collides with the reserved identity prefix");
        }
    }
    return adjoin_identities(net, std::string(identity_prefix));
}

ReflexiveMorphism add_identities(const NetMorphism& h) {
    require_valid(h);
    ReflexiveMorphism out{adjoin_identities(h.source, fresh_identity_prefix(h.source)),
                          adjoin_identities(h.target, fresh_identity_prefix(h.target)), h.f, h.g};
    for (const auto& p : h.source.places) out.f[out.source.e.at(p)] = out.target.e.at(h.g.at(p));
    return out;
}

QNet forget_identities(const ReflexiveQNet& r) { return r.net; }

NetMorphism forget_identities(const ReflexiveMorphism& h) {
    return NetMorphism{h.source.net, h.target.net, h.f, h.g};
}

NetMorphism phi_A(const ReflexiveMorphism& h) {
    require_valid(h);
    QNet p = h.source.net;
    for (const auto& [place, t] : h.source.e) p.transitions.erase(t);
    NetMorphism out{p, h.target.net, {}, h.g};
    for (const auto& [t, arcs] : p.transitions) out.f[t] = h.f.at(t);
    return out;
}

ReflexiveMorphism phi_A_inv(const NetMorphism& k, const ReflexiveQNet& r) {
    require_valid(k);
    require_valid(r);
    if (!(k.target == r.net)) {
        throw Error(ErrorKind::ill_typed, "morphism target is not the underlying net of the reflexive net");
    }
    ReflexiveMorphism out{adjoin_identities(k.source, fresh_identity_prefix(k.source)), r, k.f, k.g};
    for (const auto& [p, t] : out.source.e) out.f[t] = r.e.at(k.g.at(p));
    return out;
}

NetMorphism unit_A(const QNet& net) {
    const ReflexiveQNet r = add_identities(net);
    NetMorphism out{net, r.net, {}, {}};
    for (const auto& [t, arcs] : net.transitions) out.f[t] = t;
    for (const auto& p : net.places) out.g[p] = p;
    return out;
}

ReflexiveMorphism counit_A(const ReflexiveQNet& r) {
    return phi_A_inv(identity_morphism(forget_identities(r)), r);
}

std::vector<ReflexiveMorphism> enumerate_reflexive_morphisms(const ReflexiveQNet& from, const ReflexiveQNet& to) {
    std::vector<ReflexiveMorphism> out;
    for (auto& h : enumerate_morphisms(from.net, to.net)) {
        bool ok = true;
        for (const auto& [p, t] : from.e) {
            if (h.f.at(t) != to.e.at(h.g.at(p))) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(ReflexiveMorphism{from, to, std::move(h.f), std::move(h.g)});
    }
    return out;
}

Diagnostics validate_graph(const QGraph& graph) {
    Diagnostics out;
    auto check = [&](const FreeElem& x, const std::set<Name>& allowed, const std::string& where) {
        if (x.theory() != graph.theory) {
            out.push_back({where, "element has the wrong theory"});
            return false;
        }
        for (const auto& n : x.support()) {
            if (!allowed.contains(n)) {
                out.push_back({where, "mentions unknown name '" + n + "'"});
                return false;
            }
        }
        return true;
    };
    bool structural = true;
    for (const auto& gen : graph.generators) {
        for (const auto* m : {&graph.src, &graph.tgt}) {
            auto it = m->find(gen);
            if (it == m->end()) {
                out.push_back({"generator " + gen, "missing source or target"});
                structural = false;
            } else {
                structural = check(it->second, graph.vertices, "generator " + gen) && structural;
            }
        }
    }
    for (const auto& v : graph.vertices) {
        auto it = graph.ident.find(v);
        if (it == graph.ident.end()) {
            out.push_back({"vertex " + v, "missing identity edge"});
            structural = false;
        } else {
            structural = check(it->second, graph.generators, "vertex " + v) && structural;
        }
    }
    if (!structural) return out;
    for (const auto& v : graph.vertices) {
        const FreeElem u = unit(graph.theory, v);
        const FreeElem& id = graph.ident.at(v);
        if (edge_src(graph, id) != u || edge_tgt(graph, id) != u) {
            out.push_back({"vertex " + v, "identity edge is not a loop on the vertex"});
        }
    }
    return out;
}

FreeElem edge_src(const QGraph& graph, const FreeElem& edge) {
    if (edge.empty()) return neutral(graph.theory);
    return extend(graph.src, edge);
}

FreeElem edge_tgt(const QGraph& graph, const FreeElem& edge) {
    if (edge.empty()) return neutral(graph.theory);
    return extend(graph.tgt, edge);
}

Diagnostics validate_graph_morphism(const GraphMorphism& h) {
    Diagnostics out = validate_graph(h.source);
    for (auto& d : validate_graph(h.target)) out.push_back(d);
    if (!out.empty()) return out;
    for (const auto& gen : h.source.generators) {
        auto it = h.f.find(gen);
        if (it == h.f.end()) {
            out.push_back({"generator " + gen, "not mapped"});
            continue;
        }
        if (it->second.theory() != h.target.theory) {
            out.push_back({"generator " + gen, "image has the wrong theory"});
            continue;
        }
        for (const auto& n : it->second.support()) {
            if (!h.target.generators.contains(n)) out.push_back({"generator " + gen, "image mentions unknown '" + n + "'"});
        }
    }
    for (const auto& v : h.source.vertices) {
        auto it = h.g.find(v);
        if (it == h.g.end() || !h.target.vertices.contains(it->second)) {
            out.push_back({"vertex " + v, "not mapped to a target vertex"});
        }
    }
    if (!out.empty()) return out;
    for (const auto& gen : h.source.generators) {
        const FreeElem& image = h.f.at(gen);
        if (edge_src(h.target, image) != lift(h.g, h.source.src.at(gen))) {
            out.push_back({"generator " + gen, "source square fails"});
        }
        if (edge_tgt(h.target, image) != lift(h.g, h.source.tgt.at(gen))) {
            out.push_back({"generator " + gen, "target square fails"});
        }
    }
    for (const auto& v : h.source.vertices) {
        const FreeElem& id = h.source.ident.at(v);
        const FreeElem image = id.empty() ? neutral(h.target.theory) : extend(h.f, id);
        if (image != h.target.ident.at(h.g.at(v))) out.push_back({"vertex " + v, "identity square fails"});
    }
    return out;
}

QGraph free_edges(const ReflexiveQNet& r) {
    require_valid(r);
    QGraph graph{r.net.theory, {}, r.net.places, {}, {}, {}};
    for (const auto& [t, arcs] : r.net.transitions) {
        graph.generators.insert(t);
        graph.src[t] = arcs.src;
        graph.tgt[t] = arcs.tgt;
    }
    for (const auto& [p, t] : r.e) graph.ident[p] = unit(r.net.theory, t);
    return graph;
}

GraphMorphism free_edges(const ReflexiveMorphism& h) {
    require_valid(h);
    GraphMorphism out{free_edges(h.source), free_edges(h.target), {}, h.g};
    for (const auto& [t, image] : h.f) out.f[t] = unit(h.target.net.theory, image);
    return out;
}

UnderlyingView::UnderlyingView(QGraph graph) : graph_(std::move(graph)) {
    require_empty(validate_graph(graph_), "invalid graph");
}

Name UnderlyingView::name_of(const FreeElem& edge) const {
    Name n = elem_key(edge);
    std::lock_guard lock(mutex_);
    names_.emplace(n, edge);
    return n;
}

FreeElem UnderlyingView::edge_of(const Name& name) const {
    {
        std::lock_guard lock(mutex_);
        auto it = names_.find(name);
        if (it != names_.end()) return it->second;
    }
    FreeElem edge;
    try {
        edge = elem_from_key(graph_.theory, name);
    } catch (const Error&) {
        throw Error(ErrorKind::unmapped_name, "'" + name + "' does not name an edge");
    }
    for (const auto& n : edge.support()) {
        if (!graph_.generators.contains(n)) {
            throw Error(ErrorKind::unmapped_name, "edge '" + name + "' mentions unknown generator '" + n + "'");
        }
    }
    std::lock_guard lock(mutex_);
    names_.emplace(name, edge);
    return edge;
}

Arcs UnderlyingView::arcs(const FreeElem& edge) const {
    {
        std::lock_guard lock(mutex_);
        auto it = arcs_.find(edge);
        if (it != arcs_.end()) return it->second;
    }
    Arcs a{edge_src(graph_, edge), edge_tgt(graph_, edge)};
    std::lock_guard lock(mutex_);
    arcs_.emplace(edge, a);
    return a;
}

Name UnderlyingView::identity(const Name& vertex) const { return name_of(graph_.ident.at(vertex)); }

ReflexiveQNet UnderlyingView::materialize(const std::vector<FreeElem>& edges) const {
    ReflexiveQNet r;
    r.net.theory = graph_.theory;
    r.net.places = graph_.vertices;
    for (const auto& edge : edges) r.net.transitions[name_of(edge)] = arcs(edge);
    for (const auto& v : graph_.vertices) {
        const FreeElem& id = graph_.ident.at(v);
        r.net.transitions[name_of(id)] = arcs(id);
        r.e[v] = name_of(id);
    }
    return r;
}

ReflexiveMorphism phi_B(const GraphMorphism& h, const UnderlyingView& view) {
    require_empty(validate_graph_morphism(h), "invalid graph morphism");
    if (!(h.target == view.graph())) throw Error(ErrorKind::ill_typed, "graph morphism does not land in the view's graph");
    const ReflexiveQNet source = as_reflexive_net(h.source);
    std::vector<FreeElem> images;
    for (const auto& [gen, image] : h.f) images.push_back(image);
    ReflexiveMorphism out{source, view.materialize(images), {}, h.g};
    for (const auto& [gen, image] : h.f) out.f[gen] = view.name_of(image);
    return out;
}

GraphMorphism phi_B_inv(const ReflexiveMorphism& k, const UnderlyingView& view) {
    require_valid(k);
    GraphMorphism out{free_edges(k.source), view.graph(), {}, k.g};
    for (const auto& [t, name] : k.f) {
        const FreeElem edge = view.edge_of(name);
        if (view.arcs(edge) != k.target.net.transitions.at(name)) {
            throw Error(ErrorKind::ill_typed, "transition '" + name + "' disagrees with the view");
        }
        out.f[t] = edge;
    }
    return out;
}

} // namespace qnet
