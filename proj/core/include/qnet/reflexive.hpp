#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string_view>
#include <vector>

#include "qnet/net.hpp"

namespace qnet {

/// A net with a chosen identity transition e(p) : p -> p for every place.
struct ReflexiveQNet {
    QNet net;
    NameMap e;

    friend bool operator==(const ReflexiveQNet&, const ReflexiveQNet&) = default;
};

/// A net morphism that additionally satisfies f(e(p)) = e'(g(p)).
struct ReflexiveMorphism {
    ReflexiveQNet source;
    ReflexiveQNet target;
    NameMap f;
    NameMap g;

    friend bool operator==(const ReflexiveMorphism&, const ReflexiveMorphism&) = default;
};

inline constexpr std::string_view identity_prefix = "id.";

Diagnostics validate_reflexive(const ReflexiveQNet& r);
Diagnostics validate_reflexive_morphism(const ReflexiveMorphism& h);
void require_valid(const ReflexiveQNet& r);
void require_valid(const ReflexiveMorphism& h);

/// Adjoins "id.p" for every place. Rejects nets that already use the prefix.
ReflexiveQNet add_identities(const QNet& net);
/// On morphisms; nets that already use the prefix get fresh identity names as
/// in phi_A_inv instead of being rejected.
ReflexiveMorphism add_identities(const NetMorphism& h);
QNet forget_identities(const ReflexiveQNet& r);
NetMorphism forget_identities(const ReflexiveMorphism& h);

/// Transpose of h : add_identities(P) -> R to P -> forget_identities(R).
/// P is recovered from h.source by dropping the identity transitions.
NetMorphism phi_A(const ReflexiveMorphism& h);
/// Transpose of k : P -> forget_identities(r); identities go to e'(g(p)).
/// When P already uses the identity prefix, the adjoined identities take the
/// shortest repeated prefix ("id.id.", ...) that is still free.
ReflexiveMorphism phi_A_inv(const NetMorphism& k, const ReflexiveQNet& r);

/// The transition inclusion P -> forget_identities(add_identities(P)).
NetMorphism unit_A(const QNet& net);
/// add_identities(forget_identities(r)) -> r, with identities named as in
/// phi_A_inv since forget_identities(r) usually carries "id." transitions.
ReflexiveMorphism counit_A(const ReflexiveQNet& r);

std::vector<ReflexiveMorphism> enumerate_reflexive_morphisms(const ReflexiveQNet& from,
                                                             const ReflexiveQNet& to);

/// Reflexive graph whose edges are the free model on `generators`. Only the
/// generator images of the structure maps are stored.
struct QGraph {
    Theory theory = Theory::cmon;
    std::set<Name> generators;
    std::set<Name> vertices;
    std::map<Name, FreeElem> src;   // generator -> element over vertices
    std::map<Name, FreeElem> tgt;   // generator -> element over vertices
    std::map<Name, FreeElem> ident; // vertex -> element over generators

    friend bool operator==(const QGraph&, const QGraph&) = default;
};

/// Generator images f : generator -> element over target generators, together
/// with the vertex map g.
struct GraphMorphism {
    QGraph source;
    QGraph target;
    std::map<Name, FreeElem> f;
    NameMap g;

    friend bool operator==(const GraphMorphism&, const GraphMorphism&) = default;
};

Diagnostics validate_graph(const QGraph& graph);
/// Checks the source, target and identity squares on generators.
Diagnostics validate_graph_morphism(const GraphMorphism& h);

/// Source/target of an arbitrary edge, by homomorphic extension.
FreeElem edge_src(const QGraph& graph, const FreeElem& edge);
FreeElem edge_tgt(const QGraph& graph, const FreeElem& edge);

QGraph free_edges(const ReflexiveQNet& r);
GraphMorphism free_edges(const ReflexiveMorphism& h);

/// The reflexive net underlying a Q-graph. Its transition set is the whole
/// free model on the generators, so it is never built in full: callers ask
/// for the finitely many edges they need. Transition names are canonical
/// element serializations. Lookups are memoized and safe to share.
class UnderlyingView {
  public:
    explicit UnderlyingView(QGraph graph);

    const QGraph& graph() const { return graph_; }
    Name name_of(const FreeElem& edge) const;
    /// Inverse of `name_of`; throws `unmapped_name` for malformed names.
    FreeElem edge_of(const Name& name) const;
    Arcs arcs(const FreeElem& edge) const;
    Name identity(const Name& vertex) const;

    /// Finite sub-net holding the given edges and every identity edge.
    ReflexiveQNet materialize(const std::vector<FreeElem>& edges) const;

  private:
    QGraph graph_;
    mutable std::mutex mutex_;
    mutable std::map<FreeElem, Arcs> arcs_;
    mutable std::map<Name, FreeElem> names_;
};

/// Transpose of h : free_edges(P) -> G. The target is the materialized view
/// over the images of h.
ReflexiveMorphism phi_B(const GraphMorphism& h, const UnderlyingView& view);
/// Transpose of k : P -> (sub-net of the view over G).
GraphMorphism phi_B_inv(const ReflexiveMorphism& k, const UnderlyingView& view);

} // namespace qnet
