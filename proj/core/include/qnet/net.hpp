#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qnet/theory.hpp"

namespace qnet {

struct Arcs {
    FreeElem src;
    FreeElem tgt;

    friend bool operator==(const Arcs&, const Arcs&) = default;
};

/// A Q-net: transitions with source and target in the free model on the places.
struct QNet {
    Theory theory = Theory::cmon;
    std::set<Name> places;
    std::map<Name, Arcs> transitions;

    friend bool operator==(const QNet&, const QNet&) = default;
};

struct Diagnostic {
    std::string where;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};
using Diagnostics = std::vector<Diagnostic>;

/// Pair of functions (f on transitions, g on places). Validity means both
/// squares s'f = M[g]s and t'f = M[g]t commute.
struct NetMorphism {
    QNet source;
    QNet target;
    NameMap f;
    NameMap g;

    friend bool operator==(const NetMorphism&, const NetMorphism&) = default;
};

Diagnostics validate_net(const QNet& net);
Diagnostics validate_morphism(const NetMorphism& h);

/// Throws `invalid_argument` carrying the first diagnostic.
void require_valid(const QNet& net);
void require_valid(const NetMorphism& h);

NetMorphism identity_morphism(const QNet& net);
/// `after` o `before`; requires before.target == after.source.
NetMorphism compose(const NetMorphism& after, const NetMorphism& before);

/// The functor Net(f): post-composes every arc with the monad morphism.
QNet apply_net_functor(Arrow arrow, const QNet& net);
/// On morphisms Net(f) is the identity on the underlying pair of functions.
NetMorphism apply_net_functor(Arrow arrow, const NetMorphism& h);

struct NetCone {
    QNet net;
    NetMorphism first;
    NetMorphism second;
};

/// Disjoint union tagged "L."/"R."; returns the two injections.
NetCone coproduct(const QNet& p1, const QNet& p2);

/// Places are pairs "(x,y)"; a transition is a pair of transitions together
/// with source and target elements over the product places whose marginals
/// are the two sources (resp. targets). Transition names are "(t1,t2)#k".
/// Only CMON, MON and SEMILAT have finite marginal fibers; ABGRP and GRP are
/// rejected with `infinite_result`.
NetCone product(const QNet& p1, const QNet& p2);

/// Every element u of M_Q(A x B) with lift(pi1)(u) == x and lift(pi2)(u) == y,
/// in deterministic order. Pair names follow `pair_name`.
std::vector<FreeElem> marginal_fiber(const FreeElem& x, const FreeElem& y);
Name pair_name(const Name& left, const Name& right);

/// All valid morphisms between two finite nets, by exhaustive search over
/// place maps. Intended for small nets.
std::vector<NetMorphism> enumerate_morphisms(const QNet& from, const QNet& to);

} // namespace qnet
