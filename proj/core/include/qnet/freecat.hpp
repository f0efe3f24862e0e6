#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qnet/net.hpp"
#include "qnet/term.hpp"

namespace qnet {

inline constexpr std::size_t default_budget = 10000;

// A layer is an element of the free model on tagged slot names: "t:" + a
// transition fires, "p:" + a place idles. Its source (target) is the
// homomorphic extension of the slot sources (targets).
Name gen_slot(const Name& transition);
Name place_slot(const Name& place);
bool is_gen_slot(const Name& slot);
/// Strips the tag.
Name slot_name(const Name& slot);

FreeElem layer_src(const FreeElem& layer, const QNet& net);
FreeElem layer_tgt(const FreeElem& layer, const QNet& net);
/// Fired transitions (over transition names) and idle frame (over places).
FreeElem layer_fired(const FreeElem& layer);
FreeElem layer_frame(const FreeElem& layer);
FreeElem identity_layer(const FreeElem& object);

/// A composite of parallel steps. No layer is an identity.
struct LayeredForm {
    FreeElem start;
    std::vector<FreeElem> layers;

    friend auto operator<=>(const LayeredForm&, const LayeredForm&) = default;
    friend bool operator==(const LayeredForm&, const LayeredForm&) = default;
};

FreeElem form_src(const LayeredForm& form);
FreeElem form_tgt(const LayeredForm& form, const QNet& net);
std::string to_display(const LayeredForm& form);

/// Sequentializes a term: composites concatenate, operations distribute over
/// composites by padding the shorter operand with identities.
LayeredForm layered(const MorTerm& term, const QNet& net);
/// Drops identity layers; in SEMILAT removes idle places that every fired
/// transition both consumes and produces (they are absorbed by idempotence).
LayeredForm normalize(LayeredForm form, const QNet& net);
MorTerm to_term(const LayeredForm& form);

/// Forms one split or merge of adjacent layers away.
std::vector<LayeredForm> rewrite_neighbors(const LayeredForm& form, const QNet& net);
/// Pulls transitions into earlier layers while possible. Equal results prove
/// equality; different results prove nothing.
LayeredForm greedy_canonical(const LayeredForm& form, const QNet& net);

/// Generator occurrences: multiset (CMON, MON), signed vector (ABGRP, GRP) or
/// set (SEMILAT). Invariant under every equation of the free category.
FreeElem occurrences(const LayeredForm& form);

struct EqVerdict {
    enum class Kind { equal, distinct, unknown };
    Kind kind = Kind::unknown;
    std::string reason;
    std::vector<std::string> witness;
    std::size_t explored = 0;
};

std::string_view to_string(EqVerdict::Kind kind);

EqVerdict mor_equal(const MorTerm& a, const MorTerm& b, const QNet& net, std::size_t budget = default_budget);
EqVerdict form_equal(const LayeredForm& a, const LayeredForm& b, const QNet& net,
                     std::size_t budget = default_budget);

/// Every single parallel step out of `x` firing between 1 and `max_width`
/// transitions. Without a width, transitions with empty source make the set
/// infinite in CMON and MON and are rejected.
std::vector<FreeElem> single_layers(const QNet& net, const FreeElem& x, std::optional<std::size_t> max_width);

struct HomClass {
    LayeredForm form;
    MorTerm term;
};

std::vector<HomClass> hom_enumerate(const QNet& net, const FreeElem& x, const FreeElem& y, std::size_t max_layers,
                                    std::size_t max_width, std::size_t budget = default_budget);

struct ReachEdge {
    FreeElem from;
    FreeElem to;
    FreeElem layer;

    friend auto operator<=>(const ReachEdge&, const ReachEdge&) = default;
    friend bool operator==(const ReachEdge&, const ReachEdge&) = default;
};

struct ReachResult {
    std::vector<FreeElem> markings;
    std::vector<ReachEdge> edges;
};

/// Markings reachable from `m0` in at most `max_steps` parallel steps.
ReachResult reachable(const QNet& net, const FreeElem& m0, std::size_t max_steps,
                      std::optional<std::size_t> width = std::nullopt);

/// ABGRP only: is there a morphism x -> y? Decided by integer lattice
/// membership of y - x in the span of the transition effects.
bool hom_nonempty_group(const QNet& net, const FreeElem& x, const FreeElem& y);
std::optional<MorTerm> hom_group_witness(const QNet& net, const FreeElem& x, const FreeElem& y);

struct UnderlyingBound {
    std::size_t object_size = 1;
    std::size_t layers = 1;
    std::size_t width = 1;
    std::size_t budget = default_budget;
};

struct UnderlyingNet {
    QNet net;
    NetMorphism unit;
    bool truncated = true;
};

/// Finite truncation of the net underlying the free category: objects are
/// all markings up to `object_size` plus every arc, transitions are the hom
/// classes found within the bound. `unit` sends each transition to its class.
UnderlyingNet underlying_net(const QNet& net, const UnderlyingBound& bound);

} // namespace qnet
