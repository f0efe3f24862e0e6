#pragma once

#include <cstddef>
#include <vector>

#include "qnet/freecat.hpp"

namespace qnet {

/// gamma_{x,y}: x.y -> y.x as a block-swap permutation.
MorTerm braiding(const FreeElem& x, const FreeElem& y);

/// Equality in the free symmetric strict monoidal category on a MON (or GRP)
/// net. Terms are read as string diagrams and compared up to isomorphism,
/// with at most `budget` backtracking assignments. For GRP nets cancellation
/// of adjacent inverse wires is not modeled, so failures there are Unknown.
EqVerdict sym_equal(const MorTerm& a, const MorTerm& b, const QNet& net, std::size_t budget = default_budget);

/// Erases permutations and translates objects along `arrow`; the image lives
/// in the free category of apply_net_functor(arrow, net).
MorTerm forget_symmetries(const MorTerm& term, Arrow arrow);

/// Every pre-net (GRP net) whose abelianization is `net` (CMON or ABGRP),
/// trying every ordering of each source and target payload. ABGRP payloads
/// are ordered as positive letters followed by inverted negative letters.
std::vector<QNet> linearizations(const QNet& net);

/// Sum of all linearizations over the shared places; the copy of transition
/// t from linearization i is named "i.t".
QNet linearization_sum(const QNet& net);

/// Number of distinct orderings of a multiset: n! / prod(k!).
std::size_t multiset_orderings(const FreeElem& x);

} // namespace qnet
