#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qnet/error.hpp"

namespace qnet {

using Name = std::string;
using NameMap = std::map<Name, Name>;

/// The closed catalog of algebraic theories a net can be generalized over.
enum class Theory { cmon, mon, abgrp, grp, semilat };

inline constexpr Theory all_theories[] = {Theory::cmon, Theory::mon, Theory::abgrp,
                                          Theory::grp, Theory::semilat};

std::string_view to_string(Theory theory);
Theory theory_from_string(std::string_view text);

/// Multiplication is commutative (payload is a count map).
bool is_commutative(Theory theory);
/// Payload is a word: MON and GRP.
bool is_word_theory(Theory theory);
bool has_inverses(Theory theory);

/// Morphisms of the theory diagram. Each sends generating operations to their
/// counterparts in the codomain.
enum class Arrow { a, b, c, d, e };

inline constexpr Arrow all_arrows[] = {Arrow::a, Arrow::b, Arrow::c, Arrow::d, Arrow::e};

std::string_view to_string(Arrow arrow);
Arrow arrow_from_string(std::string_view text);
Theory arrow_source(Arrow arrow);
Theory arrow_target(Arrow arrow);

/// One letter of a word payload; `inverted` is only ever set in GRP.
struct Letter {
    Name name;
    bool inverted = false;

    friend auto operator<=>(const Letter&, const Letter&) = default;
    friend bool operator==(const Letter&, const Letter&) = default;
};

/// Canonical element of the free model M_Q(S).
///
/// Commutative theories keep a sorted count map (CMON: counts >= 1, ABGRP:
/// nonzero integers, SEMILAT: every count is 1). Word theories keep a letter
/// sequence (MON: no inverted letters, GRP: freely reduced). Because the
/// representation is canonical, `==` decides equality in the free model.
class FreeElem {
  public:
    FreeElem() = default;
    /// The neutral element of `theory`.
    explicit FreeElem(Theory theory) : theory_(theory) {}

    /// Builds from counts. Zero entries are dropped; SEMILAT collapses positive
    /// counts to 1. Negative counts are rejected outside ABGRP. Word theories
    /// accept counts only when at most one name occurs.
    static FreeElem from_counts(Theory theory, const std::map<Name, std::int64_t>& counts);
    /// Builds from letters. Commutative theories count letters (a letter with
    /// `inverted` set contributes -1 in ABGRP); GRP reduces the word.
    static FreeElem from_word(Theory theory, const std::vector<Letter>& word);
    static FreeElem from_names(Theory theory, const std::vector<Name>& names);

    Theory theory() const { return theory_; }
    const std::map<Name, std::int64_t>& counts() const { return counts_; }
    const std::vector<Letter>& word() const { return word_; }

    bool empty() const { return counts_.empty() && word_.empty(); }
    /// Number of letters, counted with multiplicity and ignoring sign.
    std::size_t size() const;
    std::int64_t count(const Name& name) const;
    std::set<Name> support() const;
    /// Letters in payload order; commutative payloads expand counts in key
    /// order (negative counts produce inverted letters).
    std::vector<Letter> letters() const;

    friend auto operator<=>(const FreeElem&, const FreeElem&) = default;
    friend bool operator==(const FreeElem&, const FreeElem&) = default;

  private:
    Theory theory_ = Theory::cmon;
    std::map<Name, std::int64_t> counts_;
    std::vector<Letter> word_;
};

FreeElem unit(Theory theory, const Name& place);
FreeElem neutral(Theory theory);
FreeElem combine(const FreeElem& x, const FreeElem& y);
FreeElem combine(Theory theory, const FreeElem& x, const FreeElem& y);
FreeElem combine_all(Theory theory, const std::vector<FreeElem>& xs);
FreeElem invert(const FreeElem& x);
/// x combined with itself `k` times; negative `k` requires inverses.
FreeElem power(const FreeElem& x, std::int64_t k);

/// Homomorphic extension M_Q[g]; every occurring name must be mapped.
FreeElem lift(const NameMap& g, const FreeElem& x);
FreeElem lift(Theory theory, const NameMap& g, const FreeElem& x);

/// Kleisli extension: the unique model homomorphism sending each generator
/// `n` to `images.at(n)`. All images must live in `x.theory()`.
FreeElem extend(const std::map<Name, FreeElem>& images, const FreeElem& x);

/// Component of the monad morphism induced by `arrow`.
FreeElem translate(Arrow arrow, const FreeElem& x);

/// Multiset (CMON) or subset (SEMILAT) order.
bool leq(const FreeElem& x, const FreeElem& y);
/// y - x for CMON (requires leq) and ABGRP; set difference for SEMILAT.
FreeElem difference(const FreeElem& y, const FreeElem& x);

/// Checks the canonical-form invariants of the payload.
bool is_canonical(const FreeElem& x);

/// Renames every name by prepending `prefix`; keeps theory and shape.
FreeElem prefixed(const FreeElem& x, std::string_view prefix);

std::string to_display(const FreeElem& x);

} // namespace qnet
