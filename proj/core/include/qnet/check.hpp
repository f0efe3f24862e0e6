#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qnet/net.hpp"
#include "qnet/reflexive.hpp"
#include "qnet/term.hpp"

namespace qnet {

struct CheckOptions {
    std::uint64_t seed = 1;
    /// Cases per theory (or per arrow) in each suite.
    std::size_t cases = 100;
};

struct SuiteReport {
    std::string name;
    std::size_t cases = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

/// monad, netfunctor, adjA, adjB, freecat, symmetry.
const std::vector<std::string>& suite_names();

/// Runs one suite; "all" is not accepted here. "monad" is also available in
/// halves as "monad.laws" and "monad.morphisms". Each case draws from its own
/// generator seeded by (seed, case index), so reports are reproducible.
SuiteReport run_suite(std::string_view name, const CheckOptions& options);

namespace sample {

using Rng = std::mt19937_64;

Rng case_rng(std::uint64_t seed, std::uint64_t index);

std::vector<Name> place_names(std::size_t n, std::string_view prefix = "p");
/// Random element over `places` with at most `max_size` letters.
FreeElem element(Rng& rng, Theory theory, const std::vector<Name>& places, std::size_t max_size);
QNet net(Rng& rng, Theory theory, std::size_t max_places, std::size_t max_transitions, std::size_t max_payload);
/// A valid morphism out of `source` into a freshly built target.
NetMorphism morphism_from(Rng& rng, const QNet& source, std::size_t max_places);
/// A well-typed term over `net` starting at `from`, with up to `max_layers`
/// sequential steps.
MorTerm term_from(Rng& rng, const QNet& net, const FreeElem& from, std::size_t max_layers);

} // namespace sample

} // namespace qnet
