#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qnet/freecat.hpp"
#include "qnet/net.hpp"
#include "qnet/reflexive.hpp"
#include "qnet/term.hpp"

namespace qnet {

using Json = nlohmann::json;

// Element encodings: CMON/ABGRP {"a":2}, MON ["a","b"], GRP [["a","+"]],
// SEMILAT ["a","b"]. Decoders throw `parse_error` on malformed input.
Json encode(const FreeElem& x);
FreeElem decode_elem(const Json& j, Theory theory);

/// Compact canonical serialization, usable as a name.
std::string elem_key(const FreeElem& x);
FreeElem elem_from_key(Theory theory, const std::string& key);

Json encode(const QNet& net);
QNet decode_net(const Json& j);

/// {"f":{...},"g":{...}}; the nets travel separately.
Json encode(const NetMorphism& h);
NetMorphism decode_morphism(const Json& j, const QNet& source, const QNet& target);

Json encode(const ReflexiveQNet& r);
ReflexiveQNet decode_reflexive(const Json& j);

Json encode(const QGraph& graph);
QGraph decode_graph(const Json& j);

Json encode(const MorTerm& term);
MorTerm decode_term(const Json& j, Theory theory);

Json encode(const LayeredForm& form);

Json parse_json(const std::string& text);

} // namespace qnet
