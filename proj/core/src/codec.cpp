#include "qnet/codec.hpp"

namespace qnet {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::parse_error, msg); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field '") + key + "'");
    return *it;
}

std::string as_string(const Json& j, const std::string& what) {
    if (!j.is_string()) fail(what + " must be a string");
    return j.get<std::string>();
}

NameMap decode_name_map(const Json& j, const std::string& what) {
    if (!j.is_object()) fail(what + " must be an object");
    NameMap out;
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = as_string(it.value(), what + " entry");
    return out;
}

Json encode_name_map(const NameMap& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

} // namespace

Json encode(const FreeElem& x) {
    switch (x.theory()) {
    case Theory::cmon:
    case Theory::abgrp: {
        Json j = Json::object();
        for (const auto& [name, k] : x.counts()) j[name] = k;
        return j;
    }
    case Theory::semilat: {
        Json j = Json::array();
        for (const auto& [name, k] : x.counts()) j.push_back(name);
        return j;
    }
    case Theory::mon: {
        Json j = Json::array();
        for (const auto& l : x.word()) j.push_back(l.name);
        return j;
    }
    case Theory::grp: {
        Json j = Json::array();
        for (const auto& l : x.word()) j.push_back(Json::array({l.name, l.inverted ? "-" : "+"}));
        return j;
    }
    }
    fail("unknown theory");
}

FreeElem decode_elem(const Json& j, Theory theory) {
    try {
        switch (theory) {
        case Theory::cmon:
        case Theory::abgrp: {
            if (!j.is_object()) fail(std::string(to_string(theory)) + " element must be an object of counts");
            std::map<Name, std::int64_t> counts;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!it.value().is_number_integer()) fail("count for '" + it.key() + "' must be an integer");
                counts[it.key()] = it.value().get<std::int64_t>();
            }
            return FreeElem::from_counts(theory, counts);
        }
        case Theory::mon:
        case Theory::semilat: {
            if (!j.is_array()) fail(std::string(to_string(theory)) + " element must be an array of names");
            std::vector<Name> names;
            for (const auto& e : j) names.push_back(as_string(e, "element entry"));
            return FreeElem::from_names(theory, names);
        }
        case Theory::grp: {
            if (!j.is_array()) fail("GRP element must be an array of [name, sign] pairs");
            std::vector<Letter> word;
            for (const auto& e : j) {
                if (!e.is_array() || e.size() != 2) fail("GRP letter must be a [name, sign] pair");
                const std::string sign = as_string(e[1], "sign");
                if (sign != "+" && sign != "-") fail("GRP sign must be \"+\" or \"-\"");
                word.push_back({as_string(e[0], "letter name"), sign == "-"});
            }
            return FreeElem::from_word(theory, word);
        }
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::parse_error) throw;
        fail(e.what());
    }
    fail("unknown theory");
}

std::string elem_key(const FreeElem& x) { return encode(x).dump(); }

FreeElem elem_from_key(Theory theory, const std::string& key) { return decode_elem(parse_json(key), theory); }

Json encode(const QNet& net) {
    Json j;
    j["theory"] = std::string(to_string(net.theory));
    j["places"] = Json::array();
    for (const auto& p : net.places) j["places"].push_back(p);
    j["transitions"] = Json::object();
    for (const auto& [t, arcs] : net.transitions) {
        j["transitions"][t] = Json{{"src", encode(arcs.src)}, {"tgt", encode(arcs.tgt)}};
    }
    return j;
}

QNet decode_net(const Json& j) {
    QNet net;
    try {
        net.theory = theory_from_string(as_string(field(j, "theory"), "theory"));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::parse_error) throw;
        fail(e.what());
    }
    const Json& places = field(j, "places");
    if (!places.is_array()) fail("places must be an array");
    for (const auto& p : places) {
        if (!net.places.insert(as_string(p, "place")).second) fail("duplicate place '" + p.get<std::string>() + "'");
    }
    const Json& ts = field(j, "transitions");
    if (!ts.is_object()) fail("transitions must be an object");
    for (auto it = ts.begin(); it != ts.end(); ++it) {
        net.transitions[it.key()] =
            Arcs{decode_elem(field(it.value(), "src"), net.theory), decode_elem(field(it.value(), "tgt"), net.theory)};
    }
    return net;
}

Json encode(const NetMorphism& h) { return Json{{"f", encode_name_map(h.f)}, {"g", encode_name_map(h.g)}}; }

NetMorphism decode_morphism(const Json& j, const QNet& source, const QNet& target) {
    return NetMorphism{source, target, decode_name_map(field(j, "f"), "f"), decode_name_map(field(j, "g"), "g")};
}

Json encode(const ReflexiveQNet& r) {
    Json j = encode(r.net);
    j["e"] = encode_name_map(r.e);
    return j;
}

ReflexiveQNet decode_reflexive(const Json& j) { return ReflexiveQNet{decode_net(j), decode_name_map(field(j, "e"), "e")}; }

Json encode(const QGraph& graph) {
    Json j;
    j["theory"] = std::string(to_string(graph.theory));
    j["generators"] = Json(std::vector<Name>(graph.generators.begin(), graph.generators.end()));
    j["vertices"] = Json(std::vector<Name>(graph.vertices.begin(), graph.vertices.end()));
    for (const char* key : {"src", "tgt", "ident"}) j[key] = Json::object();
    for (const auto& [k, v] : graph.src) j["src"][k] = encode(v);
    for (const auto& [k, v] : graph.tgt) j["tgt"][k] = encode(v);
    for (const auto& [k, v] : graph.ident) j["ident"][k] = encode(v);
    return j;
}

QGraph decode_graph(const Json& j) {
    QGraph g;
    try {
        g.theory = theory_from_string(as_string(field(j, "theory"), "theory"));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::parse_error) throw;
        fail(e.what());
    }
    for (const auto& n : field(j, "generators")) g.generators.insert(as_string(n, "generator"));
    for (const auto& n : field(j, "vertices")) g.vertices.insert(as_string(n, "vertex"));
    auto read = [&](const char* key, std::map<Name, FreeElem>& out) {
        const Json& m = field(j, key);
        if (!m.is_object()) fail(std::string(key) + " must be an object");
        for (auto it = m.begin(); it != m.end(); ++it) out[it.key()] = decode_elem(it.value(), g.theory);
    };
    read("src", g.src);
    read("tgt", g.tgt);
    read("ident", g.ident);
    return g;
}

Json encode(const MorTerm& term) {
    using K = MorTerm::Kind;
    switch (term.kind()) {
    case K::gen:
        return Json{{"gen", term.name()}};
    case K::ident:
        return Json{{"id", encode(term.object())}};
    case K::comp:
        return Json{{"comp", Json::array({encode(term.args()[0]), encode(term.args()[1])})}};
    case K::combine:
    case K::invert: {
        Json args = Json::array();
        for (const auto& a : term.args()) args.push_back(encode(a));
        return Json{{"op", term.kind() == K::combine ? "combine" : "invert"}, {"args", args}};
    }
    case K::perm:
        return Json{{"perm", Json{{"word", encode(term.object())}, {"map", term.map()}}}};
    }
    fail("unknown term kind");
}

MorTerm decode_term(const Json& j, Theory theory) {
    if (!j.is_object() || j.size() == 0) fail("term must be a non-empty object");
    if (j.contains("gen")) return MorTerm::gen(as_string(j["gen"], "gen"));
    if (j.contains("id")) return MorTerm::ident(decode_elem(j["id"], theory));
    if (j.contains("comp")) {
        const Json& c = j["comp"];
        if (!c.is_array() || c.size() != 2) fail("comp must be [after, before]");
        return MorTerm::comp(decode_term(c[0], theory), decode_term(c[1], theory));
    }
    if (j.contains("op")) {
        const std::string op = as_string(j["op"], "op");
        const Json& args = field(j, "args");
        if (!args.is_array()) fail("args must be an array");
        std::vector<MorTerm> xs;
        for (const auto& a : args) xs.push_back(decode_term(a, theory));
        if (op == "combine") return MorTerm::combine(std::move(xs));
        if (op == "invert") {
            if (xs.size() != 1) fail("invert takes exactly one argument");
            return MorTerm::invert(xs[0]);
        }
        fail("unknown operation '" + op + "'");
    }
    if (j.contains("perm")) {
        const Json& p = j["perm"];
        const Json& m = field(p, "map");
        if (!m.is_array()) fail("perm map must be an array");
        std::vector<std::size_t> map;
        for (const auto& x : m) {
            if (!x.is_number_unsigned()) fail("perm map entries must be non-negative integers");
            map.push_back(x.get<std::size_t>());
        }
        try {
            return MorTerm::perm(decode_elem(field(p, "word"), theory), std::move(map));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::parse_error) throw;
            fail(e.what());
        }
    }
    fail("unrecognized term");
}

Json encode(const LayeredForm& form) {
    Json layers = Json::array();
    for (const auto& l : form.layers) layers.push_back(encode(l));
    return Json{{"start", encode(form.start)}, {"layers", layers}};
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace qnet
