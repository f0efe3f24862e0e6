#include "qnet/term.hpp"

#include <algorithm>
#include <sstream>

namespace qnet {

MorTerm MorTerm::gen(Name transition) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::gen;
    n->name = std::move(transition);
    return MorTerm(std::move(n));
}

MorTerm MorTerm::ident(FreeElem object) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::ident;
    n->object = std::move(object);
    return MorTerm(std::move(n));
}

MorTerm MorTerm::comp(MorTerm after, MorTerm before) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::comp;
    n->args = {std::move(after), std::move(before)};
    return MorTerm(std::move(n));
}

MorTerm MorTerm::combine(std::vector<MorTerm> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::combine;
    n->args = std::move(args);
    return MorTerm(std::move(n));
}

MorTerm MorTerm::combine(MorTerm left, MorTerm right) {
    return combine(std::vector<MorTerm>{std::move(left), std::move(right)});
}

MorTerm MorTerm::invert(MorTerm arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::invert;
    n->args = {std::move(arg)};
    return MorTerm(std::move(n));
}

MorTerm MorTerm::perm(FreeElem word, std::vector<std::size_t> map) {
    if (!is_word_theory(word.theory())) {
        throw Error(ErrorKind::unsupported_theory, "permutations act on words only");
    }
    std::vector<std::size_t> sorted = map;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) throw Error(ErrorKind::invalid_argument, "permutation map is not a bijection");
    }
    if (map.size() != word.word().size()) {
        throw Error(ErrorKind::invalid_argument, "permutation length differs from the word length");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::perm;
    n->object = std::move(word);
    n->map = std::move(map);
    return MorTerm(std::move(n));
}

std::size_t MorTerm::generator_count() const {
    if (kind() == Kind::gen) return 1;
    std::size_t n = 0;
    for (const auto& a : args()) n += a.generator_count();
    return n;
}

bool operator==(const MorTerm& a, const MorTerm& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.name == y.name && x.object == y.object && x.map == y.map && x.args == y.args;
}

namespace {

struct Ends {
    FreeElem src;
    FreeElem tgt;
};

Ends ends(const MorTerm& t, const QNet& net) {
    using K = MorTerm::Kind;
    switch (t.kind()) {
    case K::gen: {
        auto it = net.transitions.find(t.name());
        if (it == net.transitions.end()) throw Error(ErrorKind::unmapped_name, "unknown transition '" + t.name() + "'");
        return {it->second.src, it->second.tgt};
    }
    case K::ident:
        if (t.object().theory() != net.theory) throw Error(ErrorKind::theory_mismatch, "identity object has the wrong theory");
        for (const auto& p : t.object().support()) {
            if (!net.places.contains(p)) throw Error(ErrorKind::unmapped_name, "unknown place '" + p + "'");
        }
        return {t.object(), t.object()};
    case K::comp: {
        Ends after = ends(t.args()[0], net);
        Ends before = ends(t.args()[1], net);
        if (before.tgt != after.src) {
            throw Error(ErrorKind::ill_typed, "cannot compose: " + to_display(before.tgt) + " != " + to_display(after.src));
        }
        return {before.src, after.tgt};
    }
    case K::combine: {
        Ends out{neutral(net.theory), neutral(net.theory)};
        for (const auto& a : t.args()) {
            Ends e = ends(a, net);
            out.src = combine(out.src, e.src);
            out.tgt = combine(out.tgt, e.tgt);
        }
        return out;
    }
    case K::invert: {
        if (!has_inverses(net.theory)) {
            throw Error(ErrorKind::unsupported_theory, std::string(to_string(net.theory)) + " has no inverse operation");
        }
        Ends e = ends(t.args()[0], net);
        return {invert(e.src), invert(e.tgt)};
    }
    case K::perm: {
        if (t.object().theory() != net.theory) throw Error(ErrorKind::theory_mismatch, "permuted word has the wrong theory");
        const auto& w = t.object().word();
        std::vector<Letter> out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[t.map()[i]] = w[i];
        return {t.object(), FreeElem::from_word(net.theory, out)};
    }
    }
    throw Error(ErrorKind::ill_typed, "malformed term");
}

void display(const MorTerm& t, std::ostringstream& os) {
    using K = MorTerm::Kind;
    switch (t.kind()) {
    case K::gen:
        os << t.name();
        return;
    case K::ident:
        os << "id" << to_display(t.object());
        return;
    case K::comp:
        os << '(';
        display(t.args()[0], os);
        os << " . ";
        display(t.args()[1], os);
        os << ')';
        return;
    case K::combine:
        os << '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) os << " + ";
            display(t.args()[i], os);
        }
        os << ')';
        return;
    case K::invert:
        os << "inv(";
        display(t.args()[0], os);
        os << ')';
        return;
    case K::perm:
        os << "perm" << to_display(t.object()) << '[';
        for (std::size_t i = 0; i < t.map().size(); ++i) os << (i ? "," : "") << t.map()[i];
        os << ']';
        return;
    }
}

} // namespace

FreeElem mor_src(const MorTerm& term, const QNet& net) { return ends(term, net).src; }
FreeElem mor_tgt(const MorTerm& term, const QNet& net) { return ends(term, net).tgt; }

std::string to_display(const MorTerm& term) {
    std::ostringstream os;
    display(term, os);
    return os.str();
}

} // namespace qnet
