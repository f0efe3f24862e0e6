#include "qnet/theory.hpp"

#include <algorithm>
#include <sstream>

namespace qnet {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::theory_mismatch: return "theory_mismatch";
    case ErrorKind::unsupported_theory: return "unsupported_theory";
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::unmapped_name: return "unmapped_name";
    case ErrorKind::ill_typed: return "ill_typed";
    case ErrorKind::infinite_result: return "infinite_result";
    case ErrorKind::parse_error: return "parse_error";
    }
    return "unknown";
}

std::string_view to_string(Theory theory) {
    switch (theory) {
    case Theory::cmon: return "CMON";
    case Theory::mon: return "MON";
    case Theory::abgrp: return "ABGRP";
    case Theory::grp: return "GRP";
    case Theory::semilat: return "SEMILAT";
    }
    return "?";
}

Theory theory_from_string(std::string_view text) {
    for (Theory t : all_theories) {
        if (to_string(t) == text) return t;
    }
    throw Error(ErrorKind::parse_error, "unknown theory '" + std::string(text) + "'");
}

bool is_commutative(Theory theory) {
    return theory == Theory::cmon || theory == Theory::abgrp || theory == Theory::semilat;
}

bool is_word_theory(Theory theory) { return theory == Theory::mon || theory == Theory::grp; }

bool has_inverses(Theory theory) { return theory == Theory::abgrp || theory == Theory::grp; }

std::string_view to_string(Arrow arrow) {
    switch (arrow) {
    case Arrow::a: return "a";
    case Arrow::b: return "b";
    case Arrow::c: return "c";
    case Arrow::d: return "d";
    case Arrow::e: return "e";
    }
    return "?";
}

Arrow arrow_from_string(std::string_view text) {
    for (Arrow a : all_arrows) {
        if (to_string(a) == text) return a;
    }
    throw Error(ErrorKind::parse_error, "unknown theory arrow '" + std::string(text) + "'");
}

Theory arrow_source(Arrow arrow) {
    switch (arrow) {
    case Arrow::a: return Theory::cmon;
    case Arrow::b: return Theory::cmon;
    case Arrow::c: return Theory::mon;
    case Arrow::d: return Theory::mon;
    case Arrow::e: return Theory::grp;
    }
    return Theory::cmon;
}

Theory arrow_target(Arrow arrow) {
    switch (arrow) {
    case Arrow::a: return Theory::semilat;
    case Arrow::b: return Theory::abgrp;
    case Arrow::c: return Theory::cmon;
    case Arrow::d: return Theory::grp;
    case Arrow::e: return Theory::abgrp;
    }
    return Theory::cmon;
}

namespace {

void reduce_push(std::vector<Letter>& stack, const Letter& letter) {
    if (!stack.empty() && stack.back().name == letter.name &&
        stack.back().inverted != letter.inverted) {
        stack.pop_back();
    } else {
        stack.push_back(letter);
    }
}

void require_same(Theory expected, const FreeElem& x) {
    if (x.theory() != expected) {
        throw Error(ErrorKind::theory_mismatch,
                    "expected a " + std::string(to_string(expected)) + " element, got " +
                        std::string(to_string(x.theory())));
    }
}

} // namespace

FreeElem FreeElem::from_counts(Theory theory, const std::map<Name, std::int64_t>& counts) {
    FreeElem out(theory);
    if (is_word_theory(theory)) {
        std::vector<Letter> word;
        std::size_t distinct = 0;
        for (const auto& [name, k] : counts) {
            if (k == 0) continue;
            ++distinct;
            if (k < 0 && theory == Theory::mon) {
                throw Error(ErrorKind::invalid_argument, "negative count in a MON element");
            }
            for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) word.push_back({name, k < 0});
        }
        if (distinct > 1) {
            throw Error(ErrorKind::invalid_argument,
                        "a word element cannot be built from an unordered count map");
        }
        return from_word(theory, word);
    }
    for (const auto& [name, k] : counts) {
        if (k == 0) continue;
        if (k < 0 && theory != Theory::abgrp) {
            throw Error(ErrorKind::invalid_argument, "negative count for '" + name + "' in a " +
                                                         std::string(to_string(theory)) +
                                                         " element");
        }
        out.counts_[name] = theory == Theory::semilat ? 1 : k;
    }
    return out;
}

FreeElem FreeElem::from_word(Theory theory, const std::vector<Letter>& word) {
    FreeElem out(theory);
    switch (theory) {
    case Theory::mon:
        for (const auto& l : word) {
            if (l.inverted) throw Error(ErrorKind::invalid_argument, "inverse letter in a MON word");
        }
        out.word_ = word;
        break;
    case Theory::grp:
        for (const auto& l : word) reduce_push(out.word_, l);
        break;
    case Theory::cmon:
    case Theory::semilat:
    case Theory::abgrp: {
        std::map<Name, std::int64_t> counts;
        for (const auto& l : word) counts[l.name] += l.inverted ? -1 : 1;
        return from_counts(theory, counts);
    }
    }
    return out;
}

FreeElem FreeElem::from_names(Theory theory, const std::vector<Name>& names) {
    std::vector<Letter> word;
    word.reserve(names.size());
    for (const auto& n : names) word.push_back({n, false});
    return from_word(theory, word);
}

std::size_t FreeElem::size() const {
    if (is_word_theory(theory_)) return word_.size();
    std::size_t n = 0;
    for (const auto& [name, k] : counts_) n += static_cast<std::size_t>(k < 0 ? -k : k);
    return n;
}

std::int64_t FreeElem::count(const Name& name) const {
    if (is_word_theory(theory_)) {
        std::int64_t k = 0;
        for (const auto& l : word_) {
            if (l.name == name) k += l.inverted ? -1 : 1;
        }
        return k;
    }
    auto it = counts_.find(name);
    return it == counts_.end() ? 0 : it->second;
}

std::set<Name> FreeElem::support() const {
    std::set<Name> out;
    for (const auto& [name, k] : counts_) out.insert(name);
    for (const auto& l : word_) out.insert(l.name);
    return out;
}

std::vector<Letter> FreeElem::letters() const {
    if (is_word_theory(theory_)) return word_;
    std::vector<Letter> out;
    for (const auto& [name, k] : counts_) {
        for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.push_back({name, k < 0});
    }
    return out;
}

FreeElem unit(Theory theory, const Name& place) {
    return FreeElem::from_word(theory, {Letter{place, false}});
}

FreeElem neutral(Theory theory) { return FreeElem(theory); }

FreeElem combine(const FreeElem& x, const FreeElem& y) {
    require_same(x.theory(), y);
    const Theory q = x.theory();
    if (is_word_theory(q)) {
        std::vector<Letter> word = x.word();
        if (q == Theory::grp) {
            for (const auto& l : y.word()) reduce_push(word, l);
            return FreeElem::from_word(q, word);
        }
        word.insert(word.end(), y.word().begin(), y.word().end());
        return FreeElem::from_word(q, word);
    }
    std::map<Name, std::int64_t> counts = x.counts();
    for (const auto& [name, k] : y.counts()) counts[name] += k;
    return FreeElem::from_counts(q, counts);
}

FreeElem combine(Theory theory, const FreeElem& x, const FreeElem& y) {
    require_same(theory, x);
    require_same(theory, y);
    return combine(x, y);
}

FreeElem combine_all(Theory theory, const std::vector<FreeElem>& xs) {
    FreeElem acc(theory);
    for (const auto& x : xs) acc = combine(theory, acc, x);
    return acc;
}

FreeElem invert(const FreeElem& x) {
    if (!has_inverses(x.theory())) {
        throw Error(ErrorKind::unsupported_theory,
                    std::string(to_string(x.theory())) + " has no inverse operation");
    }
    if (x.theory() == Theory::abgrp) {
        std::map<Name, std::int64_t> counts;
        for (const auto& [name, k] : x.counts()) counts[name] = -k;
        return FreeElem::from_counts(Theory::abgrp, counts);
    }
    std::vector<Letter> word(x.word().rbegin(), x.word().rend());
    for (auto& l : word) l.inverted = !l.inverted;
    return FreeElem::from_word(Theory::grp, word);
}

FreeElem power(const FreeElem& x, std::int64_t k) {
    const Theory q = x.theory();
    if (k < 0) return power(invert(x), -k);
    if (k == 0) return FreeElem(q);
    if (q == Theory::semilat) return x;
    if (q == Theory::cmon || q == Theory::abgrp) {
        std::map<Name, std::int64_t> counts;
        for (const auto& [name, c] : x.counts()) counts[name] = c * k;
        return FreeElem::from_counts(q, counts);
    }
    FreeElem acc(q);
    for (std::int64_t i = 0; i < k; ++i) acc = combine(acc, x);
    return acc;
}

FreeElem extend(const std::map<Name, FreeElem>& images, const FreeElem& x) {
    const Theory q = x.theory();
    auto image_of = [&](const Name& n) -> const FreeElem& {
        auto it = images.find(n);
        if (it == images.end()) {
            throw Error(ErrorKind::unmapped_name, "no image for '" + n + "'");
        }
        require_same(q, it->second);
        return it->second;
    };
    if (is_word_theory(q)) {
        std::vector<Letter> word;
        for (const auto& l : x.word()) {
            const FreeElem& img = l.inverted ? invert(image_of(l.name)) : image_of(l.name);
            word.insert(word.end(), img.word().begin(), img.word().end());
        }
        return FreeElem::from_word(q, word);
    }
    std::map<Name, std::int64_t> counts;
    for (const auto& [name, k] : x.counts()) {
        for (const auto& [m, c] : image_of(name).counts()) counts[m] += c * k;
    }
    return FreeElem::from_counts(q, counts);
}

FreeElem lift(const NameMap& g, const FreeElem& x) {
    const Theory q = x.theory();
    if (is_word_theory(q)) {
        std::vector<Letter> word;
        word.reserve(x.word().size());
        for (const auto& l : x.word()) {
            auto it = g.find(l.name);
            if (it == g.end()) throw Error(ErrorKind::unmapped_name, "unmapped place '" + l.name + "'");
            word.push_back({it->second, l.inverted});
        }
        return FreeElem::from_word(q, word);
    }
    std::map<Name, std::int64_t> counts;
    for (const auto& [name, k] : x.counts()) {
        auto it = g.find(name);
        if (it == g.end()) throw Error(ErrorKind::unmapped_name, "unmapped place '" + name + "'");
        counts[it->second] += k;
    }
    return FreeElem::from_counts(q, counts);
}

FreeElem lift(Theory theory, const NameMap& g, const FreeElem& x) {
    require_same(theory, x);
    return lift(g, x);
}

FreeElem translate(Arrow arrow, const FreeElem& x) {
    require_same(arrow_source(arrow), x);
    switch (arrow) {
    case Arrow::a:
    case Arrow::b:
        return FreeElem::from_counts(arrow_target(arrow), x.counts());
    case Arrow::c:
    case Arrow::d:
    case Arrow::e:
        return FreeElem::from_word(arrow_target(arrow), x.word());
    }
    return x;
}

bool leq(const FreeElem& x, const FreeElem& y) {
    require_same(x.theory(), y);
    if (x.theory() != Theory::cmon && x.theory() != Theory::semilat) {
        throw Error(ErrorKind::unsupported_theory, "leq is defined for CMON and SEMILAT only");
    }
    for (const auto& [name, k] : x.counts()) {
        if (y.count(name) < k) return false;
    }
    return true;
}

FreeElem difference(const FreeElem& y, const FreeElem& x) {
    require_same(y.theory(), x);
    switch (y.theory()) {
    case Theory::cmon: {
        if (!leq(x, y)) throw Error(ErrorKind::invalid_argument, "multiset difference would be negative");
        std::map<Name, std::int64_t> counts = y.counts();
        for (const auto& [name, k] : x.counts()) counts[name] -= k;
        return FreeElem::from_counts(Theory::cmon, counts);
    }
    case Theory::abgrp: return combine(y, invert(x));
    case Theory::semilat: {
        std::map<Name, std::int64_t> counts;
        for (const auto& [name, k] : y.counts()) {
            if (x.count(name) == 0) counts[name] = 1;
        }
        return FreeElem::from_counts(Theory::semilat, counts);
    }
    default:
        throw Error(ErrorKind::unsupported_theory, "difference is undefined for word theories");
    }
}

bool is_canonical(const FreeElem& x) {
    switch (x.theory()) {
    case Theory::cmon:
        return x.word().empty() &&
               std::all_of(x.counts().begin(), x.counts().end(), [](auto& kv) { return kv.second >= 1; });
    case Theory::abgrp:
        return x.word().empty() &&
               std::all_of(x.counts().begin(), x.counts().end(), [](auto& kv) { return kv.second != 0; });
    case Theory::semilat:
        return x.word().empty() &&
               std::all_of(x.counts().begin(), x.counts().end(), [](auto& kv) { return kv.second == 1; });
    case Theory::mon:
        return x.counts().empty() &&
               std::none_of(x.word().begin(), x.word().end(), [](auto& l) { return l.inverted; });
    case Theory::grp:
        if (!x.counts().empty()) return false;
        for (std::size_t i = 1; i < x.word().size(); ++i) {
            const auto& p = x.word()[i - 1];
            const auto& q = x.word()[i];
            if (p.name == q.name && p.inverted != q.inverted) return false;
        }
        return true;
    }
    return false;
}

FreeElem prefixed(const FreeElem& x, std::string_view prefix) {
    const std::string pre(prefix);
    if (is_word_theory(x.theory())) {
        std::vector<Letter> word = x.word();
        for (auto& l : word) l.name = pre + l.name;
        return FreeElem::from_word(x.theory(), word);
    }
    std::map<Name, std::int64_t> counts;
    for (const auto& [name, k] : x.counts()) counts[pre + name] = k;
    return FreeElem::from_counts(x.theory(), counts);
}

std::string to_display(const FreeElem& x) {
    std::ostringstream os;
    if (is_word_theory(x.theory())) {
        os << '[';
        for (std::size_t i = 0; i < x.word().size(); ++i) {
            if (i) os << ',';
            os << x.word()[i].name << (x.word()[i].inverted ? "^-1" : "");
        }
        os << ']';
        return os.str();
    }
    os << '{';
    bool first = true;
    for (const auto& [name, k] : x.counts()) {
        if (!first) os << ',';
        first = false;
        os << name;
        if (x.theory() != Theory::semilat) os << ':' << k;
    }
    os << '}';
    return os.str();
}

} // namespace qnet
