#include "qnet/freecat.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "qnet/codec.hpp"
#include "qnet/lattice.hpp"

namespace qnet {

namespace {

constexpr std::string_view gen_tag = "t:";
constexpr std::string_view place_tag = "p:";

const Arcs& arcs_of(const QNet& net, const Name& t) {
    auto it = net.transitions.find(t);
    if (it == net.transitions.end()) throw Error(ErrorKind::unmapped_name, "unknown transition '" + t + "'");
    return it->second;
}

void require_object(const QNet& net, const FreeElem& x) {
    if (x.theory() != net.theory) throw Error(ErrorKind::theory_mismatch, "object theory differs from the net theory");
    for (const auto& p : x.support()) {
        if (!net.places.contains(p)) throw Error(ErrorKind::unmapped_name, "unknown place '" + p + "'");
    }
}

FreeElem slot_side(const Name& slot, const QNet& net, bool source) {
    if (is_gen_slot(slot)) {
        const Arcs& a = arcs_of(net, slot_name(slot));
        return source ? a.src : a.tgt;
    }
    return unit(net.theory, slot_name(slot));
}

FreeElem layer_side(const FreeElem& layer, const QNet& net, bool source) {
    std::map<Name, FreeElem> images;
    for (const auto& n : layer.support()) images.emplace(n, slot_side(n, net, source));
    return extend(images, layer);
}

FreeElem filter_slots(const FreeElem& layer, bool gens, bool strip) {
    const Theory q = layer.theory();
    if (is_word_theory(q)) {
        std::vector<Letter> out;
        for (const auto& l : layer.word()) {
            if (is_gen_slot(l.name) == gens) out.push_back({strip ? slot_name(l.name) : l.name, l.inverted});
        }
        return FreeElem::from_word(q, out);
    }
    std::map<Name, std::int64_t> out;
    for (const auto& [n, k] : layer.counts()) {
        if (is_gen_slot(n) == gens) out[strip ? slot_name(n) : n] = k;
    }
    return FreeElem::from_counts(q, out);
}

bool has_gen(const FreeElem& layer) {
    if (is_word_theory(layer.theory())) {
        return std::any_of(layer.word().begin(), layer.word().end(), [](const Letter& l) { return is_gen_slot(l.name); });
    }
    return std::any_of(layer.counts().begin(), layer.counts().end(), [](const auto& e) { return is_gen_slot(e.first); });
}

// Idle places consumed and produced by the fired set are absorbed:
// F + id_a = (F + id_t + id_a) . (id_s + F + id_a) = F when a is in s(F) and t(F).
FreeElem absorb(const FreeElem& layer, const QNet& net) {
    if (layer.theory() != Theory::semilat) return layer;
    const FreeElem fired = filter_slots(layer, true, false);
    if (fired.empty()) return layer;
    const FreeElem s = layer_side(fired, net, true);
    const FreeElem t = layer_side(fired, net, false);
    std::map<Name, std::int64_t> out;
    for (const auto& [n, k] : layer.counts()) {
        if (!is_gen_slot(n)) {
            const Name p = slot_name(n);
            if (s.count(p) && t.count(p)) continue;
        }
        out[n] = k;
    }
    return FreeElem::from_counts(Theory::semilat, out);
}

struct Raw {
    FreeElem start;
    std::vector<FreeElem> layers;
    FreeElem end;
};

Raw build(const MorTerm& t, const QNet& net) {
    using K = MorTerm::Kind;
    switch (t.kind()) {
    case K::gen: {
        const Arcs& a = arcs_of(net, t.name());
        return {a.src, {unit(net.theory, gen_slot(t.name()))}, a.tgt};
    }
    case K::ident:
        require_object(net, t.object());
        return {t.object(), {}, t.object()};
    case K::comp: {
        Raw before = build(t.args()[1], net);
        Raw after = build(t.args()[0], net);
        if (before.end != after.start) {
            throw Error(ErrorKind::ill_typed,
                        "cannot compose: " + to_display(before.end) + " != " + to_display(after.start));
        }
        for (auto& l : after.layers) before.layers.push_back(std::move(l));
        before.end = std::move(after.end);
        return before;
    }
    case K::combine: {
        std::vector<Raw> parts;
        std::size_t depth = 0;
        for (const auto& a : t.args()) {
            parts.push_back(build(a, net));
            depth = std::max(depth, parts.back().layers.size());
        }
        Raw out{neutral(net.theory), std::vector<FreeElem>(depth, neutral(net.theory)), neutral(net.theory)};
        for (const auto& p : parts) {
            out.start = combine(out.start, p.start);
            out.end = combine(out.end, p.end);
            for (std::size_t k = 0; k < depth; ++k) {
                out.layers[k] = combine(out.layers[k], k < p.layers.size() ? p.layers[k] : identity_layer(p.end));
            }
        }
        return out;
    }
    case K::invert: {
        if (!has_inverses(net.theory)) {
            throw Error(ErrorKind::unsupported_theory, std::string(to_string(net.theory)) + " has no inverse operation");
        }
        Raw r = build(t.args()[0], net);
        r.start = invert(r.start);
        r.end = invert(r.end);
        for (auto& l : r.layers) l = invert(l);
        return r;
    }
    case K::perm:
        throw Error(ErrorKind::invalid_argument, "permutations only exist in the symmetric closure");
    }
    throw Error(ErrorKind::ill_typed, "malformed term");
}

// ---- rewrite moves -------------------------------------------------------

using Split = std::pair<FreeElem, FreeElem>;

std::vector<Split> splits_counted(const FreeElem& layer, const QNet& net) {
    std::vector<Split> out;
    const Theory q = layer.theory();
    std::vector<std::pair<Name, std::int64_t>> gens;
    std::map<Name, std::int64_t> frame;
    for (const auto& [n, k] : layer.counts()) {
        if (is_gen_slot(n)) gens.emplace_back(n, k);
        else frame[n] = k;
    }
    const FreeElem frame_elem = FreeElem::from_counts(q, frame);
    std::int64_t total = 0;
    for (const auto& g : gens) total += g.second;
    if (total < 2) return out;
    std::vector<std::int64_t> pick(gens.size(), 0);
    while (true) {
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] <= gens[i].second) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
        std::map<Name, std::int64_t> a, b;
        std::int64_t size_a = 0;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (pick[j]) a[gens[j].first] = pick[j];
            if (gens[j].second - pick[j]) b[gens[j].first] = gens[j].second - pick[j];
            size_a += pick[j];
        }
        if (size_a == total) continue;
        const FreeElem ea = FreeElem::from_counts(q, a);
        const FreeElem eb = FreeElem::from_counts(q, b);
        out.emplace_back(combine(combine(ea, frame_elem), identity_layer(layer_side(eb, net, true))),
                         combine(combine(eb, frame_elem), identity_layer(layer_side(ea, net, false))));
    }
    return out;
}

std::vector<FreeElem> merges_counted(const FreeElem& l1, const FreeElem& l2, const QNet& net) {
    const FreeElem g1 = filter_slots(l1, true, false);
    const FreeElem g2 = filter_slots(l2, true, false);
    const FreeElem m1 = filter_slots(l1, false, true);
    const FreeElem need = layer_side(g2, net, true);
    if (l1.theory() == Theory::cmon && !leq(need, m1)) return {};
    return {combine(combine(g1, g2), identity_layer(difference(m1, need)))};
}

std::vector<Split> splits_semilat(const FreeElem& layer, const QNet& net) {
    std::vector<Split> out;
    std::vector<Name> gens;
    std::map<Name, std::int64_t> frame;
    for (const auto& [n, k] : layer.counts()) {
        if (is_gen_slot(n)) gens.push_back(n);
        else frame[n] = 1;
    }
    if (gens.size() > 12) throw Error(ErrorKind::invalid_argument, "layer too wide to split");
    const FreeElem frame_elem = FreeElem::from_counts(Theory::semilat, frame);
    const std::uint32_t full = (1u << gens.size()) - 1;
    auto subset = [&](std::uint32_t mask) {
        std::map<Name, std::int64_t> m;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (mask >> i & 1) m[gens[i]] = 1;
        }
        return FreeElem::from_counts(Theory::semilat, m);
    };
    std::set<Split> seen;
    for (std::uint32_t a = 1; a <= full; ++a) {
        for (std::uint32_t b = 1; b <= full; ++b) {
            if ((a | b) != full) continue;
            const FreeElem fa = subset(a);
            const FreeElem fb = subset(b);
            Split s{absorb(combine(combine(fa, frame_elem), identity_layer(layer_side(fb, net, true))), net),
                    absorb(combine(combine(fb, frame_elem), identity_layer(layer_side(fa, net, false))), net)};
            if (seen.insert(s).second) out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<FreeElem> merges_semilat(const FreeElem& l1, const FreeElem& l2, const QNet& net) {
    const FreeElem f1 = filter_slots(l1, true, false);
    const FreeElem f2 = filter_slots(l2, true, false);
    const FreeElem s2 = layer_side(f2, net, true);
    const FreeElem t1 = layer_side(f1, net, false);
    const std::vector<Name> input = [&] {
        auto s = layer_side(l1, net, true).support();
        return std::vector<Name>(s.begin(), s.end());
    }();
    if (input.size() > 16) throw Error(ErrorKind::invalid_argument, "layer too wide to merge");
    std::set<FreeElem> out;
    for (std::uint32_t mask = 0; mask < (1u << input.size()); ++mask) {
        std::map<Name, std::int64_t> m;
        for (std::size_t i = 0; i < input.size(); ++i) {
            if (mask >> i & 1) m[input[i]] = 1;
        }
        const FreeElem frame = FreeElem::from_counts(Theory::semilat, m);
        if (absorb(combine(f1, identity_layer(combine(frame, s2))), net) != l1) continue;
        if (absorb(combine(f2, identity_layer(combine(frame, t1))), net) != l2) continue;
        out.insert(absorb(combine(combine(f1, f2), identity_layer(frame)), net));
    }
    return {out.begin(), out.end()};
}

struct SlotIO {
    Letter slot;
    bool gen = false;
    std::vector<Letter> in;
    std::vector<Letter> out;
};

std::vector<SlotIO> slot_io(const FreeElem& layer, const QNet& net) {
    std::vector<SlotIO> out;
    for (const auto& l : layer.word()) {
        SlotIO s{l, is_gen_slot(l.name), {}, {}};
        if (s.gen) {
            const Arcs& a = arcs_of(net, slot_name(l.name));
            s.in = (l.inverted ? invert(a.src) : a.src).word();
            s.out = (l.inverted ? invert(a.tgt) : a.tgt).word();
        } else {
            s.in = s.out = {Letter{slot_name(l.name), l.inverted}};
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Letter> tagged(const std::vector<Letter>& letters) {
    std::vector<Letter> out;
    for (const auto& l : letters) out.push_back({place_slot(l.name), l.inverted});
    return out;
}

std::vector<Split> splits_word(const FreeElem& layer, const QNet& net) {
    std::vector<Split> out;
    const auto io = slot_io(layer, net);
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < io.size(); ++i) {
        if (io[i].gen) gens.push_back(i);
    }
    if (gens.size() < 2) return out;
    if (gens.size() > 16) throw Error(ErrorKind::invalid_argument, "layer too wide to split");
    const std::uint32_t full = (1u << gens.size()) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        std::vector<bool> first(io.size(), false);
        for (std::size_t k = 0; k < gens.size(); ++k) first[gens[k]] = mask >> k & 1;
        std::vector<Letter> a, b;
        for (std::size_t i = 0; i < io.size(); ++i) {
            if (!io[i].gen) {
                a.push_back(io[i].slot);
                b.push_back(io[i].slot);
            } else if (first[i]) {
                a.push_back(io[i].slot);
                for (auto& l : tagged(io[i].out)) b.push_back(l);
            } else {
                for (auto& l : tagged(io[i].in)) a.push_back(l);
                b.push_back(io[i].slot);
            }
        }
        out.emplace_back(FreeElem::from_word(layer.theory(), a), FreeElem::from_word(layer.theory(), b));
    }
    return out;
}

void shuffles(const std::vector<Letter>& a, const std::vector<Letter>& b, std::size_t i, std::size_t j,
              std::vector<Letter>& acc, std::vector<std::vector<Letter>>& out) {
    if (i == a.size() && j == b.size()) {
        out.push_back(acc);
        return;
    }
    if (i < a.size()) {
        acc.push_back(a[i]);
        shuffles(a, b, i + 1, j, acc, out);
        acc.pop_back();
    }
    if (j < b.size()) {
        acc.push_back(b[j]);
        shuffles(a, b, i, j + 1, acc, out);
        acc.pop_back();
    }
}

// Walks the boundary word between the layers. Each fired slot occupies a run
// of boundary letters; a merge needs every run of one layer to face idle
// slots of the other. Slots with empty runs sitting on the same boundary
// point commute, so every interleaving of them is produced.
std::vector<FreeElem> merges_word(const FreeElem& l1, const FreeElem& l2, const QNet& net) {
    const auto a = slot_io(l1, net);
    const auto b = slot_io(l2, net);
    std::vector<Letter> wa, wb;
    for (const auto& s : a) wa.insert(wa.end(), s.out.begin(), s.out.end());
    for (const auto& s : b) wb.insert(wb.end(), s.in.begin(), s.in.end());
    if (wa != wb) return {};

    std::vector<std::vector<Letter>> partial{{}};
    std::size_t i = 0, j = 0, pos = 0;
    auto append = [&](const Letter& l) {
        for (auto& p : partial) p.push_back(l);
    };
    while (true) {
        std::vector<Letter> null_a, null_b;
        while (i < a.size() && a[i].gen && a[i].out.empty()) null_a.push_back(a[i++].slot);
        while (j < b.size() && b[j].gen && b[j].in.empty()) null_b.push_back(b[j++].slot);
        if (!null_a.empty() || !null_b.empty()) {
            std::vector<std::vector<Letter>> mixes;
            std::vector<Letter> acc;
            shuffles(null_a, null_b, 0, 0, acc, mixes);
            std::vector<std::vector<Letter>> next;
            for (const auto& p : partial) {
                for (const auto& m : mixes) {
                    auto q = p;
                    q.insert(q.end(), m.begin(), m.end());
                    next.push_back(std::move(q));
                }
            }
            partial = std::move(next);
        }
        if (pos == wa.size()) break;
        if (i >= a.size() || j >= b.size()) return {};
        const SlotIO& x = a[i];
        const SlotIO& y = b[j];
        if (!x.gen && !y.gen) {
            append(x.slot);
            ++i;
            ++j;
            ++pos;
        } else if (x.gen && !y.gen) {
            const std::size_t r = x.out.size();
            for (std::size_t k = 0; k < r; ++k) {
                if (j + k >= b.size() || b[j + k].gen) return {};
            }
            append(x.slot);
            ++i;
            j += r;
            pos += r;
        } else if (!x.gen && y.gen) {
            const std::size_t r = y.in.size();
            for (std::size_t k = 0; k < r; ++k) {
                if (i + k >= a.size() || a[i + k].gen) return {};
            }
            append(y.slot);
            j++;
            i += r;
            pos += r;
        } else {
            return {};
        }
    }
    if (i != a.size() || j != b.size()) return {};
    std::vector<FreeElem> out;
    for (const auto& p : partial) out.push_back(FreeElem::from_word(l1.theory(), p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Split> layer_splits(const FreeElem& layer, const QNet& net) {
    switch (net.theory) {
    case Theory::cmon:
        return splits_counted(layer, net);
    case Theory::semilat:
        return splits_semilat(layer, net);
    case Theory::mon:
    case Theory::grp:
        return splits_word(layer, net);
    case Theory::abgrp:
        return {};
    }
    return {};
}

std::vector<FreeElem> layer_merges(const FreeElem& l1, const FreeElem& l2, const QNet& net) {
    switch (net.theory) {
    case Theory::cmon:
    case Theory::abgrp:
        return merges_counted(l1, l2, net);
    case Theory::semilat:
        return merges_semilat(l1, l2, net);
    case Theory::mon:
    case Theory::grp:
        return merges_word(l1, l2, net);
    }
    return {};
}

// ---- search ----------------------------------------------------------------

struct Side {
    std::vector<LayeredForm> nodes;
    std::vector<std::size_t> parent;
    std::map<LayeredForm, std::size_t> index;
    std::deque<std::size_t> queue;

    explicit Side(const LayeredForm& root) {
        nodes.push_back(root);
        parent.push_back(0);
        index.emplace(root, 0);
        queue.push_back(0);
    }

    std::vector<std::string> path_to_root(std::size_t i) const {
        std::vector<std::string> out;
        while (true) {
            out.push_back(to_display(nodes[i]));
            if (i == 0) break;
            i = parent[i];
        }
        return out;
    }
};

EqVerdict search(const LayeredForm& a, const LayeredForm& b, const QNet& net, std::size_t budget, bool complete) {
    Side left(a), right(b);
    std::size_t explored = 2;
    while (!left.queue.empty() && !right.queue.empty()) {
        if (explored >= budget) {
            return {EqVerdict::Kind::unknown, "search budget exhausted", {}, explored};
        }
        const bool grow_left = left.queue.size() <= right.queue.size();
        Side& own = grow_left ? left : right;
        Side& other = grow_left ? right : left;
        const std::size_t cur = own.queue.front();
        own.queue.pop_front();
        const LayeredForm node = own.nodes[cur];
        for (auto& next : rewrite_neighbors(node, net)) {
            if (own.index.contains(next)) continue;
            const std::size_t id = own.nodes.size();
            own.nodes.push_back(next);
            own.parent.push_back(cur);
            own.index.emplace(next, id);
            own.queue.push_back(id);
            ++explored;
            auto hit = other.index.find(next);
            if (hit != other.index.end()) {
                const std::size_t li = grow_left ? id : hit->second;
                const std::size_t ri = grow_left ? hit->second : id;
                auto path = left.path_to_root(li);
                std::reverse(path.begin(), path.end());
                auto tail = right.path_to_root(ri);
                path.insert(path.end(), tail.begin() + 1, tail.end());
                return {EqVerdict::Kind::equal, "connected by split/merge rewrites", std::move(path), explored};
            }
        }
    }
    if (complete) {
        return {EqVerdict::Kind::distinct, "rewrite class exhausted without meeting", {}, explored};
    }
    return {EqVerdict::Kind::unknown, "rewrite class exhausted but the rule set is not known to be complete here", {},
            explored};
}

std::string form_sort_key(const LayeredForm& f) { return encode(f).dump(); }

std::vector<LayeredForm> sorted_forms(const std::set<LayeredForm>& forms) {
    std::vector<std::pair<std::pair<std::size_t, std::string>, LayeredForm>> keyed;
    for (const auto& f : forms) keyed.push_back({{f.layers.size(), form_sort_key(f)}, f});
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<LayeredForm> out;
    for (auto& k : keyed) out.push_back(std::move(k.second));
    return out;
}

std::vector<LayeredForm> class_representatives(const std::vector<LayeredForm>& forms, const QNet& net,
                                               std::size_t budget) {
    std::vector<LayeredForm> reps;
    for (const auto& f : forms) {
        bool dup = false;
        for (const auto& r : reps) {
            if (form_equal(f, r, net, budget).kind == EqVerdict::Kind::equal) {
                dup = true;
                break;
            }
        }
        if (!dup) reps.push_back(f);
    }
    return reps;
}

void require_finite_homs(Theory q) {
    if (has_inverses(q)) {
        throw Error(ErrorKind::unsupported_theory,
                    std::string(to_string(q)) + " hom-sets are infinite; use the group hom test instead");
    }
}

void collect_forms(const QNet& net, LayeredForm& cur, const FreeElem& at, std::size_t layers_left, std::size_t width,
                   std::set<LayeredForm>& out) {
    out.insert(cur);
    if (layers_left == 0) return;
    for (const auto& layer : single_layers(net, at, width)) {
        cur.layers.push_back(layer);
        collect_forms(net, cur, layer_tgt(layer, net), layers_left - 1, width, out);
        cur.layers.pop_back();
    }
}

std::vector<FreeElem> small_objects(const QNet& net, std::size_t size) {
    const std::vector<Name> places(net.places.begin(), net.places.end());
    std::set<FreeElem> out{neutral(net.theory)};
    std::vector<FreeElem> frontier{neutral(net.theory)};
    for (std::size_t k = 0; k < size; ++k) {
        std::vector<FreeElem> next;
        for (const auto& x : frontier) {
            for (const auto& p : places) {
                FreeElem y = combine(x, unit(net.theory, p));
                if (out.insert(y).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return {out.begin(), out.end()};
}

} // namespace

Name gen_slot(const Name& transition) { return std::string(gen_tag) + transition; }
Name place_slot(const Name& place) { return std::string(place_tag) + place; }
bool is_gen_slot(const Name& slot) { return slot.starts_with(gen_tag); }
Name slot_name(const Name& slot) { return slot.substr(2); }

FreeElem layer_src(const FreeElem& layer, const QNet& net) { return layer_side(layer, net, true); }
FreeElem layer_tgt(const FreeElem& layer, const QNet& net) { return layer_side(layer, net, false); }
FreeElem layer_fired(const FreeElem& layer) { return filter_slots(layer, true, true); }
FreeElem layer_frame(const FreeElem& layer) { return filter_slots(layer, false, true); }
FreeElem identity_layer(const FreeElem& object) { return prefixed(object, place_tag); }

FreeElem form_src(const LayeredForm& form) { return form.start; }

FreeElem form_tgt(const LayeredForm& form, const QNet& net) {
    return form.layers.empty() ? form.start : layer_tgt(form.layers.back(), net);
}

std::string to_display(const LayeredForm& form) {
    std::ostringstream os;
    os << to_display(form.start);
    for (const auto& l : form.layers) os << " | " << to_display(l);
    return os.str();
}

LayeredForm normalize(LayeredForm form, const QNet& net) {
    std::vector<FreeElem> kept;
    for (auto& l : form.layers) {
        FreeElem x = absorb(l, net);
        if (has_gen(x)) kept.push_back(std::move(x));
    }
    form.layers = std::move(kept);
    return form;
}

LayeredForm layered(const MorTerm& term, const QNet& net) {
    Raw r = build(term, net);
    return normalize(LayeredForm{std::move(r.start), std::move(r.layers)}, net);
}

MorTerm to_term(const LayeredForm& form) {
    const Theory q = form.start.theory();
    if (form.layers.empty()) return MorTerm::ident(form.start);
    std::optional<MorTerm> out;
    for (const auto& layer : form.layers) {
        std::vector<MorTerm> args;
        if (is_word_theory(q)) {
            std::vector<Letter> idle;
            auto flush = [&] {
                if (!idle.empty()) args.push_back(MorTerm::ident(FreeElem::from_word(q, idle)));
                idle.clear();
            };
            for (const auto& l : layer.word()) {
                if (is_gen_slot(l.name)) {
                    flush();
                    MorTerm g = MorTerm::gen(slot_name(l.name));
                    args.push_back(l.inverted ? MorTerm::invert(g) : g);
                } else {
                    idle.push_back({slot_name(l.name), l.inverted});
                }
            }
            flush();
        } else {
            for (const auto& [n, k] : layer.counts()) {
                if (!is_gen_slot(n)) continue;
                MorTerm g = MorTerm::gen(slot_name(n));
                for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) args.push_back(k < 0 ? MorTerm::invert(g) : g);
            }
            const FreeElem frame = layer_frame(layer);
            if (!frame.empty()) args.push_back(MorTerm::ident(frame));
        }
        MorTerm step = args.size() == 1 ? args[0] : MorTerm::combine(std::move(args));
        out = out ? MorTerm::comp(step, *out) : step;
    }
    return *out;
}

std::vector<LayeredForm> rewrite_neighbors(const LayeredForm& form, const QNet& net) {
    std::set<LayeredForm> out;
    for (std::size_t k = 0; k < form.layers.size(); ++k) {
        for (auto& [a, b] : layer_splits(form.layers[k], net)) {
            LayeredForm next = form;
            next.layers[k] = a;
            next.layers.insert(next.layers.begin() + static_cast<std::ptrdiff_t>(k) + 1, b);
            out.insert(normalize(std::move(next), net));
        }
    }
    for (std::size_t k = 0; k + 1 < form.layers.size(); ++k) {
        for (auto& m : layer_merges(form.layers[k], form.layers[k + 1], net)) {
            LayeredForm next = form;
            next.layers[k] = m;
            next.layers.erase(next.layers.begin() + static_cast<std::ptrdiff_t>(k) + 1);
            out.insert(normalize(std::move(next), net));
        }
    }
    out.erase(form);
    return {out.begin(), out.end()};
}

LayeredForm greedy_canonical(const LayeredForm& form, const QNet& net) {
    if (net.theory == Theory::semilat) return normalize(form, net);
    LayeredForm cur = normalize(form, net);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 1; k < cur.layers.size() && !changed; ++k) {
            auto direct = layer_merges(cur.layers[k - 1], cur.layers[k], net);
            if (!direct.empty()) {
                cur.layers[k - 1] = direct.front();
                cur.layers.erase(cur.layers.begin() + static_cast<std::ptrdiff_t>(k));
                changed = true;
                break;
            }
            for (auto& [a, b] : layer_splits(cur.layers[k], net)) {
                auto pulled = layer_merges(cur.layers[k - 1], a, net);
                if (!pulled.empty()) {
                    cur.layers[k - 1] = pulled.front();
                    cur.layers[k] = b;
                    changed = true;
                    break;
                }
            }
        }
        cur = normalize(std::move(cur), net);
    }
    return cur;
}

FreeElem occurrences(const LayeredForm& form) {
    const Theory q = form.start.theory();
    std::map<Name, std::int64_t> counts;
    for (const auto& l : form.layers) {
        if (is_word_theory(q)) {
            for (const auto& x : l.word()) {
                if (is_gen_slot(x.name)) counts[slot_name(x.name)] += x.inverted ? -1 : 1;
            }
        } else {
            for (const auto& [n, k] : l.counts()) {
                if (is_gen_slot(n)) counts[slot_name(n)] += k;
            }
        }
    }
    const Theory target = q == Theory::semilat ? Theory::semilat : has_inverses(q) ? Theory::abgrp : Theory::cmon;
    return FreeElem::from_counts(target, counts);
}

std::string_view to_string(EqVerdict::Kind kind) {
    switch (kind) {
    case EqVerdict::Kind::equal:
        return "Equal";
    case EqVerdict::Kind::distinct:
        return "Distinct";
    case EqVerdict::Kind::unknown:
        return "Unknown";
    }
    return "Unknown";
}

EqVerdict form_equal(const LayeredForm& a, const LayeredForm& b, const QNet& net, std::size_t budget) {
    if (budget == 0) throw Error(ErrorKind::invalid_argument, "search budget must be positive");
    if (a.start != b.start) return {EqVerdict::Kind::distinct, "sources differ", {}, 0};
    if (form_tgt(a, net) != form_tgt(b, net)) return {EqVerdict::Kind::distinct, "targets differ", {}, 0};
    if (occurrences(a) != occurrences(b)) {
        return {EqVerdict::Kind::distinct,
                "generator occurrences differ: " + to_display(occurrences(a)) + " vs " + to_display(occurrences(b)), {},
                0};
    }
    if (net.theory == Theory::abgrp) {
        return {EqVerdict::Kind::equal, "every ABGRP process merges into one step fixed by source and occurrences",
                {}, 0};
    }
    if (a == b) return {EqVerdict::Kind::equal, "identical layered forms", {to_display(a)}, 1};
    if (net.theory == Theory::cmon || net.theory == Theory::mon) {
        const LayeredForm ga = greedy_canonical(a, net);
        const LayeredForm gb = greedy_canonical(b, net);
        if (ga == gb) return {EqVerdict::Kind::equal, "greedy canonical forms coincide", {to_display(ga)}, 2};
    }
    const bool complete = net.theory == Theory::cmon || net.theory == Theory::mon;
    return search(a, b, net, budget, complete);
}

EqVerdict mor_equal(const MorTerm& a, const MorTerm& b, const QNet& net, std::size_t budget) {
    return form_equal(layered(a, net), layered(b, net), net, budget);
}

std::vector<FreeElem> single_layers(const QNet& net, const FreeElem& x, std::optional<std::size_t> max_width) {
    require_finite_homs(net.theory);
    require_object(net, x);
    const Theory q = net.theory;
    std::vector<std::pair<Name, Arcs>> ts(net.transitions.begin(), net.transitions.end());
    const bool has_sourceless =
        std::any_of(ts.begin(), ts.end(), [](const auto& t) { return t.second.src.empty(); });
    if (!max_width && has_sourceless && q != Theory::semilat) {
        throw Error(ErrorKind::infinite_result, "transitions with empty source need a width bound");
    }
    const std::size_t width = max_width.value_or(static_cast<std::size_t>(-1));
    std::set<FreeElem> out;

    if (q == Theory::cmon) {
        std::map<Name, std::int64_t> chosen;
        std::function<void(std::size_t, const FreeElem&, std::size_t)> rec = [&](std::size_t i, const FreeElem& rest,
                                                                                std::size_t total) {
            if (i == ts.size()) {
                if (total == 0) return;
                std::map<Name, std::int64_t> gens;
                for (const auto& [n, k] : chosen) {
                    if (k) gens[gen_slot(n)] = k;
                }
                out.insert(combine(FreeElem::from_counts(q, gens), identity_layer(rest)));
                return;
            }
            rec(i + 1, rest, total);
            FreeElem r = rest;
            std::size_t t = total;
            std::int64_t& c = chosen[ts[i].first];
            while (t < width && leq(ts[i].second.src, r)) {
                r = difference(r, ts[i].second.src);
                ++t;
                ++c;
                rec(i + 1, r, t);
            }
            c = 0;
        };
        rec(0, x, 0);
    } else if (q == Theory::mon) {
        const auto& w = x.word();
        std::vector<Letter> acc;
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t total) {
            if (i == w.size() && total > 0) out.insert(FreeElem::from_word(q, acc));
            if (total < width) {
                for (const auto& [n, a] : ts) {
                    if (!a.src.empty()) continue;
                    acc.push_back({gen_slot(n), false});
                    rec(i, total + 1);
                    acc.pop_back();
                }
            }
            if (i == w.size()) return;
            acc.push_back({place_slot(w[i].name), false});
            rec(i + 1, total);
            acc.pop_back();
            if (total >= width) return;
            for (const auto& [n, a] : ts) {
                const auto& s = a.src.word();
                if (s.empty() || i + s.size() > w.size()) continue;
                if (!std::equal(s.begin(), s.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) continue;
                acc.push_back({gen_slot(n), false});
                rec(i + s.size(), total + 1);
                acc.pop_back();
            }
        };
        rec(0, 0);
    } else {
        if (ts.size() > 20) throw Error(ErrorKind::invalid_argument, "too many transitions for SEMILAT step enumeration");
        for (std::uint32_t mask = 1; mask < (1u << ts.size()); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) > width) continue;
            std::map<Name, std::int64_t> gens;
            FreeElem s = neutral(q);
            for (std::size_t i = 0; i < ts.size(); ++i) {
                if (!(mask >> i & 1)) continue;
                gens[gen_slot(ts[i].first)] = 1;
                s = combine(s, ts[i].second.src);
            }
            if (!leq(s, x)) continue;
            const FreeElem fired = FreeElem::from_counts(q, gens);
            const FreeElem must = difference(x, s);
            const std::vector<Name> optional_idle = [&] {
                auto sup = s.support();
                return std::vector<Name>(sup.begin(), sup.end());
            }();
            for (std::uint32_t extra = 0; extra < (1u << optional_idle.size()); ++extra) {
                std::map<Name, std::int64_t> m = must.counts();
                for (std::size_t i = 0; i < optional_idle.size(); ++i) {
                    if (extra >> i & 1) m[optional_idle[i]] = 1;
                }
                out.insert(absorb(combine(fired, identity_layer(FreeElem::from_counts(q, m))), net));
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<HomClass> hom_enumerate(const QNet& net, const FreeElem& x, const FreeElem& y, std::size_t max_layers,
                                    std::size_t max_width, std::size_t budget) {
    require_finite_homs(net.theory);
    if (budget == 0) throw Error(ErrorKind::invalid_argument, "search budget must be positive");
    require_object(net, x);
    require_object(net, y);
    std::set<LayeredForm> all;
    LayeredForm cur{x, {}};
    collect_forms(net, cur, x, max_layers, max_width, all);
    std::set<LayeredForm> hits;
    for (const auto& f : all) {
        if (form_tgt(f, net) == y) hits.insert(f);
    }
    std::vector<HomClass> out;
    for (auto& f : class_representatives(sorted_forms(hits), net, budget)) out.push_back({f, to_term(f)});
    return out;
}

ReachResult reachable(const QNet& net, const FreeElem& m0, std::size_t max_steps, std::optional<std::size_t> width) {
    if (has_inverses(net.theory)) {
        throw Error(ErrorKind::unsupported_theory,
                    std::string(to_string(net.theory)) + " reachability is unbounded; use the group hom test instead");
    }
    require_object(net, m0);
    std::set<FreeElem> seen{m0};
    std::set<ReachEdge> edges;
    std::vector<FreeElem> frontier{m0};
    for (std::size_t step = 0; step < max_steps && !frontier.empty(); ++step) {
        std::vector<FreeElem> next;
        for (const auto& m : frontier) {
            for (const auto& layer : single_layers(net, m, width)) {
                FreeElem to = layer_tgt(layer, net);
                edges.insert({m, to, layer});
                if (seen.insert(to).second) next.push_back(std::move(to));
            }
        }
        frontier = std::move(next);
    }
    return {{seen.begin(), seen.end()}, {edges.begin(), edges.end()}};
}

namespace {

struct GroupSetup {
    std::vector<Name> places;
    std::vector<Name> transitions;
    std::optional<IntVector> coefficients;
};

GroupSetup solve_group(const QNet& net, const FreeElem& x, const FreeElem& y) {
    if (net.theory != Theory::abgrp) {
        throw Error(ErrorKind::unsupported_theory, "the group hom test needs an ABGRP net (GRP is out of scope)");
    }
    require_object(net, x);
    require_object(net, y);
    GroupSetup s;
    s.places.assign(net.places.begin(), net.places.end());
    std::map<Name, std::size_t> col;
    for (std::size_t i = 0; i < s.places.size(); ++i) col[s.places[i]] = i;
    std::vector<IntVector> gens;
    for (const auto& [t, a] : net.transitions) {
        IntVector v(s.places.size(), 0);
        for (const auto& [p, k] : a.tgt.counts()) v[col[p]] += k;
        for (const auto& [p, k] : a.src.counts()) v[col[p]] -= k;
        gens.push_back(std::move(v));
        s.transitions.push_back(t);
    }
    IntVector d(s.places.size(), 0);
    for (const auto& [p, k] : y.counts()) d[col[p]] += k;
    for (const auto& [p, k] : x.counts()) d[col[p]] -= k;
    s.coefficients = IntegerLattice(std::move(gens), s.places.size()).coefficients(d);
    return s;
}

} // namespace

bool hom_nonempty_group(const QNet& net, const FreeElem& x, const FreeElem& y) {
    return solve_group(net, x, y).coefficients.has_value();
}

std::optional<MorTerm> hom_group_witness(const QNet& net, const FreeElem& x, const FreeElem& y) {
    const GroupSetup s = solve_group(net, x, y);
    if (!s.coefficients) return std::nullopt;
    std::vector<MorTerm> args;
    FreeElem consumed = neutral(net.theory);
    for (std::size_t i = 0; i < s.transitions.size(); ++i) {
        const std::int64_t c = (*s.coefficients)[i];
        if (c == 0) continue;
        const Name& t = s.transitions[i];
        MorTerm g = c > 0 ? MorTerm::gen(t) : MorTerm::invert(MorTerm::gen(t));
        for (std::int64_t k = 0; k < (c > 0 ? c : -c); ++k) args.push_back(g);
        consumed = combine(consumed, power(net.transitions.at(t).src, c));
    }
    const FreeElem frame = difference(x, consumed);
    if (!frame.empty() || args.empty()) args.push_back(MorTerm::ident(frame));
    return args.size() == 1 ? args[0] : MorTerm::combine(std::move(args));
}

UnderlyingNet underlying_net(const QNet& net, const UnderlyingBound& bound) {
    require_finite_homs(net.theory);
    require_valid(net);
    if (bound.budget == 0) throw Error(ErrorKind::invalid_argument, "enumeration budget must be positive");
    if (bound.layers == 0 || bound.width == 0) {
        throw Error(ErrorKind::invalid_argument, "the bound must allow at least one step of width one");
    }
    std::set<FreeElem> objects;
    for (auto& x : small_objects(net, bound.object_size)) objects.insert(std::move(x));
    for (const auto& [t, a] : net.transitions) {
        objects.insert(a.src);
        objects.insert(a.tgt);
    }

    UnderlyingNet out;
    out.net.theory = net.theory;
    out.net.places = net.places;
    std::map<std::pair<FreeElem, FreeElem>, std::vector<LayeredForm>> classes;
    for (const auto& x : objects) {
        std::set<LayeredForm> all;
        LayeredForm cur{x, {}};
        collect_forms(net, cur, x, bound.layers, bound.width, all);
        std::map<FreeElem, std::set<LayeredForm>> by_target;
        for (const auto& f : all) {
            FreeElem y = form_tgt(f, net);
            if (objects.contains(y)) by_target[y].insert(f);
        }
        for (const auto& [y, forms] : by_target) {
            auto reps = class_representatives(sorted_forms(forms), net, bound.budget);
            for (const auto& r : reps) out.net.transitions[form_sort_key(r)] = Arcs{x, y};
            classes[{x, y}] = std::move(reps);
        }
    }

    out.unit = NetMorphism{net, out.net, {}, {}};
    for (const auto& p : net.places) out.unit.g[p] = p;
    for (const auto& [t, a] : net.transitions) {
        const LayeredForm g = layered(MorTerm::gen(t), net);
        const auto& reps = classes[{a.src, a.tgt}];
        auto it = std::find_if(reps.begin(), reps.end(), [&](const LayeredForm& r) {
            return form_equal(g, r, net, bound.budget).kind == EqVerdict::Kind::equal;
        });
        if (it == reps.end()) throw Error(ErrorKind::invalid_argument, "transition '" + t + "' has no class in the bound");
        out.unit.f[t] = form_sort_key(*it);
    }
    return out;
}

} // namespace qnet
