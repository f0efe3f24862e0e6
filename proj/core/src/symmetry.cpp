#include "qnet/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qnet {

namespace {

void require_word_net(const QNet& net) {
    if (!is_word_theory(net.theory)) {
        throw Error(ErrorKind::unsupported_theory, "symmetries are adjoined to MON and GRP nets only");
    }
}

struct GlueFailure {
    std::string message;
};

// A string diagram: boxes joined by wires. Composition glues wires, so wire
// ids are resolved through a union-find once the whole term is built.
struct Diagram {
    struct Box {
        Name label;
        bool inverted = false;
        std::vector<int> in;
        std::vector<int> out;
    };
    struct Ports {
        std::vector<int> inputs;
        std::vector<int> outputs;
    };

    const QNet& net;
    std::vector<Box> boxes;
    std::vector<Letter> wire_type;
    std::vector<int> parent;
    Ports boundary;

    explicit Diagram(const QNet& n) : net(n) {}

    int fresh(const Letter& type) {
        wire_type.push_back(type);
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }

    int find(int w) {
        while (parent[w] != w) {
            parent[w] = parent[parent[w]];
            w = parent[w];
        }
        return w;
    }

    std::vector<int> fresh_wires(const std::vector<Letter>& letters) {
        std::vector<int> out;
        for (const auto& l : letters) out.push_back(fresh(l));
        return out;
    }

    Ports build(const MorTerm& t) {
        using K = MorTerm::Kind;
        switch (t.kind()) {
        case K::gen: {
            auto it = net.transitions.find(t.name());
            if (it == net.transitions.end()) {
                throw Error(ErrorKind::unmapped_name, "unknown transition '" + t.name() + "'");
            }
            Box b{t.name(), false, fresh_wires(it->second.src.word()), fresh_wires(it->second.tgt.word())};
            boxes.push_back(b);
            return {b.in, b.out};
        }
        case K::ident: {
            auto w = fresh_wires(t.object().word());
            return {w, w};
        }
        case K::perm: {
            auto in = fresh_wires(t.object().word());
            std::vector<int> out(in.size());
            for (std::size_t i = 0; i < in.size(); ++i) out[t.map()[i]] = in[i];
            return {in, out};
        }
        case K::comp: {
            Ports before = build(t.args()[1]);
            Ports after = build(t.args()[0]);
            if (before.outputs.size() != after.inputs.size()) {
                throw GlueFailure{"composite boundaries have different lengths"};
            }
            for (std::size_t i = 0; i < before.outputs.size(); ++i) {
                const int a = find(before.outputs[i]);
                const int b = find(after.inputs[i]);
                if (!(wire_type[a] == wire_type[b])) throw GlueFailure{"composite boundaries differ letterwise"};
                parent[b] = a;
            }
            return {before.inputs, after.outputs};
        }
        case K::combine: {
            Ports out;
            for (const auto& a : t.args()) {
                Ports p = build(a);
                out.inputs.insert(out.inputs.end(), p.inputs.begin(), p.inputs.end());
                out.outputs.insert(out.outputs.end(), p.outputs.begin(), p.outputs.end());
            }
            return out;
        }
        case K::invert: {
            if (!has_inverses(net.theory)) {
                throw Error(ErrorKind::unsupported_theory, std::string(to_string(net.theory)) + " has no inverse operation");
            }
            const std::size_t first_box = boxes.size();
            const std::size_t first_wire = wire_type.size();
            Ports p = build(t.args()[0]);
            for (std::size_t b = first_box; b < boxes.size(); ++b) {
                boxes[b].inverted = !boxes[b].inverted;
                std::reverse(boxes[b].in.begin(), boxes[b].in.end());
                std::reverse(boxes[b].out.begin(), boxes[b].out.end());
            }
            for (std::size_t w = first_wire; w < wire_type.size(); ++w) wire_type[w].inverted = !wire_type[w].inverted;
            std::reverse(p.inputs.begin(), p.inputs.end());
            std::reverse(p.outputs.begin(), p.outputs.end());
            return p;
        }
        }
        throw Error(ErrorKind::ill_typed, "malformed term");
    }

    void resolve() {
        for (auto& b : boxes) {
            for (auto& w : b.in) w = find(w);
            for (auto& w : b.out) w = find(w);
        }
        for (auto& w : boundary.inputs) w = find(w);
        for (auto& w : boundary.outputs) w = find(w);
    }
};

enum class End { boundary_in, boundary_out, box_in, box_out };

struct Endpoint {
    End kind = End::boundary_in;
    int box = -1;
    int port = -1;
};

struct Wiring {
    std::map<int, Endpoint> producer;
    std::map<int, Endpoint> consumer;

    explicit Wiring(const Diagram& d) {
        for (std::size_t i = 0; i < d.boundary.inputs.size(); ++i) {
            producer[d.boundary.inputs[i]] = {End::boundary_in, -1, static_cast<int>(i)};
        }
        for (std::size_t i = 0; i < d.boundary.outputs.size(); ++i) {
            consumer[d.boundary.outputs[i]] = {End::boundary_out, -1, static_cast<int>(i)};
        }
        for (std::size_t b = 0; b < d.boxes.size(); ++b) {
            const auto& box = d.boxes[b];
            for (std::size_t k = 0; k < box.in.size(); ++k) {
                consumer[box.in[k]] = {End::box_in, static_cast<int>(b), static_cast<int>(k)};
            }
            for (std::size_t k = 0; k < box.out.size(); ++k) {
                producer[box.out[k]] = {End::box_out, static_cast<int>(b), static_cast<int>(k)};
            }
        }
    }
};

class Matcher {
  public:
    Matcher(const Diagram& a, const Diagram& b, std::size_t budget)
        : a_(a), b_(b), wa_(a), wb_(b), budget_(budget) {}

    enum class Result { found, none, budget };

    Result run() {
        if (a_.boxes.size() != b_.boxes.size()) return Result::none;
        State s{std::vector<int>(a_.boxes.size(), -1), std::vector<int>(b_.boxes.size(), -1), {}};
        const auto& ia = a_.boundary.inputs;
        const auto& ib = b_.boundary.inputs;
        const auto& oa = a_.boundary.outputs;
        const auto& ob = b_.boundary.outputs;
        if (ia.size() != ib.size() || oa.size() != ob.size()) return Result::none;
        for (std::size_t i = 0; i < ia.size(); ++i) {
            if (!match(wa_.consumer.at(ia[i]), wb_.consumer.at(ib[i]), s)) return Result::none;
        }
        for (std::size_t i = 0; i < oa.size(); ++i) {
            if (!match(wa_.producer.at(oa[i]), wb_.producer.at(ob[i]), s)) return Result::none;
        }
        return search(s);
    }

    const std::vector<int>& mapping() const { return found_; }
    std::size_t steps() const { return steps_; }

  private:
    struct State {
        std::vector<int> phi;
        std::vector<int> psi;
        std::vector<int> pending;
    };

    bool assign(int x, int y, State& s) {
        if (s.phi[x] >= 0) return s.phi[x] == y;
        if (s.psi[y] >= 0) return false;
        const auto& bx = a_.boxes[x];
        const auto& by = b_.boxes[y];
        if (bx.label != by.label || bx.inverted != by.inverted) return false;
        s.phi[x] = y;
        s.psi[y] = x;
        s.pending.push_back(x);
        return true;
    }

    bool match(const Endpoint& x, const Endpoint& y, State& s) {
        if (x.kind != y.kind || x.port != y.port) return false;
        if (x.kind == End::boundary_in || x.kind == End::boundary_out) return true;
        return assign(x.box, y.box, s);
    }

    bool propagate(State& s) {
        while (!s.pending.empty()) {
            const int x = s.pending.back();
            s.pending.pop_back();
            const auto& bx = a_.boxes[x];
            const auto& by = b_.boxes[s.phi[x]];
            for (std::size_t k = 0; k < bx.in.size(); ++k) {
                if (!match(wa_.producer.at(bx.in[k]), wb_.producer.at(by.in[k]), s)) return false;
            }
            for (std::size_t k = 0; k < bx.out.size(); ++k) {
                if (!match(wa_.consumer.at(bx.out[k]), wb_.consumer.at(by.out[k]), s)) return false;
            }
        }
        return true;
    }

    Result search(State& s) {
        if (!propagate(s)) return Result::none;
        auto open = std::find(s.phi.begin(), s.phi.end(), -1);
        if (open == s.phi.end()) {
            found_ = s.phi;
            return Result::found;
        }
        const int x = static_cast<int>(open - s.phi.begin());
        bool exhausted = false;
        for (std::size_t y = 0; y < b_.boxes.size(); ++y) {
            if (s.psi[y] >= 0) continue;
            if (++steps_ > budget_) return Result::budget;
            State next = s;
            if (!assign(x, static_cast<int>(y), next)) continue;
            const Result r = search(next);
            if (r == Result::found) return r;
            if (r == Result::budget) exhausted = true;
        }
        return exhausted ? Result::budget : Result::none;
    }

    const Diagram& a_;
    const Diagram& b_;
    Wiring wa_;
    Wiring wb_;
    std::size_t budget_;
    std::size_t steps_ = 0;
    std::vector<int> found_;
};

void signed_counts(const MorTerm& t, std::int64_t sign, std::map<Name, std::int64_t>& out) {
    using K = MorTerm::Kind;
    if (t.kind() == K::gen) {
        out[t.name()] += sign;
        return;
    }
    const std::int64_t s = t.kind() == K::invert ? -sign : sign;
    for (const auto& a : t.args()) signed_counts(a, s, out);
}

std::vector<std::vector<Letter>> orderings(std::vector<Letter> letters) {
    auto less = [](const Letter& x, const Letter& y) { return x.name < y.name; };
    std::sort(letters.begin(), letters.end(), less);
    std::vector<std::vector<Letter>> out;
    do {
        out.push_back(letters);
    } while (std::next_permutation(letters.begin(), letters.end(), less));
    return out;
}

std::vector<FreeElem> payload_orderings(const FreeElem& x, Theory word_theory) {
    std::vector<Letter> pos, neg;
    for (const auto& [n, k] : x.counts()) {
        for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) (k > 0 ? pos : neg).push_back({n, k < 0});
    }
    std::vector<FreeElem> out;
    for (const auto& p : orderings(pos)) {
        for (const auto& q : orderings(neg)) {
            std::vector<Letter> w = p;
            w.insert(w.end(), q.begin(), q.end());
            out.push_back(FreeElem::from_word(word_theory, w));
        }
    }
    return out;
}

constexpr std::size_t max_linearizations = 100000;

std::size_t checked_times(std::size_t a, std::size_t b) {
    std::size_t r;
    if (__builtin_mul_overflow(a, b, &r) || r > max_linearizations) {
        throw Error(ErrorKind::invalid_argument, "too many linearizations");
    }
    return r;
}

std::size_t orderings_of_counts(const std::vector<std::int64_t>& ks) {
    // Product of binomials C(n_1 + ... + n_i, n_i) avoids factorial overflow.
    std::size_t total = 1;
    std::int64_t seen = 0;
    for (std::int64_t k : ks) {
        for (std::int64_t j = 1; j <= k; ++j) {
            ++seen;
            std::size_t r;
            if (__builtin_mul_overflow(total, static_cast<std::size_t>(seen), &r)) {
                throw Error(ErrorKind::invalid_argument, "ordering count overflows");
            }
            total = r / static_cast<std::size_t>(j);
        }
    }
    return total;
}

} // namespace

MorTerm braiding(const FreeElem& x, const FreeElem& y) {
    if (!is_word_theory(x.theory())) throw Error(ErrorKind::unsupported_theory, "braiding needs word objects");
    const std::size_t n = x.word().size();
    const std::size_t m = y.word().size();
    std::vector<std::size_t> map(n + m);
    for (std::size_t i = 0; i < n; ++i) map[i] = i + m;
    for (std::size_t j = 0; j < m; ++j) map[n + j] = j;
    std::vector<Letter> w = x.word();
    w.insert(w.end(), y.word().begin(), y.word().end());
    return MorTerm::perm(FreeElem::from_word(x.theory(), w), std::move(map));
}

EqVerdict sym_equal(const MorTerm& a, const MorTerm& b, const QNet& net, std::size_t budget) {
    require_word_net(net);
    if (budget == 0) throw Error(ErrorKind::invalid_argument, "search budget must be positive");
    if (mor_src(a, net) != mor_src(b, net)) return {EqVerdict::Kind::distinct, "sources differ", {}, 0};
    if (mor_tgt(a, net) != mor_tgt(b, net)) return {EqVerdict::Kind::distinct, "targets differ", {}, 0};
    std::map<Name, std::int64_t> ca, cb;
    signed_counts(a, 1, ca);
    signed_counts(b, 1, cb);
    std::erase_if(ca, [](const auto& e) { return e.second == 0; });
    std::erase_if(cb, [](const auto& e) { return e.second == 0; });
    if (ca != cb) return {EqVerdict::Kind::distinct, "generator occurrences differ", {}, 0};

    const bool group = has_inverses(net.theory);
    Diagram da(net), db(net);
    try {
        da.boundary = da.build(a);
        db.boundary = db.build(b);
    } catch (const GlueFailure& g) {
        return {EqVerdict::Kind::unknown, g.message + " before cancellation", {}, 0};
    }
    da.resolve();
    db.resolve();
    auto types = [](Diagram& d, const std::vector<int>& ws) {
        std::vector<Letter> out;
        for (int w : ws) out.push_back(d.wire_type[w]);
        return out;
    };
    if (types(da, da.boundary.inputs) != types(db, db.boundary.inputs) ||
        types(da, da.boundary.outputs) != types(db, db.boundary.outputs)) {
        return {EqVerdict::Kind::unknown, "diagram boundaries differ before cancellation", {}, 0};
    }
    Matcher m(da, db, budget);
    switch (m.run()) {
    case Matcher::Result::found: {
        std::vector<std::string> witness;
        for (std::size_t x = 0; x < m.mapping().size(); ++x) {
            std::ostringstream os;
            os << "box " << x << " (" << da.boxes[x].label << (da.boxes[x].inverted ? "^-1" : "") << ") -> box "
               << m.mapping()[x];
            witness.push_back(os.str());
        }
        return {EqVerdict::Kind::equal, "string diagrams are isomorphic", std::move(witness), m.steps()};
    }
    case Matcher::Result::none:
        if (group) {
            return {EqVerdict::Kind::unknown, "no diagram isomorphism, but cancellations are not modeled", {},
                    m.steps()};
        }
        return {EqVerdict::Kind::distinct, "no diagram isomorphism exists", {}, m.steps()};
    case Matcher::Result::budget:
        return {EqVerdict::Kind::unknown, "isomorphism search budget exhausted", {}, m.steps()};
    }
    return {EqVerdict::Kind::unknown, "", {}, 0};
}

MorTerm forget_symmetries(const MorTerm& term, Arrow arrow) {
    using K = MorTerm::Kind;
    switch (term.kind()) {
    case K::gen:
        return term;
    case K::ident:
    case K::perm:
        return MorTerm::ident(translate(arrow, term.object()));
    case K::comp:
        return MorTerm::comp(forget_symmetries(term.args()[0], arrow), forget_symmetries(term.args()[1], arrow));
    case K::combine: {
        std::vector<MorTerm> args;
        for (const auto& a : term.args()) args.push_back(forget_symmetries(a, arrow));
        return MorTerm::combine(std::move(args));
    }
    case K::invert:
        return MorTerm::invert(forget_symmetries(term.args()[0], arrow));
    }
    throw Error(ErrorKind::ill_typed, "malformed term");
}

std::vector<QNet> linearizations(const QNet& net) {
    Theory word_theory;
    if (net.theory == Theory::cmon) word_theory = Theory::mon;
    else if (net.theory == Theory::abgrp) word_theory = Theory::grp;
    else throw Error(ErrorKind::unsupported_theory, "linearizations exist for CMON and ABGRP nets only");
    require_valid(net);

    std::vector<Name> names;
    std::vector<std::vector<Arcs>> choices;
    std::size_t total = 1;
    for (const auto& [t, a] : net.transitions) {
        std::vector<Arcs> options;
        for (const auto& s : payload_orderings(a.src, word_theory)) {
            for (const auto& g : payload_orderings(a.tgt, word_theory)) options.push_back({s, g});
        }
        total = checked_times(total, options.size());
        names.push_back(t);
        choices.push_back(std::move(options));
    }

    std::vector<QNet> out;
    std::vector<std::size_t> pick(names.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        QNet lin{word_theory, net.places, {}};
        for (std::size_t i = 0; i < names.size(); ++i) lin.transitions[names[i]] = choices[i][pick[i]];
        out.push_back(std::move(lin));
        for (std::size_t i = names.size(); i-- > 0;) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
    }
    return out;
}

QNet linearization_sum(const QNet& net) {
    const auto lins = linearizations(net);
    QNet out{lins.front().theory, net.places, {}};
    for (std::size_t i = 0; i < lins.size(); ++i) {
        for (const auto& [t, a] : lins[i].transitions) out.transitions[std::to_string(i) + "." + t] = a;
    }
    return out;
}

std::size_t multiset_orderings(const FreeElem& x) {
    if (!is_commutative(x.theory())) throw Error(ErrorKind::unsupported_theory, "orderings count commutative payloads");
    std::vector<std::int64_t> pos, neg;
    for (const auto& [n, k] : x.counts()) (k > 0 ? pos : neg).push_back(k > 0 ? k : -k);
    return orderings_of_counts(pos) * orderings_of_counts(neg);
}

} // namespace qnet
