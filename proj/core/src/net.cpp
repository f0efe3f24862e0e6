#include "qnet/net.hpp"

#include <algorithm>
#include <functional>

namespace qnet {

namespace {

void check_elem(const QNet& net, const FreeElem& x, const std::string& where, Diagnostics& out) {
    if (x.theory() != net.theory) {
        out.push_back({where, "element theory " + std::string(to_string(x.theory())) +
                                  " does not match net theory " + std::string(to_string(net.theory))});
        return;
    }
    if (!is_canonical(x)) out.push_back({where, "element is not in canonical form"});
    for (const auto& p : x.support()) {
        if (!net.places.contains(p)) out.push_back({where, "mentions undeclared place '" + p + "'"});
    }
}

void check_total(const NameMap& m, const auto& domain, const std::set<Name>& codomain,
                 const std::string& what, Diagnostics& out) {
    for (const auto& entry : domain) {
        const Name& n = [&]() -> const Name& {
            if constexpr (requires { entry.first; }) return entry.first;
            else return entry;
        }();
        auto it = m.find(n);
        if (it == m.end()) {
            out.push_back({what + " " + n, "not mapped"});
        } else if (!codomain.contains(it->second)) {
            out.push_back({what + " " + n, "mapped to unknown '" + it->second + "'"});
        }
    }
}

std::set<Name> keys(const std::map<Name, Arcs>& m) {
    std::set<Name> out;
    for (const auto& [k, v] : m) out.insert(k);
    return out;
}

} // namespace

Diagnostics validate_net(const QNet& net) {
    Diagnostics out;
    for (const auto& [name, arcs] : net.transitions) {
        check_elem(net, arcs.src, "transition " + name + " src", out);
        check_elem(net, arcs.tgt, "transition " + name + " tgt", out);
    }
    return out;
}

Diagnostics validate_morphism(const NetMorphism& h) {
    Diagnostics out;
    if (h.source.theory != h.target.theory) {
        out.push_back({"morphism", "source and target nets have different theories"});
        return out;
    }
    check_total(h.f, h.source.transitions, keys(h.target.transitions), "transition", out);
    check_total(h.g, h.source.places, h.target.places, "place", out);
    if (!out.empty()) return out;
    for (const auto& [name, arcs] : h.source.transitions) {
        const Arcs& image = h.target.transitions.at(h.f.at(name));
        const FreeElem src = lift(h.g, arcs.src);
        const FreeElem tgt = lift(h.g, arcs.tgt);
        if (src != image.src) {
            out.push_back({"transition " + name,
                           "source square fails: " + to_display(src) + " != " + to_display(image.src)});
        }
        if (tgt != image.tgt) {
            out.push_back({"transition " + name,
                           "target square fails: " + to_display(tgt) + " != " + to_display(image.tgt)});
        }
    }
    return out;
}

void require_valid(const QNet& net) {
    auto d = validate_net(net);
    if (!d.empty()) throw Error(ErrorKind::invalid_argument, "invalid net: " + d.front().where + ": " + d.front().message);
}

void require_valid(const NetMorphism& h) {
    auto d = validate_morphism(h);
    if (!d.empty()) {
        throw Error(ErrorKind::invalid_argument, "invalid morphism: " + d.front().where + ": " + d.front().message);
    }
}

NetMorphism identity_morphism(const QNet& net) {
    NetMorphism h{net, net, {}, {}};
    for (const auto& [t, arcs] : net.transitions) h.f[t] = t;
    for (const auto& p : net.places) h.g[p] = p;
    return h;
}

NetMorphism compose(const NetMorphism& after, const NetMorphism& before) {
    if (!(before.target == after.source)) {
        throw Error(ErrorKind::ill_typed, "morphisms are not composable");
    }
    NetMorphism h{before.source, after.target, {}, {}};
    for (const auto& [t, u] : before.f) h.f[t] = after.f.at(u);
    for (const auto& [p, q] : before.g) h.g[p] = after.g.at(q);
    return h;
}

QNet apply_net_functor(Arrow arrow, const QNet& net) {
    if (net.theory != arrow_source(arrow)) {
        throw Error(ErrorKind::theory_mismatch, "arrow " + std::string(to_string(arrow)) + " expects a " +
                                                    std::string(to_string(arrow_source(arrow))) + " net");
    }
    QNet out{arrow_target(arrow), net.places, {}};
    for (const auto& [t, arcs] : net.transitions) {
        out.transitions[t] = Arcs{translate(arrow, arcs.src), translate(arrow, arcs.tgt)};
    }
    return out;
}

NetMorphism apply_net_functor(Arrow arrow, const NetMorphism& h) {
    return NetMorphism{apply_net_functor(arrow, h.source), apply_net_functor(arrow, h.target), h.f, h.g};
}

NetCone coproduct(const QNet& p1, const QNet& p2) {
    if (p1.theory != p2.theory) throw Error(ErrorKind::theory_mismatch, "coproduct of nets over different theories");
    NetCone cone;
    cone.net.theory = p1.theory;
    NetMorphism left{p1, {}, {}, {}};
    NetMorphism right{p2, {}, {}, {}};
    auto inject = [&](const QNet& p, const std::string& tag, NetMorphism& inj) {
        for (const auto& s : p.places) {
            cone.net.places.insert(tag + s);
            inj.g[s] = tag + s;
        }
        for (const auto& [t, arcs] : p.transitions) {
            cone.net.transitions[tag + t] = Arcs{lift(inj.g, arcs.src), lift(inj.g, arcs.tgt)};
            inj.f[t] = tag + t;
        }
    };
    inject(p1, "L.", left);
    inject(p2, "R.", right);
    left.target = cone.net;
    right.target = cone.net;
    cone.first = std::move(left);
    cone.second = std::move(right);
    return cone;
}

Name pair_name(const Name& left, const Name& right) { return "(" + left + "," + right + ")"; }

std::vector<FreeElem> marginal_fiber(const FreeElem& x, const FreeElem& y) {
    if (x.theory() != y.theory()) throw Error(ErrorKind::theory_mismatch, "marginals over different theories");
    const Theory q = x.theory();
    std::vector<FreeElem> out;
    switch (q) {
    case Theory::mon: {
        if (x.word().size() != y.word().size()) return out;
        std::vector<Name> word;
        for (std::size_t i = 0; i < x.word().size(); ++i) {
            word.push_back(pair_name(x.word()[i].name, y.word()[i].name));
        }
        out.push_back(FreeElem::from_names(q, word));
        return out;
    }
    case Theory::cmon: {
        if (x.size() != y.size()) return out;
        std::vector<std::pair<Name, std::int64_t>> rows(x.counts().begin(), x.counts().end());
        std::vector<std::pair<Name, std::int64_t>> cols(y.counts().begin(), y.counts().end());
        std::vector<std::int64_t> row_left(rows.size()), col_left(cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i) row_left[i] = rows[i].second;
        for (std::size_t j = 0; j < cols.size(); ++j) col_left[j] = cols[j].second;
        std::map<Name, std::int64_t> cell;
        std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t j) {
            if (i == rows.size()) {
                if (std::all_of(col_left.begin(), col_left.end(), [](auto c) { return c == 0; })) {
                    out.push_back(FreeElem::from_counts(q, cell));
                }
                return;
            }
            if (j + 1 == cols.size()) {
                const std::int64_t v = row_left[i];
                if (v > col_left[j]) return;
                const Name key = pair_name(rows[i].first, cols[j].first);
                cell[key] = v;
                row_left[i] -= v;
                col_left[j] -= v;
                fill(i + 1, 0);
                row_left[i] += v;
                col_left[j] += v;
                cell.erase(key);
                return;
            }
            const Name key = pair_name(rows[i].first, cols[j].first);
            for (std::int64_t v = 0; v <= std::min(row_left[i], col_left[j]); ++v) {
                cell[key] = v;
                row_left[i] -= v;
                col_left[j] -= v;
                fill(i, j + 1);
                row_left[i] += v;
                col_left[j] += v;
            }
            cell.erase(key);
        };
        if (rows.empty()) {
            out.push_back(FreeElem(q));
        } else {
            fill(0, 0);
        }
        return out;
    }
    case Theory::semilat: {
        const std::vector<Name> as(x.support().begin(), x.support().end());
        const std::vector<Name> bs(y.support().begin(), y.support().end());
        if (as.empty() || bs.empty()) {
            if (as.empty() && bs.empty()) out.push_back(FreeElem(q));
            return out;
        }
        const std::size_t cells = as.size() * bs.size();
        if (cells > 20) throw Error(ErrorKind::infinite_result, "semilattice fiber too large to enumerate");
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
            std::vector<bool> row_hit(as.size()), col_hit(bs.size());
            std::map<Name, std::int64_t> counts;
            for (std::size_t k = 0; k < cells; ++k) {
                if (!(mask >> k & 1)) continue;
                row_hit[k / bs.size()] = true;
                col_hit[k % bs.size()] = true;
                counts[pair_name(as[k / bs.size()], bs[k % bs.size()])] = 1;
            }
            if (std::all_of(row_hit.begin(), row_hit.end(), [](bool b) { return b; }) &&
                std::all_of(col_hit.begin(), col_hit.end(), [](bool b) { return b; })) {
                out.push_back(FreeElem::from_counts(q, counts));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    case Theory::abgrp:
    case Theory::grp:
        break;
    }
    throw Error(ErrorKind::infinite_result,
                std::string(to_string(q)) + " marginal fibers are infinite; the product net is not finite");
}

NetCone product(const QNet& p1, const QNet& p2) {
    if (p1.theory != p2.theory) throw Error(ErrorKind::theory_mismatch, "product of nets over different theories");
    if (has_inverses(p1.theory)) {
        throw Error(ErrorKind::infinite_result, std::string(to_string(p1.theory)) +
                                                    " products have infinitely many transitions");
    }
    NetCone cone;
    cone.net.theory = p1.theory;
    NetMorphism pi1{{}, p1, {}, {}};
    NetMorphism pi2{{}, p2, {}, {}};
    for (const auto& x : p1.places) {
        for (const auto& y : p2.places) {
            const Name n = pair_name(x, y);
            if (!cone.net.places.insert(n).second) {
                throw Error(ErrorKind::invalid_argument, "ambiguous product place name '" + n + "'");
            }
            pi1.g[n] = x;
            pi2.g[n] = y;
        }
    }
    for (const auto& [t1, a1] : p1.transitions) {
        for (const auto& [t2, a2] : p2.transitions) {
            const auto us = marginal_fiber(a1.src, a2.src);
            const auto vs = marginal_fiber(a1.tgt, a2.tgt);
            std::size_t k = 0;
            for (const auto& u : us) {
                for (const auto& v : vs) {
                    const Name n = pair_name(t1, t2) + "#" + std::to_string(k++);
                    if (!cone.net.transitions.emplace(n, Arcs{u, v}).second) {
                        throw Error(ErrorKind::invalid_argument, "ambiguous product transition name '" + n + "'");
                    }
                    pi1.f[n] = t1;
                    pi2.f[n] = t2;
                }
            }
        }
    }
    pi1.source = cone.net;
    pi2.source = cone.net;
    cone.first = std::move(pi1);
    cone.second = std::move(pi2);
    return cone;
}

std::vector<NetMorphism> enumerate_morphisms(const QNet& from, const QNet& to) {
    std::vector<NetMorphism> out;
    if (from.theory != to.theory) return out;
    const std::vector<Name> src_places(from.places.begin(), from.places.end());
    const std::vector<Name> dst_places(to.places.begin(), to.places.end());
    if (dst_places.empty() && !src_places.empty()) return out;

    std::vector<std::size_t> choice(src_places.size(), 0);
    while (true) {
        NameMap g;
        for (std::size_t i = 0; i < src_places.size(); ++i) g[src_places[i]] = dst_places[choice[i]];

        std::vector<std::pair<Name, std::vector<Name>>> candidates;
        bool possible = true;
        for (const auto& [t, arcs] : from.transitions) {
            const FreeElem s = lift(g, arcs.src);
            const FreeElem u = lift(g, arcs.tgt);
            std::vector<Name> hits;
            for (const auto& [t2, arcs2] : to.transitions) {
                if (arcs2.src == s && arcs2.tgt == u) hits.push_back(t2);
            }
            if (hits.empty()) {
                possible = false;
                break;
            }
            candidates.emplace_back(t, std::move(hits));
        }
        if (possible) {
            std::vector<std::size_t> pick(candidates.size(), 0);
            while (true) {
                NetMorphism h{from, to, {}, g};
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                    h.f[candidates[i].first] = candidates[i].second[pick[i]];
                }
                out.push_back(std::move(h));
                std::size_t i = 0;
                for (; i < pick.size(); ++i) {
                    if (++pick[i] < candidates[i].second.size()) break;
                    pick[i] = 0;
                }
                if (i == pick.size()) break;
            }
        }
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
            if (++choice[i] < dst_places.size()) break;
            choice[i] = 0;
        }
        if (i == choice.size()) break;
    }
    return out;
}

} // namespace qnet
