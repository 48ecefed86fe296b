#include "openpath/coalgebra.hpp"

#include <algorithm>
#include <sstream>

#include "openpath/random.hpp"

namespace openpath {

void Coalgebra::validate() const {
    functor.validate();
    if (functor.contains_pf()) throw Error("coalgebra: the functor must not contain a powerset node");
    const std::size_t sorts = functor.sort_count();
    if (carrier.sort_count() != sorts || pointing.sort_count() != sorts)
        throw Error("coalgebra: carrier and pointing must cover every sort");
    check_distinct(carrier, "coalgebra carrier");
    check_distinct(pointing, "coalgebra pointing");
    for (const auto& i : pointing.elems()) {
        auto it = point.find(i);
        if (it == point.end()) throw Error("coalgebra: pointing undefined at '" + i.name + "'");
        if (!carrier.contains(it->second) || it->second.sort != i.sort)
            throw Error("coalgebra: pointing sends '" + i.name + "' outside the carrier");
    }
    for (const auto& [x, ts] : xi)
        if (!carrier.contains(x)) throw Error("coalgebra: transitions for unknown state '" + x.name + "'");
    for (const auto& x : carrier.elems()) {
        auto it = xi.find(x);
        if (it == xi.end()) continue;
        const auto& ts = it->second;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            if (k > 0 && !(ts[k - 1] < ts[k]))
                throw Error("coalgebra: behaviour of '" + x.name + "' is not sorted and duplicate-free");
            if (!is_term_of(functor.at(x.sort), ts[k], carrier))
                throw Error("coalgebra: '" + to_string(ts[k]) + "' is not an element of F(X) for state '" +
                            x.name + "'");
        }
    }
}

const std::vector<Term>& Coalgebra::behaviour(const Elem& x) const {
    static const std::vector<Term> none;
    auto it = xi.find(x);
    return it == xi.end() ? none : it->second;
}

std::size_t Coalgebra::transition_count() const {
    std::size_t n = 0;
    for (const auto& [x, ts] : xi) n += ts.size();
    return n;
}

bool homset_leq(const BehaviourMap& f, const BehaviourMap& g) {
    if (f.size() != g.size()) throw Error("homset_leq: domain mismatch");
    for (const auto& [x, fs] : f) {
        auto it = g.find(x);
        if (it == g.end()) throw Error("homset_leq: domain mismatch at '" + x.name + "'");
        if (!std::includes(it->second.begin(), it->second.end(), fs.begin(), fs.end())) return false;
    }
    return true;
}

std::vector<Term> image_behaviour(const Expr& e, const ElemMap& m, const std::vector<Term>& ts) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(fmap(e, m, t));
    sort_unique(out);
    return out;
}

std::optional<std::string> hom_violation(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m,
                                         bool strict) {
    for (const auto& i : src.pointing.elems()) {
        auto it = m.find(src.point.at(i));
        if (it == m.end()) return "map undefined at '" + src.point.at(i).name + "'";
        auto jt = dst.point.find(i);
        if (jt == dst.point.end() || jt->second != it->second)
            return "pointing not preserved at '" + i.name + "'";
    }
    for (const auto& x : src.carrier.elems()) {
        auto it = m.find(x);
        if (it == m.end()) return "map undefined at '" + x.name + "'";
        if (!dst.carrier.contains(it->second)) return "'" + x.name + "' is sent outside the target carrier";
        const auto img = image_behaviour(src.functor.at(x.sort), m, src.behaviour(x));
        const auto& target = dst.behaviour(it->second);
        const bool ok = strict ? img == target : std::includes(target.begin(), target.end(), img.begin(), img.end());
        if (!ok) {
            std::ostringstream os;
            os << "behaviour of '" << x.name << "' mapped to {";
            for (std::size_t k = 0; k < img.size(); ++k) os << (k ? ", " : "") << img[k];
            os << "} is not " << (strict ? "equal to" : "included in") << " the behaviour {";
            for (std::size_t k = 0; k < target.size(); ++k) os << (k ? ", " : "") << target[k];
            os << "} of '" << it->second.name << "'";
            return os.str();
        }
    }
    return std::nullopt;
}

bool is_strict_hom(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m) {
    return !hom_violation(src, dst, m, true);
}

bool is_lax_hom(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m) {
    return !hom_violation(src, dst, m, false);
}

void decompose_into_units(const BehaviourMap& f, const std::function<bool(const PartialTermMap&)>& visit) {
    std::vector<std::pair<Elem, const std::vector<Term>*>> items;
    for (const auto& [x, ts] : f) items.emplace_back(x, &ts);
    PartialTermMap cur;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == items.size()) return visit(cur);
        const Elem& x = items[i].first;
        cur[x] = std::nullopt;
        if (!rec(i + 1)) return false;
        for (const auto& t : *items[i].second) {
            cur[x] = t;
            if (!rec(i + 1)) return false;
        }
        return true;
    };
    rec(0);
}

PartialTermMap lift_choice(const Functor& F, const BehaviourMap& x, const PartialTermMap& y, const ElemMap& h) {
    PartialTermMap out;
    for (const auto& [a, target] : y) {
        if (!target) {
            out[a] = std::nullopt;
            continue;
        }
        auto it = x.find(a);
        std::optional<Term> pick;
        if (it != x.end())
            for (const auto& u : it->second)  // sorted, so the first hit is least
                if (fmap(F.at(a.sort), h, u) == *target) {
                    pick = u;
                    break;
                }
        if (!pick) throw Error("lift_choice: no term over '" + a.name + "' maps to " + to_string(*target));
        out[a] = pick;
    }
    return out;
}

bool is_lts_functor(const Functor& F) {
    if (F.sort_count() != 1) return false;
    const Expr& e = F.at(0);
    return e.kind == Expr::Kind::Prod && e.children.size() == 2 && e.children[0].kind == Expr::Kind::Const &&
           e.children[1].kind == Expr::Kind::Sort;
}

bool lts_is_simulation(const Relation& r, const Coalgebra& c1, const Coalgebra& c2) {
    if (!is_lts_functor(c1.functor) || !is_lts_functor(c2.functor))
        throw Error("lts simulation: not a labelled transition system functor");
    for (const auto& i : c1.pointing.elems())
        if (!r.count({c1.point.at(i), c2.point.at(i)})) return false;
    for (const auto& [p, q] : r) {
        for (const auto& t : c1.behaviour(p)) {
            const Term& label = t.args[0];
            const Elem succ = t.args[1].as_elem();
            bool matched = false;
            for (const auto& u : c2.behaviour(q))
                if (u.args[0] == label && r.count({succ, u.args[1].as_elem()})) {
                    matched = true;
                    break;
                }
            if (!matched) return false;
        }
    }
    return true;
}

bool lts_is_bisimulation(const Relation& r, const Coalgebra& c1, const Coalgebra& c2) {
    Relation inv;
    for (const auto& [p, q] : r) inv.emplace(q, p);
    return lts_is_simulation(r, c1, c2) && lts_is_simulation(inv, c2, c1);
}

Coalgebra random_coalgebra(const GenSpec& spec) {
    spec.functor.validate();
    const std::size_t sorts = spec.functor.sort_count();
    if (spec.sizes.size() != sorts) throw Error("random_coalgebra: one carrier size per sort is required");
    Rng rng(spec.seed);
    Coalgebra c;
    c.functor = spec.functor;
    c.pointing = spec.pointing;
    c.carrier = SortedSet(sorts);
    for (std::size_t s = 0; s < sorts; ++s)
        for (int i = 1; i <= spec.sizes[s]; ++i) c.carrier.per_sort[s].push_back("x" + std::to_string(i));
    for (const auto& i : c.pointing.elems()) {
        const auto& pool = c.carrier.per_sort.at(i.sort);
        if (pool.empty()) throw Error("random_coalgebra: empty carrier for a sort required by the pointing");
        c.point[i] = Elem{i.sort, pool[rng.index(pool.size())]};
    }
    const auto terms = eval_functor(c.functor, c.carrier);
    for (const auto& x : c.carrier.elems()) {
        auto& ts = c.xi[x];
        for (const auto& t : terms[x.sort])
            if (rng.bernoulli(spec.density)) ts.push_back(t);
    }
    return c;
}

std::set<Elem> successors(const Expr& e, const std::vector<Term>& ts) {
    std::set<Elem> out;
    for (const auto& t : ts)
        for_each_leaf(e, t, [&](int, const Term& leaf, const std::vector<int>&) { out.insert(leaf.as_elem()); });
    return out;
}

Coalgebra restrict_to(const Coalgebra& c, const SortedSet& keep) {
    Coalgebra r;
    r.functor = c.functor;
    r.pointing = c.pointing;
    r.point = c.point;
    r.carrier = SortedSet(c.carrier.sort_count());
    for (const auto& x : c.carrier.elems())
        if (keep.contains(x)) r.carrier.per_sort[x.sort].push_back(x.name);
    for (const auto& [i, x] : c.point)
        if (!r.carrier.contains(x)) throw Error("restrict_to: the pointing leaves the kept set");
    for (const auto& x : r.carrier.elems()) {
        const auto& ts = c.behaviour(x);
        for (const auto& s : successors(c.functor.at(x.sort), ts))
            if (!r.carrier.contains(s)) throw Error("restrict_to: kept set is not closed under successors");
        r.xi[x] = ts;
    }
    return r;
}

}  // namespace openpath
