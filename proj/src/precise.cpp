#include "openpath/precise.hpp"

#include <set>
#include <sstream>

namespace openpath {

std::vector<Occurrence> occurrences(const Expr& e, const Term& t) {
    if (e.contains_pf()) throw Error("occurrences: undefined under a powerset node");
    std::vector<Occurrence> out;
    for_each_leaf(e, t, [&](int, const Term& leaf, const std::vector<int>& path) {
        out.push_back(Occurrence{leaf.as_elem(), path});
    });
    return out;
}

std::string path_string(const std::vector<int>& path) {
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(path[i]);
    }
    return s;
}

namespace {

void require_total(const SortedSet& x, const TermMap& f, const char* who) {
    for (const auto& e : x.elems())
        if (!f.count(e)) throw Error(std::string(who) + ": map undefined at '" + e.name + "'");
}

}  // namespace

bool is_precise(const Functor& F, const SortedSet& x, const SortedSet& y, const TermMap& f) {
    if (F.contains_pf()) throw Error("is_precise: powerset functor, use the oracle");
    require_total(x, f, "is_precise");
    std::map<Elem, int> count;
    for (const auto& e : x.elems())
        for (const auto& occ : occurrences(F.at(e.sort), f.at(e))) {
            if (!y.contains(occ.var)) return false;
            ++count[occ.var];
        }
    for (const auto& e : y.elems())
        if (count[e] != 1) return false;
    return true;
}

void for_each_elem_map(const SortedSet& x, const SortedSet& y, const std::function<bool(const ElemMap&)>& visit) {
    const auto xs = x.elems();
    ElemMap m;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == xs.size()) return visit(m);
        const int s = xs[i].sort;
        if (static_cast<std::size_t>(s) >= y.sort_count()) return true;
        for (const auto& n : y.per_sort[s]) {
            m[xs[i]] = Elem{s, n};
            if (!rec(i + 1)) return false;
        }
        m.erase(xs[i]);
        return true;
    };
    rec(0);
}

namespace {

// Enumerates products of per-element choices.
bool for_each_choice(const std::vector<Elem>& xs, const std::vector<std::vector<Term>>& options,
                     const std::function<bool(const TermMap&)>& visit) {
    TermMap m;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == xs.size()) return visit(m);
        for (const auto& t : options[i]) {
            m[xs[i]] = t;
            if (!rec(i + 1)) return false;
        }
        m.erase(xs[i]);
        return true;
    };
    return rec(0);
}

// Sorted sets of the given per-sort sizes, elements c0, c1, ...
SortedSet make_probe(const std::vector<int>& sizes) {
    SortedSet c(sizes.size());
    int next = 0;
    for (std::size_t s = 0; s < sizes.size(); ++s)
        for (int i = 0; i < sizes[s]; ++i) c.per_sort[s].push_back("c" + std::to_string(next++));
    return c;
}

void for_each_size_vector(std::size_t sorts, int bound, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> v(sorts, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == sorts) {
            fn(v);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            v[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, bound);
}

}  // namespace

bool is_precise_oracle(const Functor& F, const SortedSet& x, const SortedSet& y, const TermMap& f,
                       int size_bound) {
    require_total(x, f, "is_precise_oracle");
    if (static_cast<int>(y.size()) > size_bound) throw Error("is_precise_oracle: codomain exceeds the size bound");
    const auto xs = x.elems();
    const std::size_t sorts = F.sort_count();
    bool precise = true;
    for_each_size_vector(sorts, size_bound, [&](const std::vector<int>& sizes) {
        if (!precise) return;
        const SortedSet c = make_probe(sizes);
        const auto fc = eval_functor(F, c);
        for_each_elem_map(c, y, [&](const ElemMap& h) {
            // candidate k(x): preimages of f(x) under F h
            std::vector<std::vector<Term>> options;
            for (const auto& e : xs) {
                std::vector<Term> pre;
                for (const auto& u : fc[e.sort])
                    if (fmap(F.at(e.sort), h, u) == f.at(e)) pre.push_back(u);
                if (pre.empty()) return true;  // no k at all
                options.push_back(std::move(pre));
            }
            // sections d of h
            std::vector<ElemMap> sections;
            for_each_elem_map(y, c, [&](const ElemMap& d) {
                for (const auto& [yy, cc] : d)
                    if (h.at(cc) != yy) return true;
                sections.push_back(d);
                return true;
            });
            const bool all_k_ok = for_each_choice(xs, options, [&](const TermMap& k) {
                for (const auto& d : sections) {
                    bool ok = true;
                    for (const auto& e : xs)
                        if (fmap(F.at(e.sort), d, f.at(e)) != k.at(e)) {
                            ok = false;
                            break;
                        }
                    if (ok) return true;
                }
                return false;
            });
            if (!all_k_ok) precise = false;
            return precise;
        });
    });
    return precise;
}

Factorization precise_factorize(const Functor& F, const SortedSet& x, const TermMap& f) {
    if (F.contains_pf()) throw Error("precise_factorize: powerset functor");
    require_total(x, f, "precise_factorize");
    Factorization out;
    out.target = SortedSet(F.sort_count());
    for (const auto& e : x.elems()) {
        const Expr& ex = F.at(e.sort);
        const Term& t = f.at(e);
        std::vector<Elem> fresh;
        for (const auto& occ : occurrences(ex, t)) {
            Elem n{occ.var.sort, "(" + e.name + ";" + path_string(occ.path) + ")"};
            if (out.projection.count(n)) throw Error("precise_factorize: name clash on " + n.name);
            out.target.per_sort.at(n.sort).push_back(n.name);
            out.projection.emplace(n, occ.var);
            fresh.push_back(n);
        }
        std::size_t i = 0;
        out.map.emplace(e, map_leaves(ex, t, [&](int, const Term&) { return Term::var(fresh.at(i++)); }));
    }
    return out;
}

std::map<Elem, int> bag_abstraction(const Expr& e, const Term& t) {
    std::map<Elem, int> bag;
    for (const auto& occ : occurrences(e, t)) ++bag[occ.var];
    return bag;
}

// ---------------------------------------------------------------------------
// Shapes

namespace {

const std::string kHole = "_";

// Evaluating over a single hole per sort yields one canonical skeleton per
// isomorphism class of shapes.
std::vector<Term> skeletons(const Expr& e, std::size_t sorts) {
    if (e.contains_pf()) throw Error("precise shapes: powerset functor");
    LeafSets holes;
    for (std::size_t s = 0; s < sorts; ++s) holes.push_back({Term::var(static_cast<int>(s), kHole)});
    return eval_expr(e, holes);
}

}  // namespace

std::vector<Term> precise_shapes(const Expr& e, std::size_t sorts) {
    std::vector<Term> out;
    for (const auto& sk : skeletons(e, sorts)) {
        int counter = 0;
        out.push_back(map_leaves(e, sk, [&](int sort, const Term&) {
            return Term::var(sort, "v" + std::to_string(++counter));
        }));
    }
    return out;
}

void enumerate_precise_maps(const SortedSet& p, const Functor& F,
                            const std::function<bool(const PreciseMap&)>& visit) {
    if (F.contains_pf()) throw Error("enumerate_precise_maps: powerset functor");
    const auto ps = p.elems();
    std::vector<std::vector<Term>> per_sort(F.sort_count());
    for (std::size_t s = 0; s < F.sort_count(); ++s) per_sort[s] = skeletons(F.at(static_cast<int>(s)), F.sort_count());
    std::vector<const Term*> chosen(ps.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == ps.size()) {
            PreciseMap m;
            m.target = SortedSet(F.sort_count());
            int counter = 0;
            for (std::size_t j = 0; j < ps.size(); ++j) {
                const Expr& ex = F.at(ps[j].sort);
                Term t = map_leaves(ex, *chosen[j], [&](int sort, const Term&) {
                    std::string n = "v" + std::to_string(++counter);
                    m.target.per_sort.at(sort).push_back(n);
                    return Term::var(sort, n);
                });
                m.map.emplace(ps[j], std::move(t));
            }
            return visit(m);
        }
        for (const auto& sk : per_sort.at(ps[i].sort)) {
            chosen[i] = &sk;
            if (!rec(i + 1)) return false;
        }
        return true;
    };
    rec(0);
}

std::vector<PreciseMap> precise_maps(const SortedSet& p, const Functor& F) {
    std::vector<PreciseMap> out;
    enumerate_precise_maps(p, F, [&](const PreciseMap& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

void for_each_term_map(const Functor& F, const SortedSet& x, const SortedSet& y,
                       const std::function<bool(const TermMap&)>& visit) {
    const auto fy = eval_functor(F, y);
    const auto xs = x.elems();
    std::vector<std::vector<Term>> options;
    for (const auto& e : xs) options.push_back(fy.at(e.sort));
    for_each_choice(xs, options, visit);
}

}  // namespace openpath
