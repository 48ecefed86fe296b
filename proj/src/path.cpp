#include "openpath/path.hpp"

#include <set>
#include <sstream>

#include "openpath/precise.hpp"

namespace openpath {

PathObj trivial_path(const Functor& F, const SortedSet& pointing) {
    PathObj p;
    p.functor = F;
    p.levels.push_back(pointing);
    return p;
}

std::optional<std::string> path_violation(const PathObj& p) {
    if (p.levels.empty()) return "path has no levels";
    if (p.levels.size() != p.maps.size() + 1) return "path needs exactly one map per level transition";
    Functor F1;
    try {
        p.functor.validate();
        F1 = plus1(p.functor);
    } catch (const Error& e) {
        return std::string(e.what());
    }
    if (p.functor.contains_pf()) return "path functor contains a powerset node";
    for (std::size_t k = 0; k < p.levels.size(); ++k) {
        if (p.levels[k].sort_count() != p.functor.sort_count())
            return "level " + std::to_string(k) + " does not cover every sort";
        try {
            check_distinct(p.levels[k], "level " + std::to_string(k));
        } catch (const Error& e) {
            return std::string(e.what());
        }
    }
    for (std::size_t k = 0; k < p.maps.size(); ++k) {
        const auto& m = p.maps[k];
        for (const auto& s : p.levels[k].elems()) {
            auto it = m.find(s);
            if (it == m.end()) return "level " + std::to_string(k) + ": map undefined at '" + s.name + "'";
            if (!is_term_of(F1.at(s.sort), it->second, p.levels[k + 1]))
                return "level " + std::to_string(k) + ": '" + to_string(it->second) + "' is not a term over level " +
                       std::to_string(k + 1);
        }
        if (m.size() != p.levels[k].size()) return "level " + std::to_string(k) + ": map has extra entries";
        if (!is_precise(F1, p.levels[k], p.levels[k + 1], m))
            return "level " + std::to_string(k) + ": map is not (F+1)-precise";
    }
    return std::nullopt;
}

std::optional<std::string> path_violation(const PathObj& p, const SortedSet& pointing) {
    if (auto v = path_violation(p)) return v;
    if (!(p.levels[0] == pointing)) return "level 0 differs from the pointing object";
    return std::nullopt;
}

void validate_path(const PathObj& p) {
    if (auto v = path_violation(p)) throw Error("invalid path: " + *v);
}

PathObj canonical_names(const PathObj& p) {
    PathObj out;
    out.functor = p.functor;
    out.levels.push_back(p.levels.at(0));
    ElemMap rename;
    for (const auto& i : p.levels[0].elems()) rename[i] = i;
    for (std::size_t k = 0; k < p.maps.size(); ++k) {
        ElemMap next;
        SortedSet level(p.functor.sort_count());
        TermMap m;
        int counter = 0;
        for (const auto& s : p.levels[k].elems()) {
            const Term& t = p.maps[k].at(s);
            const Expr e = Expr::plus1(p.functor.at(s.sort));
            for_each_leaf(e, t, [&](int sort, const Term& leaf, const std::vector<int>&) {
                Elem n{sort, "v" + std::to_string(++counter)};
                next[leaf.as_elem()] = n;
                level.per_sort[sort].push_back(n.name);
            });
            m[rename.at(s)] = fmap(e, next, t);
        }
        out.maps.push_back(std::move(m));
        out.levels.push_back(std::move(level));
        rename = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Comp

CompValue comp(const PathObj& p) {
    validate_path(p);
    const Functor F1 = plus1(p.functor);
    const int n = p.length();
    std::map<Elem, Term> below;  // values at level k+1
    for (const auto& s : p.levels[n].elems()) below[s] = Term::unit();
    for (int k = n - 1; k >= 0; --k) {
        std::map<Elem, Term> cur;
        for (const auto& s : p.levels[k].elems())
            cur[s] = map_leaves(F1.at(s.sort), p.maps[k].at(s),
                                [&](int, const Term& leaf) { return below.at(leaf.as_elem()); });
        below = std::move(cur);
    }
    CompValue v;
    v.depth = n;
    for (const auto& i : p.levels[0].elems()) v.values[i] = below.at(i);
    return v;
}

Term truncate_value(const Functor& F1, int sort, const Term& value, int d) {
    if (d == 0) return Term::unit();
    if (value.kind == Term::Kind::Unit) throw Error("truncate: value is shallower than the cut");
    return map_leaves(F1.at(sort), value,
                      [&](int s, const Term& leaf) { return truncate_value(F1, s, leaf, d - 1); });
}

CompValue truncate(const Functor& F, const CompValue& v, int depth) {
    if (depth > v.depth) throw Error("truncate: depth exceeds the value's depth");
    const Functor F1 = plus1(F);
    CompValue out;
    out.depth = depth;
    for (const auto& [i, t] : v.values) out.values[i] = truncate_value(F1, i.sort, t, depth);
    return out;
}

bool pathord_le(const Functor& F, const CompValue& u, const CompValue& v) {
    if (u.depth > v.depth) return false;
    return truncate(F, v, u.depth) == u;
}

PathObj path_from_comp(const Functor& F, const SortedSet& pointing, const CompValue& u) {
    const Functor F1 = plus1(F);
    PathObj p = trivial_path(F, pointing);
    std::map<Elem, Term> cur;
    for (const auto& i : pointing.elems()) {
        auto it = u.values.find(i);
        if (it == u.values.end()) throw Error("path_from_comp: no value for '" + i.name + "'");
        cur[i] = it->second;
    }
    for (int k = 0; k < u.depth; ++k) {
        SortedSet level(F.sort_count());
        TermMap m;
        std::map<Elem, Term> next;
        int counter = 0;
        for (const auto& s : p.levels[k].elems()) {
            const Term& w = cur.at(s);
            if (w.kind == Term::Kind::Unit) throw Error("path_from_comp: value is shallower than its depth");
            m[s] = map_leaves(F1.at(s.sort), w, [&](int sort, const Term& leaf) {
                Elem n{sort, "v" + std::to_string(++counter)};
                level.per_sort[sort].push_back(n.name);
                next[n] = leaf;
                return Term::var(n);
            });
        }
        p.maps.push_back(std::move(m));
        p.levels.push_back(std::move(level));
        cur = std::move(next);
    }
    for (const auto& [s, w] : cur)
        if (w.kind != Term::Kind::Unit) throw Error("path_from_comp: value is deeper than its depth");
    return p;
}

std::vector<CompValue> all_comp_values(const Functor& F, const SortedSet& pointing, int depth) {
    const Functor F1 = plus1(F);
    LeafSets vals(F.sort_count(), std::vector<Term>{Term::unit()});
    for (int d = 0; d < depth; ++d) {
        LeafSets next;
        for (std::size_t s = 0; s < F.sort_count(); ++s) next.push_back(eval_expr(F1.at(static_cast<int>(s)), vals));
        vals = std::move(next);
    }
    std::vector<CompValue> out;
    const auto is = pointing.elems();
    CompValue cur;
    cur.depth = depth;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == is.size()) {
            out.push_back(cur);
            return;
        }
        for (const auto& t : vals[is[i].sort]) {
            cur.values[is[i]] = t;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

// ---------------------------------------------------------------------------
// Morphisms

namespace {

bool is_bijection(const ElemMap& m, const SortedSet& dom, const SortedSet& cod) {
    if (m.size() != dom.size() || dom.size() != cod.size()) return false;
    std::set<Elem> img;
    for (const auto& s : dom.elems()) {
        auto it = m.find(s);
        if (it == m.end() || !cod.contains(it->second) || it->second.sort != s.sort) return false;
        img.insert(it->second);
    }
    return img.size() == m.size();
}

}  // namespace

bool is_path_morphism(const PathObj& p, const PathObj& q, const PathMorphism& m) {
    const int n = p.length();
    if (n > q.length() || static_cast<int>(m.components.size()) != n + 1) return false;
    for (int k = 0; k <= n; ++k)
        if (!is_bijection(m.components[k], p.levels[k], q.levels[k])) return false;
    for (const auto& [a, b] : m.components[0])
        if (a != b) return false;
    const Functor F1 = plus1(p.functor);
    for (int k = 0; k < n; ++k)
        for (const auto& s : p.levels[k].elems()) {
            const Term lhs = q.maps[k].at(m.components[k].at(s));
            const Term rhs = fmap(F1.at(s.sort), m.components[k + 1], p.maps[k].at(s));
            if (lhs != rhs) return false;
        }
    return true;
}

std::optional<PathMorphism> find_path_morphism(const PathObj& p, const PathObj& q) {
    const int n = p.length();
    if (n > q.length()) return std::nullopt;
    if (!(p.levels[0] == q.levels[0])) return std::nullopt;
    const Functor F1 = plus1(p.functor);
    PathMorphism m;
    m.components.resize(n + 1);
    for (const auto& i : p.levels[0].elems()) m.components[0][i] = i;
    std::optional<PathMorphism> found;

    std::function<bool(int)> level;
    // Extends phi_{k+1} element by element of P_k; returns false to stop.
    std::function<bool(int, std::size_t, const std::vector<Elem>&, const ElemMap&)> step =
        [&](int k, std::size_t i, const std::vector<Elem>& elems, const ElemMap& next) -> bool {
        if (i == elems.size()) {
            if (!is_bijection(next, p.levels[k + 1], q.levels[k + 1])) return true;
            m.components[k + 1] = next;
            return level(k + 1);
        }
        const Elem& s = elems[i];
        const Term& target = q.maps[k].at(m.components[k].at(s));
        return match_term(F1.at(s.sort), p.maps[k].at(s), target, next,
                          [&](const ElemMap& b) { return step(k, i + 1, elems, b); });
    };
    level = [&](int k) -> bool {
        if (k == n) {
            found = m;
            return false;
        }
        return step(k, 0, p.levels[k].elems(), ElemMap{});
    };
    level(0);
    return found;
}

// ---------------------------------------------------------------------------
// Embedding

std::string level_name(int k, const std::string& name) { return std::to_string(k) + ":" + name; }

Coalgebra j_embed(const PathObj& p) {
    validate_path(p);
    const Functor F1 = plus1(p.functor);
    Coalgebra c;
    c.functor = p.functor;
    c.pointing = p.levels[0];
    c.carrier = SortedSet(p.functor.sort_count());
    for (int k = 0; k <= p.length(); ++k)
        for (const auto& s : p.levels[k].elems()) c.carrier.per_sort[s.sort].push_back(level_name(k, s.name));
    for (const auto& i : p.levels[0].elems()) c.point[i] = Elem{i.sort, level_name(0, i.name)};
    for (int k = 0; k <= p.length(); ++k)
        for (const auto& s : p.levels[k].elems()) {
            auto& ts = c.xi[Elem{s.sort, level_name(k, s.name)}];
            if (k == p.length()) continue;
            const Term& t = p.maps[k].at(s);
            if (t.is_bot()) continue;
            ElemMap tag;
            for (const auto& y : p.levels[k + 1].elems()) tag[y] = Elem{y.sort, level_name(k + 1, y.name)};
            ts.push_back(fmap(F1.at(s.sort), tag, t));
        }
    return c;
}

ElemMap j_morphism(const PathObj& p, const PathMorphism& m) {
    ElemMap out;
    for (int k = 0; k <= p.length(); ++k)
        for (const auto& [a, b] : m.components.at(k))
            out[Elem{a.sort, level_name(k, a.name)}] = Elem{b.sort, level_name(k, b.name)};
    return out;
}

// ---------------------------------------------------------------------------
// Runs

std::optional<std::string> run_violation(const PathObj& p, const Coalgebra& c, const Run& r) {
    const int n = p.length();
    if (static_cast<int>(r.components.size()) != n + 1) return "run needs one component per level";
    for (int k = 0; k <= n; ++k)
        for (const auto& s : p.levels[k].elems()) {
            auto it = r.components[k].find(s);
            if (it == r.components[k].end())
                return "component " + std::to_string(k) + " undefined at '" + s.name + "'";
            if (!c.carrier.contains(it->second) || it->second.sort != s.sort)
                return "component " + std::to_string(k) + " leaves the carrier at '" + s.name + "'";
        }
    for (const auto& i : p.levels[0].elems())
        if (r.components[0].at(i) != c.point.at(i)) return "component 0 differs from the pointing at '" + i.name + "'";
    const Functor F1 = plus1(p.functor);
    for (int k = 0; k < n; ++k)
        for (const auto& s : p.levels[k].elems()) {
            const Term& t = p.maps[k].at(s);
            if (t.is_bot()) continue;
            const Term img = fmap(F1.at(s.sort), r.components[k + 1], t);
            const auto& beh = c.behaviour(r.components[k].at(s));
            if (!std::binary_search(beh.begin(), beh.end(), img))
                return "level " + std::to_string(k) + ": " + to_string(img) + " is not a transition of '" +
                       r.components[k].at(s).name + "'";
        }
    return std::nullopt;
}

bool is_run(const PathObj& p, const Coalgebra& c, const Run& r) { return !run_violation(p, c, r); }

Run transfer_run(const Run& r, const ElemMap& m) {
    Run out;
    for (const auto& comp_k : r.components) {
        ElemMap next;
        for (const auto& [a, b] : comp_k) next[a] = m.at(b);
        out.components.push_back(std::move(next));
    }
    return out;
}

void enumerate_runs(const Coalgebra& c, int depth, const std::function<bool(const PathObj&, const Run&)>& visit,
                    RunOptions opts) {
    if (depth < 0) throw Error("enumerate_runs: negative depth");
    const Functor F1 = plus1(c.functor);
    PathObj p = trivial_path(c.functor, c.pointing);
    Run r;
    r.components.push_back({});
    for (const auto& i : c.pointing.elems()) r.components[0][i] = c.point.at(i);

    std::function<bool()> grow = [&]() -> bool {
        if (!visit(p, r)) return false;
        const int k = p.length();
        if (k == depth) return true;
        const auto elems = p.levels[k].elems();
        std::vector<std::vector<std::optional<Term>>> options;
        for (const auto& s : elems) {
            std::vector<std::optional<Term>> opt;
            if (opts.allow_bottom) opt.push_back(std::nullopt);
            for (const auto& t : c.behaviour(r.components[k].at(s))) opt.push_back(t);
            if (opt.empty()) return true;
            options.push_back(std::move(opt));
        }
        std::vector<std::size_t> pick(elems.size(), 0);
        while (true) {
            SortedSet level(c.functor.sort_count());
            TermMap m;
            ElemMap x;
            int counter = 0;
            for (std::size_t j = 0; j < elems.size(); ++j) {
                const auto& choice = options[j][pick[j]];
                if (!choice) {
                    m[elems[j]] = Term::bot();
                    continue;
                }
                m[elems[j]] = map_leaves(F1.at(elems[j].sort), *choice, [&](int sort, const Term& leaf) {
                    Elem n{sort, "v" + std::to_string(++counter)};
                    level.per_sort[sort].push_back(n.name);
                    x[n] = leaf.as_elem();
                    return Term::var(n);
                });
            }
            p.maps.push_back(std::move(m));
            p.levels.push_back(std::move(level));
            r.components.push_back(std::move(x));
            const bool go = grow();
            p.maps.pop_back();
            p.levels.pop_back();
            r.components.pop_back();
            if (!go) return false;
            std::size_t j = elems.size();
            while (j > 0) {
                --j;
                if (++pick[j] < options[j].size()) break;
                pick[j] = 0;
                if (j == 0) return true;
            }
            if (elems.empty()) return true;
        }
    };
    grow();
}

std::string to_string(const CompValue& v, const SortSet& sorts, const Glyphs& g) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, t] : v.values) {
        if (!first) os << "; ";
        first = false;
        if (v.values.size() > 1) os << to_string(i, sorts) << ": ";
        os << to_string(t, g);
    }
    return os.str();
}

}  // namespace openpath
