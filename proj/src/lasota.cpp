#include "openpath/lasota.hpp"

#include <set>

#include "openpath/precise.hpp"

namespace openpath {

int FiniteCategory::object_index(const std::string& name) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return static_cast<int>(i);
    throw Error("unknown object '" + name + "'");
}

int FiniteCategory::morphism_index(const std::string& name) const {
    for (std::size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i].name == name) return static_cast<int>(i);
    throw Error("unknown morphism '" + name + "'");
}

std::vector<int> FiniteCategory::hom(int p, int q) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < morphisms.size(); ++i)
        if (morphisms[i].dom == p && morphisms[i].cod == q) out.push_back(static_cast<int>(i));
    return out;
}

std::optional<std::string> category_violation(const FiniteCategory& P) {
    const int n = static_cast<int>(P.objects.size());
    const int k = static_cast<int>(P.morphisms.size());
    if (n == 0) return "no objects";
    if (std::set<std::string>(P.objects.begin(), P.objects.end()).size() != P.objects.size())
        return "duplicate object names";
    std::set<std::string> names;
    for (const auto& m : P.morphisms) {
        if (!names.insert(m.name).second) return "duplicate morphism '" + m.name + "'";
        if (m.dom < 0 || m.dom >= n || m.cod < 0 || m.cod >= n) return "morphism '" + m.name + "' has no valid ends";
    }
    if (P.initial < 0 || P.initial >= n) return "no initial object";
    if (static_cast<int>(P.identities.size()) != n) return "one identity per object is required";
    for (int o = 0; o < n; ++o) {
        const int i = P.identities[o];
        if (i < 0 || i >= k || P.morphisms[i].dom != o || P.morphisms[i].cod != o)
            return "identity of '" + P.objects[o] + "' is not an endomorphism of it";
    }
    auto name = [&](int m) { return P.morphisms[m].name; };
    for (const auto& [gf, h] : P.comp) {
        const auto [g, f] = gf;
        if (g < 0 || g >= k || f < 0 || f >= k || h < 0 || h >= k) return "composition table refers to unknown morphisms";
        if (P.morphisms[f].cod != P.morphisms[g].dom)
            return "composition " + name(g) + " o " + name(f) + " is not composable";
        if (P.morphisms[h].dom != P.morphisms[f].dom || P.morphisms[h].cod != P.morphisms[g].cod)
            return name(g) + " o " + name(f) + " = " + name(h) + " has the wrong ends";
    }
    for (int f = 0; f < k; ++f)
        for (int g = 0; g < k; ++g)
            if (P.morphisms[f].cod == P.morphisms[g].dom && !P.comp.count({g, f}))
                return "composition " + name(g) + " o " + name(f) + " is missing";
    for (int f = 0; f < k; ++f) {
        const auto& m = P.morphisms[f];
        if (P.comp.at({P.identities[m.cod], f}) != f) return "left identity law fails at " + name(f);
        if (P.comp.at({f, P.identities[m.dom]}) != f) return "right identity law fails at " + name(f);
    }
    for (int f = 0; f < k; ++f)
        for (int g = 0; g < k; ++g) {
            if (P.morphisms[f].cod != P.morphisms[g].dom) continue;
            for (int h = 0; h < k; ++h) {
                if (P.morphisms[g].cod != P.morphisms[h].dom) continue;
                const int left = P.comp.at({P.comp.at({h, g}), f});
                const int right = P.comp.at({h, P.comp.at({g, f})});
                if (left != right)
                    return "associativity fails at (" + name(h) + ", " + name(g) + ", " + name(f) + "): (" + name(h) +
                           " o " + name(g) + ") o " + name(f) + " = " + name(left) + " but " + name(h) + " o (" +
                           name(g) + " o " + name(f) + ") = " + name(right);
            }
        }
    return std::nullopt;
}

void validate_category(const FiniteCategory& P) {
    if (auto v = category_violation(P)) throw Error("invalid category: " + *v);
}

Functor lasota_functor(const FiniteCategory& P) {
    validate_category(P);
    Functor F;
    F.sorts = P.objects;
    const int n = static_cast<int>(P.objects.size());
    for (int p = 0; p < n; ++p) {
        std::vector<Expr> summands;
        for (int q = 0; q < n; ++q) {
            std::vector<std::string> names;
            for (int m : P.hom(p, q)) names.push_back(P.morphisms[m].name);
            if (names.empty()) continue;
            summands.push_back(Expr::prod({Expr::constant(names), Expr::sort_of(q)}));
        }
        F.exprs.push_back(Expr::coprod(std::move(summands)));
    }
    F.validate();
    return F;
}

SortedSet characteristic(const FiniteCategory& P, int q, const std::string& name) {
    SortedSet s(P.objects.size());
    s.per_sort.at(q).push_back(name);
    return s;
}

SortedSet lasota_pointing(const FiniteCategory& P) { return characteristic(P, P.initial); }

namespace {

// Sort with exactly one element, or -1.
int characteristic_sort(const SortedSet& s) {
    if (s.size() != 1) return -1;
    return s.elems()[0].sort;
}

}  // namespace

std::vector<int> path_sequence(const FiniteCategory& P, const PathObj& p) {
    std::vector<int> out;
    for (int k = 0; k < p.length(); ++k) {
        const int from = characteristic_sort(p.levels[k]);
        const int to = characteristic_sort(p.levels[k + 1]);
        if (from < 0 || to < 0) throw Error("path_sequence: level " + std::to_string(k) + " is not characteristic");
        const Term& t = p.maps[k].begin()->second;
        if (t.kind != Term::Kind::Inj) throw Error("path_sequence: bottom or malformed step");
        const int m = P.morphism_index(t.args[0].args[0].name);
        if (P.morphisms[m].dom != from || P.morphisms[m].cod != to)
            throw Error("path_sequence: step " + std::to_string(k) + " does not match its levels");
        out.push_back(m);
    }
    return out;
}

LasotaReport paths_bijection_check(const FiniteCategory& P, int n, int max_y) {
    if (n < 0) throw Error("paths_bijection_check: negative length");
    const Functor F = lasota_functor(P);
    LasotaReport rep;
    rep.paths.assign(n + 1, 0);
    rep.sequences.assign(n + 1, 0);
    auto seq_string = [&](const std::vector<int>& s) {
        std::string out = "(";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + P.morphisms[s[i]].name;
        return out + ")";
    };

    // composable sequences from the initial object
    std::set<std::vector<int>> sequences;
    std::vector<int> cur;
    std::function<void(int)> extend = [&](int obj) {
        sequences.insert(cur);
        ++rep.sequences[cur.size()];
        if (static_cast<int>(cur.size()) == n) return;
        for (std::size_t m = 0; m < P.morphisms.size(); ++m)
            if (P.morphisms[m].dom == obj) {
                cur.push_back(static_cast<int>(m));
                extend(P.morphisms[m].cod);
                cur.pop_back();
            }
    };
    extend(P.initial);

    // paths, one precise map at a time
    std::set<std::vector<int>> found;
    PathObj p = trivial_path(F, lasota_pointing(P));
    std::function<void()> grow = [&]() {
        const int k = p.length();
        ++rep.paths[k];
        if (auto v = path_violation(p)) rep.mismatches.push_back("invalid path: " + *v);
        const auto s = path_sequence(P, p);
        if (!found.insert(s).second) rep.mismatches.push_back("two paths for " + seq_string(s));
        if (!sequences.count(s)) rep.mismatches.push_back("path without a sequence: " + seq_string(s));
        if (k == n) return;
        enumerate_precise_maps(p.levels[k], F, [&](const PreciseMap& m) {
            p.maps.push_back(m.map);
            p.levels.push_back(m.target);
            grow();
            p.maps.pop_back();
            p.levels.pop_back();
            return true;
        });
    };
    grow();
    for (const auto& s : sequences)
        if (!found.count(s)) rep.mismatches.push_back("sequence without a path: " + seq_string(s));

    // precise iff the codomain is characteristic
    const std::size_t sorts = P.objects.size();
    std::vector<int> sizes(sorts, 0);
    std::function<void(std::size_t)> over_sizes = [&](std::size_t s) {
        if (s < sorts) {
            for (int v = 0; v <= max_y; ++v) {
                sizes[s] = v;
                over_sizes(s + 1);
            }
            return;
        }
        SortedSet y(sorts);
        for (std::size_t q = 0; q < sorts; ++q)
            for (int i = 1; i <= sizes[q]; ++i) y.per_sort[q].push_back("y" + std::to_string(i));
        const bool chi = characteristic_sort(y) >= 0;
        for (std::size_t q = 0; q < sorts; ++q) {
            const SortedSet x = characteristic(P, static_cast<int>(q));
            for_each_term_map(F, x, y, [&](const TermMap& f) {
                ++rep.precise_maps_checked;
                if (is_precise(F, x, y, f) != chi)
                    rep.mismatches.push_back("map " + to_string(f.begin()->second) + " out of chi^" + P.objects[q] +
                                             (chi ? " is not precise" : " is precise") + " for a codomain of size " +
                                             std::to_string(y.size()));
                return true;
            });
        }
    };
    over_sizes(0);
    return rep;
}

}  // namespace openpath
