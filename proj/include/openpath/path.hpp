#ifndef OPENPATH_PATH_HPP
#define OPENPATH_PATH_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "openpath/coalgebra.hpp"

namespace openpath {

/// A path in Path(I, F+1): levels P_0 = I, ..., P_n and (F+1)-precise maps
/// p_k: P_k -> (F+1)(P_{k+1}). `functor` is F itself.
struct PathObj {
    Functor functor;
    std::vector<SortedSet> levels;
    std::vector<TermMap> maps;

    int length() const { return static_cast<int>(maps.size()); }
    const SortedSet& pointing() const { return levels.at(0); }
};

/// Length-0 path on I.
PathObj trivial_path(const Functor& F, const SortedSet& pointing);

/// First violation of the path conditions, or nullopt.
std::optional<std::string> path_violation(const PathObj& p);
std::optional<std::string> path_violation(const PathObj& p, const SortedSet& pointing);
/// Throws on the first violation.
void validate_path(const PathObj& p);

/// Renames every level k >= 1 to v1, v2, ... in first-occurrence order.
PathObj canonical_names(const PathObj& p);

/// Element of (F+1)^n(1) for each element of I.
struct CompValue {
    int depth = 0;
    std::map<Elem, Term> values;

    friend bool operator==(const CompValue&, const CompValue&) = default;
    friend auto operator<=>(const CompValue& a, const CompValue& b) {
        if (auto c = a.depth <=> b.depth; c != 0) return c;
        return a.values <=> b.values;
    }
};

CompValue comp(const PathObj& p);

/// Cuts a value of (F+1)^n(1) at depth d <= n, putting the unit at the cut.
Term truncate_value(const Functor& F1, int sort, const Term& value, int d);
CompValue truncate(const Functor& F, const CompValue& v, int depth);

bool pathord_le(const Functor& F, const CompValue& u, const CompValue& v);

/// A path whose comp value is u; levels are canonically named.
PathObj path_from_comp(const Functor& F, const SortedSet& pointing, const CompValue& u);

/// Every value of (F+1)^n(1) per element of I.
std::vector<CompValue> all_comp_values(const Functor& F, const SortedSet& pointing, int depth);

struct PathMorphism {
    std::vector<ElemMap> components;  // phi_0 .. phi_n
};

/// Checks phi_0 = id, bijective components and q_k . phi_k = (F+1) phi_{k+1} . p_k
/// for k < n.
bool is_path_morphism(const PathObj& p, const PathObj& q, const PathMorphism& m);

/// Backtracking search; nullopt when no morphism exists.
std::optional<PathMorphism> find_path_morphism(const PathObj& p, const PathObj& q);

/// Level-tagged name "k:elem".
std::string level_name(int k, const std::string& name);

/// The coalgebra J(p) on the disjoint union of the levels.
Coalgebra j_embed(const PathObj& p);

/// The lax homomorphism J(phi): J(p) -> J(q).
ElemMap j_morphism(const PathObj& p, const PathMorphism& m);

/// Level-indexed maps x_k: P_k -> X.
struct Run {
    std::vector<ElemMap> components;
};

std::optional<std::string> run_violation(const PathObj& p, const Coalgebra& c, const Run& r);
bool is_run(const PathObj& p, const Coalgebra& c, const Run& r);

/// Post-composes every component with m.
Run transfer_run(const Run& r, const ElemMap& m);

struct RunOptions {
    bool allow_bottom = true;  // false restricts to Path(I, F)
};

/// Every path of length <= depth together with every run into c, up to
/// level-wise renaming. Level k+1 is built by choosing bottom or a transition
/// per element of level k and factorizing the choice. `visit` returns false
/// to stop.
void enumerate_runs(const Coalgebra& c, int depth, const std::function<bool(const PathObj&, const Run&)>& visit,
                    RunOptions opts = {});

std::string to_string(const CompValue& v, const SortSet& sorts = default_sorts(), const Glyphs& g = {});

}  // namespace openpath

#endif  // OPENPATH_PATH_HPP
