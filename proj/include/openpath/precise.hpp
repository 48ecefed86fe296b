#ifndef OPENPATH_PRECISE_HPP
#define OPENPATH_PRECISE_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "openpath/functor.hpp"

namespace openpath {

struct Occurrence {
    Elem var;
    std::vector<int> path;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// Variable leaves of t with their tree paths. Throws on powerset nodes.
std::vector<Occurrence> occurrences(const Expr& e, const Term& t);

/// "0.1" style rendering of a tree path.
std::string path_string(const std::vector<int>& path);

/// Occurrence test: every y in Y is used by exactly one f(x), exactly once.
/// `f` must be total on `x`; F must be Pf-free.
bool is_precise(const Functor& F, const SortedSet& x, const SortedSet& y, const TermMap& f);

/// Brute-force preciseness over every C with |C| <= size_bound (summed over
/// sorts), every h: C -> Y and every k: X -> F C with F h . k = f.
/// Requires |Y| <= size_bound; |Y| + 1 exposes both duplicated and unused
/// elements. Exponential; intended for small instances.
bool is_precise_oracle(const Functor& F, const SortedSet& x, const SortedSet& y, const TermMap& f,
                       int size_bound);

struct Factorization {
    SortedSet target;   // Y'
    TermMap map;        // f': X -> F Y'
    ElemMap projection; // h: Y' -> Y
};

/// f = F h . f' with f' precise. Y' has one element "(x;path)" per
/// occurrence of a Y-variable in some f(x).
Factorization precise_factorize(const Functor& F, const SortedSet& x, const TermMap& f);

/// Multiset of variable occurrences of t.
std::map<Elem, int> bag_abstraction(const Expr& e, const Term& t);

struct PreciseMap {
    SortedSet target;
    TermMap map;
};

/// Shapes of e: canonical terms over pairwise distinct variables, one per
/// isomorphism class, variables named v1, v2, ... in first-occurrence order.
std::vector<Term> precise_shapes(const Expr& e, std::size_t sorts = 1);

/// Every precise map out of P up to renaming of its codomain, in a fixed
/// order. `visit` returns false to stop early.
void enumerate_precise_maps(const SortedSet& p, const Functor& F,
                            const std::function<bool(const PreciseMap&)>& visit);
std::vector<PreciseMap> precise_maps(const SortedSet& p, const Functor& F);

/// Every total map X -> F Y, in lexicographic order of term choices.
void for_each_term_map(const Functor& F, const SortedSet& x, const SortedSet& y,
                       const std::function<bool(const TermMap&)>& visit);

/// Every total map X -> Y between sorted sets, sort-preserving.
void for_each_elem_map(const SortedSet& x, const SortedSet& y,
                       const std::function<bool(const ElemMap&)>& visit);

}  // namespace openpath

#endif  // OPENPATH_PRECISE_HPP
