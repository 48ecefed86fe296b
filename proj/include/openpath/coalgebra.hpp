#ifndef OPENPATH_COALGEBRA_HPP
#define OPENPATH_COALGEBRA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "openpath/functor.hpp"

namespace openpath {

/// Finite I-pointed coalgebra for Pf . F.
struct Coalgebra {
    Functor functor;
    SortedSet pointing;
    SortedSet carrier;
    ElemMap point;
    BehaviourMap xi;

    /// Throws unless the pointing is total into the carrier and every state
    /// has a sorted, duplicate-free list of terms of F(X).
    void validate() const;
    const std::vector<Term>& behaviour(const Elem& x) const;
    std::size_t size() const { return carrier.size(); }
    std::size_t transition_count() const;
};

/// Pointwise inclusion f(x) ⊆ g(x). Throws if the domains differ.
bool homset_leq(const BehaviourMap& f, const BehaviourMap& g);

/// {F m (t) | t in ts}, sorted.
std::vector<Term> image_behaviour(const Expr& e, const ElemMap& m, const std::vector<Term>& ts);

/// First violation of the (lax or strict) homomorphism condition, or nullopt.
std::optional<std::string> hom_violation(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m,
                                         bool strict);
bool is_strict_hom(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m);
bool is_lax_hom(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m);

/// Every f' with f'(x) in f(x) or bottom; `visit` returns false to stop.
void decompose_into_units(const BehaviourMap& f, const std::function<bool(const PartialTermMap&)>& visit);

/// Chooses x'(a) in x(a) with F h (x'(a)) = y(a), or bottom where y(a) is
/// bottom. Ties go to the least term. Throws naming the offending element
/// when no choice exists.
PartialTermMap lift_choice(const Functor& F, const BehaviourMap& x, const PartialTermMap& y, const ElemMap& h);

using Relation = std::set<std::pair<Elem, Elem>>;

/// Forth condition of R from c1 to c2 plus the pointing clause.
bool lts_is_simulation(const Relation& r, const Coalgebra& c1, const Coalgebra& c2);
/// Simulation in both directions.
bool lts_is_bisimulation(const Relation& r, const Coalgebra& c1, const Coalgebra& c2);
/// True iff F is A x Id for a constant set A.
bool is_lts_functor(const Functor& F);

struct GenSpec {
    Functor functor;
    SortedSet pointing = SortedSet::single({"*"});
    std::vector<int> sizes{1};   // carrier size per sort
    double density = 0.3;
    std::uint64_t seed = 0;
    bool vary_sizes = false;     // harness: sizes are upper bounds, drawn per trial
};

/// States x1, x2, ... per sort; each term of F(X) is included independently
/// with probability `density`; the pointing is uniform.
Coalgebra random_coalgebra(const GenSpec& spec);

/// The subcoalgebra on `keep`, which must be closed under successors and
/// contain the image of the pointing.
Coalgebra restrict_to(const Coalgebra& c, const SortedSet& keep);

/// Variables of the terms in ts.
std::set<Elem> successors(const Expr& e, const std::vector<Term>& ts);

}  // namespace openpath

#endif  // OPENPATH_COALGEBRA_HPP
