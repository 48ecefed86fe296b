#ifndef OPENPATH_FUNCTOR_HPP
#define OPENPATH_FUNCTOR_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "openpath/term.hpp"

namespace openpath {

/// A permutation of {0..n-1}; perm[i] is the image of i.
using Permutation = std::vector<int>;

inline constexpr int kMaxGroupArity = 6;
inline constexpr std::size_t kMaxGroupOrder = 720;

/// Finite permutation group given by generators. The full group is
/// enumerated on construction.
class PermGroup {
public:
    PermGroup() = default;
    /// Throws if a generator is not a bijection of the right size, or if
    /// the arity or the enumerated order exceed the configured caps.
    PermGroup(int arity, std::vector<Permutation> generators);

    static PermGroup trivial(int arity) { return PermGroup(arity, {}); }
    static PermGroup symmetric(int arity);

    int arity() const { return arity_; }
    const std::vector<Permutation>& generators() const { return generators_; }
    /// All group elements; the identity comes first.
    const std::vector<Permutation>& elements() const { return elements_; }
    bool is_trivial() const { return elements_.size() == 1; }

private:
    int arity_ = 0;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_{Permutation{}};
};

/// Lexicographically least member of the orbit of `args` under `g`.
/// (pi . t)_i = t_{pi(i)}.
std::vector<Term> canonical_tuple(const PermGroup& g, const std::vector<Term>& args);

struct AnalyticSymbol {
    std::string name;
    std::vector<int> slot_sorts;
    PermGroup group;
};

/// Signature of an analytic functor: a coproduct of X^n / G over symbols.
struct AnalyticSig {
    std::vector<AnalyticSymbol> symbols;
};

/// Syntax tree of a finitary functor on (sorted) finite sets.
struct Expr {
    enum class Kind { Const, Sort, Prod, Coprod, Compose, Analytic, Pf, Plus1 };

    Kind kind = Kind::Sort;
    std::vector<std::string> constants;  // Const
    int sort = 0;                        // Sort
    std::vector<Expr> children;          // Prod, Coprod; Compose = {outer, inner}; Pf, Plus1 = {inner}
    std::shared_ptr<const AnalyticSig> sig;

    static Expr constant(std::vector<std::string> elems);
    static Expr id() { return sort_of(0); }
    static Expr sort_of(int s);
    static Expr prod(std::vector<Expr> factors);
    static Expr coprod(std::vector<Expr> summands);
    static Expr compose(Expr outer, Expr inner);
    static Expr analytic(AnalyticSig sig);
    static Expr pf(Expr inner);
    static Expr plus1(Expr inner);

    bool contains_pf() const;
};

/// One expression per output sort.
struct Functor {
    SortSet sorts = default_sorts();
    std::vector<Expr> exprs;

    static Functor single(Expr e) { return Functor{default_sorts(), {std::move(e)}}; }
    std::size_t sort_count() const { return sorts.size(); }
    const Expr& at(int sort) const { return exprs.at(sort); }
    bool contains_pf() const;
    /// Throws on dangling sort references, mismatched sort counts, Compose
    /// over several sorts, ill-formed analytic symbols, or an ambiguous +1.
    void validate() const;
};

/// F + 1 computed sortwise. Throws if some output expression is itself a
/// Plus1 node, since the two bottoms could not be told apart.
Functor plus1(const Functor& f);

/// Leaves for the variable positions of an expression, indexed by sort.
using LeafSets = std::vector<std::vector<Term>>;

LeafSets variable_leaves(const SortedSet& x);

/// Canonical terms of e(X), sorted.
std::vector<Term> eval_expr(const Expr& e, const LeafSets& leaves);
/// Per output sort, the canonical terms of F(X).
std::vector<std::vector<Term>> eval_functor(const Functor& f, const SortedSet& x);

using LeafFn = std::function<Term(int sort, const Term& leaf)>;

/// Rebuilds `t` with every variable-position leaf replaced by fn(sort, leaf),
/// re-canonicalizing analytic and set nodes.
Term map_leaves(const Expr& e, const Term& t, const LeafFn& fn);

using LeafVisitor = std::function<void(int sort, const Term& leaf, const std::vector<int>& path)>;

/// Visits every variable-position leaf in order with its tree path.
void for_each_leaf(const Expr& e, const Term& t, const LeafVisitor& fn);

/// Functor action on an element map. Throws if a variable is missing from f.
Term fmap(const Expr& e, const ElemMap& f, const Term& t);
Term fmap(const Functor& F, int sort, const ElemMap& f, const Term& t);

/// True iff t is a canonical element of e(X) whose leaves satisfy `leaf_ok`.
bool is_term_of(const Expr& e, const Term& t, const std::function<bool(int, const Term&)>& leaf_ok);
bool is_term_of(const Expr& e, const Term& t, const SortedSet& x);

/// Enumerates every extension of `binding` to the pattern's variables such
/// that fmap(binding)(pattern) == target, each distinct binding once. The
/// expression must be Pf-free. `visit` returns false to stop; the result is
/// false iff the enumeration was stopped.
bool match_term(const Expr& e, const Term& pattern, const Term& target, const ElemMap& binding,
                const std::function<bool(const ElemMap&)>& visit);

/// True iff the bottom element of e + 1 cannot be confused with a term of e,
/// i.e. the top node is neither a variable position nor a +1.
bool bot_unambiguous(const Expr& e);

std::string to_string(const Expr& e, const SortSet& sorts = default_sorts());
std::string to_string(const Functor& f);

}  // namespace openpath

#endif  // OPENPATH_FUNCTOR_HPP
