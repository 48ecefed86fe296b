#ifndef OPENPATH_TERM_HPP
#define OPENPATH_TERM_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace openpath {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Total order on names that compares embedded digit runs numerically,
/// so that v2 < v10. Ties are broken by plain string comparison.
std::strong_ordering natural_compare(const std::string& a, const std::string& b);

/// An element of a sorted set: its sort index and its name.
struct Elem {
    int sort = 0;
    std::string name;

    friend std::strong_ordering operator<=>(const Elem& a, const Elem& b) {
        if (auto c = a.sort <=> b.sort; c != 0) return c;
        return natural_compare(a.name, b.name);
    }
    friend bool operator==(const Elem& a, const Elem& b) {
        return a.sort == b.sort && a.name == b.name;
    }
};

/// Ordered list of sort identifiers. The default is the single sort "*".
using SortSet = std::vector<std::string>;

SortSet default_sorts();

/// A finite family of finite sets indexed by sorts. Element order within a
/// sort is the canonical order used for printing and enumeration.
struct SortedSet {
    std::vector<std::vector<std::string>> per_sort;

    SortedSet() = default;
    explicit SortedSet(std::size_t sort_count) : per_sort(sort_count) {}
    explicit SortedSet(std::vector<std::vector<std::string>> sets) : per_sort(std::move(sets)) {}

    /// Single-sorted set with the given elements.
    static SortedSet single(std::vector<std::string> elems);

    std::size_t sort_count() const { return per_sort.size(); }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    bool contains(const Elem& e) const;
    /// All elements, sort-major, in stored order.
    std::vector<Elem> elems() const;
    void insert(const Elem& e);
    /// Sorts every per-sort list by natural order.
    void normalize();

    friend bool operator==(const SortedSet&, const SortedSet&) = default;
};

/// Throws unless names are pairwise distinct within each sort.
void check_distinct(const SortedSet& s, const std::string& what);

/// A concrete element of F(X), in canonical form.
///
/// The tree is interpreted relative to a functor expression: the expression
/// decides which positions are variable positions (Sort nodes), so nested
/// values such as elements of F(F(1)) reuse the same node kinds.
struct Term {
    enum class Kind : std::uint8_t { Unit, Bot, Const, Var, Tuple, Inj, Sym, Set };

    Kind kind = Kind::Unit;
    int index = 0;      // Var: sort; Inj: summand; Sym: symbol index
    std::string name;   // Const / Var / Sym
    std::vector<Term> args;

    static Term unit() { return Term{}; }
    static Term bot() { return Term{Kind::Bot, 0, {}, {}}; }
    static Term constant(std::string n) { return Term{Kind::Const, 0, std::move(n), {}}; }
    static Term var(int sort, std::string n) { return Term{Kind::Var, sort, std::move(n), {}}; }
    static Term var(const Elem& e) { return var(e.sort, e.name); }
    static Term tuple(std::vector<Term> a) { return Term{Kind::Tuple, 0, {}, std::move(a)}; }
    static Term inj(int i, Term t);
    static Term sym(int i, std::string n, std::vector<Term> a) {
        return Term{Kind::Sym, i, std::move(n), std::move(a)};
    }
    /// Sorts and deduplicates its members.
    static Term set(std::vector<Term> members);

    bool is_var() const { return kind == Kind::Var; }
    bool is_bot() const { return kind == Kind::Bot; }
    Elem as_elem() const;

    friend std::strong_ordering operator<=>(const Term& a, const Term& b);
    friend bool operator==(const Term& a, const Term& b);
};

/// Printing options. Unicode glyphs are the default.
struct Glyphs {
    bool ascii = false;
    std::string unit() const { return ascii ? "unit" : "•"; }
    std::string bot() const { return ascii ? "bot" : "⊥"; }
    std::string tick() const { return ascii ? "ok" : "✓"; }
    std::string epsilon() const { return ascii ? "eps" : "ε"; }
    /// Maps stored constant names to their printed form.
    std::string constant(const std::string& n) const;
};

/// Name under which the accepting constant is stored.
inline const std::string kTick = "✓";

std::string to_string(const Term& t, const Glyphs& g = {});
std::ostream& operator<<(std::ostream& os, const Term& t);

/// Sorts and removes duplicates in place.
void sort_unique(std::vector<Term>& ts);

using ElemMap = std::map<Elem, Elem>;
using TermMap = std::map<Elem, Term>;
/// A map X -> Pf(F Y); every list is sorted and duplicate-free.
using BehaviourMap = std::map<Elem, std::vector<Term>>;
/// A map X -> F Y + 1; nullopt is the bottom element.
using PartialTermMap = std::map<Elem, std::optional<Term>>;

std::string to_string(const Elem& e, const SortSet& sorts);

}  // namespace openpath

#endif  // OPENPATH_TERM_HPP
