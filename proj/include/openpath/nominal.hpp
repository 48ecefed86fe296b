#ifndef OPENPATH_NOMINAL_HPP
#define OPENPATH_NOMINAL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "openpath/coalgebra.hpp"

namespace openpath {

/// Atoms of a bounded pool are 1..k and print as a1..ak.
using Atom = int;
using AtomSet = std::set<Atom>;

std::string atom_name(Atom a);

/// A bijection of the pool 1..k; image[a - 1] is the image of a.
struct Perm {
    std::vector<Atom> image;

    static Perm identity(int pool);
    static Perm swap(int pool, Atom a, Atom b);
    int pool() const { return static_cast<int>(image.size()); }
    Atom operator()(Atom a) const;
    Perm inverse() const;
    /// (this . other)(a) = this(other(a)).
    Perm after(const Perm& other) const;

    friend bool operator==(const Perm&, const Perm&) = default;
};

/// Every permutation of the pool, identity first.
std::vector<Perm> all_perms(int pool);

// ---------------------------------------------------------------------------
// Words with binders

struct Letter {
    enum class Kind { Free, Bar };
    Kind kind = Kind::Free;
    Atom atom = 0;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

enum class WordEnd { None, Tick, Unit };

/// A word over literals and binders, with an optional end marker and an
/// optional context of distinct atoms.
struct BarString {
    std::vector<Atom> context;
    std::vector<Letter> letters;
    WordEnd end = WordEnd::None;

    friend auto operator<=>(const BarString&, const BarString&) = default;
};

/// Atoms occurring free in the letters; a binder scopes over the rest of
/// the word. The context is not part of the support.
AtomSet support(const BarString& w);

/// Renames every atom, binders and context included. Throws on atoms
/// outside the pool.
BarString apply_perm(const Perm& pi, const BarString& w);

/// De Bruijn form: binders are anonymous, a bound literal records how many
/// binders back its binder sits (1 = the nearest), free literals keep their
/// atom.
struct CanonLetter {
    enum class Kind { Free, Bound, Bar };
    Kind kind = Kind::Free;
    int value = 0;  // atom for Free, distance for Bound

    friend auto operator<=>(const CanonLetter&, const CanonLetter&) = default;
};

struct CanonicalWord {
    std::vector<CanonLetter> letters;
    WordEnd end = WordEnd::None;

    friend auto operator<=>(const CanonicalWord&, const CanonicalWord&) = default;
};

/// Canonical form of the closure |c1 ... |cn w of a word in context.
CanonicalWord alpha_canonical(const BarString& w);
bool alpha_equivalent(const BarString& a, const BarString& b);

/// Renames the free atoms of a canonical word.
CanonicalWord apply_perm(const Perm& pi, const CanonicalWord& w);

/// "|a1 a1 ✓"; with a context "a1 ⊢ ...".
std::string to_string(const BarString& w, const Glyphs& g = {});
/// "⟨·⟩ bound₁ ✓", ASCII "<.> bound1 ok".
std::string to_string(const CanonicalWord& w, const Glyphs& g = {});

// ---------------------------------------------------------------------------
// Strong nominal sets over the pool

/// An element of a strong nominal set: an orbit label and an injective tuple
/// of atoms, which is its support.
struct StrongElem {
    std::string label;
    std::vector<Atom> atoms;

    friend auto operator<=>(const StrongElem&, const StrongElem&) = default;
};

std::string to_string(const StrongElem& e);
AtomSet support(const StrongElem& e);
StrongElem apply_perm(const Perm& pi, const StrongElem& e);

/// One step of FX = {✓} + [A]X + A x X with X a strong set.
struct NomTerm {
    enum class Kind { Ok, Bar, Read };
    Kind kind = Kind::Ok;
    Atom atom = 0;  // binder or read atom
    StrongElem succ;

    friend auto operator<=>(const NomTerm&, const NomTerm&) = default;
};

AtomSet support(const NomTerm& t);
/// Renames all atoms; the binder is then renamed to its canonical choice.
NomTerm apply_perm(const Perm& pi, const NomTerm& t);
/// Chooses as binder the least atom outside supp(succ) \ {binder}.
NomTerm alpha_canonical(const NomTerm& t, int pool);
std::string to_string(const NomTerm& t, const Glyphs& g = {});

using NomBehaviour = std::map<StrongElem, std::vector<NomTerm>>;

/// Extends values given on orbit representatives to every element of their
/// orbits: f(pi . rep) = pi . f(rep). Throws when a value is not supported
/// by its representative, when two representatives share an orbit, or when
/// the extension is not well defined.
NomBehaviour extend_equivariant(const NomBehaviour& reps, int pool);

/// f: X -> [A]Y factors as [A]h . f' with f': X -> [A](A # X),
/// f'(x) = <a>(a, x) for the least a outside supp(x). Elements (a, x) of
/// A # X are represented as StrongElem{"#" + label, a, atoms...}.
struct BindingFactorization {
    std::vector<StrongElem> target;
    std::map<StrongElem, NomTerm> map;
    std::map<StrongElem, StrongElem> projection;
};

BindingFactorization binding_factorize(const std::map<StrongElem, NomTerm>& f, int pool);

// ---------------------------------------------------------------------------
// Register automata

struct RnnaState {
    std::string name;
    int registers = 0;
};

/// Register reassignment for the target: per target register, a source
/// register 1..r or 0 for the freshly bound atom.
struct RnnaRule {
    enum class Kind { Ok, Bar, Read };
    Kind kind = Kind::Ok;
    std::string from;
    std::string to;
    int reg = 0;  // Read: source register
    std::vector<int> assign;
};

struct RnnaPresentation {
    std::vector<RnnaState> states;
    std::vector<RnnaRule> rules;
    std::string init;

    int context_arity() const;
    int max_registers() const;
    const RnnaState& state(const std::string& name) const;
};

void validate_rnna(const RnnaPresentation& r);

/// {✓} + A x X + A x X over the pool: the second summand carries the
/// canonical binder.
Functor rnna_functor(int pool);

/// Element names of the expanded system.
std::string context_name(const std::vector<Atom>& ctx);

/// States (q, injective register tuple); pointing: every injective tuple of
/// the initial arity, sent to the initial state. Requires pool >
/// max_registers.
Coalgebra rnna_expand(const RnnaPresentation& r, int pool);

/// Transitions of every expanded state as nominal terms.
NomBehaviour rnna_behaviour(const RnnaPresentation& r, int pool);

/// Words of a trace value of rnna_functor.
BarString decode_bar_word(const Term& value);

/// Canonical closures of all trace words up to `depth`.
std::set<CanonicalWord> bar_trace(const RnnaPresentation& r, int pool, int depth);

}  // namespace openpath

#endif  // OPENPATH_NOMINAL_HPP
