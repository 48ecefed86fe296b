#ifndef OPENPATH_TRACE_HPP
#define OPENPATH_TRACE_HPP

#include <set>
#include <string>
#include <vector>

#include "openpath/coalgebra.hpp"
#include "openpath/path.hpp"

namespace openpath {

/// Comp values of the bottom-free paths of length <= depth that admit a run.
struct TraceSet {
    int depth = 0;
    std::set<CompValue> values;

    friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

/// Computed per state and depth: the depth-0 value is the unit, a depth-d
/// value of x is a transition of x with every leaf y replaced by a depth-(d-1)
/// value of y. Throws once more than `limit` values are held at one depth.
TraceSet trace(const Coalgebra& c, int depth, std::size_t limit = std::size_t{1} << 20);

/// The same set read off enumerate_runs without bottom. Exponential.
TraceSet trace_literal(const Coalgebra& c, int depth);

/// Throws unless both systems have the same functor and pointing.
bool trace_equiv(const Coalgebra& a, const Coalgebra& b, int depth);

/// Every truncation of every member is a member.
bool is_prefix_closed(const Functor& F, const TraceSet& t);

/// Letters of a word; a final constant of the second summand (such as the
/// tick) is kept as its last letter.
using Word = std::vector<std::string>;

/// Words of A x X, or of A x X + T for a constant set T of end markers.
std::set<Word> lts_language(const Coalgebra& c, int depth);

/// The word in the letters' printed form; the empty word prints as epsilon.
std::string word_string(const Word& w, const Glyphs& g = {});

/// Trace values of a top-down tree automaton over an analytic signature,
/// read as trees with the unit at the cut; `accepted` keeps the unit-free
/// ones.
struct TreeRuns {
    std::set<Term> partial;
    std::set<Term> accepted;
};

TreeRuns tree_partial_runs(const Coalgebra& c, int depth);

/// One canonical value per line, sorted.
std::vector<std::string> trace_lines(const TraceSet& t, const SortSet& sorts = default_sorts(),
                                     const Glyphs& g = {});

}  // namespace openpath

#endif  // OPENPATH_TRACE_HPP
