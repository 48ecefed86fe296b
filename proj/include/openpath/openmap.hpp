#ifndef OPENPATH_OPENMAP_HPP
#define OPENPATH_OPENMAP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "openpath/coalgebra.hpp"
#include "openpath/path.hpp"

namespace openpath {

/// A square p -> q (q extends p by one level) with runs x of p in the source
/// and y of q in the target, y agreeing with m . x up to level n, that has no
/// diagonal.
struct OpenWitness {
    PathObj path;
    Run run;
    PathObj extension;
    Run target_run;
};

struct OpenCheckReport {
    enum class Verdict { Open, NotOpen, NotMorphism };
    Verdict verdict = Verdict::Open;
    std::optional<OpenWitness> witness;
    std::string reason;  // set for NotMorphism
    int bound = 0;

    bool open() const { return verdict == Verdict::Open; }
};

/// Checks every square whose top path has length n < bound. Only squares of
/// length difference one are examined; for each source state reachable in
/// exactly n steps and each transition of its image the lifting problem is
/// solved directly. Maps that are not lax homomorphisms get NotMorphism.
OpenCheckReport is_open(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m, int bound);

/// The same check by literal enumeration: every run from enumerate_runs,
/// every (F+1)-precise extension and every extending run in the target.
/// Exponential; for cross-checks on small systems.
OpenCheckReport is_open_exhaustive(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m, int bound);

/// True iff w is a genuine counterexample square: both runs validate, y
/// extends m . x, and no x': Q_{n+1} -> X completes the diagonal.
bool replay_witness(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m, const OpenWitness& w);

struct BfsResult {
    std::vector<SortedSet> levels;  // X_0, X_1, ... while the union grows
    SortedSet reached;
};

/// X_0 is the image of the pointing, X_{k+1} the successors of X_k.
BfsResult reachable_bfs(const Coalgebra& c);

/// A path with a run whose image contains x, built along a shortest chain of
/// transitions; siblings off the chain are cut with bottom. nullopt when x is
/// unreachable.
std::optional<std::pair<PathObj, Run>> reaching_run(const Coalgebra& c, const Elem& x);

/// Every state lies in the image of some run of length <= |X|. With
/// allow_bottom = false only paths without bottom count, so every sibling on
/// the way must itself unfold to the full depth.
bool is_path_reachable(const Coalgebra& c, RunOptions opts = {});

/// States in the image of some run from enumerate_runs(c, depth, opts).
SortedSet run_image(const Coalgebra& c, int depth, RunOptions opts = {});

/// The union of reachable_bfs is the whole carrier.
bool is_reachable_no_proper_sub(const Coalgebra& c);

struct TrialResult {
    bool strict = false;
    bool open = false;
    bool open_wide = false;          // at bound |X| + 3
    bool path_reachable = false;     // of the source as checked
    bool raw_path_reachable = false; // before repair
    bool raw_no_proper_sub = false;
    std::vector<std::string> failed;  // clause labels
    std::vector<std::string> details;
};

/// Clauses for one morphism: (a) strict => open, (b) open and path-reachable
/// => strict, (c) the two reachability notions agree on `raw`, and the bound
/// guard open(|X|+1) = open(|X|+3). (b) is skipped when src is not
/// path-reachable.
TrialResult check_trial(const Coalgebra& raw, const Coalgebra& src, const Coalgebra& dst, const ElemMap& m);

struct TrialInstance {
    Coalgebra raw;  // as generated
    Coalgebra src;  // restricted to its reachable part
    Coalgebra dst;
    ElemMap m;      // pointing-preserving lax homomorphism src -> dst
    std::string generator;
};

/// Trial k of the harness: a source from `spec` with sub-seed
/// mix_seed(seed + k), and a target built by one of four generators
/// (bisimulation quotient, surjection with union behaviour, embedding with
/// extra structure, identity with one added transition).
TrialInstance generate_trial(const GenSpec& spec, int k);

struct HarnessReport {
    int trials = 0;
    int failures = 0;
    int strict_count = 0;
    int open_count = 0;
    int skipped_b = 0;
    std::vector<std::string> lines;

    bool ok() const { return failures == 0; }
    std::string text() const;
};

/// check_trial on generate_trial(spec, k) for k < trials. The report does not
/// depend on `threads`.
HarnessReport verify_theorems(const GenSpec& spec, int trials, int threads = 1);

std::string to_string(const PathObj& p, const Glyphs& g = {});
std::string to_string(const Run& r, const Glyphs& g = {});
std::string to_string(const OpenWitness& w, const Glyphs& g = {});

}  // namespace openpath

#endif  // OPENPATH_OPENMAP_HPP
