// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "openpath/cli.hpp"
#include "openpath/lasota.hpp"
#include "openpath/openmap.hpp"
#include "openpath/precise.hpp"
#include "openpath/text.hpp"

using namespace openpath;
using namespace fixtures;
using namespace oracles;

namespace {

std::string fx(const std::string& name) { return std::string(OPENPATH_FIXTURES) + "/" + name; }

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

// 1. factorization example
Outcome factorization_example() {
    Outcome o;
    const std::string expected =
        "# f is not precise\n"
        "[functor]\nplus1(prod(id, id))\n"
        "[domain]\nx1 x2 x3 x4\n"
        "[codomain]\ny'1 y'2 y'3 y'4\n"
        "[map]\nx1 -> ⊥\nx2 -> (y'1,y'2)\nx3 -> (y'3,y'4)\nx4 -> ⊥\n"
        "[projection]\ny'1 -> y1\ny'2 -> y2\ny'3 -> y2\ny'4 -> y2\n";
    const auto r = run_command({"precise-factor", fx("pair.map")});
    o.require(r.code == 0, "exit code " + std::to_string(r.code));
    o.require(r.out == expected, "printed factorization differs:\n" + r.out);
    if (o.pass) {
        const MapFile f = parse_map_file(r.out.substr(r.out.find('\n') + 1));
        o.require(f.codomain.size() == 4, "|Y'| != 4");
        o.require(is_precise(f.functor, f.domain, f.codomain, f.map), "f' is not precise");
        const MapFile orig = parse_map_file(read_file(fx("pair.map")));
        for (const auto& [x, t] : orig.map)
            o.require(fmap(f.functor, 0, *f.projection, f.map.at(x)) == t, "F h . f' != f at " + x.name);
    }
    o.detail = o.pass ? "|Y'| = 4, f = F h . f'" : o.detail;
    return o;
}

// 2. occurrence test against the brute-force definition
Outcome precise_oracle() {
    Outcome o;
    const std::vector<std::pair<std::string, Functor>> battery = {
        {"A x Id + 1", plus1(lts_expr())},
        {"Id x Id + 1", plus1(pair_expr())},
        {"bag2 + 1", plus1(bag2_expr())},
        {"{c} + 1", plus1(Expr::constant({"c"}))}};
    long maps = 0, disagreements = 0;
    for (const auto& [name, F] : battery)
        for (int nx = 0; nx <= 3; ++nx)
            for (int ny = 0; ny <= 3; ++ny) {
                const SortedSet x = set_of(nx, "x"), y = set_of(ny, "y");
                for_each_term_map(F, x, y, [&](const TermMap& f) {
                    ++maps;
                    if (is_precise(F, x, y, f) != is_precise_oracle(F, x, y, f, ny + 1)) {
                        if (!disagreements) o.detail = "disagreement for " + name;
                        ++disagreements;
                    }
                    return true;
                });
            }
    o.pass = disagreements == 0;
    if (o.pass) o.detail = std::to_string(maps) + " maps, 0 disagreements";
    return o;
}

// 3. powerset
Outcome powerset() {
    Outcome o;
    const Functor pf = single(Expr::pf(Expr::id()));
    long precise = 0, maps = 0;
    for (int nx = 0; nx <= 2; ++nx)
        for (int ny = 0; ny <= 2; ++ny) {
            const SortedSet x = set_of(nx, "x"), y = set_of(ny, "y");
            for_each_term_map(pf, x, y, [&](const TermMap& f) {
                ++maps;
                if (!is_precise_oracle(pf, x, y, f, ny + 1)) return true;
                ++precise;
                for (const auto& [a, t] : f) o.require(t.args.empty(), "precise map with a nonempty value");
                return true;
            });
        }
    o.require(precise > 0, "no precise map found");
    if (o.pass) o.detail = std::to_string(precise) + " of " + std::to_string(maps) + " maps precise, all constantly empty";
    return o;
}

// 4. theorem harness
Outcome harness() {
    Outcome o;
    const auto lts = run_command({"verify", "--functor", "prod(const(a b), id)", "--states", "5", "--trials", "200",
                                  "--seed", "42"});
    const auto tree = run_command({"verify", "--functor", "coprod(prod(id, id), const(a), const(nil))", "--states",
                                   "4", "--trials", "200", "--seed", "42"});
    auto summary = [](const std::string& out) {
        const auto p = out.rfind("trials:");
        return p == std::string::npos ? out : out.substr(p, out.size() - p - 1);
    };
    o.require(lts.code == 0, "LTS: " + summary(lts.out));
    o.require(tree.code == 0, "X x X + A + 1: " + summary(tree.out));
    if (o.pass) o.detail = "LTS " + summary(lts.out) + "; tree " + summary(tree.out);
    return o;
}

// 5. reachability needs bottom
Outcome needs_bottom_fixture() {
    Outcome o;
    const Coalgebra c = parse_coalgebra(read_file(fx("needs_bottom.coalg")));
    const auto bfs = reachable_bfs(c);
    std::vector<std::vector<std::string>> levels;
    for (const auto& l : bfs.levels) levels.push_back(l.per_sort[0]);
    o.require(levels == std::vector<std::vector<std::string>>{{"x0"}, {"y1", "y2"}, {"z1", "z2"}}, "BFS levels differ");
    o.require(is_path_reachable(c), "not path-reachable with F+1");
    o.require(!is_path_reachable(c, RunOptions{false}), "path-reachable without bottom");
    const SortedSet seen = run_image(c, static_cast<int>(c.size()), RunOptions{false});
    o.require(!seen.contains(el("z1")), "z1 reached without bottom");
    o.require(run_image(c, static_cast<int>(c.size())).contains(el("z1")), "z1 not reached with bottom");
    if (o.pass) o.detail = "levels {x0},{y1,y2},{z1,z2}; z1 needs a bottom";
    return o;
}

// Every path of length <= depth in Path(I, F+1), built level by level from
// precise maps rather than from comp values.
std::vector<PathObj> all_paths(const Functor& F, int depth) {
    const Functor F1 = single(Expr::plus1(F.at(0)));
    std::vector<PathObj> out;
    std::vector<PathObj> frontier{trivial_path(F, SortedSet::single({"*"}))};
    for (int k = 0; k <= depth; ++k) {
        std::vector<PathObj> next;
        for (const auto& p : frontier) {
            out.push_back(p);
            if (k == depth) continue;
            enumerate_precise_maps(p.levels.back(), F1, [&](const PreciseMap& m) {
                PathObj q = p;
                SortedSet level(1);
                for (const auto& y : m.target.elems()) level.insert(Elem{0, "l" + std::to_string(k + 1) + y.name});
                ElemMap rename;
                for (const auto& y : m.target.elems()) rename[y] = Elem{0, "l" + std::to_string(k + 1) + y.name};
                TermMap mm;
                for (const auto& [a, t] : m.map) mm[a] = fmap(F1, 0, rename, t);
                q.maps.push_back(mm);
                q.levels.push_back(level);
                next.push_back(q);
                return true;
            });
        }
        frontier = std::move(next);
    }
    return out;
}

// 6. comp
Outcome comp_structure() {
    Outcome o;
    long pairs = 0;
    for (const Expr& e : {pair_expr(), sym_pair_expr()}) {
        const Functor F = single(e);
        const auto paths = all_paths(F, 3);
        for (const auto& p : paths) o.require(!path_violation(p), "enumerated path invalid");
        for (const auto& p : paths)
            for (const auto& q : paths) {
                ++pairs;
                const bool exists = find_path_morphism(p, q).has_value();
                if (exists != pathord_le(F, comp(p), comp(q))) o.require(false, "morphism existence != pathord");
            }
        const SortedSet I = SortedSet::single({"*"});
        for (int d = 0; d <= 3; ++d)
            for (const auto& u : all_comp_values(F, I, d))
                o.require(comp(path_from_comp(F, I, u)) == u, "comp . path_from_comp != id");
    }
    if (o.pass) o.detail = std::to_string(pairs) + " path pairs";
    return o;
}

// 7. traces
Outcome traces() {
    Outcome o;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 1 + static_cast<int>(seed % 6);
        const auto c = random_coalgebra({single(lts_expr()), SortedSet::single({"*"}), {n}, 0.25, seed});
        o.require(lts_language(c, 6) == bfs_language(c, 6), "language differs from BFS, seed " + std::to_string(seed));
        const auto t = trace(c, 6);
        o.require(is_prefix_closed(c.functor, t), "trace not prefix-closed");
    }
    int open = 0;
    const GenSpec spec{single(lts_expr()), SortedSet::single({"*"}), {5}, 0.3, 42, true};
    for (int k = 0; k < 200; ++k) {
        const auto t = generate_trial(spec, k);
        const int bound = static_cast<int>(t.src.size()) + 1;
        if (!is_open(t.src, t.dst, t.m, bound).open()) continue;
        ++open;
        o.require(trace_equiv(t.src, t.dst, bound), "open map changes traces, trial " + std::to_string(k));
        o.require(is_prefix_closed(t.dst.functor, trace(t.dst, bound)), "trace not prefix-closed");
    }
    o.require(open > 0, "no open maps in the harness");
    if (o.pass) o.detail = "100 systems; " + std::to_string(open) + " open maps trace-equivalent";
    return o;
}

// 8. Lasota
Outcome lasota() {
    Outcome o;
    std::string sizes;
    for (const auto* name : {"arrow.cat", "chain.cat", "fork.cat"}) {
        const FiniteCategory P = parse_category(read_file(fx(name)));
        const auto r = paths_bijection_check(P, 3, 2);
        o.require(r.ok(), std::string(name) + ": " + (r.mismatches.empty() ? "" : r.mismatches[0]));
        sizes += std::string(sizes.empty() ? "" : ", ") + name + " " + std::to_string(r.paths.back()) + " paths";
    }
    if (o.pass) o.detail = sizes;
    return o;
}

// 9. nominal
Outcome nominal() {
    Outcome o;
    auto w = [](std::vector<Letter> ls) { return BarString{{}, std::move(ls), WordEnd::None}; };
    const auto ab = w({br(1), br(2), fr(1), fr(2)}), ba = w({br(1), br(2), fr(2), fr(1)});
    o.require(!alpha_equivalent(ab, ba), "|a|b ab ~ |a|b ba");
    o.require(!alpha_oracle(ab.letters, ba.letters, ab.end, ba.end), "oracle: |a|b ab ~ |a|b ba");
    for (Atom a = 1; a <= 4; ++a)
        o.require(alpha_canonical(w({br(a), fr(a)})) == alpha_canonical(w({br(1), fr(1)})), "renamings of |a a differ");

    const int pool = 3;
    long checked = 0;
    std::vector<StrongElem> ys;
    for (const std::string label : {"y", "z"}) {
        ys.push_back({label, {}});
        for (Atom a = 1; a <= pool; ++a) {
            ys.push_back({label, {a}});
            for (Atom b = 1; b <= pool; ++b)
                if (a != b) ys.push_back({label, {a, b}});
        }
    }
    const std::vector<StrongElem> xs = {{"x", {}}, {"x", {1}}, {"x", {2, 1}}, {"x", {1, 3}}};
    for (const auto& x : xs)
        for (const auto& y : ys)
            for (Atom a = 1; a <= pool; ++a) {
                const NomTerm t{NomTerm::Kind::Bar, a, y};
                const AtomSet s = support(t), sx = support(x);
                if (!std::includes(sx.begin(), sx.end(), s.begin(), s.end())) continue;
                const auto fac = binding_factorize({{x, t}}, pool);
                const NomTerm& f = fac.map.at(x);
                const NomTerm back{NomTerm::Kind::Bar, f.atom, fac.projection.at(f.succ)};
                o.require(alpha_canonical(back, pool) == alpha_canonical(t, pool), "binding_factorize round trip");
                ++checked;
            }

    const RnnaPresentation r = parse_rnna(read_file(fx("three_rules.rnna")));
    const auto t3 = bar_trace(r, 3, 3), t4 = bar_trace(r, 4, 3);
    o.require(t3 == simulate(r, 3, 3), "bar_trace differs from the simulation oracle");
    o.require(t3 == t4, "bar_trace not pool-stable from 3 to 4");
    if (o.pass)
        o.detail = std::to_string(checked) + " factorizations; " + std::to_string(t3.size()) + " trace words, pools 3 and 4";
    return o;
}

// 10. determinism of the CLI
Outcome determinism() {
    Outcome o;
    const std::vector<std::vector<std::string>> commands = {
        {"precise-factor", fx("pair.map")},
        {"paths", fx("branching.path"), "--depth", "3"},
        {"runs", fx("needs_bottom.coalg"), "--depth", "3"},
        {"trace", fx("ab.lts"), "--depth", "3"},
        {"trace", fx("needs_bottom.coalg"), "--depth", "3"},
        {"reach", fx("needs_bottom.coalg")},
        {"hom", fx("lax_src.lts"), fx("lax_dst.lts"), fx("lax.map")},
        {"open", fx("lax_src.lts"), fx("lax_dst.lts"), fx("lax.map")},
        {"verify", "--trials", "50", "--seed", "42", "--threads", "4"},
        {"lasota", fx("fork.cat"), "--depth", "3"},
        {"rnna", fx("three_rules.rnna"), "--pool", "3", "--depth", "3"},
        {"print", fx("branching.path")},
    };
    for (const auto& c : commands) {
        const auto a = run_command(c), b = run_command(c);
        o.require(a.code != 2, c[0] + ": " + a.out);
        o.require(a.code == b.code && a.out == b.out, c[0] + " output differs between runs");
    }
    // the threaded harness must not depend on the thread count
    o.require(run_command({"verify", "--trials", "50", "--seed", "42", "--threads", "4"}).out ==
                  run_command({"verify", "--trials", "50", "--seed", "42"}).out,
              "verify depends on --threads");
    if (o.pass) o.detail = std::to_string(commands.size()) + " commands, byte-identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
        {"factorization example", factorization_example},
        {"precise test vs oracle", precise_oracle},
        {"powerset precise maps", powerset},
        {"theorem harness", harness},
        {"reachability needs bottom", needs_bottom_fixture},
        {"comp structure", comp_structure},
        {"traces", traces},
        {"Lasota categories", lasota},
        {"nominal", nominal},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " (" << ms
                  << " ms): " << o.detail << '\n';
        failed += !o.pass;
    }
    const auto total =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << total << " ms\n";
    return failed ? 1 : 0;
}
