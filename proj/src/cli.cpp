#include "openpath/cli.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"
#include "openpath/lasota.hpp"
#include "openpath/nominal.hpp"
#include "openpath/openmap.hpp"
#include "openpath/precise.hpp"
#include "openpath/text.hpp"
#include "openpath/trace.hpp"

namespace openpath {

namespace {

template <class F>
auto in_file(const std::string& path, F&& parse) {
    try {
        return parse(read_file(path));
    } catch (const ParseError& e) {
        throw Error(path + ": " + e.what());
    }
}

Coalgebra load_coalgebra(const std::string& path) { return in_file(path, parse_coalgebra); }

// precise-factor: f = F h . f' with Y' renamed y'1, y'2, ... in canonical order.
int cmd_precise_factor(std::ostream& os, const std::string& file, const Glyphs& g) {
    const MapFile f = in_file(file, parse_map_file);
    const bool precise = is_precise(f.functor, f.domain, f.codomain, f.map);
    const auto fac = precise_factorize(f.functor, f.domain, f.map);
    ElemMap rename;
    std::vector<int> count(f.functor.sort_count(), 0);
    MapFile out;
    out.functor = f.functor;
    out.domain = f.domain;
    out.codomain = SortedSet(f.functor.sort_count());
    for (const auto& y : fac.target.elems()) {
        rename[y] = Elem{y.sort, "y'" + std::to_string(++count[y.sort])};
        out.codomain.insert(rename[y]);
    }
    for (const auto& [x, t] : fac.map) out.map[x] = fmap(f.functor, x.sort, rename, t);
    ElemMap h;
    for (const auto& [y, z] : fac.projection) h[rename.at(y)] = z;
    out.projection = std::move(h);
    os << "# f is " << (precise ? "" : "not ") << "precise\n" << print_model(out, g);
    return 0;
}

int cmd_paths(std::ostream& os, const std::string& file, int depth, bool listing, const Glyphs& g) {
    const auto [F, I] = in_file(file, parse_signature);
    if (F.contains_pf()) throw Error("paths: the functor must not contain pf");
    for (int k = 0; k <= depth; ++k) {
        const auto values = all_comp_values(F, I, k);
        os << "# length " << k << ": " << values.size() << '\n';
        for (const auto& v : values) {
            os << to_string(v, F.sorts, g) << '\n';
            if (listing) {
                std::istringstream in(to_string(path_from_comp(F, I, v), g));
                for (std::string l; std::getline(in, l);) os << "  " << l << '\n';
            }
        }
    }
    return 0;
}

int cmd_runs(std::ostream& os, const std::string& file, int depth, bool no_bottom, const Glyphs& g) {
    const Coalgebra c = load_coalgebra(file);
    std::vector<std::string> blocks;
    RunOptions opts;
    opts.allow_bottom = !no_bottom;
    enumerate_runs(c, depth, [&](const PathObj& p, const Run& r) {
        std::ostringstream b;
        b << "comp: " << to_string(comp(p), c.functor.sorts, g) << '\n' << to_string(p, g) << to_string(r, g);
        blocks.push_back(b.str());
        return true;
    }, opts);
    std::sort(blocks.begin(), blocks.end());
    os << "# runs: " << blocks.size() << '\n';
    for (const auto& b : blocks) os << '\n' << b;
    return 0;
}

int cmd_trace(std::ostream& os, const std::string& file, int depth, const Glyphs& g) {
    const Coalgebra c = load_coalgebra(file);
    std::optional<std::set<Word>> words;
    try {
        words = lts_language(c, depth);
    } catch (const Error&) {
    }
    if (words) {
        for (const auto& w : *words) os << word_string(w, g) << '\n';
    } else {
        for (const auto& l : trace_lines(trace(c, depth), c.functor.sorts, g)) os << l << '\n';
    }
    return 0;
}

std::string set_string(const SortedSet& s, const SortSet& sorts) {
    std::string out = "{";
    bool first = true;
    for (const auto& e : s.elems()) {
        out += (first ? "" : ", ") + to_string(e, sorts);
        first = false;
    }
    return out + "}";
}

int cmd_reach(std::ostream& os, const std::string& file) {
    const Coalgebra c = load_coalgebra(file);
    const auto bfs = reachable_bfs(c);
    for (std::size_t k = 0; k < bfs.levels.size(); ++k)
        os << "X" << k << " = " << set_string(bfs.levels[k], c.functor.sorts) << '\n';
    const bool reachable = bfs.reached.size() == c.carrier.size();
    const bool path_reachable = is_path_reachable(c);
    const bool without_bottom = is_path_reachable(c, RunOptions{false});
    os << "reachable: " << (reachable ? "yes" : "no") << '\n'
       << "path-reachable: " << (path_reachable ? "yes" : "no") << '\n'
       << "path-reachable without bottom: " << (without_bottom ? "yes" : "no") << '\n';
    if (!reachable) {
        SortedSet rest(c.carrier.sort_count());
        for (const auto& x : c.carrier.elems())
            if (!bfs.reached.contains(x)) rest.insert(x);
        os << "unreachable: " << set_string(rest, c.functor.sorts) << '\n';
    }
    return reachable && path_reachable ? 0 : 1;
}

struct Triple {
    Coalgebra src, dst;
    ElemMap m;
};

Triple load_triple(const std::string& s, const std::string& d, const std::string& m) {
    Triple t{load_coalgebra(s), load_coalgebra(d), {}};
    t.m = in_file(m, [&](const std::string& text) { return parse_elem_map(text, t.src.carrier, t.dst.carrier); });
    return t;
}

int cmd_hom(std::ostream& os, const Triple& t) {
    const auto lax = hom_violation(t.src, t.dst, t.m, false);
    const auto strict = hom_violation(t.src, t.dst, t.m, true);
    os << "lax: " << (lax ? "no" : "yes") << '\n' << "strict: " << (strict ? "no" : "yes") << '\n';
    if (strict) os << "reason: " << *strict << '\n';
    return strict ? 1 : 0;
}

int cmd_open(std::ostream& os, const Triple& t, int bound, const Glyphs& g) {
    if (bound < 0) bound = static_cast<int>(t.src.size()) + 1;
    const auto r = is_open(t.src, t.dst, t.m, bound);
    switch (r.verdict) {
        case OpenCheckReport::Verdict::Open: os << "open (bound " << r.bound << ")\n"; return 0;
        case OpenCheckReport::Verdict::NotMorphism: os << "not a lax homomorphism: " << r.reason << '\n'; return 1;
        case OpenCheckReport::Verdict::NotOpen: break;
    }
    os << "not open (bound " << r.bound << ")\n";
    if (r.witness) os << "# witness square\n" << to_string(*r.witness, g);
    return 1;
}

int cmd_verify(std::ostream& os, const std::string& functor, int trials, std::uint64_t seed, int states,
               double density, int threads) {
    GenSpec spec;
    try {
        spec.functor = parse_functor(functor);
    } catch (const ParseError& e) {
        throw Error(std::string("--functor: ") + e.what());
    }
    if (states < 1) throw Error("--states must be positive");
    if (spec.functor.sort_count() != 1) throw Error("--functor: a single-sorted functor is expected");
    spec.sizes = {states};
    spec.density = density;
    spec.seed = seed;
    spec.vary_sizes = true;
    const auto report = verify_theorems(spec, trials, threads);
    os << report.text();
    return report.ok() ? 0 : 1;
}

int cmd_lasota(std::ostream& os, const std::string& file, int depth, int max_y) {
    const FiniteCategory P = in_file(file, parse_category);
    const auto r = paths_bijection_check(P, depth, max_y);
    for (std::size_t n = 0; n < r.paths.size(); ++n)
        os << "length " << n << ": " << r.paths[n] << " paths, " << r.sequences[n] << " sequences\n";
    os << "precise maps checked: " << r.precise_maps_checked << '\n';
    for (const auto& m : r.mismatches) os << "mismatch: " << m << '\n';
    os << (r.ok() ? "ok" : "FAILED") << '\n';
    return r.ok() ? 0 : 1;
}

int cmd_rnna(std::ostream& os, const std::string& file, int pool, int depth, const Glyphs& g) {
    const RnnaPresentation r = in_file(file, parse_rnna);
    const Coalgebra c = rnna_expand(r, pool);
    os << "# expanded: " << c.size() << " states, " << c.transition_count() << " transitions\n";
    std::vector<std::string> lines;
    for (const auto& w : bar_trace(r, pool, depth)) lines.push_back(to_string(w, g));
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) os << l << '\n';
    return 0;
}

int cmd_print(std::ostream& os, const std::string& file, const Glyphs& g) {
    os << print_model(in_file(file, parse_model), g);
    return 0;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CLI::App app{"Paths, runs and open maps for finite coalgebras", "openpath"};
    app.require_subcommand(1);
    bool ascii = false;
    app.add_flag("--ascii", ascii, "Print ASCII instead of Unicode glyphs");

    std::string file, src, dst, map, functor = "prod(const(a b), id)";
    int depth = 3, bound = -1, trials = 200, states = 5, threads = 1, max_y = 2, pool = 3;
    std::uint64_t seed = 42;
    double density = 0.3;
    bool listing = false, no_bottom = false;

    auto* pf = app.add_subcommand("precise-factor", "Precise factorization of a map file");
    pf->add_option("file", file, "Map file")->required();
    auto* paths = app.add_subcommand("paths", "Paths of Path(I, F+1) up to isomorphism, by comp value");
    paths->add_option("file", file, "File with [functor] and [pointing]")->required();
    paths->add_option("--depth", depth, "Maximal length")->check(CLI::Range(0, 8));
    paths->add_flag("--listing", listing, "Print every path");
    auto* runs = app.add_subcommand("runs", "Runs of a coalgebra");
    runs->add_option("file", file, "Coalgebra file")->required();
    runs->add_option("--depth", depth, "Maximal length")->check(CLI::Range(0, 8));
    runs->add_flag("--no-bottom", no_bottom, "Only paths without bottom");
    auto* tr = app.add_subcommand("trace", "Trace semantics");
    tr->add_option("file", file, "Coalgebra file")->required();
    tr->add_option("--depth", depth, "Maximal depth")->check(CLI::Range(0, 32));
    auto* reach = app.add_subcommand("reach", "Reachability");
    reach->add_option("file", file, "Coalgebra file")->required();
    auto* hom = app.add_subcommand("hom", "Homomorphism check");
    auto* open = app.add_subcommand("open", "Open map check");
    for (auto* s : {hom, open}) {
        s->add_option("src", src, "Source coalgebra")->required();
        s->add_option("dst", dst, "Target coalgebra")->required();
        s->add_option("map", map, "State map")->required();
    }
    open->add_option("--bound", bound, "Path length bound (default |X|+1)")->check(CLI::Range(0, 64));
    auto* verify = app.add_subcommand("verify", "Randomized theorem harness");
    verify->add_option("--functor", functor, "Functor expression");
    verify->add_option("--trials", trials, "Number of trials")->check(CLI::Range(1, 100000));
    verify->add_option("--seed", seed, "Seed");
    verify->add_option("--states", states, "Maximal number of states")->check(CLI::Range(1, 12));
    verify->add_option("--density", density, "Transition density")->check(CLI::Range(0.0, 1.0));
    verify->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
    auto* lasota = app.add_subcommand("lasota", "Paths of the multisorted encoding of a category");
    lasota->add_option("file", file, "Category file")->required();
    lasota->add_option("--depth", depth, "Maximal length")->check(CLI::Range(0, 6));
    lasota->add_option("--max-y", max_y, "Codomain bound per sort")->check(CLI::Range(0, 3));
    auto* rnna = app.add_subcommand("rnna", "Bar-string traces of a register automaton");
    rnna->add_option("file", file, "Automaton file")->required();
    rnna->add_option("--pool", pool, "Number of atoms")->check(CLI::Range(1, 6));
    rnna->add_option("--depth", depth, "Maximal word length")->check(CLI::Range(0, 8));
    auto* print = app.add_subcommand("print", "Canonical form of a model file");
    print->add_option("file", file, "Model file")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    std::ostringstream os;
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        return {app.help(), 0};
    } catch (const CLI::ParseError& e) {
        return {"error: " + std::string(e.what()) + "\n", 2};
    }

    const Glyphs g{ascii};
    try {
        int code = 0;
        if (*pf) code = cmd_precise_factor(os, file, g);
        else if (*paths) code = cmd_paths(os, file, depth, listing, g);
        else if (*runs) code = cmd_runs(os, file, depth, no_bottom, g);
        else if (*tr) code = cmd_trace(os, file, depth, g);
        else if (*reach) code = cmd_reach(os, file);
        else if (*hom) code = cmd_hom(os, load_triple(src, dst, map));
        else if (*open) code = cmd_open(os, load_triple(src, dst, map), bound, g);
        else if (*verify) code = cmd_verify(os, functor, trials, seed, states, density, threads);
        else if (*lasota) code = cmd_lasota(os, file, depth, max_y);
        else if (*rnna) code = cmd_rnna(os, file, pool, depth, g);
        else if (*print) code = cmd_print(os, file, g);
        return {os.str(), code};
    } catch (const std::exception& e) {
        return {os.str() + "error: " + e.what() + "\n", 2};
    }
}

}  // namespace openpath
