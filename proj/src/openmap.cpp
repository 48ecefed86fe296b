#include "openpath/openmap.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "openpath/precise.hpp"
#include "openpath/random.hpp"

namespace openpath {

namespace {

// Shortest chain from a pointing element to a state: x_0 = point(start),
// x_{k+1} a leaf of terms[k] in xi(x_k).
struct Chain {
    Elem start;
    std::vector<Elem> states;
    std::vector<Term> terms;
};

// BFS by distance; chains of every reached state, visited in canonical order.
std::map<Elem, Chain> shortest_chains(const Coalgebra& c, int max_distance) {
    std::map<Elem, Chain> out;
    std::vector<Elem> frontier;
    for (const auto& i : c.pointing.elems()) {
        const Elem& x = c.point.at(i);
        if (out.count(x)) continue;
        out[x] = Chain{i, {x}, {}};
        frontier.push_back(x);
    }
    std::sort(frontier.begin(), frontier.end());
    for (int d = 0; d < max_distance && !frontier.empty(); ++d) {
        std::vector<Elem> next;
        for (const auto& x : frontier) {
            const Expr& e = c.functor.at(x.sort);
            for (const auto& t : c.behaviour(x))
                for_each_leaf(e, t, [&](int, const Term& leaf, const std::vector<int>&) {
                    const Elem y = leaf.as_elem();
                    if (out.count(y)) return;
                    Chain ch = out.at(x);
                    ch.states.push_back(y);
                    ch.terms.push_back(t);
                    out[y] = std::move(ch);
                    next.push_back(y);
                });
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

// Fresh level with one element per leaf of t; returns the renamed term and
// records the run component.
Term fresh_level(const Expr& e1, const Term& t, int& counter, SortedSet& level, ElemMap& comp,
                 std::vector<std::pair<Elem, Elem>>* order = nullptr) {
    return map_leaves(e1, t, [&](int sort, const Term& leaf) {
        Elem n{sort, "v" + std::to_string(++counter)};
        level.per_sort[sort].push_back(n.name);
        comp[n] = leaf.as_elem();
        if (order) order->push_back({n, leaf.as_elem()});
        return Term::var(n);
    });
}

// Linear path along a chain; elements off the chain go to bottom. Returns the
// level-n element that runs through the last state.
Elem chain_path(const Coalgebra& c, const Chain& ch, PathObj& p, Run& r) {
    const Functor F1 = plus1(c.functor);
    p = trivial_path(c.functor, c.pointing);
    r.components.assign(1, {});
    for (const auto& i : c.pointing.elems()) r.components[0][i] = c.point.at(i);
    Elem cur = ch.start;
    for (std::size_t k = 0; k < ch.terms.size(); ++k) {
        SortedSet level(c.functor.sort_count());
        TermMap m;
        ElemMap comp;
        int counter = 0;
        std::vector<std::pair<Elem, Elem>> order;
        for (const auto& s : p.levels[k].elems()) {
            if (s == cur)
                m[s] = fresh_level(F1.at(s.sort), ch.terms[k], counter, level, comp, &order);
            else
                m[s] = Term::bot();
        }
        for (const auto& [n, leaf] : order)
            if (leaf == ch.states[k + 1]) {
                cur = n;
                break;
            }
        p.maps.push_back(std::move(m));
        p.levels.push_back(std::move(level));
        r.components.push_back(std::move(comp));
    }
    return cur;
}

// Some x': Q_{n+1} -> X with m . x' = y_{n+1} satisfying the run condition
// at level n. The leaves of distinct elements are disjoint (q_n is precise),
// so elements are solved independently.
bool diagonal_exists(const Coalgebra& src, const ElemMap& m, const PathObj& q, const ElemMap& xn,
                     const ElemMap& y_next) {
    const int n = q.length() - 1;
    const Functor F1 = plus1(q.functor);
    for (const auto& [e, t] : q.maps[n]) {
        if (t.is_bot()) continue;
        const Expr& ex = F1.at(e.sort);
        bool found = false;
        for (const auto& u : src.behaviour(xn.at(e))) {
            match_term(ex, t, u, {}, [&](const ElemMap& xp) {
                for (const auto& [v, x] : xp)
                    if (m.at(x) != y_next.at(v)) return true;
                found = true;
                return false;
            });
            if (found) break;
        }
        if (!found) return false;
    }
    return true;
}

bool for_each_product(const std::vector<std::vector<ElemMap>>& options,
                      const std::function<bool(const ElemMap&)>& visit) {
    std::vector<std::size_t> pick(options.size(), 0);
    for (const auto& o : options)
        if (o.empty()) return true;
    while (true) {
        ElemMap all;
        for (std::size_t j = 0; j < options.size(); ++j)
            for (const auto& kv : options[j][pick[j]]) all.insert(kv);
        if (!visit(all)) return false;
        std::size_t j = options.size();
        while (true) {
            if (j == 0) return true;
            --j;
            if (++pick[j] < options[j].size()) break;
            pick[j] = 0;
        }
    }
}

OpenCheckReport not_morphism(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m, int bound) {
    OpenCheckReport rep;
    rep.bound = bound;
    if (auto v = hom_violation(src, dst, m, false)) {
        rep.verdict = OpenCheckReport::Verdict::NotMorphism;
        rep.reason = *v;
    }
    return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// Open maps

OpenCheckReport is_open(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m, int bound) {
    OpenCheckReport rep = not_morphism(src, dst, m, bound);
    if (rep.verdict == OpenCheckReport::Verdict::NotMorphism || bound <= 0) return rep;
    const Functor F1 = plus1(src.functor);
    for (const auto& [x, ch] : shortest_chains(src, bound - 1)) {
        const Expr& e = src.functor.at(x.sort);
        const auto img = image_behaviour(e, m, src.behaviour(x));
        for (const auto& z : dst.behaviour(m.at(x))) {
            if (std::binary_search(img.begin(), img.end(), z)) continue;
            OpenWitness w;
            const Elem last = chain_path(src, ch, w.path, w.run);
            const int n = w.path.length();
            w.extension = w.path;
            w.target_run = transfer_run(w.run, m);
            SortedSet level(src.functor.sort_count());
            TermMap qn;
            ElemMap comp;
            int counter = 0;
            for (const auto& s : w.path.levels[n].elems())
                qn[s] = s == last ? fresh_level(F1.at(s.sort), z, counter, level, comp) : Term::bot();
            w.extension.maps.push_back(std::move(qn));
            w.extension.levels.push_back(std::move(level));
            w.target_run.components.push_back(std::move(comp));
            rep.verdict = OpenCheckReport::Verdict::NotOpen;
            rep.witness = std::move(w);
            return rep;
        }
    }
    return rep;
}

OpenCheckReport is_open_exhaustive(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m, int bound) {
    OpenCheckReport rep = not_morphism(src, dst, m, bound);
    if (rep.verdict == OpenCheckReport::Verdict::NotMorphism || bound <= 0) return rep;
    const Functor F1 = plus1(src.functor);
    enumerate_runs(src, bound - 1, [&](const PathObj& p, const Run& x) {
        const int n = p.length();
        const Run y = transfer_run(x, m);
        const auto pn = p.levels[n].elems();
        bool go = true;
        enumerate_precise_maps(p.levels[n], F1, [&](const PreciseMap& ext) {
            PathObj q = p;
            q.maps.push_back(ext.map);
            q.levels.push_back(ext.target);
            // runs y' of q: per element, every binding of its leaves into a
            // transition of y_n(e)
            std::vector<std::vector<ElemMap>> options;
            for (const auto& e : pn) {
                const Term& t = ext.map.at(e);
                std::vector<ElemMap> opt;
                if (t.is_bot()) {
                    opt.push_back({});
                } else {
                    for (const auto& z : dst.behaviour(y.components[n].at(e)))
                        match_term(F1.at(e.sort), t, z, {}, [&](const ElemMap& b) {
                            opt.push_back(b);
                            return true;
                        });
                }
                options.push_back(std::move(opt));
            }
            return go = for_each_product(options, [&](const ElemMap& yn) {
                if (diagonal_exists(src, m, q, x.components[n], yn)) return true;
                OpenWitness w{p, x, q, y};
                w.target_run.components.push_back(yn);
                rep.verdict = OpenCheckReport::Verdict::NotOpen;
                rep.witness = std::move(w);
                return false;
            });
        });
        return go;
    });
    return rep;
}

bool replay_witness(const Coalgebra& src, const Coalgebra& dst, const ElemMap& m, const OpenWitness& w) {
    if (path_violation(w.path, src.pointing) || path_violation(w.extension, src.pointing)) return false;
    const int n = w.path.length();
    if (w.extension.length() != n + 1) return false;
    for (int k = 0; k <= n; ++k)
        if (!(w.extension.levels[k] == w.path.levels[k])) return false;
    for (int k = 0; k < n; ++k)
        if (w.extension.maps[k] != w.path.maps[k]) return false;
    if (!is_run(w.path, src, w.run) || !is_run(w.extension, dst, w.target_run)) return false;
    const Run mx = transfer_run(w.run, m);
    for (int k = 0; k <= n; ++k)
        if (mx.components[k] != w.target_run.components[k]) return false;
    return !diagonal_exists(src, m, w.extension, w.run.components[n], w.target_run.components[n + 1]);
}

// ---------------------------------------------------------------------------
// Reachability

BfsResult reachable_bfs(const Coalgebra& c) {
    BfsResult out;
    out.reached = SortedSet(c.carrier.sort_count());
    std::set<Elem> seen;
    std::set<Elem> level;
    for (const auto& [i, x] : c.point) level.insert(x);
    while (true) {
        bool grows = false;
        SortedSet s(c.carrier.sort_count());
        for (const auto& x : level) {
            s.per_sort[x.sort].push_back(x.name);
            grows |= seen.insert(x).second;
        }
        if (!grows) break;
        out.levels.push_back(std::move(s));
        std::set<Elem> next;
        for (const auto& x : level)
            for (const auto& y : successors(c.functor.at(x.sort), c.behaviour(x))) next.insert(y);
        level = std::move(next);
    }
    for (const auto& x : seen) out.reached.per_sort[x.sort].push_back(x.name);
    return out;
}

std::optional<std::pair<PathObj, Run>> reaching_run(const Coalgebra& c, const Elem& x) {
    const auto chains = shortest_chains(c, static_cast<int>(c.size()));
    auto it = chains.find(x);
    if (it == chains.end()) return std::nullopt;
    std::pair<PathObj, Run> out;
    chain_path(c, it->second, out.first, out.second);
    return out;
}

namespace {

bool reachable_with_bottom(const Coalgebra& c) {
    for (const auto& x : c.carrier.elems()) {
        const auto pr = reaching_run(c, x);
        if (!pr || !is_run(pr->first, c, pr->second)) return false;
        const auto& last = pr->second.components.back();
        if (std::none_of(last.begin(), last.end(), [&](const auto& kv) { return kv.second == x; })) return false;
    }
    return true;
}

// Without bottom every element below the last level needs a transition, so a
// sibling at level k must unfold for n - k more steps.
bool reachable_without_bottom(const Coalgebra& c) {
    const int N = static_cast<int>(c.size());
    const auto xs = c.carrier.elems();
    std::vector<std::set<Elem>> alive(N + 1);
    alive[0] = std::set<Elem>(xs.begin(), xs.end());
    auto leaves_in = [&](const Expr& e, const Term& t, const std::set<Elem>& s) {
        bool ok = true;
        for_each_leaf(e, t, [&](int, const Term& leaf, const std::vector<int>&) { ok = ok && s.count(leaf.as_elem()); });
        return ok;
    };
    for (int d = 1; d <= N; ++d)
        for (const auto& x : xs)
            for (const auto& t : c.behaviour(x))
                if (leaves_in(c.functor.at(x.sort), t, alive[d - 1])) {
                    alive[d].insert(x);
                    break;
                }
    std::set<Elem> image;
    for (int n = 0; n <= N; ++n) {
        std::set<Elem> level;
        bool ok = true;
        for (const auto& [i, x] : c.point) {
            ok = ok && alive[n].count(x);
            level.insert(x);
        }
        if (!ok) continue;
        for (int k = 0; k <= n; ++k) {
            image.insert(level.begin(), level.end());
            if (k == n) break;
            std::set<Elem> next;
            for (const auto& x : level)
                for (const auto& t : c.behaviour(x))
                    if (leaves_in(c.functor.at(x.sort), t, alive[n - k - 1]))
                        for_each_leaf(c.functor.at(x.sort), t,
                                      [&](int, const Term& leaf, const std::vector<int>&) { next.insert(leaf.as_elem()); });
            level = std::move(next);
        }
    }
    return image.size() == xs.size();
}

}  // namespace

bool is_path_reachable(const Coalgebra& c, RunOptions opts) {
    return opts.allow_bottom ? reachable_with_bottom(c) : reachable_without_bottom(c);
}

SortedSet run_image(const Coalgebra& c, int depth, RunOptions opts) {
    std::set<Elem> seen;
    enumerate_runs(
        c, depth,
        [&](const PathObj&, const Run& r) {
            for (const auto& comp_k : r.components)
                for (const auto& [a, b] : comp_k) seen.insert(b);
            return true;
        },
        opts);
    SortedSet out(c.carrier.sort_count());
    for (const auto& x : seen) out.per_sort[x.sort].push_back(x.name);
    return out;
}

bool is_reachable_no_proper_sub(const Coalgebra& c) { return reachable_bfs(c).reached.size() == c.size(); }

// ---------------------------------------------------------------------------
// Harness

TrialResult check_trial(const Coalgebra& raw, const Coalgebra& src, const Coalgebra& dst, const ElemMap& m) {
    TrialResult r;
    r.raw_path_reachable = is_path_reachable(raw);
    r.raw_no_proper_sub = is_reachable_no_proper_sub(raw);
    if (r.raw_path_reachable != r.raw_no_proper_sub) {
        r.failed.push_back("(c)");
        r.details.push_back(std::string("path-reachable = ") + (r.raw_path_reachable ? "true" : "false") +
                            ", no proper subcoalgebra = " + (r.raw_no_proper_sub ? "true" : "false"));
    }
    const int bound = static_cast<int>(src.size()) + 1;
    const auto narrow = is_open(src, dst, m, bound);
    if (narrow.verdict == OpenCheckReport::Verdict::NotMorphism) {
        r.failed.push_back("(morphism)");
        r.details.push_back(narrow.reason);
        return r;
    }
    const auto wide = is_open(src, dst, m, bound + 2);
    r.open = narrow.open();
    r.open_wide = wide.open();
    r.strict = is_strict_hom(src, dst, m);
    r.path_reachable = is_path_reachable(src);
    if (narrow.witness && !replay_witness(src, dst, m, *narrow.witness)) {
        r.failed.push_back("(witness)");
        r.details.push_back(to_string(*narrow.witness));
    }
    if (r.strict && !r.open) {
        r.failed.push_back("(a)");
        r.details.push_back(to_string(*narrow.witness));
    }
    if (!r.path_reachable) {
        r.details.push_back("(b) skipped: source is not path-reachable");
    } else if (r.open && !r.strict) {
        r.failed.push_back("(b)");
        r.details.push_back(hom_violation(src, dst, m, true).value_or(""));
    }
    if (r.open != r.open_wide) {
        r.failed.push_back("(bound)");
        r.details.push_back(std::string("open at |X|+1 = ") + (r.open ? "true" : "false") + ", at |X|+3 = " +
                            (r.open_wide ? "true" : "false"));
    }
    return r;
}

namespace {

Term random_term(const Coalgebra& c, int sort, Rng& rng) {
    const auto terms = eval_functor(c.functor, c.carrier);
    const auto& pool = terms.at(sort);
    if (pool.empty()) return Term::bot();
    return pool[rng.index(pool.size())];
}

void add_term(Coalgebra& c, const Elem& x, const Term& t) {
    if (t.is_bot()) return;
    auto& ts = c.xi[x];
    ts.push_back(t);
    sort_unique(ts);
}

Coalgebra target_shell(const Coalgebra& src) {
    Coalgebra d;
    d.functor = src.functor;
    d.pointing = src.pointing;
    d.carrier = SortedSet(src.carrier.sort_count());
    return d;
}

void finish_target(const Coalgebra& src, Coalgebra& d, const ElemMap& m) {
    for (const auto& x : d.carrier.elems()) d.xi[x];
    for (const auto& x : src.carrier.elems())
        for (const auto& t : image_behaviour(src.functor.at(x.sort), m, src.behaviour(x))) add_term(d, m.at(x), t);
    for (const auto& [i, x] : src.point) d.point[i] = m.at(x);
}

// Coarsest partition with equal images of behaviour; the quotient map is a
// strict homomorphism.
void quotient(const Coalgebra& src, Coalgebra& d, ElemMap& m) {
    const auto xs = src.carrier.elems();
    std::map<Elem, int> cls;
    for (const auto& x : xs) cls[x] = x.sort;
    while (true) {
        ElemMap to_cls;
        for (const auto& [x, k] : cls) to_cls[x] = Elem{x.sort, "c" + std::to_string(k)};
        std::map<std::pair<int, std::vector<Term>>, int> ids;
        std::map<Elem, int> next;
        for (const auto& x : xs) {
            auto key = std::make_pair(cls[x], image_behaviour(src.functor.at(x.sort), to_cls, src.behaviour(x)));
            auto it = ids.emplace(key, static_cast<int>(ids.size())).first;
            next[x] = it->second;
        }
        std::set<int> old;
        for (const auto& [x, k] : cls) old.insert(k);
        const bool stable = ids.size() == old.size();
        cls = std::move(next);
        if (stable) break;
    }
    for (const auto& x : xs) {
        Elem y{x.sort, "y" + std::to_string(cls[x] + 1)};
        m[x] = y;
        if (!d.carrier.contains(y)) d.carrier.per_sort[y.sort].push_back(y.name);
    }
    d.carrier.normalize();
    finish_target(src, d, m);
}

void surjection(const Coalgebra& src, Coalgebra& d, ElemMap& m, Rng& rng) {
    for (std::size_t s = 0; s < src.carrier.sort_count(); ++s) {
        const auto& names = src.carrier.per_sort[s];
        if (names.empty()) continue;
        const std::size_t k = 1 + rng.index(names.size());
        for (std::size_t j = 1; j <= k; ++j) d.carrier.per_sort[s].push_back("y" + std::to_string(j));
        for (std::size_t j = 0; j < names.size(); ++j) {
            const std::size_t target = j < k ? j : rng.index(k);
            m[Elem{static_cast<int>(s), names[j]}] = Elem{static_cast<int>(s), "y" + std::to_string(target + 1)};
        }
    }
    finish_target(src, d, m);
    if (rng.bernoulli(0.5)) {
        const auto ys = d.carrier.elems();
        const Elem y = ys[rng.index(ys.size())];
        add_term(d, y, random_term(d, y.sort, rng));
    }
}

void embedding(const Coalgebra& src, Coalgebra& d, ElemMap& m, Rng& rng) {
    d.carrier = src.carrier;
    for (const auto& x : src.carrier.elems()) m[x] = x;
    for (auto& names : d.carrier.per_sort) {
        const std::size_t extra = rng.index(3);
        for (std::size_t j = 1; j <= extra; ++j) names.push_back("e" + std::to_string(j));
    }
    finish_target(src, d, m);
    for (const auto& y : d.carrier.elems())
        if (rng.bernoulli(0.3)) add_term(d, y, random_term(d, y.sort, rng));
}

void perturbation(const Coalgebra& src, Coalgebra& d, ElemMap& m, Rng& rng) {
    d.carrier = src.carrier;
    for (const auto& x : src.carrier.elems()) m[x] = x;
    finish_target(src, d, m);
    const auto ys = d.carrier.elems();
    const Elem y = ys[rng.index(ys.size())];
    add_term(d, y, random_term(d, y.sort, rng));
}

struct TrialOutcome {
    std::string generator;
    TrialResult result;
};

}  // namespace

TrialInstance generate_trial(const GenSpec& spec, int k) {
    GenSpec g = spec;
    g.seed = mix_seed(spec.seed + static_cast<std::uint64_t>(k));
    Rng rng(mix_seed(g.seed));
    if (spec.vary_sizes)
        for (auto& n : g.sizes) n = n > 0 ? 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n))) : 0;
    TrialInstance t;
    t.raw = random_coalgebra(g);
    t.src = restrict_to(t.raw, reachable_bfs(t.raw).reached);
    t.dst = target_shell(t.src);
    switch (rng.index(4)) {
        case 0:
            t.generator = "quotient";
            quotient(t.src, t.dst, t.m);
            break;
        case 1:
            t.generator = "surjection";
            surjection(t.src, t.dst, t.m, rng);
            break;
        case 2:
            t.generator = "embedding";
            embedding(t.src, t.dst, t.m, rng);
            break;
        default:
            t.generator = "perturbation";
            perturbation(t.src, t.dst, t.m, rng);
            break;
    }
    t.dst.validate();
    return t;
}

namespace {

TrialOutcome run_trial(const GenSpec& spec, int k) {
    const TrialInstance t = generate_trial(spec, k);
    return {t.generator, check_trial(t.raw, t.src, t.dst, t.m)};
}

}  // namespace

std::string HarnessReport::text() const {
    std::ostringstream os;
    for (const auto& l : lines) os << l << '\n';
    os << "trials: " << trials << ", failures: " << failures << ", strict: " << strict_count
       << ", open: " << open_count << ", (b) skipped: " << skipped_b << '\n';
    return os.str();
}

HarnessReport verify_theorems(const GenSpec& spec, int trials, int threads) {
    if (trials < 1) throw Error("verify_theorems: at least one trial is required");
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    std::vector<std::string> errors(outcomes.size());
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k; (k = next++) < trials;) {
            try {
                outcomes[k] = run_trial(spec, k);
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };
    const int n = std::max(1, std::min(threads, trials));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    HarnessReport rep;
    rep.trials = trials;
    for (int k = 0; k < trials; ++k) {
        const std::string head = "trial " + std::to_string(k) + ": ";
        if (!errors[k].empty()) {
            ++rep.failures;
            rep.lines.push_back(head + "FAIL (error)");
            rep.lines.push_back("  " + errors[k]);
            continue;
        }
        const auto& r = outcomes[k].result;
        rep.strict_count += r.strict;
        rep.open_count += r.open;
        rep.skipped_b += !r.path_reachable;
        if (r.failed.empty()) {
            rep.lines.push_back(head + "PASS");
            continue;
        }
        ++rep.failures;
        std::string clauses;
        for (const auto& c : r.failed) clauses += " " + c;
        rep.lines.push_back(head + "FAIL" + clauses + " [" + outcomes[k].generator + "]");
        for (const auto& d : r.details) {
            std::istringstream is(d);
            for (std::string line; std::getline(is, line);) rep.lines.push_back("  " + line);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const PathObj& p, const Glyphs& g) {
    std::ostringstream os;
    const auto& sorts = p.functor.sorts;
    for (std::size_t k = 0; k < p.levels.size(); ++k) {
        os << "P" << k << " = {";
        const auto es = p.levels[k].elems();
        for (std::size_t j = 0; j < es.size(); ++j) os << (j ? ", " : "") << to_string(es[j], sorts);
        os << "}\n";
        if (k < p.maps.size())
            for (const auto& [s, t] : p.maps[k])
                os << "  p" << k << "(" << to_string(s, sorts) << ") = " << to_string(t, g) << '\n';
    }
    return os.str();
}

std::string to_string(const Run& r, const Glyphs&) {
    std::ostringstream os;
    for (std::size_t k = 0; k < r.components.size(); ++k) {
        os << "x" << k << ":";
        for (const auto& [a, b] : r.components[k]) os << " " << a.name << "->" << b.name;
        os << '\n';
    }
    return os.str();
}

std::string to_string(const OpenWitness& w, const Glyphs& g) {
    std::ostringstream os;
    os << "path:\n" << to_string(w.path, g) << "run:\n" << to_string(w.run, g) << "extension:\n"
       << to_string(w.extension, g) << "target run:\n" << to_string(w.target_run, g);
    return os.str();
}

}  // namespace openpath
