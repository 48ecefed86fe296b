#include "openpath/trace.hpp"

#include <algorithm>
#include <map>

namespace openpath {

namespace {

// Depth-d values of every state.
using Layer = std::map<Elem, std::set<Term>>;

Layer next_layer(const Coalgebra& c, const Layer& prev, std::size_t limit) {
    Layer out;
    std::size_t total = 0;
    for (const auto& x : c.carrier.elems()) {
        auto& vals = out[x];
        const Expr& e = c.functor.at(x.sort);
        for (const auto& t : c.behaviour(x)) {
            std::vector<const std::set<Term>*> options;
            map_leaves(e, t, [&](int, const Term& leaf) {
                options.push_back(&prev.at(leaf.as_elem()));
                return leaf;
            });
            if (std::any_of(options.begin(), options.end(), [](const auto* o) { return o->empty(); })) continue;
            std::vector<std::set<Term>::const_iterator> pick;
            for (const auto* o : options) pick.push_back(o->begin());
            while (true) {
                std::size_t i = 0;
                vals.insert(map_leaves(e, t, [&](int, const Term&) { return *pick[i++]; }));
                if (++total > limit) throw Error("trace: more than " + std::to_string(limit) + " values at one depth");
                bool done = true;
                for (std::size_t j = pick.size(); j > 0 && done;) {
                    --j;
                    if (++pick[j] != options[j]->end())
                        done = false;
                    else
                        pick[j] = options[j]->begin();
                }
                if (done) break;
            }
        }
    }
    return out;
}

void add_products(const Coalgebra& c, const Layer& layer, int d, TraceSet& out) {
    const auto is = c.pointing.elems();
    std::vector<CompValue> acc{CompValue{d, {}}};
    for (const auto& i : is) {
        std::vector<CompValue> next;
        for (const auto& v : acc)
            for (const auto& t : layer.at(c.point.at(i))) {
                CompValue w = v;
                w.values[i] = t;
                next.push_back(std::move(w));
            }
        acc = std::move(next);
    }
    out.values.insert(acc.begin(), acc.end());
}

bool functor_equal(const Functor& a, const Functor& b) {
    if (a.sorts != b.sorts || a.exprs.size() != b.exprs.size()) return false;
    for (std::size_t s = 0; s < a.exprs.size(); ++s)
        if (to_string(a.exprs[s], a.sorts) != to_string(b.exprs[s], b.sorts)) return false;
    return true;
}

}  // namespace

TraceSet trace(const Coalgebra& c, int depth, std::size_t limit) {
    if (depth < 0) throw Error("trace: negative depth");
    TraceSet out;
    out.depth = depth;
    Layer layer;
    for (const auto& x : c.carrier.elems()) layer[x] = {Term::unit()};
    for (int d = 0;; ++d) {
        add_products(c, layer, d, out);
        if (d == depth) break;
        layer = next_layer(c, layer, limit);
    }
    return out;
}

TraceSet trace_literal(const Coalgebra& c, int depth) {
    TraceSet out;
    out.depth = depth;
    enumerate_runs(
        c, depth,
        [&](const PathObj& p, const Run&) {
            out.values.insert(comp(p));
            return true;
        },
        RunOptions{false});
    return out;
}

bool trace_equiv(const Coalgebra& a, const Coalgebra& b, int depth) {
    if (!functor_equal(a.functor, b.functor)) throw Error("trace_equiv: the systems have different functors");
    if (!(a.pointing == b.pointing)) throw Error("trace_equiv: the systems have different pointings");
    return trace(a, depth) == trace(b, depth);
}

bool is_prefix_closed(const Functor& F, const TraceSet& t) {
    for (const auto& v : t.values)
        for (int d = 0; d < v.depth; ++d)
            if (!t.values.count(truncate(F, v, d))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Words

namespace {

bool is_letter_step(const Expr& e) {
    return e.kind == Expr::Kind::Prod && e.children.size() == 2 && e.children[0].kind == Expr::Kind::Const &&
           e.children[1].kind == Expr::Kind::Sort && e.children[1].sort == 0;
}

// 0: A x X, 1: A x X + T
int lts_shape(const Functor& F) {
    if (F.sort_count() != 1) return -1;
    const Expr& e = F.at(0);
    if (is_letter_step(e)) return 0;
    if (e.kind == Expr::Kind::Coprod && e.children.size() == 2 && is_letter_step(e.children[0]) &&
        e.children[1].kind == Expr::Kind::Const)
        return 1;
    return -1;
}

Word decode_word(int shape, const Term& v) {
    Word w;
    const Term* t = &v;
    while (t->kind != Term::Kind::Unit) {
        const Term* step = t;
        if (shape == 1) {
            if (t->index == 1) {
                w.push_back(t->args[0].name);
                break;
            }
            step = &t->args[0];
        }
        w.push_back(step->args[0].name);
        t = &step->args[1];
    }
    return w;
}

}  // namespace

std::set<Word> lts_language(const Coalgebra& c, int depth) {
    const int shape = lts_shape(c.functor);
    if (shape < 0) throw Error("lts_language: the functor is not A x X or A x X + T");
    if (c.pointing.size() != 1) throw Error("lts_language: a single initial state is required");
    std::set<Word> out;
    const Elem i = c.pointing.elems()[0];
    for (const auto& v : trace(c, depth).values) out.insert(decode_word(shape, v.values.at(i)));
    return out;
}

std::string word_string(const Word& w, const Glyphs& g) {
    if (w.empty()) return g.epsilon();
    std::string s;
    for (const auto& a : w) s += g.constant(a);
    return s;
}

TreeRuns tree_partial_runs(const Coalgebra& c, int depth) {
    if (c.functor.sort_count() != 1 || c.functor.at(0).kind != Expr::Kind::Analytic)
        throw Error("tree_partial_runs: the functor is not an analytic signature");
    if (c.pointing.size() != 1) throw Error("tree_partial_runs: a single initial state is required");
    TreeRuns out;
    const Elem i = c.pointing.elems()[0];
    std::function<bool(const Term&)> has_unit = [&](const Term& t) {
        if (t.kind == Term::Kind::Unit) return true;
        return std::any_of(t.args.begin(), t.args.end(), has_unit);
    };
    for (const auto& v : trace(c, depth).values) {
        const Term& t = v.values.at(i);
        out.partial.insert(t);
        if (!has_unit(t)) out.accepted.insert(t);
    }
    return out;
}

std::vector<std::string> trace_lines(const TraceSet& t, const SortSet& sorts, const Glyphs& g) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& v : t.values) {
        auto s = to_string(v, sorts, g);
        if (seen.insert(s).second) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace openpath
