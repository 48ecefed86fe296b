// Shared functors and small systems for the test suites.
#ifndef OPENPATH_TESTS_FIXTURES_HPP
#define OPENPATH_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "openpath/coalgebra.hpp"
#include "openpath/functor.hpp"

namespace fixtures {

using namespace openpath;

inline Expr lts_expr(std::vector<std::string> labels = {"a", "b"}) {
    return Expr::prod({Expr::constant(std::move(labels)), Expr::id()});
}

inline Expr pair_expr() { return Expr::prod({Expr::id(), Expr::id()}); }

inline Expr sym_pair_expr() {
    AnalyticSig sig;
    sig.symbols.push_back({"pair", {0, 0}, PermGroup::symmetric(2)});
    return Expr::analytic(sig);
}

// Bags of size at most two.
inline Expr bag2_expr() {
    AnalyticSig sig;
    sig.symbols.push_back({"b0", {}, PermGroup::trivial(0)});
    sig.symbols.push_back({"b1", {0}, PermGroup::trivial(1)});
    sig.symbols.push_back({"b2", {0, 0}, PermGroup::symmetric(2)});
    return Expr::analytic(sig);
}

// One unary, one binary symbol and a constant.
inline Expr ubc_expr() {
    AnalyticSig sig;
    sig.symbols.push_back({"a", {0}, PermGroup::trivial(1)});
    sig.symbols.push_back({"pair", {0, 0}, PermGroup::trivial(2)});
    sig.symbols.push_back({"c", {}, PermGroup::trivial(0)});
    return Expr::analytic(sig);
}

// X x X + A
inline Expr tree_expr(std::vector<std::string> leaves = {"a"}) {
    return Expr::coprod({pair_expr(), Expr::constant(std::move(leaves))});
}

inline Functor single(const Expr& e) { return Functor::single(e); }
inline Functor plus1(const Expr& e) { return Functor::single(Expr::plus1(e)); }

inline SortedSet set_of(int n, const std::string& prefix) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
    return SortedSet::single(v);
}

inline Elem el(const std::string& n) { return Elem{0, n}; }
inline Term v(const std::string& n) { return Term::var(0, n); }
inline Term tup(std::vector<Term> a) { return Term::tuple(std::move(a)); }

struct Edge {
    std::string from;
    Term term;
};

// Single-sorted coalgebra pointed by "*" at `init`.
inline Coalgebra make_coalgebra(const Functor& F, std::vector<std::string> states, const std::string& init,
                                const std::vector<Edge>& edges) {
    Coalgebra c;
    c.functor = F;
    c.pointing = SortedSet::single({"*"});
    c.carrier = SortedSet::single(std::move(states));
    c.point[el("*")] = el(init);
    for (const auto& x : c.carrier.elems()) c.xi[x];
    for (const auto& e : edges) c.xi[el(e.from)].push_back(e.term);
    for (auto& [x, ts] : c.xi) sort_unique(ts);
    c.validate();
    return c;
}

inline Term lab(const std::string& a, const std::string& y) { return tup({Term::constant(a), v(y)}); }

// LTS over labels a, b with edges (from, label, to).
inline Coalgebra make_lts(std::vector<std::string> states, const std::string& init,
                          const std::vector<std::vector<std::string>>& edges,
                          std::vector<std::string> labels = {"a", "b"}) {
    std::vector<Edge> es;
    for (const auto& e : edges) es.push_back({e[0], lab(e[1], e[2])});
    return make_coalgebra(single(lts_expr(std::move(labels))), std::move(states), init, es);
}

// Five states, x0 -> (y1, y2), y1 -> (z1, z2), for F X = X x X.
inline Coalgebra needs_bottom() {
    return make_coalgebra(single(pair_expr()), {"x0", "y1", "y2", "z1", "z2"}, "x0",
                          {{"x0", tup({v("y1"), v("y2")})}, {"y1", tup({v("z1"), v("z2")})}});
}

}  // namespace fixtures

#endif
