#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "openpath/openmap.hpp"
#include "openpath/precise.hpp"
#include "openpath/trace.hpp"

using namespace openpath;
using namespace fixtures;
using namespace oracles;

namespace {

Expr lts_tick_expr() { return Expr::coprod({lts_expr(), Expr::constant({kTick})}); }

Term step(const std::string& a, const std::string& y) { return Term::inj(0, lab(a, y)); }
Term tick() { return Term::inj(1, Term::constant(kTick)); }

std::set<std::string> printed(const std::set<Word>& ws) {
    std::set<std::string> out;
    for (const auto& w : ws) out.insert(word_string(w));
    return out;
}

AnalyticSig tree_sig(bool symmetric) {
    AnalyticSig sig;
    sig.symbols.push_back({"b", {0, 0}, symmetric ? PermGroup::symmetric(2) : PermGroup::trivial(2)});
    sig.symbols.push_back({"c", {}, PermGroup::trivial(0)});
    return sig;
}

Coalgebra tree_automaton(bool symmetric) {
    const Expr e = Expr::analytic(tree_sig(symmetric));
    return make_coalgebra(single(e), {"q"}, "q",
                          {{"q", Term::sym(0, "b", {v("q"), v("q")})}, {"q", Term::sym(1, "c", {})}});
}

std::set<std::string> strings(const std::set<Term>& ts) {
    std::set<std::string> out;
    for (const auto& t : ts) out.insert(to_string(t));
    return out;
}

}  // namespace

TEST_CASE("words of a linear system") {
    const auto c = make_lts({"q0", "q1", "q2"}, "q0", {{"q0", "a", "q1"}, {"q1", "b", "q2"}});
    CHECK(printed(lts_language(c, 3)) == std::set<std::string>{"ε", "a", "ab"});
    CHECK(printed(lts_language(c, 1)) == std::set<std::string>{"ε", "a"});
    CHECK(trace_lines(trace(c, 3)) == std::vector<std::string>{"•", "(a,•)", "(a,(b,•))"});
    CHECK(word_string({"a", "b"}, Glyphs{true}) == "ab");
    CHECK(word_string({}, Glyphs{true}) == "eps");

    const auto t = make_coalgebra(single(lts_tick_expr()), {"q0", "q1", "q2"}, "q0",
                                  {{"q0", step("a", "q1")}, {"q1", step("b", "q2")}, {"q2", tick()}});
    CHECK(printed(lts_language(t, 3)) == std::set<std::string>{"ε", "a", "ab", "ab✓"});
    CHECK(printed(lts_language(t, 2)) == std::set<std::string>{"ε", "a", "ab"});
    CHECK(word_string({"a", kTick}, Glyphs{true}) == "aok");

    const auto none = make_lts({"q"}, "q", {});
    CHECK(printed(lts_language(none, 4)) == std::set<std::string>{"ε"});
    const auto tr = trace(none, 4);
    REQUIRE(tr.values.size() == 1);
    CHECK(tr.values.begin()->depth == 0);

    CHECK_THROWS_AS(lts_language(needs_bottom(), 2), Error);
}

TEST_CASE("trace equals the run-based definition") {
    const std::vector<Expr> battery{lts_expr(), lts_tick_expr(), tree_expr(), sym_pair_expr(), bag2_expr()};
    for (const auto& e : battery)
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            const auto c = random_coalgebra({single(e), SortedSet::single({"*"}), {3}, 0.2, seed});
            const int depth = e.kind == Expr::Kind::Prod ? 4 : 3;
            const auto a = trace(c, depth);
            CHECK(a == trace_literal(c, depth));
            CHECK(is_prefix_closed(c.functor, a));
            // monotone in the depth
            const auto b = trace(c, depth - 1);
            CHECK(std::includes(a.values.begin(), a.values.end(), b.values.begin(), b.values.end()));
        }
}

TEST_CASE("two initial states") {
    auto c = make_lts({"p", "q"}, "p", {{"p", "a", "q"}, {"q", "b", "q"}});
    c.pointing = SortedSet::single({"i", "j"});
    c.point = {{el("i"), el("p")}, {el("j"), el("q")}};
    c.validate();
    CHECK(trace(c, 2) == trace_literal(c, 2));
    CHECK(trace(c, 2).values.size() == 3);
}

TEST_CASE("trace_equiv") {
    const auto c = needs_bottom();
    CHECK(trace_equiv(c, c, 3));
    const auto a = make_lts({"q"}, "q", {{"q", "a", "q"}});
    const auto b = make_lts({"q"}, "q", {{"q", "b", "q"}});
    CHECK(trace_equiv(a, b, 0));
    CHECK_FALSE(trace_equiv(a, b, 1));
    CHECK_THROWS_AS(trace_equiv(a, c, 1), Error);
}

TEST_CASE("lts_language matches the graph oracle") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 1 + static_cast<int>(seed % 6);
        const Expr e = seed % 2 ? lts_expr() : lts_tick_expr();
        const auto c = random_coalgebra({single(e), SortedSet::single({"*"}), {n}, 0.2, seed});
        for (int depth : {0, 3, 6}) CHECK(lts_language(c, depth) == bfs_language(c, depth));
    }
}

TEST_CASE("lax homomorphisms include traces") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto src = random_coalgebra({single(lts_expr()), SortedSet::single({"*"}), {3}, 0.25, seed});
        const auto dst = random_coalgebra({single(lts_expr()), SortedSet::single({"*"}), {2}, 0.5, seed + 7});
        for_each_elem_map(src.carrier, dst.carrier, [&](const ElemMap& m) {
            if (!is_lax_hom(src, dst, m)) return true;
            const auto a = trace(src, 4), b = trace(dst, 4);
            CHECK(std::includes(b.values.begin(), b.values.end(), a.values.begin(), a.values.end()));
            ++checked;
            return true;
        });
    }
    CHECK(checked > 0);
}

TEST_CASE("open maps preserve traces") {
    const GenSpec spec{single(lts_expr()), SortedSet::single({"*"}), {5}, 0.3, 42, true};
    int open = 0;
    for (int k = 0; k < 100; ++k) {
        const auto t = generate_trial(spec, k);
        const int bound = static_cast<int>(t.src.size()) + 1;
        if (!is_open(t.src, t.dst, t.m, bound).open()) continue;
        ++open;
        CHECK(trace_equiv(t.src, t.dst, bound));
    }
    CHECK(open > 10);
}

TEST_CASE("tree automaton") {
    const auto c = tree_automaton(false);
    const auto r = tree_partial_runs(c, 2);
    CHECK(strings(r.partial) == std::set<std::string>{"•", "b(•,•)", "c", "b(b(•,•),b(•,•))", "b(b(•,•),c)",
                                                      "b(c,b(•,•))", "b(c,c)"});
    CHECK(strings(r.accepted) == std::set<std::string>{"c", "b(c,c)"});
    // a cut next to a finished leaf is not a bottom-free partial run
    CHECK_FALSE(r.partial.count(Term::sym(0, "b", {Term::sym(1, "c", {}), Term::unit()})));
    // with bottom it is the comp value b(c,⊥)
    std::set<std::string> with_bottom;
    enumerate_runs(c, 2, [&](const PathObj& p, const Run&) {
        if (p.length() == 2) with_bottom.insert(to_string(comp(p)));
        return true;
    });
    CHECK(with_bottom.count("b(c,⊥)"));

    const auto s = tree_partial_runs(tree_automaton(true), 2);
    CHECK(s.partial.size() == 6);
    CHECK(s.partial.count(Term::sym(0, "b", {Term::sym(0, "b", {Term::unit(), Term::unit()}), Term::sym(1, "c", {})})) +
              s.partial.count(Term::sym(0, "b", {Term::sym(1, "c", {}), Term::sym(0, "b", {Term::unit(), Term::unit()})})) ==
          1);

    const auto none = make_coalgebra(single(Expr::analytic(tree_sig(false))), {"q"}, "q", {});
    CHECK(strings(tree_partial_runs(none, 3).partial) == std::set<std::string>{"•"});
    CHECK_THROWS_AS(tree_partial_runs(needs_bottom(), 1), Error);
}
