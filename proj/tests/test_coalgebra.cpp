#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "openpath/precise.hpp"
#include "openpath/random.hpp"

using namespace openpath;
using namespace fixtures;

namespace {

Relation graph_of(const ElemMap& m) {
    Relation r;
    for (const auto& [a, b] : m) r.emplace(a, b);
    return r;
}

// All maps X -> Pf(FY) whose sets have at most `max_terms` elements.
void for_each_behaviour(const Functor& F, const SortedSet& x, const SortedSet& y, std::size_t max_terms,
                        const std::function<void(const BehaviourMap&)>& fn) {
    const auto fy = eval_functor(F, y)[0];
    std::vector<std::vector<Term>> subsets;
    for (std::uint32_t mask = 0; mask < (1u << fy.size()); ++mask) {
        std::vector<Term> s;
        for (std::size_t i = 0; i < fy.size(); ++i)
            if (mask >> i & 1) s.push_back(fy[i]);
        if (s.size() <= max_terms) subsets.push_back(s);
    }
    const auto xs = x.elems();
    BehaviourMap cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == xs.size()) {
            fn(cur);
            return;
        }
        for (const auto& s : subsets) {
            cur[xs[i]] = s;
            rec(i + 1);
        }
    };
    rec(0);
}

BehaviourMap post(const Expr& e, const ElemMap& h, const BehaviourMap& f) {
    BehaviourMap out;
    for (const auto& [x, ts] : f) out[x] = image_behaviour(e, h, ts);
    return out;
}

BehaviourMap pre(const ElemMap& k, const BehaviourMap& f) {
    BehaviourMap out;
    for (const auto& [a, b] : k) out[a] = f.at(b);
    return out;
}

}  // namespace

TEST_CASE("homset order") {
    const Term t1 = lab("a", "y"), t2 = lab("b", "y");
    BehaviourMap f{{el("x"), {t1, t2}}}, g{{el("x"), {t1}}}, empty{{el("x"), {}}};
    CHECK(homset_leq(f, f));
    CHECK(homset_leq(empty, g));
    CHECK_FALSE(homset_leq(f, g));
    CHECK(homset_leq(g, f));
    CHECK_THROWS_AS(homset_leq(f, BehaviourMap{{el("z"), {}}}), Error);
}

TEST_CASE("strict and lax homomorphism examples") {
    const auto c = make_lts({"p", "q"}, "p", {{"p", "a", "q"}, {"q", "b", "p"}});
    ElemMap id{{el("p"), el("p")}, {el("q"), el("q")}};
    CHECK(is_strict_hom(c, c, id));
    CHECK(is_lax_hom(c, c, id));

    // needs_bottom collapsed onto a single state with a self-loop
    const auto w = needs_bottom();
    const auto loop = make_coalgebra(single(pair_expr()), {"s"}, "s", {{"s", tup({v("s"), v("s")})}});
    ElemMap collapse;
    for (const auto& x : w.carrier.elems()) collapse[x] = el("s");
    CHECK_FALSE(is_strict_hom(w, loop, collapse));
    CHECK(is_lax_hom(w, loop, collapse));

    // a state with an outgoing transition sent to a dead state
    const auto src = make_lts({"p", "q"}, "p", {{"p", "a", "q"}});
    const auto dst = make_lts({"r", "d"}, "r", {{"r", "a", "d"}});
    ElemMap bad{{el("p"), el("d")}, {el("q"), el("d")}};
    CHECK_FALSE(is_lax_hom(src, dst, bad));
    ElemMap good{{el("p"), el("r")}, {el("q"), el("d")}};
    CHECK(is_strict_hom(src, dst, good));
}

TEST_CASE("LTS relations") {
    const auto c = make_lts({"p", "q"}, "p", {{"p", "a", "q"}});
    Relation id{{el("p"), el("p")}, {el("q"), el("q")}};
    CHECK(lts_is_bisimulation(id, c, c));
    CHECK_FALSE(lts_is_bisimulation({}, c, c));

    // lax-only map: dst has an extra b-edge
    const auto dst = make_lts({"r", "d"}, "r", {{"r", "a", "d"}, {"r", "b", "d"}});
    ElemMap m{{el("p"), el("r")}, {el("q"), el("d")}};
    CHECK(is_lax_hom(c, dst, m));
    CHECK_FALSE(is_strict_hom(c, dst, m));
    CHECK(lts_is_simulation(graph_of(m), c, dst));
    CHECK_FALSE(lts_is_bisimulation(graph_of(m), c, dst));
    CHECK_THROWS_AS(lts_is_simulation(id, needs_bottom(), needs_bottom()), Error);
}

TEST_CASE("strict <=> functional bisimulation, lax <=> functional simulation") {
    const Functor F = single(lts_expr());
    int strict_seen = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GenSpec gs{F, SortedSet::single({"*"}), {4}, 0.25, seed};
        const auto src = random_coalgebra(gs);
        GenSpec gd{F, SortedSet::single({"*"}), {2 + static_cast<int>(seed % 2)}, 0.4, seed + 1000};
        for (const auto& dst : {random_coalgebra(gd), src}) {
            for_each_elem_map(src.carrier, dst.carrier, [&](const ElemMap& m) {
                const Relation r = graph_of(m);
                CHECK(is_strict_hom(src, dst, m) == lts_is_bisimulation(r, src, dst));
                CHECK(is_lax_hom(src, dst, m) == lts_is_simulation(r, src, dst));
                strict_seen += is_strict_hom(src, dst, m);
                return true;
            });
        }
    }
    CHECK(strict_seen > 0);
}

TEST_CASE("order is functorial (exhaustive, small sets)") {
    const Expr e = lts_expr({"a"});
    const Functor F = single(e);
    for (int nx = 1; nx <= 2; ++nx)
        for (int ny = 1; ny <= 3; ++ny) {
            const SortedSet x = set_of(nx, "x"), y = set_of(ny, "y"), z = set_of(2, "z");
            std::vector<BehaviourMap> maps;
            for_each_behaviour(F, x, y, 8, [&](const BehaviourMap& f) { maps.push_back(f); });
            std::vector<ElemMap> hs, ks;
            for_each_elem_map(y, z, [&](const ElemMap& h) {
                hs.push_back(h);
                return true;
            });
            for_each_elem_map(z, x, [&](const ElemMap& k) {
                ks.push_back(k);
                return true;
            });
            for (const auto& f : maps)
                for (const auto& g : maps) {
                    if (!homset_leq(f, g)) continue;
                    for (const auto& h : hs) CHECK(homset_leq(post(e, h, f), post(e, h, g)));
                    for (const auto& k : ks) CHECK(homset_leq(pre(k, f), pre(k, g)));
                }
        }
}

TEST_CASE("jointly epic families reflect the order") {
    const Expr e = lts_expr();
    const Functor F = single(e);
    Rng rng(7);
    const SortedSet x = set_of(3, "x"), y = set_of(2, "y");
    const auto fy = eval_functor(F, y)[0];
    auto random_map = [&]() {
        BehaviourMap f;
        for (const auto& a : x.elems()) {
            std::vector<Term> ts;
            for (const auto& t : fy)
                if (rng.bernoulli(0.5)) ts.push_back(t);
            f[a] = ts;
        }
        return f;
    };
    for (int trial = 0; trial < 300; ++trial) {
        const BehaviourMap f = random_map();
        BehaviourMap g = random_map();
        if (trial % 2 == 0)
            for (auto& [a, ts] : g) {  // often make f below g
                ts.insert(ts.end(), f.at(a).begin(), f.at(a).end());
                sort_unique(ts);
            }
        // e1 covers x1,x2; e2 covers x2,x3: jointly surjective
        const ElemMap e1{{el("u1"), el("x1")}, {el("u2"), el("x2")}};
        const ElemMap e2{{el("u1"), el("x2")}, {el("u2"), el("x3")}};
        const bool below = homset_leq(pre(e1, f), pre(e1, g)) && homset_leq(pre(e2, f), pre(e2, g));
        CHECK(below == homset_leq(f, g));
    }
}

TEST_CASE("the empty map is least and the units are natural") {
    const Expr e = lts_expr();
    const Functor F = single(e);
    const SortedSet x = set_of(2, "x"), y = set_of(2, "y"), z = set_of(1, "z");
    for_each_behaviour(F, x, y, 4, [&](const BehaviourMap& f) {
        BehaviourMap bottom;
        for (const auto& a : x.elems()) bottom[a] = {};
        CHECK(homset_leq(bottom, f));
    });
    const auto fy = eval_functor(F, y)[0];
    for_each_elem_map(y, z, [&](const ElemMap& h) {
        for (const auto& t : fy) {
            CHECK(image_behaviour(e, h, {t}) == std::vector<Term>{fmap(e, h, t)});
            CHECK(image_behaviour(e, h, {}).empty());
        }
        return true;
    });
}

TEST_CASE("decomposition into units recovers the join") {
    const Functor F = single(lts_expr());
    int calls = 0;
    for (int nx = 1; nx <= 2; ++nx) {
        const SortedSet x = set_of(nx, "x"), y = set_of(1, "y");
        for_each_behaviour(F, x, y, 2, [&](const BehaviourMap& f) {
            BehaviourMap join;
            for (const auto& a : x.elems()) join[a] = {};
            std::size_t count = 0;
            decompose_into_units(f, [&](const PartialTermMap& u) {
                ++count;
                for (const auto& [a, t] : u) {
                    if (t) {
                        const auto& fa = f.at(a);
                        CHECK(std::binary_search(fa.begin(), fa.end(), *t));
                        join[a].push_back(*t);
                    }
                }
                return true;
            });
            std::size_t expect = 1;
            for (const auto& [a, ts] : f) expect *= ts.size() + 1;
            CHECK(count == expect);
            for (auto& [a, ts] : join) sort_unique(ts);
            CHECK(join == f);
            ++calls;
        });
    }
    CHECK(calls > 0);

    std::vector<PartialTermMap> seen;
    decompose_into_units({{el("x"), {lab("a", "y")}}}, [&](const PartialTermMap& u) {
        seen.push_back(u);
        return true;
    });
    REQUIRE(seen.size() == 2);
    CHECK_FALSE(seen[0].at(el("x")).has_value());
    CHECK(*seen[1].at(el("x")) == lab("a", "y"));
}

TEST_CASE("lift_choice") {
    const Expr e = lts_expr({"a"});
    const Functor F = single(e);
    // tie-break: least eligible term
    const ElemMap merge{{el("x1"), el("z")}, {el("x2"), el("z")}};
    const BehaviourMap xs{{el("u"), {lab("a", "x1"), lab("a", "x2")}}};
    const auto picked = lift_choice(F, xs, {{el("u"), lab("a", "z")}}, merge);
    CHECK(*picked.at(el("u")) == lab("a", "x1"));
    CHECK_FALSE(lift_choice(F, xs, {{el("u"), std::nullopt}}, merge).at(el("u")).has_value());
    CHECK_THROWS_AS(lift_choice(F, xs, {{el("u"), lab("a", "w")}}, merge), Error);

    // exhaustive at |A|, |X|, |Y| <= 2
    for (int na = 1; na <= 2; ++na)
        for (int nx = 1; nx <= 2; ++nx)
            for (int ny = 1; ny <= 2; ++ny) {
                const SortedSet a = set_of(na, "u"), x = set_of(nx, "x"), y = set_of(ny, "y");
                for_each_elem_map(x, y, [&](const ElemMap& h) {
                    for_each_behaviour(F, a, x, 2, [&](const BehaviourMap& beh) {
                        // every admissible y: y(a) in F h [x(a)] or bottom
                        BehaviourMap choices;
                        for (const auto& [u, ts] : beh) choices[u] = image_behaviour(e, h, ts);
                        decompose_into_units(choices, [&](const PartialTermMap& target) {
                            const auto lifted = lift_choice(F, beh, target, h);
                            for (const auto& [u, t] : target) {
                                const auto& l = lifted.at(u);
                                if (!t) {
                                    CHECK_FALSE(l.has_value());
                                    continue;
                                }
                                REQUIRE(l.has_value());
                                CHECK(std::binary_search(beh.at(u).begin(), beh.at(u).end(), *l));
                                CHECK(fmap(e, h, *l) == *t);
                            }
                            return true;
                        });
                    });
                    return true;
                });
            }
}

TEST_CASE("random coalgebras") {
    const Functor F = single(lts_expr());
    GenSpec g{F, SortedSet::single({"*"}), {4}, 0.3, 99};
    const auto a = random_coalgebra(g), b = random_coalgebra(g);
    CHECK(a.xi == b.xi);
    CHECK(a.point == b.point);
    a.validate();

    g.density = 0.0;
    for (const auto& [x, ts] : random_coalgebra(g).xi) CHECK(ts.empty());
    g.density = 1.0;
    const auto full = random_coalgebra(g);
    const auto all = eval_functor(F, full.carrier)[0];
    for (const auto& [x, ts] : full.xi) CHECK(ts == all);

    g.sizes = {0};
    CHECK_THROWS_AS(random_coalgebra(g), Error);
}

TEST_CASE("validation rejects malformed systems") {
    auto c = make_lts({"p"}, "p", {});
    c.xi[el("p")] = {lab("c", "p")};
    CHECK_THROWS_AS(c.validate(), Error);
    c.xi[el("p")] = {lab("b", "p"), lab("a", "p")};
    CHECK_THROWS_AS(c.validate(), Error);
    c.xi[el("p")] = {};
    c.point[el("*")] = el("q");
    CHECK_THROWS_AS(c.validate(), Error);
}
