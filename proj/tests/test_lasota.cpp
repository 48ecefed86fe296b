#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "openpath/lasota.hpp"
#include "openpath/openmap.hpp"
#include "openpath/precise.hpp"

using namespace openpath;
using namespace fixtures;

namespace {

struct Arrow {
    std::string name, dom, cod;
};

struct Law {
    std::string g, f, h;  // g o f = h
};

FiniteCategory make_category(std::vector<std::string> objects, const std::vector<Arrow>& arrows,
                             const std::vector<Law>& laws) {
    FiniteCategory P;
    P.objects = std::move(objects);
    for (const auto& o : P.objects) P.morphisms.push_back({"id" + o, P.object_index(o), P.object_index(o)});
    for (const auto& a : arrows) P.morphisms.push_back({a.name, P.object_index(a.dom), P.object_index(a.cod)});
    for (std::size_t o = 0; o < P.objects.size(); ++o) P.identities.push_back(static_cast<int>(o));
    for (std::size_t f = 0; f < P.morphisms.size(); ++f) {
        const auto& m = P.morphisms[f];
        P.comp[{P.identities[m.cod], static_cast<int>(f)}] = static_cast<int>(f);
        P.comp[{static_cast<int>(f), P.identities[m.dom]}] = static_cast<int>(f);
    }
    for (const auto& l : laws) P.comp[{P.morphism_index(l.g), P.morphism_index(l.f)}] = P.morphism_index(l.h);
    return P;
}

FiniteCategory arrow_category() { return make_category({"0", "1"}, {{"m", "0", "1"}}, {}); }

// 0 -a-> 1 with two arrows b, c: 1 -> 2 and their composites
FiniteCategory fork_category() {
    return make_category({"0", "1", "2"}, {{"a", "0", "1"}, {"b", "1", "2"}, {"c", "1", "2"}, {"ba", "0", "2"}, {"ca", "0", "2"}},
                         {{"b", "a", "ba"}, {"c", "a", "ca"}});
}

FiniteCategory chain_category() {
    return make_category({"0", "1", "2"}, {{"a", "0", "1"}, {"b", "1", "2"}, {"ba", "0", "2"}}, {{"b", "a", "ba"}});
}

}  // namespace

TEST_CASE("validate_category") {
    CHECK_FALSE(category_violation(make_category({"*"}, {}, {})));
    CHECK_FALSE(category_violation(chain_category()));
    CHECK_FALSE(category_violation(fork_category()));

    // a missing composite
    auto missing = make_category({"0", "1", "2"}, {{"a", "0", "1"}, {"b", "1", "2"}}, {});
    REQUIRE(category_violation(missing));
    CHECK(category_violation(missing)->find("missing") != std::string::npos);

    // monoid {id, t, u} with t t = u, t u = id but u t = t: not associative
    auto bad = make_category({"*"}, {{"t", "*", "*"}, {"u", "*", "*"}},
                             {{"t", "t", "u"}, {"t", "u", "id*"}, {"u", "t", "t"}, {"u", "u", "u"}});
    const auto v = category_violation(bad);
    REQUIRE(v);
    CHECK(v->find("associativity") != std::string::npos);
    CHECK_THROWS_AS(validate_category(bad), Error);
    CHECK_THROWS_AS(lasota_functor(bad), Error);

    // the cyclic group of order 2 is fine
    CHECK_FALSE(category_violation(make_category({"*"}, {{"t", "*", "*"}}, {{"t", "t", "id*"}})));
}

TEST_CASE("lasota_functor and pointing") {
    const auto one = lasota_functor(make_category({"*"}, {}, {}));
    CHECK(one.sort_count() == 1);
    CHECK(eval_functor(one, set_of(2, "x"))[0].size() == 2);

    const auto P = arrow_category();
    const auto F = lasota_functor(P);
    CHECK(F.sorts == std::vector<std::string>{"0", "1"});
    CHECK(to_string(F.at(0), F.sorts) == "coprod(prod(const(id0), sort(0)), prod(const(m), sort(1)))");
    // no morphism 1 -> 0: a single summand
    CHECK(to_string(F.at(1), F.sorts) == "coprod(prod(const(id1), sort(1)))");

    const auto I = lasota_pointing(P);
    CHECK(I.per_sort[0].size() == 1);
    CHECK(I.per_sort[1].empty());
    CHECK(lasota_pointing(make_category({"*"}, {}, {})) == SortedSet::single({"*"}));
}

TEST_CASE("paths are composable sequences") {
    const auto r = paths_bijection_check(arrow_category(), 2);
    CHECK(r.ok());
    CHECK(r.paths == std::vector<std::size_t>{1, 2, 3});
    CHECK(r.sequences == r.paths);

    const auto one = paths_bijection_check(make_category({"*"}, {}, {}), 3);
    CHECK(one.ok());
    CHECK(one.paths == std::vector<std::size_t>{1, 1, 1, 1});

    for (const auto& P : {chain_category(), fork_category()}) {
        const auto rep = paths_bijection_check(P, 3);
        CHECK(rep.ok());
        CHECK(rep.paths == rep.sequences);
        CHECK(rep.precise_maps_checked > 0);
        for (const auto& m : rep.mismatches) MESSAGE(m);
    }
    // 0 -> 1 -> 2 with composite: 3 first steps from 0
    CHECK(paths_bijection_check(chain_category(), 1).paths == std::vector<std::size_t>{1, 3});
    CHECK(paths_bijection_check(fork_category(), 1).paths == std::vector<std::size_t>{1, 4});

    auto z2 = make_category({"*"}, {{"t", "*", "*"}}, {{"t", "t", "id*"}});
    CHECK(paths_bijection_check(z2, 3).paths == std::vector<std::size_t>{1, 2, 4, 8});
}

TEST_CASE("a map into two occupied sorts is not precise") {
    const auto P = arrow_category();
    const auto F = lasota_functor(P);
    SortedSet y(2);
    y.per_sort[0] = {"y"};
    y.per_sort[1] = {"z"};
    const SortedSet x = characteristic(P, 0);
    int maps = 0;
    for_each_term_map(F, x, y, [&](const TermMap& f) {
        CHECK_FALSE(is_precise(F, x, y, f));
        CHECK(is_precise_oracle(F, x, y, f, 3) == false);
        ++maps;
        return true;
    });
    CHECK(maps == 2);
    SortedSet chi(2);
    chi.per_sort[1] = {"z"};
    for_each_term_map(F, x, chi, [&](const TermMap& f) {
        CHECK(is_precise(F, x, chi, f));
        CHECK(is_precise_oracle(F, x, chi, f, 2));
        return true;
    });
}

TEST_CASE("order, units and choices sortwise") {
    const auto P = arrow_category();
    const auto F = lasota_functor(P);
    SortedSet x(2), y(2);
    x.per_sort = {{"x1"}, {"x2"}};
    y.per_sort = {{"y1", "y2"}, {"y3"}};
    const auto fy = eval_functor(F, y);
    // units recover the join
    BehaviourMap f{{Elem{0, "x1"}, fy[0]}, {Elem{1, "x2"}, fy[1]}};
    BehaviourMap join{{Elem{0, "x1"}, {}}, {Elem{1, "x2"}, {}}};
    std::size_t count = 0;
    decompose_into_units(f, [&](const PartialTermMap& u) {
        ++count;
        for (const auto& [a, t] : u)
            if (t) join[a].push_back(*t);
        return true;
    });
    for (auto& [a, ts] : join) sort_unique(ts);
    CHECK(join == f);
    CHECK(count == (fy[0].size() + 1) * (fy[1].size() + 1));

    // choices lift along every sort-preserving h
    SortedSet z(2);
    z.per_sort = {{"z1"}, {"z2"}};
    for_each_elem_map(y, z, [&](const ElemMap& h) {
        PartialTermMap target;
        for (const auto& [a, ts] : f) target[a] = fmap(F, a.sort, h, ts.back());
        const auto lifted = lift_choice(F, f, target, h);
        for (const auto& [a, t] : target) CHECK(fmap(F, a.sort, h, *lifted.at(a)) == *t);
        return true;
    });
}

TEST_CASE("theorem harness over Lasota systems") {
    for (const auto& P : {arrow_category(), chain_category(), fork_category()}) {
        const auto F = lasota_functor(P);
        GenSpec spec{F, lasota_pointing(P), std::vector<int>(P.objects.size(), 3), 0.3, 11, true};
        const auto rep = verify_theorems(spec, 60);
        CHECK(rep.ok());
        if (!rep.ok()) MESSAGE(rep.text());
        CHECK(rep.strict_count > 0);
        CHECK(rep.strict_count < 60);
    }
}
