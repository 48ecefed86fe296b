#include "openpath/functor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace openpath {

namespace {

Permutation compose_perm(const Permutation& a, const Permutation& b) {
    // (a . b)(i) = a(b(i))
    Permutation r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Permutation identity_perm(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

}  // namespace

PermGroup::PermGroup(int arity, std::vector<Permutation> generators)
    : arity_(arity), generators_(std::move(generators)) {
    if (arity < 0) throw Error("permutation group: negative arity");
    if (arity > kMaxGroupArity)
        throw Error("permutation group: arity " + std::to_string(arity) + " exceeds cap " +
                    std::to_string(kMaxGroupArity));
    for (const auto& g : generators_) {
        if (static_cast<int>(g.size()) != arity) throw Error("permutation group: generator size mismatch");
        std::vector<bool> seen(arity, false);
        for (int v : g) {
            if (v < 0 || v >= arity || seen[v]) throw Error("permutation group: generator is not a bijection");
            seen[v] = true;
        }
    }
    elements_.assign(1, identity_perm(arity));
    std::set<Permutation> known{elements_[0]};
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        for (const auto& g : generators_) {
            Permutation p = compose_perm(g, elements_[i]);
            if (known.insert(p).second) {
                elements_.push_back(std::move(p));
                if (elements_.size() > kMaxGroupOrder) throw Error("permutation group: order exceeds cap");
            }
        }
    }
}

PermGroup PermGroup::symmetric(int arity) {
    std::vector<Permutation> gens;
    if (arity >= 2) {
        Permutation swap = identity_perm(arity);
        std::swap(swap[0], swap[1]);
        gens.push_back(swap);
        Permutation cycle(arity);
        for (int i = 0; i < arity; ++i) cycle[i] = (i + 1) % arity;
        gens.push_back(cycle);
    }
    return PermGroup(arity, std::move(gens));
}

std::vector<Term> canonical_tuple(const PermGroup& g, const std::vector<Term>& args) {
    if (static_cast<int>(args.size()) != g.arity())
        throw Error("canonical_tuple: arity mismatch (" + std::to_string(args.size()) + " vs " +
                    std::to_string(g.arity()) + ")");
    std::vector<Term> best = args;
    std::vector<Term> cand(args.size());
    for (const auto& p : g.elements()) {
        for (std::size_t i = 0; i < args.size(); ++i) cand[i] = args[p[i]];
        if (cand < best) best = cand;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Expr

Expr Expr::constant(std::vector<std::string> elems) {
    Expr e;
    e.kind = Kind::Const;
    std::sort(elems.begin(), elems.end(),
              [](const std::string& a, const std::string& b) { return natural_compare(a, b) < 0; });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    e.constants = std::move(elems);
    return e;
}

Expr Expr::sort_of(int s) {
    Expr e;
    e.kind = Kind::Sort;
    e.sort = s;
    return e;
}

Expr Expr::prod(std::vector<Expr> factors) {
    Expr e;
    e.kind = Kind::Prod;
    e.children = std::move(factors);
    return e;
}

Expr Expr::coprod(std::vector<Expr> summands) {
    Expr e;
    e.kind = Kind::Coprod;
    e.children = std::move(summands);
    return e;
}

Expr Expr::compose(Expr outer, Expr inner) {
    Expr e;
    e.kind = Kind::Compose;
    e.children = {std::move(outer), std::move(inner)};
    return e;
}

Expr Expr::analytic(AnalyticSig sig) {
    Expr e;
    e.kind = Kind::Analytic;
    e.sig = std::make_shared<const AnalyticSig>(std::move(sig));
    return e;
}

Expr Expr::pf(Expr inner) {
    Expr e;
    e.kind = Kind::Pf;
    e.children = {std::move(inner)};
    return e;
}

Expr Expr::plus1(Expr inner) {
    Expr e;
    e.kind = Kind::Plus1;
    e.children = {std::move(inner)};
    return e;
}

bool Expr::contains_pf() const {
    if (kind == Kind::Pf) return true;
    return std::any_of(children.begin(), children.end(), [](const Expr& c) { return c.contains_pf(); });
}

bool bot_unambiguous(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Sort:
        case Expr::Kind::Plus1: return false;
        case Expr::Kind::Compose: return bot_unambiguous(e.children[0]);
        default: return true;
    }
}

bool Functor::contains_pf() const {
    return std::any_of(exprs.begin(), exprs.end(), [](const Expr& e) { return e.contains_pf(); });
}

namespace {

void validate_expr(const Expr& e, std::size_t sorts) {
    switch (e.kind) {
        case Expr::Kind::Const: break;
        case Expr::Kind::Sort:
            if (e.sort < 0 || static_cast<std::size_t>(e.sort) >= sorts)
                throw Error("functor: dangling sort reference " + std::to_string(e.sort));
            break;
        case Expr::Kind::Prod:
        case Expr::Kind::Coprod:
            for (const auto& c : e.children) validate_expr(c, sorts);
            break;
        case Expr::Kind::Compose:
            if (sorts != 1) throw Error("functor: compose is only supported for a single sort");
            if (e.children.size() != 2) throw Error("functor: compose needs two arguments");
            validate_expr(e.children[0], sorts);
            validate_expr(e.children[1], sorts);
            break;
        case Expr::Kind::Analytic: {
            if (!e.sig) throw Error("functor: analytic node without signature");
            std::set<std::string> names;
            for (const auto& sym : e.sig->symbols) {
                if (!names.insert(sym.name).second)
                    throw Error("functor: duplicate analytic symbol '" + sym.name + "'");
                if (static_cast<int>(sym.slot_sorts.size()) != sym.group.arity())
                    throw Error("functor: symbol '" + sym.name + "' group arity differs from slot count");
                for (int s : sym.slot_sorts)
                    if (s < 0 || static_cast<std::size_t>(s) >= sorts)
                        throw Error("functor: symbol '" + sym.name + "' has a dangling slot sort");
                for (const auto& g : sym.group.generators())
                    for (std::size_t i = 0; i < g.size(); ++i)
                        if (sym.slot_sorts[i] != sym.slot_sorts[g[i]])
                            throw Error("functor: symbol '" + sym.name + "' group does not preserve slot sorts");
            }
            break;
        }
        case Expr::Kind::Pf:
            validate_expr(e.children.at(0), sorts);
            break;
        case Expr::Kind::Plus1:
            if (!bot_unambiguous(e.children.at(0)))
                throw Error("functor: +1 over a variable or another +1 is ambiguous");
            validate_expr(e.children[0], sorts);
            break;
    }
}

}  // namespace

void Functor::validate() const {
    if (sorts.empty()) throw Error("functor: empty sort set");
    std::set<std::string> seen;
    for (const auto& s : sorts)
        if (!seen.insert(s).second) throw Error("functor: duplicate sort '" + s + "'");
    if (exprs.size() != sorts.size()) throw Error("functor: one expression per sort is required");
    for (const auto& e : exprs) validate_expr(e, sorts.size());
}

Functor plus1(const Functor& f) {
    Functor g = f;
    for (auto& e : g.exprs) {
        if (!bot_unambiguous(e))
            throw Error("functor: F + 1 is ambiguous when F is a variable or already has a +1 on top");
        e = Expr::plus1(e);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Evaluation

LeafSets variable_leaves(const SortedSet& x) {
    LeafSets out(x.sort_count());
    for (std::size_t s = 0; s < x.sort_count(); ++s)
        for (const auto& n : x.per_sort[s]) out[s].push_back(Term::var(static_cast<int>(s), n));
    return out;
}

namespace {

constexpr std::size_t kMaxPowersetBase = 20;

// Calls fn on every tuple of the cartesian product of `choices`.
template <class Fn>
void for_each_product(const std::vector<const std::vector<Term>*>& choices, Fn&& fn) {
    for (const auto* c : choices)
        if (c->empty()) return;
    std::vector<std::size_t> idx(choices.size(), 0);
    std::vector<Term> cur(choices.size());
    while (true) {
        for (std::size_t i = 0; i < choices.size(); ++i) cur[i] = (*choices[i])[idx[i]];
        fn(cur);
        std::size_t i = choices.size();
        while (i > 0) {
            --i;
            if (++idx[i] < choices[i]->size()) break;
            idx[i] = 0;
            if (i == 0) return;
        }
        if (choices.empty()) return;
    }
}

}  // namespace

std::vector<Term> eval_expr(const Expr& e, const LeafSets& leaves) {
    std::vector<Term> out;
    switch (e.kind) {
        case Expr::Kind::Const:
            for (const auto& c : e.constants) out.push_back(Term::constant(c));
            break;
        case Expr::Kind::Sort:
            if (static_cast<std::size_t>(e.sort) < leaves.size()) out = leaves[e.sort];
            break;
        case Expr::Kind::Prod: {
            std::vector<std::vector<Term>> parts;
            for (const auto& c : e.children) parts.push_back(eval_expr(c, leaves));
            std::vector<const std::vector<Term>*> ptrs;
            for (const auto& p : parts) ptrs.push_back(&p);
            for_each_product(ptrs, [&](const std::vector<Term>& t) { out.push_back(Term::tuple(t)); });
            break;
        }
        case Expr::Kind::Coprod:
            for (std::size_t i = 0; i < e.children.size(); ++i)
                for (auto& t : eval_expr(e.children[i], leaves)) out.push_back(Term::inj(static_cast<int>(i), t));
            break;
        case Expr::Kind::Compose: {
            LeafSets inner{eval_expr(e.children[1], leaves)};
            out = eval_expr(e.children[0], inner);
            break;
        }
        case Expr::Kind::Analytic:
            for (std::size_t k = 0; k < e.sig->symbols.size(); ++k) {
                const auto& sym = e.sig->symbols[k];
                std::vector<const std::vector<Term>*> ptrs;
                static const std::vector<Term> none;
                for (int s : sym.slot_sorts)
                    ptrs.push_back(static_cast<std::size_t>(s) < leaves.size() ? &leaves[s] : &none);
                for_each_product(ptrs, [&](const std::vector<Term>& t) {
                    out.push_back(Term::sym(static_cast<int>(k), sym.name, canonical_tuple(sym.group, t)));
                });
            }
            break;
        case Expr::Kind::Pf: {
            auto base = eval_expr(e.children[0], leaves);
            if (base.size() > kMaxPowersetBase)
                throw Error("eval: powerset over " + std::to_string(base.size()) + " elements is too large");
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << base.size()); ++mask) {
                std::vector<Term> members;
                for (std::size_t i = 0; i < base.size(); ++i)
                    if (mask >> i & 1) members.push_back(base[i]);
                out.push_back(Term::set(std::move(members)));
            }
            break;
        }
        case Expr::Kind::Plus1:
            out = eval_expr(e.children[0], leaves);
            out.push_back(Term::bot());
            break;
    }
    sort_unique(out);
    return out;
}

std::vector<std::vector<Term>> eval_functor(const Functor& f, const SortedSet& x) {
    const LeafSets leaves = variable_leaves(x);
    std::vector<std::vector<Term>> out;
    for (const auto& e : f.exprs) out.push_back(eval_expr(e, leaves));
    return out;
}

// ---------------------------------------------------------------------------
// Structural maps

namespace {

[[noreturn]] void shape_error(const Expr& e, const Term& t) {
    std::ostringstream os;
    os << "term " << t << " does not match functor " << to_string(e);
    throw Error(os.str());
}

}  // namespace

Term map_leaves(const Expr& e, const Term& t, const LeafFn& fn) {
    switch (e.kind) {
        case Expr::Kind::Const:
            if (t.kind != Term::Kind::Const) shape_error(e, t);
            return t;
        case Expr::Kind::Sort:
            return fn(e.sort, t);
        case Expr::Kind::Prod: {
            if (t.kind != Term::Kind::Tuple || t.args.size() != e.children.size()) shape_error(e, t);
            std::vector<Term> args;
            args.reserve(t.args.size());
            for (std::size_t i = 0; i < t.args.size(); ++i) args.push_back(map_leaves(e.children[i], t.args[i], fn));
            return Term::tuple(std::move(args));
        }
        case Expr::Kind::Coprod:
            if (t.kind != Term::Kind::Inj || t.index < 0 || static_cast<std::size_t>(t.index) >= e.children.size())
                shape_error(e, t);
            return Term::inj(t.index, map_leaves(e.children[t.index], t.args[0], fn));
        case Expr::Kind::Compose: {
            const Expr& inner = e.children[1];
            return map_leaves(e.children[0], t, [&](int, const Term& leaf) { return map_leaves(inner, leaf, fn); });
        }
        case Expr::Kind::Analytic: {
            if (t.kind != Term::Kind::Sym || t.index < 0 ||
                static_cast<std::size_t>(t.index) >= e.sig->symbols.size())
                shape_error(e, t);
            const auto& sym = e.sig->symbols[t.index];
            if (t.args.size() != sym.slot_sorts.size()) shape_error(e, t);
            std::vector<Term> args;
            args.reserve(t.args.size());
            for (std::size_t i = 0; i < t.args.size(); ++i) args.push_back(fn(sym.slot_sorts[i], t.args[i]));
            return Term::sym(t.index, sym.name, canonical_tuple(sym.group, args));
        }
        case Expr::Kind::Pf: {
            if (t.kind != Term::Kind::Set) shape_error(e, t);
            std::vector<Term> members;
            members.reserve(t.args.size());
            for (const auto& m : t.args) members.push_back(map_leaves(e.children[0], m, fn));
            return Term::set(std::move(members));
        }
        case Expr::Kind::Plus1:
            if (t.is_bot()) return t;
            return map_leaves(e.children[0], t, fn);
    }
    shape_error(e, t);
}

namespace {

void visit_leaves(const Expr& e, const Term& t, const LeafVisitor& fn, std::vector<int>& path) {
    switch (e.kind) {
        case Expr::Kind::Const: return;
        case Expr::Kind::Sort: fn(e.sort, t, path); return;
        case Expr::Kind::Prod:
            if (t.kind != Term::Kind::Tuple || t.args.size() != e.children.size()) shape_error(e, t);
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                path.push_back(static_cast<int>(i));
                visit_leaves(e.children[i], t.args[i], fn, path);
                path.pop_back();
            }
            return;
        case Expr::Kind::Coprod:
            if (t.kind != Term::Kind::Inj || static_cast<std::size_t>(t.index) >= e.children.size())
                shape_error(e, t);
            path.push_back(0);
            visit_leaves(e.children[t.index], t.args[0], fn, path);
            path.pop_back();
            return;
        case Expr::Kind::Compose: {
            const Expr& inner = e.children[1];
            visit_leaves(e.children[0], t,
                         [&](int, const Term& leaf, const std::vector<int>& p) {
                             std::vector<int> sub = p;
                             visit_leaves(inner, leaf, fn, sub);
                         },
                         path);
            return;
        }
        case Expr::Kind::Analytic: {
            if (t.kind != Term::Kind::Sym || static_cast<std::size_t>(t.index) >= e.sig->symbols.size())
                shape_error(e, t);
            const auto& sym = e.sig->symbols[t.index];
            if (t.args.size() != sym.slot_sorts.size()) shape_error(e, t);
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                path.push_back(static_cast<int>(i));
                fn(sym.slot_sorts[i], t.args[i], path);
                path.pop_back();
            }
            return;
        }
        case Expr::Kind::Pf:
            if (t.kind != Term::Kind::Set) shape_error(e, t);
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                path.push_back(static_cast<int>(i));
                visit_leaves(e.children[0], t.args[i], fn, path);
                path.pop_back();
            }
            return;
        case Expr::Kind::Plus1:
            if (t.is_bot()) return;
            visit_leaves(e.children[0], t, fn, path);
            return;
    }
}

}  // namespace

void for_each_leaf(const Expr& e, const Term& t, const LeafVisitor& fn) {
    std::vector<int> path;
    visit_leaves(e, t, fn, path);
}

Term fmap(const Expr& e, const ElemMap& f, const Term& t) {
    return map_leaves(e, t, [&](int, const Term& leaf) {
        const Elem x = leaf.as_elem();
        auto it = f.find(x);
        if (it == f.end()) throw Error("fmap: variable '" + x.name + "' is not in the map's domain");
        return Term::var(it->second);
    });
}

Term fmap(const Functor& F, int sort, const ElemMap& f, const Term& t) { return fmap(F.at(sort), f, t); }

bool is_term_of(const Expr& e, const Term& t, const std::function<bool(int, const Term&)>& leaf_ok) {
    switch (e.kind) {
        case Expr::Kind::Const:
            return t.kind == Term::Kind::Const && t.args.empty() &&
                   std::find(e.constants.begin(), e.constants.end(), t.name) != e.constants.end();
        case Expr::Kind::Sort: return leaf_ok(e.sort, t);
        case Expr::Kind::Prod:
            if (t.kind != Term::Kind::Tuple || t.args.size() != e.children.size()) return false;
            for (std::size_t i = 0; i < t.args.size(); ++i)
                if (!is_term_of(e.children[i], t.args[i], leaf_ok)) return false;
            return true;
        case Expr::Kind::Coprod:
            return t.kind == Term::Kind::Inj && t.index >= 0 &&
                   static_cast<std::size_t>(t.index) < e.children.size() && t.args.size() == 1 &&
                   is_term_of(e.children[t.index], t.args[0], leaf_ok);
        case Expr::Kind::Compose: {
            const Expr& inner = e.children[1];
            return is_term_of(e.children[0], t,
                              [&](int, const Term& leaf) { return is_term_of(inner, leaf, leaf_ok); });
        }
        case Expr::Kind::Analytic: {
            if (t.kind != Term::Kind::Sym || t.index < 0 ||
                static_cast<std::size_t>(t.index) >= e.sig->symbols.size())
                return false;
            const auto& sym = e.sig->symbols[t.index];
            if (t.name != sym.name || t.args.size() != sym.slot_sorts.size()) return false;
            for (std::size_t i = 0; i < t.args.size(); ++i)
                if (!leaf_ok(sym.slot_sorts[i], t.args[i])) return false;
            return canonical_tuple(sym.group, t.args) == t.args;
        }
        case Expr::Kind::Pf:
            if (t.kind != Term::Kind::Set) return false;
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                if (i > 0 && !(t.args[i - 1] < t.args[i])) return false;
                if (!is_term_of(e.children[0], t.args[i], leaf_ok)) return false;
            }
            return true;
        case Expr::Kind::Plus1:
            return t.is_bot() || is_term_of(e.children[0], t, leaf_ok);
    }
    return false;
}

bool is_term_of(const Expr& e, const Term& t, const SortedSet& x) {
    return is_term_of(e, t, [&](int s, const Term& leaf) {
        return leaf.kind == Term::Kind::Var && leaf.index == s && x.contains(leaf.as_elem());
    });
}

// ---------------------------------------------------------------------------
// Matching

namespace {

using Cont = std::function<bool(ElemMap&)>;
using LeafMatch = std::function<bool(int, const Term&, const Term&, ElemMap&, const Cont&)>;

bool match_var(int sort, const Term& p, const Term& t, ElemMap& b, const Cont& k) {
    if (p.kind != Term::Kind::Var || t.kind != Term::Kind::Var || t.index != sort) return true;
    const Elem x = p.as_elem();
    const Elem y = t.as_elem();
    auto it = b.find(x);
    if (it != b.end()) return it->second == y ? k(b) : true;
    b.emplace(x, y);
    const bool go = k(b);
    b.erase(x);
    return go;
}

bool match_rec(const Expr& e, const Term& p, const Term& t, ElemMap& b, const Cont& k, const LeafMatch& leaf);

// Matches ps[i..] against ts[i..]; match_one(i, ...) handles a single position.
bool match_seq(std::size_t i, std::size_t n,
               const std::function<bool(std::size_t, ElemMap&, const Cont&)>& match_one, ElemMap& b,
               const Cont& k) {
    if (i == n) return k(b);
    return match_one(i, b, [&](ElemMap& b2) { return match_seq(i + 1, n, match_one, b2, k); });
}

bool match_rec(const Expr& e, const Term& p, const Term& t, ElemMap& b, const Cont& k, const LeafMatch& leaf) {
    switch (e.kind) {
        case Expr::Kind::Const: return p == t ? k(b) : true;
        case Expr::Kind::Sort: return leaf(e.sort, p, t, b, k);
        case Expr::Kind::Prod:
            if (p.kind != Term::Kind::Tuple || t.kind != Term::Kind::Tuple || p.args.size() != e.children.size() ||
                t.args.size() != e.children.size())
                return true;
            return match_seq(
                0, p.args.size(),
                [&](std::size_t i, ElemMap& b2, const Cont& k2) {
                    return match_rec(e.children[i], p.args[i], t.args[i], b2, k2, leaf);
                },
                b, k);
        case Expr::Kind::Coprod:
            if (p.kind != Term::Kind::Inj || t.kind != Term::Kind::Inj || p.index != t.index ||
                static_cast<std::size_t>(p.index) >= e.children.size())
                return true;
            return match_rec(e.children[p.index], p.args[0], t.args[0], b, k, leaf);
        case Expr::Kind::Compose: {
            const Expr& inner = e.children[1];
            return match_rec(e.children[0], p, t, b, k,
                             [&](int, const Term& pl, const Term& tl, ElemMap& b2, const Cont& k2) {
                                 return match_rec(inner, pl, tl, b2, k2, leaf);
                             });
        }
        case Expr::Kind::Analytic: {
            if (p.kind != Term::Kind::Sym || t.kind != Term::Kind::Sym || p.index != t.index ||
                p.args.size() != t.args.size() || static_cast<std::size_t>(p.index) >= e.sig->symbols.size())
                return true;
            const auto& sym = e.sig->symbols[p.index];
            // fmap(b)(p) is the canonical form of b(p); it equals t iff
            // b(p) = pi.t for some group element pi.
            std::vector<Term> permuted(t.args.size());
            for (const auto& perm : sym.group.elements()) {
                for (std::size_t i = 0; i < t.args.size(); ++i) permuted[i] = t.args[perm[i]];
                const bool go = match_seq(
                    0, p.args.size(),
                    [&](std::size_t i, ElemMap& b2, const Cont& k2) {
                        return leaf(sym.slot_sorts[i], p.args[i], permuted[i], b2, k2);
                    },
                    b, k);
                if (!go) return false;
            }
            return true;
        }
        case Expr::Kind::Pf: throw Error("match: powerset nodes are not supported");
        case Expr::Kind::Plus1:
            if (p.is_bot() || t.is_bot()) return p.is_bot() && t.is_bot() ? k(b) : true;
            return match_rec(e.children[0], p, t, b, k, leaf);
    }
    return true;
}

}  // namespace

bool match_term(const Expr& e, const Term& pattern, const Term& target, const ElemMap& binding,
                const std::function<bool(const ElemMap&)>& visit) {
    std::set<ElemMap> seen;
    ElemMap b = binding;
    return match_rec(e, pattern, target, b,
                     [&](ElemMap& found) {
                         if (!seen.insert(found).second) return true;
                         return visit(found);
                     },
                     match_var);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_expr(std::ostream& os, const Expr& e, const SortSet& sorts) {
    auto list = [&](const char* head) {
        os << head << '(';
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            if (i) os << ", ";
            print_expr(os, e.children[i], sorts);
        }
        os << ')';
    };
    switch (e.kind) {
        case Expr::Kind::Const:
            os << "const(";
            for (std::size_t i = 0; i < e.constants.size(); ++i) os << (i ? " " : "") << e.constants[i];
            os << ')';
            return;
        case Expr::Kind::Sort:
            if (sorts.size() <= 1 && e.sort == 0)
                os << "id";
            else
                os << "sort(" << sorts.at(e.sort) << ')';
            return;
        case Expr::Kind::Prod: list("prod"); return;
        case Expr::Kind::Coprod: list("coprod"); return;
        case Expr::Kind::Compose: list("compose"); return;
        case Expr::Kind::Pf: list("pf"); return;
        case Expr::Kind::Plus1: list("plus1"); return;
        case Expr::Kind::Analytic: {
            os << "analytic{";
            for (std::size_t k = 0; k < e.sig->symbols.size(); ++k) {
                const auto& sym = e.sig->symbols[k];
                os << (k ? "; " : " ") << sym.name << '/' << sym.slot_sorts.size();
                const bool sorted = std::any_of(sym.slot_sorts.begin(), sym.slot_sorts.end(),
                                                [](int s) { return s != 0; }) ||
                                    sorts.size() > 1;
                if (sorted && !sym.slot_sorts.empty()) {
                    os << ':';
                    for (std::size_t i = 0; i < sym.slot_sorts.size(); ++i)
                        os << (i ? "," : "") << sorts.at(sym.slot_sorts[i]);
                }
                for (const auto& g : sym.group.generators()) {
                    // cycle notation, 1-based, fixed points omitted
                    os << " [";
                    std::vector<bool> done(g.size(), false);
                    bool any = false;
                    for (std::size_t i = 0; i < g.size(); ++i) {
                        if (done[i] || g[i] == static_cast<int>(i)) continue;
                        any = true;
                        os << '(';
                        std::size_t j = i;
                        bool first = true;
                        while (!done[j]) {
                            done[j] = true;
                            os << (first ? "" : " ") << j + 1;
                            first = false;
                            j = g[j];
                        }
                        os << ')';
                    }
                    if (!any) os << "()";
                    os << ']';
                }
            }
            os << " }";
            return;
        }
    }
}

}  // namespace

std::string to_string(const Expr& e, const SortSet& sorts) {
    std::ostringstream os;
    print_expr(os, e, sorts);
    return os.str();
}

std::string to_string(const Functor& f) {
    if (f.sorts.size() <= 1 && f.exprs.size() == 1) return to_string(f.exprs[0], f.sorts);
    std::ostringstream os;
    for (std::size_t s = 0; s < f.exprs.size(); ++s) {
        if (s) os << '\n';
        os << f.sorts.at(s) << ": " << to_string(f.exprs[s], f.sorts);
    }
    return os.str();
}

}  // namespace openpath
