#include "openpath/nominal.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "openpath/trace.hpp"

namespace openpath {

std::string atom_name(Atom a) { return "a" + std::to_string(a); }

Perm Perm::identity(int pool) {
    if (pool < 0) throw Error("negative pool size");
    Perm p;
    p.image.resize(pool);
    std::iota(p.image.begin(), p.image.end(), 1);
    return p;
}

Perm Perm::swap(int pool, Atom a, Atom b) {
    Perm p = identity(pool);
    if (a < 1 || a > pool || b < 1 || b > pool) throw Error("swap: atom outside the pool");
    std::swap(p.image[a - 1], p.image[b - 1]);
    return p;
}

Atom Perm::operator()(Atom a) const {
    if (a < 1 || a > pool()) throw Error("atom " + atom_name(a) + " is outside the pool of size " + std::to_string(pool()));
    return image[a - 1];
}

Perm Perm::inverse() const {
    Perm p = *this;
    for (int a = 1; a <= pool(); ++a) p.image[image[a - 1] - 1] = a;
    return p;
}

Perm Perm::after(const Perm& other) const {
    if (other.pool() != pool()) throw Error("composing permutations of different pools");
    Perm p = other;
    for (auto& a : p.image) a = (*this)(a);
    return p;
}

std::vector<Perm> all_perms(int pool) {
    std::vector<Perm> out;
    Perm p = Perm::identity(pool);
    do out.push_back(p);
    while (std::next_permutation(p.image.begin(), p.image.end()));
    return out;
}

namespace {

void check_pool(Atom a, int pool) {
    if (a < 1 || a > pool) throw Error("atom " + atom_name(a) + " is outside the pool of size " + std::to_string(pool));
}

void check_injective(const std::vector<Atom>& atoms, int pool, const std::string& what) {
    for (Atom a : atoms) check_pool(a, pool);
    if (std::set<Atom>(atoms.begin(), atoms.end()).size() != atoms.size())
        throw Error(what + ": atoms must be distinct");
}

std::string end_string(WordEnd e, const Glyphs& g) {
    switch (e) {
    case WordEnd::Tick: return g.tick();
    case WordEnd::Unit: return g.unit();
    case WordEnd::None: return {};
    }
    return {};
}

std::string subscript(int n) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string out;
    for (char c : std::to_string(n)) out += digits[c - '0'];
    return out;
}

std::string join_words(const std::vector<std::string>& parts, WordEnd end, const Glyphs& g) {
    std::vector<std::string> all = parts;
    if (end != WordEnd::None) all.push_back(end_string(end, g));
    if (all.empty()) return g.epsilon();
    std::string out;
    for (std::size_t i = 0; i < all.size(); ++i) out += (i ? " " : "") + all[i];
    return out;
}

// Every injective tuple of the given length over 1..pool, lexicographically.
std::vector<std::vector<Atom>> injective_tuples(int pool, int length) {
    std::vector<std::vector<Atom>> out;
    std::vector<Atom> cur;
    std::vector<bool> used(pool + 1, false);
    std::function<void()> go = [&]() {
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            return;
        }
        for (Atom a = 1; a <= pool; ++a) {
            if (used[a]) continue;
            used[a] = true;
            cur.push_back(a);
            go();
            cur.pop_back();
            used[a] = false;
        }
    };
    go();
    return out;
}

// A permutation sending from[i] to to[i]; the remaining atoms are matched in
// increasing order.
Perm extend_to_perm(const std::vector<Atom>& from, const std::vector<Atom>& to, int pool) {
    Perm p = Perm::identity(pool);
    std::vector<bool> src(pool + 1, false), dst(pool + 1, false);
    for (std::size_t i = 0; i < from.size(); ++i) {
        p.image[from[i] - 1] = to[i];
        src[from[i]] = true;
        dst[to[i]] = true;
    }
    std::vector<Atom> rest_src, rest_dst;
    for (Atom a = 1; a <= pool; ++a) {
        if (!src[a]) rest_src.push_back(a);
        if (!dst[a]) rest_dst.push_back(a);
    }
    for (std::size_t i = 0; i < rest_src.size(); ++i) p.image[rest_src[i] - 1] = rest_dst[i];
    return p;
}

std::vector<NomTerm> canonical_set(const std::vector<NomTerm>& ts, int pool) {
    std::vector<NomTerm> out;
    for (const auto& t : ts) out.push_back(alpha_canonical(t, pool));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Atom parse_atom(const std::string& name) {
    if (name.size() < 2 || name[0] != 'a') throw Error("'" + name + "' is not an atom");
    try {
        return std::stoi(name.substr(1));
    } catch (const std::exception&) {
        throw Error("'" + name + "' is not an atom");
    }
}

}  // namespace

AtomSet support(const BarString& w) {
    AtomSet bound, out;
    for (const auto& l : w.letters) {
        if (l.kind == Letter::Kind::Bar)
            bound.insert(l.atom);
        else if (!bound.count(l.atom))
            out.insert(l.atom);
    }
    return out;
}

BarString apply_perm(const Perm& pi, const BarString& w) {
    BarString out = w;
    for (auto& a : out.context) a = pi(a);
    for (auto& l : out.letters) l.atom = pi(l.atom);
    return out;
}

CanonicalWord alpha_canonical(const BarString& w) {
    CanonicalWord out;
    out.end = w.end;
    std::vector<Atom> binders;
    auto bind = [&](Atom a) {
        binders.push_back(a);
        out.letters.push_back({CanonLetter::Kind::Bar, 0});
    };
    for (Atom a : w.context) bind(a);
    for (const auto& l : w.letters) {
        if (l.kind == Letter::Kind::Bar) {
            bind(l.atom);
            continue;
        }
        const auto it = std::find(binders.rbegin(), binders.rend(), l.atom);
        if (it == binders.rend())
            out.letters.push_back({CanonLetter::Kind::Free, l.atom});
        else
            out.letters.push_back({CanonLetter::Kind::Bound, static_cast<int>(it - binders.rbegin()) + 1});
    }
    return out;
}

bool alpha_equivalent(const BarString& a, const BarString& b) { return alpha_canonical(a) == alpha_canonical(b); }

CanonicalWord apply_perm(const Perm& pi, const CanonicalWord& w) {
    CanonicalWord out = w;
    for (auto& l : out.letters)
        if (l.kind == CanonLetter::Kind::Free) l.value = pi(l.value);
    return out;
}

std::string to_string(const BarString& w, const Glyphs& g) {
    std::vector<std::string> parts;
    for (const auto& l : w.letters) parts.push_back((l.kind == Letter::Kind::Bar ? "|" : "") + atom_name(l.atom));
    std::string body = join_words(parts, w.end, g);
    if (w.context.empty()) return body;
    std::string ctx;
    for (std::size_t i = 0; i < w.context.size(); ++i) ctx += (i ? " " : "") + atom_name(w.context[i]);
    return ctx + (g.ascii ? " |- " : " ⊢ ") + body;
}

std::string to_string(const CanonicalWord& w, const Glyphs& g) {
    std::vector<std::string> parts;
    for (const auto& l : w.letters) {
        switch (l.kind) {
        case CanonLetter::Kind::Bar: parts.push_back(g.ascii ? "<.>" : "⟨·⟩"); break;
        case CanonLetter::Kind::Bound:
            parts.push_back("bound" + (g.ascii ? std::to_string(l.value) : subscript(l.value)));
            break;
        case CanonLetter::Kind::Free: parts.push_back(atom_name(l.value)); break;
        }
    }
    return join_words(parts, w.end, g);
}

std::string to_string(const StrongElem& e) {
    if (e.atoms.empty()) return e.label;
    std::string out = e.label + "(";
    for (std::size_t i = 0; i < e.atoms.size(); ++i) out += (i ? "," : "") + atom_name(e.atoms[i]);
    return out + ")";
}

AtomSet support(const StrongElem& e) { return AtomSet(e.atoms.begin(), e.atoms.end()); }

StrongElem apply_perm(const Perm& pi, const StrongElem& e) {
    StrongElem out = e;
    for (auto& a : out.atoms) a = pi(a);
    return out;
}

AtomSet support(const NomTerm& t) {
    switch (t.kind) {
    case NomTerm::Kind::Ok: return {};
    case NomTerm::Kind::Read: {
        AtomSet s = support(t.succ);
        s.insert(t.atom);
        return s;
    }
    case NomTerm::Kind::Bar: {
        AtomSet s = support(t.succ);
        s.erase(t.atom);
        return s;
    }
    }
    return {};
}

NomTerm alpha_canonical(const NomTerm& t, int pool) {
    if (t.kind != NomTerm::Kind::Bar) return t;
    const AtomSet s = support(t);
    Atom d = 1;
    while (d <= pool && s.count(d)) ++d;
    if (d > pool) throw Error("no atom left in the pool to bind in " + to_string(t));
    check_pool(t.atom, pool);
    NomTerm out = t;
    out.atom = d;
    out.succ = apply_perm(Perm::swap(pool, t.atom, d), t.succ);
    return out;
}

NomTerm apply_perm(const Perm& pi, const NomTerm& t) {
    NomTerm out = t;
    if (t.kind != NomTerm::Kind::Ok) out.atom = pi(t.atom);
    out.succ = apply_perm(pi, t.succ);
    return alpha_canonical(out, pi.pool());
}

std::string to_string(const NomTerm& t, const Glyphs& g) {
    switch (t.kind) {
    case NomTerm::Kind::Ok: return g.tick();
    case NomTerm::Kind::Bar:
        return (g.ascii ? "<" : "⟨") + atom_name(t.atom) + (g.ascii ? ">" : "⟩") + to_string(t.succ);
    case NomTerm::Kind::Read: return atom_name(t.atom) + " " + to_string(t.succ);
    }
    return {};
}

NomBehaviour extend_equivariant(const NomBehaviour& reps, int pool) {
    std::set<std::pair<std::string, std::size_t>> orbits;
    NomBehaviour out;
    for (const auto& [rep, values] : reps) {
        check_injective(rep.atoms, pool, to_string(rep));
        if (!orbits.insert({rep.label, rep.atoms.size()}).second)
            throw Error("two representatives for the orbit of " + to_string(rep));
        const AtomSet supp = support(rep);
        for (const auto& t : values) {
            for (Atom a : support(t))
                if (!supp.count(a))
                    throw Error("value " + to_string(t) + " of " + to_string(rep) + " uses " + atom_name(a) +
                                " outside the support of its representative");
            check_injective(t.succ.atoms, pool, to_string(t.succ));
        }
        const auto canon = canonical_set(values, pool);

        // pi . f(rep) = f(rep) whenever pi fixes rep
        for (const auto& pi : all_perms(pool)) {
            if (!std::all_of(rep.atoms.begin(), rep.atoms.end(), [&](Atom a) { return pi(a) == a; })) continue;
            std::vector<NomTerm> moved;
            for (const auto& t : canon) moved.push_back(apply_perm(pi, t));
            if (canonical_set(moved, pool) != canon)
                throw Error("the values of " + to_string(rep) + " are not fixed by its stabiliser");
        }

        for (const auto& tuple : injective_tuples(pool, static_cast<int>(rep.atoms.size()))) {
            const Perm pi = extend_to_perm(rep.atoms, tuple, pool);
            std::vector<NomTerm> moved;
            for (const auto& t : canon) moved.push_back(apply_perm(pi, t));
            out[StrongElem{rep.label, tuple}] = canonical_set(moved, pool);
        }
    }
    return out;
}

BindingFactorization binding_factorize(const std::map<StrongElem, NomTerm>& f, int pool) {
    BindingFactorization out;
    for (const auto& [x, raw] : f) {
        check_injective(x.atoms, pool, to_string(x));
        if (raw.kind != NomTerm::Kind::Bar) throw Error("binding_factorize: " + to_string(raw) + " is not an abstraction");
        const NomTerm t = alpha_canonical(raw, pool);
        const AtomSet sx = support(x);
        for (Atom a : support(t))
            if (!sx.count(a))
                throw Error("binding_factorize: " + to_string(t) + " uses " + atom_name(a) + " outside the support of " +
                            to_string(x));
        Atom fresh = 1;
        while (fresh <= pool && sx.count(fresh)) ++fresh;
        if (fresh > pool) throw Error("binding_factorize: pool exhausted, no atom is fresh for " + to_string(x));

        StrongElem pair{"#" + x.label, {fresh}};
        pair.atoms.insert(pair.atoms.end(), x.atoms.begin(), x.atoms.end());
        out.target.push_back(pair);
        out.map[x] = NomTerm{NomTerm::Kind::Bar, fresh, pair};
        out.projection[pair] = apply_perm(Perm::swap(pool, t.atom, fresh), t.succ);
    }
    std::sort(out.target.begin(), out.target.end());
    return out;
}

int RnnaPresentation::context_arity() const { return state(init).registers; }

int RnnaPresentation::max_registers() const {
    int m = 0;
    for (const auto& s : states) m = std::max(m, s.registers);
    return m;
}

const RnnaState& RnnaPresentation::state(const std::string& name) const {
    for (const auto& s : states)
        if (s.name == name) return s;
    throw Error("unknown state '" + name + "'");
}

void validate_rnna(const RnnaPresentation& r) {
    if (r.states.empty()) throw Error("automaton has no states");
    std::set<std::string> names;
    for (const auto& s : r.states) {
        if (s.name.empty()) throw Error("empty state name");
        if (!names.insert(s.name).second) throw Error("duplicate state '" + s.name + "'");
        if (s.registers < 0) throw Error("state '" + s.name + "' has a negative register count");
    }
    r.state(r.init);
    for (const auto& rule : r.rules) {
        const int n = r.state(rule.from).registers;
        const std::string where = "rule from '" + rule.from + "'";
        if (rule.kind == RnnaRule::Kind::Ok) continue;
        const int m = r.state(rule.to).registers;
        if (rule.kind == RnnaRule::Kind::Read && (rule.reg < 1 || rule.reg > n))
            throw Error(where + " reads register " + std::to_string(rule.reg) + " of " + std::to_string(n));
        if (static_cast<int>(rule.assign.size()) != m)
            throw Error(where + " assigns " + std::to_string(rule.assign.size()) + " registers, '" + rule.to + "' has " +
                        std::to_string(m));
        std::set<int> seen;
        for (int i : rule.assign) {
            if (i == 0 && rule.kind != RnnaRule::Kind::Bar) throw Error(where + " stores a fresh atom without binding it");
            if (i < 0 || i > n) throw Error(where + " copies register " + std::to_string(i) + " of " + std::to_string(n));
            if (!seen.insert(i).second) throw Error(where + " stores one atom in two registers");
        }
    }
}

Functor rnna_functor(int pool) {
    std::vector<std::string> atoms;
    for (Atom a = 1; a <= pool; ++a) atoms.push_back(atom_name(a));
    return Functor::single(Expr::coprod({Expr::constant({kTick}), Expr::prod({Expr::constant(atoms), Expr::id()}),
                                         Expr::prod({Expr::constant(atoms), Expr::id()})}));
}

std::string context_name(const std::vector<Atom>& ctx) {
    if (ctx.empty()) return "*";
    return to_string(StrongElem{"", ctx});
}

NomBehaviour rnna_behaviour(const RnnaPresentation& r, int pool) {
    validate_rnna(r);
    if (pool <= r.max_registers())
        throw Error("pool of size " + std::to_string(pool) + " is too small: need at least " +
                    std::to_string(r.max_registers() + 1));
    NomBehaviour reps;
    for (const auto& s : r.states) {
        std::vector<Atom> regs(s.registers);
        std::iota(regs.begin(), regs.end(), 1);
        auto& ts = reps[StrongElem{s.name, regs}];
        const Atom fresh = s.registers + 1;
        for (const auto& rule : r.rules) {
            if (rule.from != s.name) continue;
            NomTerm t;
            if (rule.kind == RnnaRule::Kind::Ok) {
                ts.push_back(t);
                continue;
            }
            t.succ.label = rule.to;
            for (int i : rule.assign) t.succ.atoms.push_back(i == 0 ? fresh : regs[i - 1]);
            t.kind = rule.kind == RnnaRule::Kind::Bar ? NomTerm::Kind::Bar : NomTerm::Kind::Read;
            t.atom = rule.kind == RnnaRule::Kind::Bar ? fresh : regs[rule.reg - 1];
            ts.push_back(t);
        }
    }
    return extend_equivariant(reps, pool);
}

Coalgebra rnna_expand(const RnnaPresentation& r, int pool) {
    const NomBehaviour beh = rnna_behaviour(r, pool);
    Coalgebra c;
    c.functor = rnna_functor(pool);
    c.carrier = SortedSet(1);
    for (const auto& [x, ts] : beh) {
        const std::string name = to_string(x);
        c.carrier.per_sort[0].push_back(name);
        auto& out = c.xi[Elem{0, name}];
        for (const auto& t : ts) {
            switch (t.kind) {
            case NomTerm::Kind::Ok: out.push_back(Term::inj(0, Term::constant(kTick))); break;
            case NomTerm::Kind::Bar:
            case NomTerm::Kind::Read:
                out.push_back(Term::inj(t.kind == NomTerm::Kind::Bar ? 1 : 2,
                                        Term::tuple({Term::constant(atom_name(t.atom)), Term::var(0, to_string(t.succ))})));
                break;
            }
        }
        sort_unique(out);
    }
    c.carrier.normalize();
    c.pointing = SortedSet(1);
    for (const auto& ctx : injective_tuples(pool, r.context_arity())) {
        const std::string name = context_name(ctx);
        c.pointing.per_sort[0].push_back(name);
        c.point[Elem{0, name}] = Elem{0, to_string(StrongElem{r.init, ctx})};
    }
    c.pointing.normalize();
    c.validate();
    return c;
}

BarString decode_bar_word(const Term& value) {
    BarString w;
    const Term* t = &value;
    while (true) {
        if (t->kind == Term::Kind::Unit) {
            w.end = WordEnd::Unit;
            return w;
        }
        if (t->kind != Term::Kind::Inj) throw Error("decode_bar_word: unexpected " + to_string(*t));
        if (t->index == 0) {
            w.end = WordEnd::Tick;
            return w;
        }
        const Term& pair = t->args.at(0);
        w.letters.push_back({t->index == 1 ? Letter::Kind::Bar : Letter::Kind::Free, parse_atom(pair.args.at(0).name)});
        t = &pair.args.at(1);
    }
}

std::set<CanonicalWord> bar_trace(const RnnaPresentation& r, int pool, int depth) {
    Coalgebra c = rnna_expand(r, pool);
    // Closures agree across the orbit of contexts, so one context suffices.
    std::vector<Atom> ctx(r.context_arity());
    std::iota(ctx.begin(), ctx.end(), 1);
    const Elem point{0, context_name(ctx)};
    const Elem init = c.point.at(point);
    c.pointing = SortedSet::single({point.name});
    c.point = {{point, init}};

    std::set<CanonicalWord> out;
    for (const auto& v : trace(c, depth).values) {
        BarString w = decode_bar_word(v.values.at(point));
        w.context = ctx;
        out.insert(alpha_canonical(w));
    }
    return out;
}

}  // namespace openpath
