#include "openpath/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace openpath {

std::strong_ordering natural_compare(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ei = i, ej = j;
            while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
            while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
            // strip leading zeros, then compare by length and digits
            std::size_t si = i, sj = j;
            while (si + 1 < ei && a[si] == '0') ++si;
            while (sj + 1 < ej && b[sj] == '0') ++sj;
            if (auto c = (ei - si) <=> (ej - sj); c != 0) return c;
            if (int c = a.compare(si, ei - si, b, sj, ej - sj); c != 0)
                return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
            i = ei;
            j = ej;
            continue;
        }
        if (a[i] != b[j])
            return static_cast<unsigned char>(a[i]) <=> static_cast<unsigned char>(b[j]);
        ++i;
        ++j;
    }
    if (auto c = (a.size() - i) <=> (b.size() - j); c != 0) return c;
    int c = a.compare(b);
    return c == 0 ? std::strong_ordering::equal
                  : (c < 0 ? std::strong_ordering::less : std::strong_ordering::greater);
}

SortSet default_sorts() { return {"*"}; }

SortedSet SortedSet::single(std::vector<std::string> elems) {
    SortedSet s;
    s.per_sort.push_back(std::move(elems));
    return s;
}

std::size_t SortedSet::size() const {
    std::size_t n = 0;
    for (const auto& v : per_sort) n += v.size();
    return n;
}

bool SortedSet::contains(const Elem& e) const {
    if (e.sort < 0 || static_cast<std::size_t>(e.sort) >= per_sort.size()) return false;
    const auto& v = per_sort[e.sort];
    return std::find(v.begin(), v.end(), e.name) != v.end();
}

std::vector<Elem> SortedSet::elems() const {
    std::vector<Elem> out;
    for (std::size_t s = 0; s < per_sort.size(); ++s)
        for (const auto& n : per_sort[s]) out.push_back(Elem{static_cast<int>(s), n});
    return out;
}

void SortedSet::insert(const Elem& e) {
    if (static_cast<std::size_t>(e.sort) >= per_sort.size()) per_sort.resize(e.sort + 1);
    if (!contains(e)) per_sort[e.sort].push_back(e.name);
}

void SortedSet::normalize() {
    for (auto& v : per_sort)
        std::sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) {
            return natural_compare(a, b) < 0;
        });
}

void check_distinct(const SortedSet& s, const std::string& what) {
    for (const auto& v : s.per_sort) {
        std::set<std::string> seen;
        for (const auto& n : v)
            if (!seen.insert(n).second) throw Error(what + ": duplicate element '" + n + "'");
    }
}

Term Term::inj(int i, Term t) {
    Term r{Kind::Inj, i, {}, {}};
    r.args.push_back(std::move(t));
    return r;
}

Term Term::set(std::vector<Term> members) {
    sort_unique(members);
    return Term{Kind::Set, 0, {}, std::move(members)};
}

Elem Term::as_elem() const {
    if (kind != Kind::Var) throw Error("term is not a variable: " + to_string(*this));
    return Elem{index, name};
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.index <=> b.index; c != 0) return c;
    if (auto c = natural_compare(a.name, b.name); c != 0) return c;
    const std::size_t n = std::min(a.args.size(), b.args.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
    return a.args.size() <=> b.args.size();
}

bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.index == b.index && a.name == b.name && a.args == b.args;
}

std::string Glyphs::constant(const std::string& n) const {
    if (ascii && n == kTick) return "ok";
    return n;
}

namespace {

void print(std::ostream& os, const Term& t, const Glyphs& g) {
    auto list = [&](const std::vector<Term>& args) {
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) os << ',';
            print(os, args[i], g);
        }
    };
    switch (t.kind) {
        case Term::Kind::Unit: os << g.unit(); break;
        case Term::Kind::Bot: os << g.bot(); break;
        case Term::Kind::Const: os << g.constant(t.name); break;
        case Term::Kind::Var: os << t.name; break;
        case Term::Kind::Tuple:
            os << '(';
            list(t.args);
            os << ')';
            break;
        case Term::Kind::Inj:
            os << "in" << t.index << '(';
            list(t.args);
            os << ')';
            break;
        case Term::Kind::Sym:
            os << t.name;
            if (!t.args.empty()) {
                os << '(';
                list(t.args);
                os << ')';
            }
            break;
        case Term::Kind::Set:
            os << '{';
            list(t.args);
            os << '}';
            break;
    }
}

}  // namespace

std::string to_string(const Term& t, const Glyphs& g) {
    std::ostringstream os;
    print(os, t, g);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
    print(os, t, Glyphs{});
    return os;
}

void sort_unique(std::vector<Term>& ts) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

std::string to_string(const Elem& e, const SortSet& sorts) {
    if (sorts.size() <= 1) return e.name;
    return sorts.at(e.sort) + ":" + e.name;
}

}  // namespace openpath
