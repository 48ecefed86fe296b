#include "openpath/text.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

namespace openpath {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") + ": " +
                           message
                     : message),
      line_(line),
      column_(column) {}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// Lines and sections

struct Line {
    int no = 0;
    std::string text;
};

struct Section {
    std::string name;
    int index = -1;
    int line = 0;
    std::vector<Line> body;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Content lines; blank lines and lines starting with '#' are dropped.
std::vector<Line> content_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string s;
    int no = 0;
    while (std::getline(in, s)) {
        ++no;
        const std::string t = trim(s);
        if (t.empty() || t[0] == '#') continue;
        out.push_back({no, s});
    }
    return out;
}

struct Sections {
    std::vector<Line> preamble;
    std::vector<Section> list;

    const Section* find(const std::string& name) const {
        for (const auto& s : list)
            if (s.name == name) return &s;
        return nullptr;
    }
    const Section& need(const std::string& name) const {
        if (auto s = find(name)) return *s;
        throw ParseError(0, 0, "missing section [" + name + "]");
    }
    bool has(const std::string& name) const { return find(name) != nullptr; }
};

Sections split_sections(const std::string& text) {
    static const std::regex header(R"(^\[([a-z]+)(?: ([0-9]+))?\]$)");
    Sections out;
    for (const auto& l : content_lines(text)) {
        std::smatch m;
        const std::string t = trim(l.text);
        if (std::regex_match(t, m, header)) {
            Section s;
            s.name = m[1];
            s.index = m[2].matched ? std::stoi(m[2]) : -1;
            s.line = l.no;
            for (const auto& prev : out.list)
                if (prev.name == s.name && prev.index == s.index)
                    throw ParseError(l.no, 1, "duplicate section " + t);
            out.list.push_back(std::move(s));
        } else if (out.list.empty()) {
            out.preamble.push_back(l);
        } else {
            out.list.back().body.push_back(l);
        }
    }
    return out;
}

void check_known(const Sections& s, const std::vector<std::string>& known) {
    if (!s.preamble.empty()) throw ParseError(s.preamble[0].no, 1, "text outside any section");
    for (const auto& sec : s.list)
        if (std::find(known.begin(), known.end(), sec.name) == known.end())
            throw ParseError(sec.line, 1, "unexpected section [" + sec.name + "]");
}

// ---------------------------------------------------------------------------
// Tokens

const std::string kPunct = "(){}[],;/:";

struct Tok {
    std::string text;
    int col = 0;
    bool punct = false;
};

std::vector<Tok> tokenize(const std::string& s, int col0) {
    std::vector<Tok> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (kPunct.find(c) != std::string::npos) {
            out.push_back({std::string(1, c), col0 + static_cast<int>(i), true});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r' && kPunct.find(s[j]) == std::string::npos)
            ++j;
        out.push_back({s.substr(i, j - i), col0 + static_cast<int>(i), false});
        i = j;
    }
    return out;
}

class Cursor {
public:
    Cursor(std::vector<Tok> toks, int line, int end_col) : toks_(std::move(toks)), line_(line), end_col_(end_col) {}

    bool done() const { return pos_ >= toks_.size(); }
    const Tok& peek() const {
        static const Tok end{"", 0, true};
        return done() ? end : toks_[pos_];
    }
    bool at(const std::string& p) const { return !done() && toks_[pos_].punct && toks_[pos_].text == p; }
    Tok next() {
        if (done()) fail("unexpected end of input");
        return toks_[pos_++];
    }
    void expect(const std::string& p) {
        if (!at(p)) fail("expected '" + p + "'" + (done() ? "" : " before '" + peek().text + "'"));
        ++pos_;
    }
    std::string name(const std::string& what) {
        if (done() || peek().punct) fail("expected " + what);
        return toks_[pos_++].text;
    }
    int number(const std::string& what) {
        const Tok t = next();
        if (t.punct || t.text.find_first_not_of("0123456789") != std::string::npos) fail_at(t.col, "expected " + what);
        return std::stoi(t.text);
    }
    void finish() {
        if (!done()) fail("unexpected '" + peek().text + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(done() ? end_col_ : toks_[pos_].col, msg); }
    [[noreturn]] void fail_at(int col, const std::string& msg) const { throw ParseError(line_, col, msg); }
    int line() const { return line_; }

private:
    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
    int line_;
    int end_col_;
};

Cursor cursor(const std::string& s, int line, int col0 = 1) {
    return Cursor(tokenize(s, col0), line, col0 + static_cast<int>(s.size()));
}

bool is_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c == ' ' || c == '\t' || kPunct.find(c) != std::string::npos) return false;
    return s.find("->") == std::string::npos;
}

// Splits "lhs -> rhs"; the column of rhs is returned.
std::pair<std::string, std::pair<std::string, int>> split_arrow(const Line& l) {
    const auto p = l.text.find("->");
    if (p == std::string::npos) throw ParseError(l.no, 1, "expected 'x -> y'");
    return {trim(l.text.substr(0, p)), {l.text.substr(p + 2), static_cast<int>(p) + 3}};
}

// ---------------------------------------------------------------------------
// Functor expressions

int sort_index(const SortSet& sorts, const std::string& name, Cursor& c, int col) {
    for (std::size_t i = 0; i < sorts.size(); ++i)
        if (sorts[i] == name) return static_cast<int>(i);
    c.fail_at(col, "unknown sort '" + name + "'");
}

Expr parse_expr_at(Cursor& c, const SortSet& sorts) {
    const Tok head = c.next();
    if (head.punct) c.fail_at(head.col, "expected a functor expression");
    const std::string& h = head.text;
    if (h == "id") {
        if (sorts.size() > 1) c.fail_at(head.col, "'id' is ambiguous with several sorts; use sort(S)");
        return Expr::id();
    }
    if (h == "sort") {
        c.expect("(");
        const int col = c.peek().col;
        const int s = sort_index(sorts, c.name("a sort name"), c, col);
        c.expect(")");
        return Expr::sort_of(s);
    }
    if (h == "const") {
        c.expect("(");
        std::vector<std::string> names;
        while (!c.at(")")) {
            if (c.at(",")) {
                c.next();
                continue;
            }
            const int col = c.peek().col;
            std::string n = c.name("a constant");
            if (n == "ok") n = kTick;
            if (std::find(names.begin(), names.end(), n) != names.end()) c.fail_at(col, "duplicate constant '" + n + "'");
            names.push_back(n);
        }
        c.expect(")");
        return Expr::constant(names);
    }
    if (h == "prod" || h == "coprod" || h == "compose" || h == "pf" || h == "plus1") {
        c.expect("(");
        std::vector<Expr> args;
        if (!c.at(")")) {
            args.push_back(parse_expr_at(c, sorts));
            while (c.at(",")) {
                c.next();
                args.push_back(parse_expr_at(c, sorts));
            }
        }
        c.expect(")");
        if (h == "prod") return Expr::prod(std::move(args));
        if (h == "coprod") return Expr::coprod(std::move(args));
        if (h == "compose") {
            if (args.size() != 2) c.fail_at(head.col, "compose takes two arguments");
            return Expr::compose(args[0], args[1]);
        }
        if (args.size() != 1) c.fail_at(head.col, h + " takes one argument");
        return h == "pf" ? Expr::pf(args[0]) : Expr::plus1(args[0]);
    }
    if (h == "analytic") {
        c.expect("{");
        AnalyticSig sig;
        while (!c.at("}")) {
            if (!sig.symbols.empty()) c.expect(";");
            const std::string name = c.name("a symbol name");
            c.expect("/");
            const int arity = c.number("an arity");
            std::vector<int> slots(arity, 0);
            if (c.at(":")) {
                c.next();
                for (int i = 0; i < arity; ++i) {
                    if (i) c.expect(",");
                    const int col = c.peek().col;
                    slots[i] = sort_index(sorts, c.name("a sort name"), c, col);
                }
            }
            std::vector<Permutation> gens;
            while (c.at("[")) {
                const int col = c.peek().col;
                c.next();
                Permutation g(arity);
                for (int i = 0; i < arity; ++i) g[i] = i;
                std::vector<bool> seen(arity, false);
                while (c.at("(")) {
                    c.next();
                    std::vector<int> cycle;
                    while (!c.at(")")) {
                        const int k = c.number("a position") - 1;
                        if (k < 0 || k >= arity || seen[k]) c.fail_at(col, "bad cycle for " + name);
                        seen[k] = true;
                        cycle.push_back(k);
                    }
                    c.expect(")");
                    for (std::size_t i = 0; i < cycle.size(); ++i) g[cycle[i]] = cycle[(i + 1) % cycle.size()];
                }
                c.expect("]");
                gens.push_back(g);
            }
            try {
                sig.symbols.push_back({name, slots, PermGroup(arity, gens)});
            } catch (const Error& e) {
                c.fail(e.what());
            }
        }
        c.expect("}");
        return Expr::analytic(std::move(sig));
    }
    c.fail_at(head.col, "unknown functor constructor '" + h + "'");
}

Expr parse_expr_line(const std::string& text, const SortSet& sorts, int line, int col0) {
    Cursor c = cursor(text, line, col0);
    Expr e = parse_expr_at(c, sorts);
    c.finish();
    return e;
}

// "S: rest" with S a plain name.
std::optional<std::pair<std::string, int>> label_of(const std::string& s) {
    static const std::regex lab(R"(^\s*([^\s(){}\[\],;/:]+)\s*:\s)");
    std::smatch m;
    if (!std::regex_search(s, m, lab)) return std::nullopt;
    return std::make_pair(m[1].str(), static_cast<int>(m[0].length()));
}

Functor functor_from_lines(const std::vector<Line>& lines, SortSet sorts, int header_line) {
    if (lines.empty()) throw ParseError(header_line, 0, "empty functor");
    Functor F;
    const bool labelled = label_of(lines[0].text).has_value();
    if (!labelled) {
        std::string joined;
        for (const auto& l : lines) joined += (joined.empty() ? "" : " ") + trim(l.text);
        if (sorts.empty()) sorts = default_sorts();
        if (sorts.size() != 1) throw ParseError(lines[0].no, 1, "one 'S: expr' line per sort expected");
        F.sorts = sorts;
        F.exprs.push_back(parse_expr_line(joined, sorts, lines[0].no, 1));
    } else {
        std::vector<std::pair<std::string, const Line*>> labelled_lines;
        for (const auto& l : lines) {
            const auto lab = label_of(l.text);
            if (!lab) throw ParseError(l.no, 1, "expected 'S: expr'");
            labelled_lines.push_back({lab->first, &l});
        }
        if (sorts.empty())
            for (const auto& [s, l] : labelled_lines) sorts.push_back(s);
        F.sorts = sorts;
        F.exprs.resize(sorts.size());
        std::vector<bool> done(sorts.size(), false);
        for (const auto& [s, l] : labelled_lines) {
            const auto it = std::find(sorts.begin(), sorts.end(), s);
            if (it == sorts.end()) throw ParseError(l->no, 1, "unknown sort '" + s + "'");
            const auto k = static_cast<std::size_t>(it - sorts.begin());
            if (done[k]) throw ParseError(l->no, 1, "second expression for sort '" + s + "'");
            done[k] = true;
            const int off = label_of(l->text)->second;
            F.exprs[k] = parse_expr_line(l->text.substr(off), sorts, l->no, off + 1);
        }
        for (std::size_t k = 0; k < sorts.size(); ++k)
            if (!done[k]) throw ParseError(header_line, 0, "no expression for sort '" + sorts[k] + "'");
    }
    try {
        F.validate();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(lines[0].no, 0, e.what());
    }
    return F;
}

// ---------------------------------------------------------------------------
// Terms

struct Raw {
    enum class Kind { Name, Tuple, Inj, Sym, Set };
    Kind kind = Kind::Name;
    std::string name;
    int index = 0;
    std::vector<Raw> args;
    int col = 0;
};

std::vector<Raw> parse_raw_list(Cursor& c, const std::string& close);

Raw parse_raw(Cursor& c) {
    const Tok t = c.next();
    Raw r;
    r.col = t.col;
    if (t.punct) {
        if (t.text == "(") {
            r.kind = Raw::Kind::Tuple;
            r.args = parse_raw_list(c, ")");
            return r;
        }
        if (t.text == "{") {
            r.kind = Raw::Kind::Set;
            r.args = parse_raw_list(c, "}");
            return r;
        }
        c.fail_at(t.col, "unexpected '" + t.text + "'");
    }
    r.name = t.text;
    if (c.at("(")) {
        c.next();
        r.args = parse_raw_list(c, ")");
        static const std::regex inj(R"(^in([0-9]+)$)");
        std::smatch m;
        if (std::regex_match(t.text, m, inj)) {
            if (r.args.size() != 1) c.fail_at(t.col, "an injection takes one argument");
            r.kind = Raw::Kind::Inj;
            r.index = std::stoi(m[1]);
        } else {
            r.kind = Raw::Kind::Sym;
        }
    }
    return r;
}

std::vector<Raw> parse_raw_list(Cursor& c, const std::string& close) {
    std::vector<Raw> out;
    if (c.at(close)) {
        c.next();
        return out;
    }
    out.push_back(parse_raw(c));
    while (c.at(",")) {
        c.next();
        out.push_back(parse_raw(c));
    }
    c.expect(close);
    return out;
}

bool is_bot_name(const Raw& r) { return r.kind == Raw::Kind::Name && (r.name == "⊥" || r.name == "bot"); }
bool is_unit_name(const Raw& r) { return r.kind == Raw::Kind::Name && (r.name == "•" || r.name == "unit"); }

using RawLeaf = std::function<Term(int sort, const Raw&)>;

Term resolve(const Expr& e, const Raw& r, const RawLeaf& leaf, const Cursor& c) {
    auto shape = [&](const std::string& want) -> Term { c.fail_at(r.col, "expected " + want); };
    switch (e.kind) {
        case Expr::Kind::Const: {
            if (r.kind != Raw::Kind::Name) return shape("a constant");
            auto has = [&](const std::string& n) {
                return std::find(e.constants.begin(), e.constants.end(), n) != e.constants.end();
            };
            if (has(r.name)) return Term::constant(r.name);
            if (r.name == "ok" && has(kTick)) return Term::constant(kTick);
            c.fail_at(r.col, "unknown constant '" + r.name + "'");
        }
        case Expr::Kind::Sort: return leaf(e.sort, r);
        case Expr::Kind::Prod: {
            if (r.kind != Raw::Kind::Tuple || r.args.size() != e.children.size())
                return shape("a tuple of " + std::to_string(e.children.size()));
            std::vector<Term> args;
            for (std::size_t i = 0; i < r.args.size(); ++i) args.push_back(resolve(e.children[i], r.args[i], leaf, c));
            return Term::tuple(std::move(args));
        }
        case Expr::Kind::Coprod:
            if (r.kind != Raw::Kind::Inj || r.index >= static_cast<int>(e.children.size()))
                return shape("in0(..) to in" + std::to_string(e.children.size() - 1) + "(..)");
            return Term::inj(r.index, resolve(e.children[r.index], r.args[0], leaf, c));
        case Expr::Kind::Compose: {
            const Expr& inner = e.children[1];
            return resolve(e.children[0], r, [&](int, const Raw& x) { return resolve(inner, x, leaf, c); }, c);
        }
        case Expr::Kind::Analytic: {
            if (r.kind != Raw::Kind::Name && r.kind != Raw::Kind::Sym) return shape("a symbol");
            for (std::size_t k = 0; k < e.sig->symbols.size(); ++k) {
                const auto& sym = e.sig->symbols[k];
                if (sym.name != r.name) continue;
                if (r.args.size() != sym.slot_sorts.size())
                    c.fail_at(r.col, "'" + sym.name + "' takes " + std::to_string(sym.slot_sorts.size()) + " arguments");
                std::vector<Term> args;
                for (std::size_t i = 0; i < r.args.size(); ++i) args.push_back(leaf(sym.slot_sorts[i], r.args[i]));
                return Term::sym(static_cast<int>(k), sym.name, canonical_tuple(sym.group, args));
            }
            c.fail_at(r.col, "unknown symbol '" + r.name + "'");
        }
        case Expr::Kind::Pf: {
            if (r.kind != Raw::Kind::Set) return shape("a set {..}");
            std::vector<Term> members;
            for (const auto& m : r.args) members.push_back(resolve(e.children[0], m, leaf, c));
            return Term::set(std::move(members));
        }
        case Expr::Kind::Plus1:
            if (is_bot_name(r)) return Term::bot();
            return resolve(e.children[0], r, leaf, c);
    }
    return shape("a term");
}

RawLeaf var_leaf(const SortedSet* vars, const Cursor& c, const std::string& what) {
    return [vars, &c, what](int sort, const Raw& r) -> Term {
        if (r.kind != Raw::Kind::Name) c.fail_at(r.col, "expected " + what);
        const bool known = vars && vars->contains(Elem{sort, r.name});
        if (!known && is_unit_name(r)) return Term::unit();
        if (vars && !known) c.fail_at(r.col, "unknown " + what + " '" + r.name + "'");
        return Term::var(sort, r.name);
    };
}

Term term_at(const Expr& e, const std::string& text, int line, int col0, const SortedSet* vars, bool allow_bot,
             const std::string& what) {
    Cursor c = cursor(text, line, col0);
    const Raw r = parse_raw(c);
    c.finish();
    if (allow_bot && is_bot_name(r)) return Term::bot();
    return resolve(e, r, var_leaf(vars, c, what), c);
}

// ---------------------------------------------------------------------------
// Sorted sets and element references

SortSet read_sorts(const Sections& s) {
    const Section* sec = s.find("sorts");
    if (!sec) return {};
    SortSet out;
    for (const auto& l : sec->body)
        for (const auto& t : tokenize(l.text, 1)) {
            if (t.punct) throw ParseError(l.no, t.col, "unexpected '" + t.text + "'");
            if (std::find(out.begin(), out.end(), t.text) != out.end())
                throw ParseError(l.no, t.col, "duplicate sort '" + t.text + "'");
            out.push_back(t.text);
        }
    if (out.empty()) throw ParseError(sec->line, 0, "no sorts");
    return out;
}

SortedSet read_set(const Section& sec, const SortSet& sorts, const std::string& what) {
    SortedSet out(sorts.size());
    for (const auto& l : sec.body) {
        int sort = 0;
        std::string rest = l.text;
        int col0 = 1;
        if (sorts.size() > 1) {
            const auto lab = label_of(l.text);
            if (!lab) throw ParseError(l.no, 1, "expected 'S: names' with several sorts");
            const auto it = std::find(sorts.begin(), sorts.end(), lab->first);
            if (it == sorts.end()) throw ParseError(l.no, 1, "unknown sort '" + lab->first + "'");
            sort = static_cast<int>(it - sorts.begin());
            rest = l.text.substr(lab->second);
            col0 = lab->second + 1;
        }
        for (const auto& t : tokenize(rest, col0)) {
            if (t.punct) throw ParseError(l.no, t.col, "unexpected '" + t.text + "' in " + what);
            if (out.contains(Elem{sort, t.text})) throw ParseError(l.no, t.col, "duplicate " + what + " '" + t.text + "'");
            out.per_sort[sort].push_back(t.text);
        }
    }
    return out;
}

Elem elem_ref(const std::string& text, const SortSet& sorts, const SortedSet& in, int line, int col,
              const std::string& what) {
    Elem e;
    std::string name = trim(text);
    if (sorts.size() > 1) {
        const auto p = name.find(':');
        if (p == std::string::npos) throw ParseError(line, col, "expected S:name for " + what);
        const std::string s = trim(name.substr(0, p));
        const auto it = std::find(sorts.begin(), sorts.end(), s);
        if (it == sorts.end()) throw ParseError(line, col, "unknown sort '" + s + "'");
        e.sort = static_cast<int>(it - sorts.begin());
        name = trim(name.substr(p + 1));
    }
    e.name = name;
    if (!is_name(name)) throw ParseError(line, col, "malformed " + what + " '" + text + "'");
    if (!in.contains(e)) throw ParseError(line, col, "unknown " + what + " '" + name + "'");
    return e;
}

// ---------------------------------------------------------------------------
// Printing helpers

std::string print_sorts_and_functor(const Functor& F) {
    std::ostringstream os;
    if (F.sorts != default_sorts()) {
        os << "[sorts]\n";
        for (std::size_t i = 0; i < F.sorts.size(); ++i) os << (i ? " " : "") << F.sorts[i];
        os << '\n';
    }
    os << "[functor]\n";
    if (F.sorts.size() == 1)
        os << to_string(F.exprs[0], F.sorts) << '\n';
    else
        for (std::size_t s = 0; s < F.sorts.size(); ++s) os << F.sorts[s] << ": " << to_string(F.exprs[s], F.sorts) << '\n';
    return os.str();
}

std::string print_set(const std::string& header, const SortedSet& x, const SortSet& sorts) {
    std::ostringstream os;
    os << header << '\n';
    if (sorts.size() == 1) {
        const auto& names = x.per_sort.at(0);
        for (std::size_t i = 0; i < names.size(); ++i) os << (i ? " " : "") << names[i];
        if (!names.empty()) os << '\n';
        return os.str();
    }
    for (std::size_t s = 0; s < sorts.size(); ++s) {
        if (x.per_sort.at(s).empty()) continue;
        os << sorts[s] << ":";
        for (const auto& n : x.per_sort[s]) os << ' ' << n;
        os << '\n';
    }
    return os.str();
}

Functor functor_of(const Sections& s) {
    const SortSet sorts = read_sorts(s);
    const Section& f = s.need("functor");
    return functor_from_lines(f.body, sorts, f.line);
}

[[noreturn]] void rethrow_at(int line, const Error& e) {
    if (auto p = dynamic_cast<const ParseError*>(&e)) throw *p;
    throw ParseError(line, 0, e.what());
}

// ---------------------------------------------------------------------------
// Model kinds

Coalgebra coalgebra_from(const Sections& s) {
    check_known(s, {"sorts", "functor", "pointing", "states", "init", "trans"});
    Coalgebra c;
    c.functor = functor_of(s);
    if (c.functor.contains_pf()) throw ParseError(s.need("functor").line, 0, "the functor must not contain pf");
    const SortSet& sorts = c.functor.sorts;
    c.pointing = read_set(s.need("pointing"), sorts, "pointing element");
    c.carrier = read_set(s.need("states"), sorts, "state");
    const Section& init = s.need("init");
    for (const auto& l : init.body) {
        const auto [lhs, rhs] = split_arrow(l);
        const Elem i = elem_ref(lhs, sorts, c.pointing, l.no, 1, "pointing element");
        if (c.point.count(i)) throw ParseError(l.no, 1, "second target for '" + i.name + "'");
        std::string target = rhs.first;
        if (sorts.size() > 1 && target.find(':') == std::string::npos) target = sorts[i.sort] + ":" + trim(target);
        const Elem x = elem_ref(target, sorts, c.carrier, l.no, rhs.second, "state");
        if (x.sort != i.sort) throw ParseError(l.no, rhs.second, "pointing must preserve sorts");
        c.point[i] = x;
    }
    for (const auto& i : c.pointing.elems())
        if (!c.point.count(i)) throw ParseError(init.line, 0, "no initial state for '" + i.name + "'");
    if (const Section* t = s.find("trans"))
        for (const auto& l : t->body) {
            const auto [lhs, rhs] = split_arrow(l);
            const Elem x = elem_ref(lhs, sorts, c.carrier, l.no, 1, "state");
            c.xi[x].push_back(term_at(c.functor.at(x.sort), rhs.first, l.no, rhs.second, &c.carrier, false, "state"));
        }
    for (auto& [x, ts] : c.xi) sort_unique(ts);
    try {
        c.validate();
    } catch (const Error& e) {
        rethrow_at(0, e);
    }
    return c;
}

std::string print_coalgebra(const Coalgebra& c, const Glyphs& g) {
    std::ostringstream os;
    const SortSet& sorts = c.functor.sorts;
    os << print_sorts_and_functor(c.functor) << print_set("[pointing]", c.pointing, sorts)
       << print_set("[states]", c.carrier, sorts) << "[init]\n";
    for (const auto& i : c.pointing.elems())
        os << to_string(i, sorts) << " -> " << to_string(c.point.at(i), sorts) << '\n';
    os << "[trans]\n";
    for (const auto& x : c.carrier.elems()) {
        const auto it = c.xi.find(x);
        if (it == c.xi.end()) continue;
        for (const auto& t : it->second) os << to_string(x, sorts) << " -> " << to_string(t, g) << '\n';
    }
    return os.str();
}

PathObj path_from(const Sections& s) {
    check_known(s, {"sorts", "functor", "level", "map"});
    PathObj p;
    p.functor = functor_of(s);
    const SortSet& sorts = p.functor.sorts;
    std::map<int, const Section*> levels, maps;
    for (const auto& sec : s.list) {
        if (sec.name != "level" && sec.name != "map") continue;
        if (sec.index < 0) throw ParseError(sec.line, 1, "[" + sec.name + " k] needs an index");
        (sec.name == "level" ? levels : maps)[sec.index] = &sec;
    }
    const int n = static_cast<int>(levels.size()) - 1;
    if (n < 0) throw ParseError(0, 0, "missing section [level 0]");
    for (int k = 0; k <= n; ++k)
        if (!levels.count(k)) throw ParseError(0, 0, "missing section [level " + std::to_string(k) + "]");
    for (const auto& [k, sec] : maps)
        if (k < 0 || k >= n) throw ParseError(sec->line, 1, "map " + std::to_string(k) + " has no target level");
    for (int k = 0; k <= n; ++k) p.levels.push_back(read_set(*levels[k], sorts, "element"));
    for (int k = 0; k < n; ++k) {
        if (!maps.count(k)) throw ParseError(0, 0, "missing section [map " + std::to_string(k) + "]");
        TermMap m;
        for (const auto& l : maps[k]->body) {
            const auto [lhs, rhs] = split_arrow(l);
            const Elem a = elem_ref(lhs, sorts, p.levels[k], l.no, 1, "element of level " + std::to_string(k));
            if (m.count(a)) throw ParseError(l.no, 1, "second value for '" + a.name + "'");
            m[a] = term_at(p.functor.at(a.sort), rhs.first, l.no, rhs.second, &p.levels[k + 1], true,
                           "element of level " + std::to_string(k + 1));
        }
        for (const auto& a : p.levels[k].elems())
            if (!m.count(a)) throw ParseError(maps[k]->line, 0, "no value for '" + a.name + "'");
        p.maps.push_back(std::move(m));
    }
    if (auto v = path_violation(p)) throw ParseError(0, 0, "invalid path: " + *v);
    return p;
}

std::string print_path(const PathObj& p, const Glyphs& g) {
    std::ostringstream os;
    const SortSet& sorts = p.functor.sorts;
    os << print_sorts_and_functor(p.functor);
    for (std::size_t k = 0; k < p.levels.size(); ++k) {
        os << print_set("[level " + std::to_string(k) + "]", p.levels[k], sorts);
        if (k < p.maps.size()) {
            os << "[map " << k << "]\n";
            for (const auto& [a, t] : p.maps[k]) os << to_string(a, sorts) << " -> " << to_string(t, g) << '\n';
        }
    }
    return os.str();
}

FiniteCategory category_from(const Sections& s) {
    check_known(s, {"objects", "initial", "identities", "morphisms", "composition"});
    FiniteCategory P;
    for (const auto& l : s.need("objects").body)
        for (const auto& t : tokenize(l.text, 1)) {
            if (t.punct) throw ParseError(l.no, t.col, "unexpected '" + t.text + "'");
            if (std::find(P.objects.begin(), P.objects.end(), t.text) != P.objects.end())
                throw ParseError(l.no, t.col, "duplicate object '" + t.text + "'");
            P.objects.push_back(t.text);
        }
    if (P.objects.empty()) throw ParseError(s.need("objects").line, 0, "no objects");
    auto object = [&](const std::string& name, int line, int col) {
        for (std::size_t i = 0; i < P.objects.size(); ++i)
            if (P.objects[i] == name) return static_cast<int>(i);
        throw ParseError(line, col, "unknown object '" + name + "'");
    };
    auto morphism = [&](const std::string& name, int line, int col) {
        for (std::size_t i = 0; i < P.morphisms.size(); ++i)
            if (P.morphisms[i].name == name) return static_cast<int>(i);
        throw ParseError(line, col, "unknown morphism '" + name + "'");
    };
    auto declare = [&](const std::string& name, int dom, int cod, int line) {
        if (!is_name(name)) throw ParseError(line, 1, "malformed morphism name '" + name + "'");
        for (const auto& m : P.morphisms)
            if (m.name == name) throw ParseError(line, 1, "duplicate morphism '" + name + "'");
        P.morphisms.push_back({name, dom, cod});
        return static_cast<int>(P.morphisms.size()) - 1;
    };
    auto words = [](const std::string& t) {
        std::vector<std::string> out;
        std::istringstream in(t);
        std::string w;
        while (in >> w) out.push_back(w);
        return out;
    };

    if (const Section* init = s.find("initial")) {
        const auto ws = init->body.empty() ? std::vector<std::string>{} : words(init->body[0].text);
        if (init->body.size() != 1 || ws.size() != 1) throw ParseError(init->line, 0, "[initial] names one object");
        P.initial = object(ws[0], init->body[0].no, 1);
    }
    std::vector<std::string> id_names;
    for (const auto& o : P.objects) id_names.push_back("id" + o);
    if (const Section* ids = s.find("identities")) {
        std::vector<bool> given(P.objects.size(), false);
        for (const auto& l : ids->body) {
            const auto ws = words(l.text);
            if (ws.size() != 3 || ws[1] != "=") throw ParseError(l.no, 1, "expected 'object = name'");
            const int o = object(ws[0], l.no, 1);
            if (given[o]) throw ParseError(l.no, 1, "second identity for '" + ws[0] + "'");
            given[o] = true;
            id_names[o] = ws[2];
        }
    }
    for (std::size_t o = 0; o < P.objects.size(); ++o) {
        P.identities.push_back(declare(id_names[o], static_cast<int>(o), static_cast<int>(o), s.need("objects").line));
    }
    if (const Section* ms = s.find("morphisms"))
        for (const auto& l : ms->body) {
            const auto ws = words(l.text);
            if (ws.size() != 5 || ws[1] != ":" || ws[3] != "->") throw ParseError(l.no, 1, "expected 'm : P -> Q'");
            declare(ws[0], object(ws[2], l.no, 1), object(ws[4], l.no, 1), l.no);
        }
    for (std::size_t f = 0; f < P.morphisms.size(); ++f) {
        const auto& m = P.morphisms[f];
        P.comp[{P.identities[m.cod], static_cast<int>(f)}] = static_cast<int>(f);
        P.comp[{static_cast<int>(f), P.identities[m.dom]}] = static_cast<int>(f);
    }
    if (const Section* cs = s.find("composition"))
        for (const auto& l : cs->body) {
            const auto ws = words(l.text);
            if (ws.size() != 5 || ws[1] != "o" || ws[3] != "=") throw ParseError(l.no, 1, "expected 'g o f = h'");
            const int g = morphism(ws[0], l.no, 1), f = morphism(ws[2], l.no, 1), h = morphism(ws[4], l.no, 1);
            if (std::find(P.identities.begin(), P.identities.end(), g) != P.identities.end() ||
                std::find(P.identities.begin(), P.identities.end(), f) != P.identities.end())
                throw ParseError(l.no, 1, "composites with identities are implied");
            if (P.comp.count({g, f})) throw ParseError(l.no, 1, "second entry for " + ws[0] + " o " + ws[2]);
            P.comp[{g, f}] = h;
        }
    if (auto v = category_violation(P)) throw ParseError(0, 0, "invalid category: " + *v);
    return P;
}

std::string print_category(const FiniteCategory& P) {
    std::ostringstream os;
    os << "[objects]\n";
    for (std::size_t i = 0; i < P.objects.size(); ++i) os << (i ? " " : "") << P.objects[i];
    os << "\n[initial]\n" << P.objects.at(P.initial) << '\n';
    bool standard = true;
    for (std::size_t o = 0; o < P.objects.size(); ++o)
        standard = standard && P.morphisms[P.identities[o]].name == "id" + P.objects[o];
    if (!standard) {
        os << "[identities]\n";
        for (std::size_t o = 0; o < P.objects.size(); ++o)
            os << P.objects[o] << " = " << P.morphisms[P.identities[o]].name << '\n';
    }
    auto is_id = [&](int m) { return std::find(P.identities.begin(), P.identities.end(), m) != P.identities.end(); };
    os << "[morphisms]\n";
    for (std::size_t m = 0; m < P.morphisms.size(); ++m) {
        if (is_id(static_cast<int>(m))) continue;
        const auto& x = P.morphisms[m];
        os << x.name << " : " << P.objects[x.dom] << " -> " << P.objects[x.cod] << '\n';
    }
    os << "[composition]\n";
    for (const auto& [gf, h] : P.comp) {
        if (is_id(gf.first) || is_id(gf.second)) continue;
        os << P.morphisms[gf.first].name << " o " << P.morphisms[gf.second].name << " = " << P.morphisms[h].name << '\n';
    }
    return os.str();
}

RnnaPresentation rnna_from(const std::vector<Line>& lines) {
    static const std::regex state(R"(^state\s+([^\s/]+)\s*/\s*([0-9]+)$)");
    static const std::regex init(R"(^init\s+(\S+)$)");
    static const std::regex rule(R"(^(\S+)\s*->\s*(?:(ok)|bar\s+(\S+)\s*\[([0-9 ]*)\]|reg\(([0-9]+)\)\s+(\S+)\s*\[([0-9 ]*)\])$)");
    RnnaPresentation r;
    std::map<std::string, int> declared;
    std::vector<std::pair<int, RnnaRule>> rules;
    int init_line = 0;
    for (const auto& l : lines) {
        const std::string t = trim(l.text);
        std::smatch m;
        if (std::regex_match(t, m, state)) {
            if (declared.count(m[1])) throw ParseError(l.no, 1, "duplicate state '" + m[1].str() + "'");
            declared[m[1]] = static_cast<int>(r.states.size());
            r.states.push_back({m[1], std::stoi(m[2])});
        } else if (std::regex_match(t, m, init)) {
            if (init_line) throw ParseError(l.no, 1, "second init line");
            init_line = l.no;
            r.init = m[1];
        } else if (std::regex_match(t, m, rule)) {
            RnnaRule x;
            x.from = m[1];
            auto regs = [](const std::string& s) {
                std::vector<int> out;
                std::istringstream in(s);
                int v;
                while (in >> v) out.push_back(v);
                return out;
            };
            if (m[2].matched) {
                x.kind = RnnaRule::Kind::Ok;
            } else if (m[3].matched) {
                x.kind = RnnaRule::Kind::Bar;
                x.to = m[3];
                x.assign = regs(m[4]);
            } else {
                x.kind = RnnaRule::Kind::Read;
                x.reg = std::stoi(m[5]);
                x.to = m[6];
                x.assign = regs(m[7]);
            }
            rules.push_back({l.no, x});
        } else {
            throw ParseError(l.no, 1, "expected 'state q/r', 'init q' or a rule");
        }
    }
    if (!init_line) throw ParseError(0, 0, "missing init line");
    if (!declared.count(r.init)) throw ParseError(init_line, 1, "unknown state '" + r.init + "'");
    for (const auto& [no, x] : rules) {
        if (!declared.count(x.from)) throw ParseError(no, 1, "unknown state '" + x.from + "'");
        if (x.kind != RnnaRule::Kind::Ok && !declared.count(x.to))
            throw ParseError(no, 1, "unknown state '" + x.to + "'");
        r.rules.push_back(x);
        try {
            RnnaPresentation one = r;
            validate_rnna(one);
        } catch (const Error& e) {
            throw ParseError(no, 1, e.what());
        }
    }
    validate_rnna(r);
    return r;
}

std::string print_rnna(const RnnaPresentation& r) {
    std::ostringstream os;
    for (const auto& s : r.states) os << "state " << s.name << '/' << s.registers << '\n';
    os << "init " << r.init << '\n';
    auto regs = [](const std::vector<int>& a) {
        std::string out = "[";
        for (std::size_t i = 0; i < a.size(); ++i) out += (i ? " " : "") + std::to_string(a[i]);
        return out + "]";
    };
    for (const auto& x : r.rules) {
        os << x.from << " -> ";
        switch (x.kind) {
            case RnnaRule::Kind::Ok: os << "ok"; break;
            case RnnaRule::Kind::Bar: os << "bar " << x.to << ' ' << regs(x.assign); break;
            case RnnaRule::Kind::Read: os << "reg(" << x.reg << ") " << x.to << ' ' << regs(x.assign); break;
        }
        os << '\n';
    }
    return os.str();
}

MapFile map_file_from(const Sections& s) {
    check_known(s, {"sorts", "functor", "domain", "codomain", "map", "projection"});
    MapFile f;
    f.functor = functor_of(s);
    const SortSet& sorts = f.functor.sorts;
    f.domain = read_set(s.need("domain"), sorts, "element");
    f.codomain = read_set(s.need("codomain"), sorts, "element");
    const Section& map = s.need("map");
    for (const auto& l : map.body) {
        const auto [lhs, rhs] = split_arrow(l);
        const Elem a = elem_ref(lhs, sorts, f.domain, l.no, 1, "domain element");
        if (f.map.count(a)) throw ParseError(l.no, 1, "second value for '" + a.name + "'");
        f.map[a] = term_at(f.functor.at(a.sort), rhs.first, l.no, rhs.second, &f.codomain, false, "codomain element");
    }
    for (const auto& a : f.domain.elems())
        if (!f.map.count(a)) throw ParseError(map.line, 0, "no value for '" + a.name + "'");
    if (const Section* pr = s.find("projection")) {
        ElemMap h;
        for (const auto& l : pr->body) {
            const auto [lhs, rhs] = split_arrow(l);
            const Elem y = elem_ref(lhs, sorts, f.codomain, l.no, 1, "codomain element");
            if (h.count(y)) throw ParseError(l.no, 1, "second value for '" + y.name + "'");
            const std::string name = trim(rhs.first);
            if (!is_name(name)) throw ParseError(l.no, rhs.second, "malformed name '" + name + "'");
            h[y] = Elem{y.sort, name};
        }
        for (const auto& y : f.codomain.elems())
            if (!h.count(y)) throw ParseError(pr->line, 0, "no projection for '" + y.name + "'");
        f.projection = std::move(h);
    }
    return f;
}

std::string print_map_file(const MapFile& f, const Glyphs& g) {
    std::ostringstream os;
    const SortSet& sorts = f.functor.sorts;
    os << print_sorts_and_functor(f.functor) << print_set("[domain]", f.domain, sorts)
       << print_set("[codomain]", f.codomain, sorts) << "[map]\n";
    for (const auto& [a, t] : f.map) os << to_string(a, sorts) << " -> " << to_string(t, g) << '\n';
    if (f.projection) {
        os << "[projection]\n";
        for (const auto& [y, z] : *f.projection) os << to_string(y, sorts) << " -> " << z.name << '\n';
    }
    return os.str();
}

bool looks_like_rnna(const std::string& text) {
    const auto lines = content_lines(text);
    return !lines.empty() && trim(lines[0].text).rfind("state", 0) == 0 && trim(lines[0].text).find('[') != 0;
}

}  // namespace

Expr parse_expr(const std::string& text, const SortSet& sorts) { return parse_expr_line(text, sorts, 1, 1); }

Functor parse_functor(const std::string& text, const SortSet& sorts) {
    return functor_from_lines(content_lines(text), sorts, 1);
}

Term parse_term(const Expr& e, const std::string& text, const SortedSet* vars) {
    return term_at(e, text, 1, 1, vars, false, "variable");
}

Model parse_model(const std::string& text) {
    if (looks_like_rnna(text)) return rnna_from(content_lines(text));
    const Sections s = split_sections(text);
    if (s.has("objects")) return category_from(s);
    if (s.has("level")) return path_from(s);
    if (s.has("domain")) return map_file_from(s);
    if (s.has("states") || s.has("trans")) return coalgebra_from(s);
    throw ParseError(0, 0, "cannot tell what kind of model this is");
}

std::string print_model(const Model& m, const Glyphs& g) {
    struct Printer {
        const Glyphs& g;
        std::string operator()(const Coalgebra& c) const { return print_coalgebra(c, g); }
        std::string operator()(const PathObj& p) const { return print_path(p, g); }
        std::string operator()(const FiniteCategory& P) const { return print_category(P); }
        std::string operator()(const RnnaPresentation& r) const { return print_rnna(r); }
        std::string operator()(const MapFile& f) const { return print_map_file(f, g); }
    };
    return std::visit(Printer{g}, m);
}

namespace {

template <class T>
T parse_as(const std::string& text, const std::string& what) {
    Model m = parse_model(text);
    if (auto p = std::get_if<T>(&m)) return std::move(*p);
    throw ParseError(0, 0, "expected a " + what + " file");
}

}  // namespace

Coalgebra parse_coalgebra(const std::string& text) { return parse_as<Coalgebra>(text, "coalgebra"); }
PathObj parse_path(const std::string& text) { return parse_as<PathObj>(text, "path"); }
FiniteCategory parse_category(const std::string& text) { return parse_as<FiniteCategory>(text, "category"); }
RnnaPresentation parse_rnna(const std::string& text) { return parse_as<RnnaPresentation>(text, "automaton"); }
MapFile parse_map_file(const std::string& text) { return parse_as<MapFile>(text, "map"); }

std::pair<Functor, SortedSet> parse_signature(const std::string& text) {
    const Sections s = split_sections(text);
    Functor F = functor_of(s);
    SortedSet pointing;
    if (const Section* p = s.find("pointing"))
        pointing = read_set(*p, F.sorts, "pointing element");
    else if (const Section* l = s.find("level"); l && l->index == 0)
        pointing = read_set(*l, F.sorts, "pointing element");
    else
        throw ParseError(0, 0, "missing section [pointing]");
    return {std::move(F), std::move(pointing)};
}

ElemMap parse_elem_map(const std::string& text, const SortedSet& src, const SortedSet& dst) {
    if (src.sort_count() != dst.sort_count()) throw Error("parse_elem_map: sort counts differ");
    SortSet sorts;
    if (src.sort_count() == 1)
        sorts = default_sorts();
    else
        for (std::size_t s = 0; s < src.sort_count(); ++s) sorts.push_back(std::to_string(s));
    ElemMap m;
    for (const auto& l : content_lines(text)) {
        const auto [lhs, rhs] = split_arrow(l);
        const Elem a = elem_ref(lhs, sorts, src, l.no, 1, "source element");
        if (m.count(a)) throw ParseError(l.no, 1, "second value for '" + a.name + "'");
        std::string target = rhs.first;
        if (sorts.size() > 1 && target.find(':') == std::string::npos) target = sorts[a.sort] + ":" + trim(target);
        const Elem b = elem_ref(target, sorts, dst, l.no, rhs.second, "target element");
        if (b.sort != a.sort) throw ParseError(l.no, rhs.second, "the map must preserve sorts");
        m[a] = b;
    }
    for (const auto& a : src.elems())
        if (!m.count(a)) throw ParseError(0, 0, "no value for '" + a.name + "'");
    return m;
}

std::string print_elem_map(const ElemMap& m, const SortSet& sorts) {
    std::ostringstream os;
    for (const auto& [a, b] : m) os << to_string(a, sorts) << " -> " << to_string(b, sorts) << '\n';
    return os.str();
}

}  // namespace openpath
