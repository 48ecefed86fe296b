#ifndef OPENPATH_TEXT_HPP
#define OPENPATH_TEXT_HPP

#include <optional>
#include <string>
#include <variant>

#include "openpath/coalgebra.hpp"
#include "openpath/lasota.hpp"
#include "openpath/nominal.hpp"
#include "openpath/path.hpp"

namespace openpath {

/// A syntax or validation error in an input file. Line and column are
/// 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// f: X -> F Y, optionally with the projection h: Y -> Z of a factorization.
struct MapFile {
    Functor functor;
    SortedSet domain;
    SortedSet codomain;
    TermMap map;
    std::optional<ElemMap> projection;
};

using Model = std::variant<Coalgebra, PathObj, FiniteCategory, RnnaPresentation, MapFile>;

/// const(a b) | id | sort(S) | prod(..) | coprod(..) | compose(f, g) | pf(f) |
/// plus1(f) | analytic{ sym/n[:S,..] [cycles].. ; .. }
Expr parse_expr(const std::string& text, const SortSet& sorts = default_sorts());

/// One expression, or one "S: expr" line per sort. Without `sorts` the sort
/// names are read off the labels.
Functor parse_functor(const std::string& text, const SortSet& sorts = {});

/// A term of e. Names at variable positions must belong to `vars` when given.
Term parse_term(const Expr& e, const std::string& text, const SortedSet* vars = nullptr);

/// Detects the kind from its sections and validates the result.
Model parse_model(const std::string& text);
std::string print_model(const Model& m, const Glyphs& g = {});

Coalgebra parse_coalgebra(const std::string& text);
PathObj parse_path(const std::string& text);
FiniteCategory parse_category(const std::string& text);
RnnaPresentation parse_rnna(const std::string& text);
MapFile parse_map_file(const std::string& text);

/// The [sorts], [functor] and [pointing] sections of any model file.
std::pair<Functor, SortedSet> parse_signature(const std::string& text);

/// "x -> y" lines, total on src and sort-preserving into dst.
ElemMap parse_elem_map(const std::string& text, const SortedSet& src, const SortedSet& dst);
std::string print_elem_map(const ElemMap& m, const SortSet& sorts = default_sorts());

std::string read_file(const std::string& path);

}  // namespace openpath

#endif  // OPENPATH_TEXT_HPP
