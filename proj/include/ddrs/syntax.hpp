#pragma once
// Concrete syntax: parsing and printing of terms, plus the schema-term AST
// used by rule files (meta digit constants {i} {i'} {i*}, meta appends like
// :d{i'}, and iterated prefixes S^{j}(t) / P^{j}(t)).

#include <string>
#include <string_view>
#include <vector>

#include "ddrs/term.hpp"

namespace ddrs {

// A term over the universe extended with schema meta-notation. Concrete terms
// are the special case with no Meta* nodes.
struct SchemaTerm {
  enum class Kind : uint8_t { App, Var, MetaDigit, MetaApp, MetaIter };
  enum class MetaOp : uint8_t { Plain, Succ, Star };  // {i}, {i'}, {i*}

  Kind kind = Kind::App;
  SymbolId sym = -1;               // App: symbol; Var: variable symbol
  Family family = Family::None;    // MetaApp: append family
  char index = 0;                  // Meta*: index name, e.g. 'i'
  MetaOp mop = MetaOp::Plain;      // MetaDigit / MetaApp
  SymbolId iter_sym = -1;          // MetaIter: kSymS or kSymP
  std::vector<SchemaTerm> kids;

  bool concrete() const;                       // no meta nodes anywhere
  bool has_var() const;                        // any Var node
  void collect_vars(std::array<bool, kNumVars>& seen) const;
  void collect_symbols(std::vector<SymbolId>& out) const;
  void collect_indices(std::vector<char>& out) const;
};

// Parses schema-term syntax over the whole universe. `allow_vars` admits
// x y z w; `allow_meta` admits the meta-notation. Errors carry 1-based
// line/col (line is `line`, col counts from the start of `text` plus
// `col_offset`). Throws Error(SyntaxError).
SchemaTerm parse_schema_term(std::string_view text, bool allow_vars, bool allow_meta,
                             int line = 1, int col_offset = 0);

// Converts a concrete, variable-free SchemaTerm to an interned term.
TermId to_term(const SchemaTerm& st);
// Converts a concrete SchemaTerm that may contain variables (rule sides).
TermId to_pattern(const SchemaTerm& st);

// Parses a closed concrete term and validates every symbol against the
// signature. Errors: SyntaxError (malformed or variables/meta present),
// UnknownSymbol (symbol outside the signature).
TermId parse_term(std::string_view text, const Signature& sig);

// Minimal-parentheses printing. Precedence, tightest first: postfix appends,
// prefix symbols, tree constructors (left-assoc), * (left-assoc),
// + (left-assoc). S and P always print with parentheses: S(0).
std::string print_term(TermId t);

// Prints a schema term in rule-file syntax (used by dump round-trips).
std::string print_schema_term(const SchemaTerm& st);

}  // namespace ddrs
