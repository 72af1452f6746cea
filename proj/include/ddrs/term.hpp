#pragma once
// First-order term core: the fixed symbol universe, named signatures,
// hash-consed immutable terms, positions, matching and substitution.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddrs {

using SymbolId = int32_t;
using TermId = int32_t;
inline constexpr TermId kNoTerm = -1;

// Child-index path from the root; {} is the root position.
using Position = std::vector<int32_t>;

enum class SymKind : uint8_t {
  Constant,  // digit constants 0..9
  Prefix,    // S, P, - (unary, written before the argument)
  Append,    // postfix digit append :b0 :b1 :d0..:d9 :u0 (unary)
  Infix,     // + and * (binary)
  Tree,      // tree constructors ^u ^b ^d (binary)
  Variable,  // x y z w (rule files only)
};

// Notation family of an append or tree symbol.
enum class Family : uint8_t { None, U, B, D };

struct Symbol {
  std::string name;
  SymKind kind;
  Family family;  // Append/Tree only, None otherwise
  int digit;      // constant value or appended digit, -1 otherwise
  int arity;      // 0, 1 or 2
};

// ---------------------------------------------------------------------------
// Errors

enum class Errc {
  InvalidPosition,
  SyntaxError,
  UnknownSymbol,
  DuplicateTag,
  RangeError,
  MetaDigitOutOfDomain,
  LhsIsVariable,
  MissingHeader,
  SignatureMismatch,
  ExtraRhsVariables,
  OpenTerm,
  UnknownSystem,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, int line = 0, int col = 0)
      : std::runtime_error(std::move(message)), code_(code), line_(line), col_(col) {}
  Errc code() const { return code_; }
  int line() const { return line_; }  // 1-based; 0 when not applicable
  int col() const { return col_; }    // 1-based; 0 when not applicable
 private:
  Errc code_;
  int line_, col_;
};

const char* errc_name(Errc c);

// ---------------------------------------------------------------------------
// Symbol universe (fixed): ids are stable and define the canonical symbol
// order used by enumeration. Digits 0..9, then S P - + *, then the append
// symbols, then the tree constructors, then the pattern variables.

inline constexpr SymbolId kSymDigit0 = 0;  // ... kSymDigit0 + 9
inline constexpr SymbolId kSymS = 10;
inline constexpr SymbolId kSymP = 11;
inline constexpr SymbolId kSymMinus = 12;
inline constexpr SymbolId kSymPlus = 13;
inline constexpr SymbolId kSymTimes = 14;
inline constexpr SymbolId kSymB0 = 15;  // :b0
inline constexpr SymbolId kSymB1 = 16;  // :b1
inline constexpr SymbolId kSymD0 = 17;  // :d0 ... :d9
inline constexpr SymbolId kSymU0 = 27;  // :u0
inline constexpr SymbolId kSymTreeU = 28;
inline constexpr SymbolId kSymTreeB = 29;
inline constexpr SymbolId kSymTreeD = 30;
inline constexpr SymbolId kSymVarX = 31;  // x y z w = 31..34
inline constexpr int kNumVars = 4;
inline constexpr int kUniverseSize = 35;

const Symbol& symbol(SymbolId id);
// Universe lookup by name; returns -1 when the name is not a symbol.
SymbolId symbol_id(std::string_view name);

inline bool is_var_symbol(SymbolId id) { return id >= kSymVarX && id < kSymVarX + kNumVars; }
inline int var_index(SymbolId id) { return id - kSymVarX; }
inline SymbolId digit_symbol(int d) { return kSymDigit0 + d; }
// Append symbol of a family, e.g. (B,1) -> :b1; -1 when it does not exist.
SymbolId append_symbol(Family f, int digit);
SymbolId tree_symbol(Family f);

// ---------------------------------------------------------------------------
// Signatures: named, ordered subsets of the universe (pattern variables are
// never part of a signature).

class Signature {
 public:
  Signature(std::string name, std::vector<SymbolId> symbols);
  const std::string& name() const { return name_; }
  const std::vector<SymbolId>& symbols() const { return symbols_; }
  bool contains(SymbolId id) const { return id >= 0 && id < kUniverseSize && mask_[id]; }
 private:
  std::string name_;
  std::vector<SymbolId> symbols_;
  std::array<bool, kUniverseSize> mask_{};
};

// Built-in signature registry (ring, nat-append, int-append, nat-zeroappend,
// int-zeroappend, nat-treeu, int-treeu, nat-treeb, int-treeb, nat-treed,
// int-treed). Throws Error(SignatureMismatch) for unknown names.
const Signature& signature(std::string_view name);
std::vector<std::string> signature_names();

// ---------------------------------------------------------------------------
// Terms: immutable, hash-consed, identified by TermId. Structural equality is
// id equality. Safe for unrestricted concurrent use.

struct TermView {
  SymbolId sym;
  int arity;
  TermId child0, child1;  // kNoTerm when absent
  int32_t size;           // node count
  bool closed;            // no variables anywhere
};

// Interns a term. Arity must match the symbol (0, 1 or 2 children).
TermId make_term(SymbolId sym);
TermId make_term(SymbolId sym, TermId c0);
TermId make_term(SymbolId sym, TermId c0, TermId c1);
TermId make_var(int index);  // 0..3 -> x y z w

TermView term(TermId id);
inline int32_t term_size(TermId id) { return term(id).size; }
inline bool term_is_var(TermId id) { return is_var_symbol(term(id).sym); }
inline bool term_closed(TermId id) { return term(id).closed; }

// Number of live interned terms (diagnostics).
size_t term_store_size();

// Subterm at a position; throws Error(InvalidPosition) when the path leaves
// the term.
TermId subterm_at(TermId t, const Position& pos);
// Replaces the subterm at a position, rebuilding the spine.
TermId replace_at(TermId t, const Position& pos, TermId replacement);

// A binding of the four pattern variables.
class Substitution {
 public:
  Substitution() { b_.fill(kNoTerm); }
  bool has(int var) const { return b_[var] != kNoTerm; }
  TermId get(int var) const { return b_[var]; }
  void set(int var, TermId t) { b_[var] = t; }
 private:
  std::array<TermId, kNumVars> b_;
};

// Syntactic matching of a pattern against a subject at the root. Repeated
// pattern variables require equal (identical) bindings. nullopt = no match
// (a normal outcome, not an error).
std::optional<Substitution> match(TermId pattern, TermId subject);

// Instantiates a pattern under a substitution; every variable of the pattern
// must be bound.
TermId apply_substitution(const Substitution& s, TermId pattern);

}  // namespace ddrs
