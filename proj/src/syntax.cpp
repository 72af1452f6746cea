#include "ddrs/syntax.hpp"

#include <array>
#include <cassert>

namespace ddrs {

bool SchemaTerm::concrete() const {
  if (kind != Kind::App && kind != Kind::Var) return false;
  for (const auto& k : kids)
    if (!k.concrete()) return false;
  return true;
}

bool SchemaTerm::has_var() const {
  if (kind == Kind::Var) return true;
  for (const auto& k : kids)
    if (k.has_var()) return true;
  return false;
}

void SchemaTerm::collect_vars(std::array<bool, kNumVars>& seen) const {
  if (kind == Kind::Var) seen[size_t(var_index(sym))] = true;
  for (const auto& k : kids) k.collect_vars(seen);
}

void SchemaTerm::collect_symbols(std::vector<SymbolId>& out) const {
  switch (kind) {
    case Kind::App: out.push_back(sym); break;
    case Kind::Var: break;
    case Kind::MetaDigit: break;                        // expands to a digit constant
    case Kind::MetaApp: break;                          // expands to an append symbol
    case Kind::MetaIter: out.push_back(iter_sym); break;
  }
  for (const auto& k : kids) k.collect_symbols(out);
}

void SchemaTerm::collect_indices(std::vector<char>& out) const {
  if (kind == Kind::MetaDigit || kind == Kind::MetaApp || kind == Kind::MetaIter)
    out.push_back(index);
  for (const auto& k : kids) k.collect_indices(out);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok : uint8_t {
  End, Digit, Var, PrefixSP, Minus, Plus, Star, LParen, RParen,
  Append, Tree, MetaDigit, MetaAppend, Iter,
};

struct Token {
  Tok kind;
  int col;            // 1-based
  SymbolId sym = -1;  // Digit/Var/PrefixSP/Append/Tree
  Family fam = Family::None;
  char index = 0;
  SchemaTerm::MetaOp mop = SchemaTerm::MetaOp::Plain;
  SymbolId iter_sym = -1;
};

struct Lexer {
  std::string_view text;
  size_t i = 0;
  int line;
  int col_offset;

  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    throw Error(Errc::SyntaxError, msg, line, int(at) + 1 + col_offset);
  }

  char peek(size_t off = 0) const { return i + off < text.size() ? text[i + off] : '\0'; }

  // Parses the {i} / {i'} / {i*} meta reference starting at '{'.
  void meta_ref(char& index, SchemaTerm::MetaOp& mop) {
    size_t start = i;
    ++i;  // '{'
    char c = peek();
    if (c < 'a' || c > 'z') fail("expected an index name inside '{...}'", start);
    index = c;
    ++i;
    mop = SchemaTerm::MetaOp::Plain;
    if (peek() == '\'') {
      mop = SchemaTerm::MetaOp::Succ;
      ++i;
    } else if (peek() == '*') {
      mop = SchemaTerm::MetaOp::Star;
      ++i;
    }
    if (peek() != '}') fail("expected '}' in meta reference", start);
    ++i;
  }

  Family family_char(char c, size_t at) {
    switch (c) {
      case 'u': return Family::U;
      case 'b': return Family::B;
      case 'd': return Family::D;
      default: fail("expected a notation family 'u', 'b' or 'd'", at);
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (i < text.size()) {
      char c = text[i];
      size_t start = i;
      if (c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      Token t;
      t.col = int(start) + 1 + col_offset;
      if (c >= '0' && c <= '9') {
        t.kind = Tok::Digit;
        t.sym = digit_symbol(c - '0');
        ++i;
      } else if (c == 'S' || c == 'P') {
        SymbolId sp = (c == 'S') ? kSymS : kSymP;
        if (peek(1) == '^' && peek(2) == '{') {
          i += 2;
          t.kind = Tok::Iter;
          t.iter_sym = sp;
          meta_ref(t.index, t.mop);
          if (t.mop != SchemaTerm::MetaOp::Plain)
            fail("iterated prefix takes a plain index: S^{i} or P^{i}", start);
        } else {
          t.kind = Tok::PrefixSP;
          t.sym = sp;
          ++i;
        }
      } else if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
        t.kind = Tok::Var;
        t.sym = symbol_id(std::string_view(&c, 1));
        ++i;
      } else if (c == '-') {
        t.kind = Tok::Minus;
        ++i;
      } else if (c == '+') {
        t.kind = Tok::Plus;
        ++i;
      } else if (c == '*') {
        t.kind = Tok::Star;
        ++i;
      } else if (c == '(') {
        t.kind = Tok::LParen;
        ++i;
      } else if (c == ')') {
        t.kind = Tok::RParen;
        ++i;
      } else if (c == ':') {
        ++i;
        Family f = family_char(peek(), start);
        ++i;
        char d = peek();
        if (d == '{') {
          t.kind = Tok::MetaAppend;
          t.fam = f;
          meta_ref(t.index, t.mop);
        } else if (d >= '0' && d <= '9') {
          SymbolId s = append_symbol(f, d - '0');
          if (s < 0)
            throw Error(Errc::UnknownSymbol,
                        "no such append symbol ':" + std::string(1, "?ubd"[int(f)]) +
                            std::string(1, d) + "'",
                        line, int(start) + 1 + col_offset);
          t.kind = Tok::Append;
          t.sym = s;
          ++i;
        } else {
          fail("expected a digit or meta reference after append ':'", start);
        }
      } else if (c == '^') {
        ++i;
        Family f = family_char(peek(), start);
        ++i;
        t.kind = Tok::Tree;
        t.sym = tree_symbol(f);
      } else if (c == '{') {
        t.kind = Tok::MetaDigit;
        meta_ref(t.index, t.mop);
      } else {
        fail(std::string("unexpected character '") + c + "'", start);
      }
      out.push_back(t);
    }
    Token end;
    end.kind = Tok::End;
    end.col = int(text.size()) + 1 + col_offset;
    out.push_back(end);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Parser: iterative shunting-yard (no recursion, arbitrary nesting depth).
//
// Precedence, tightest first: postfix appends (applied immediately),
// prefix - (3), tree constructors (2, left-assoc), * (1, left-assoc),
// + (0, left-assoc).

struct OpEntry {
  enum class K : uint8_t { PrefixMinus, Binary, Paren, Func } k;
  SymbolId sym = -1;        // Binary: + * ^f; Func: S/P (or iter via meta)
  int prec = 0;             // Binary
  int col = 0;
  bool is_iter = false;     // Func: iterated prefix
  char index = 0;           // Func iter index
  size_t value_mark = 0;    // Paren/Func: value-stack height at '('
  bool func_paren = false;  // Paren: belongs to a preceding Func
};

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  int line;
  bool allow_vars, allow_meta;

  std::vector<SchemaTerm> vals;
  std::vector<OpEntry> ops;

  [[noreturn]] void fail(const std::string& msg, int col) const {
    throw Error(Errc::SyntaxError, msg, line, col);
  }

  void apply_top() {
    OpEntry op = ops.back();
    ops.pop_back();
    if (op.k == OpEntry::K::PrefixMinus) {
      if (vals.empty()) fail("missing operand of '-'", op.col);
      SchemaTerm t;
      t.kind = SchemaTerm::Kind::App;
      t.sym = kSymMinus;
      t.kids.push_back(std::move(vals.back()));
      vals.pop_back();
      vals.push_back(std::move(t));
    } else if (op.k == OpEntry::K::Binary) {
      if (vals.size() < 2) fail("missing operand of '" + symbol(op.sym).name + "'", op.col);
      SchemaTerm t;
      t.kind = SchemaTerm::Kind::App;
      t.sym = op.sym;
      SchemaTerm rhs = std::move(vals.back());
      vals.pop_back();
      t.kids.push_back(std::move(vals.back()));
      vals.pop_back();
      t.kids.push_back(std::move(rhs));
      vals.push_back(std::move(t));
    } else {
      fail("unbalanced parenthesis", op.col);
    }
  }

  // Pops operators until an open parenthesis (for ')') or fully (at end).
  void drain(bool to_paren, int col) {
    while (!ops.empty() && ops.back().k != OpEntry::K::Paren) apply_top();
    if (to_paren) {
      if (ops.empty()) fail("unmatched ')'", col);
    } else {
      if (!ops.empty()) fail("missing ')'", ops.back().col);
    }
  }

  SchemaTerm run() {
    bool expect_operand = true;
    for (;;) {
      const Token& t = toks[pos];
      if (expect_operand) {
        switch (t.kind) {
          case Tok::Digit: {
            SchemaTerm v;
            v.kind = SchemaTerm::Kind::App;
            v.sym = t.sym;
            vals.push_back(std::move(v));
            expect_operand = false;
            ++pos;
            break;
          }
          case Tok::Var: {
            if (!allow_vars)
              fail("variables are only allowed in rule files", t.col);
            SchemaTerm v;
            v.kind = SchemaTerm::Kind::Var;
            v.sym = t.sym;
            vals.push_back(std::move(v));
            expect_operand = false;
            ++pos;
            break;
          }
          case Tok::MetaDigit: {
            if (!allow_meta) fail("meta notation is only allowed in rule schemas", t.col);
            SchemaTerm v;
            v.kind = SchemaTerm::Kind::MetaDigit;
            v.index = t.index;
            v.mop = t.mop;
            vals.push_back(std::move(v));
            expect_operand = false;
            ++pos;
            break;
          }
          case Tok::Minus: {
            OpEntry e;
            e.k = OpEntry::K::PrefixMinus;
            e.col = t.col;
            ops.push_back(e);
            ++pos;
            break;
          }
          case Tok::PrefixSP:
          case Tok::Iter: {
            if (t.kind == Tok::Iter && !allow_meta)
              fail("meta notation is only allowed in rule schemas", t.col);
            OpEntry f;
            f.k = OpEntry::K::Func;
            f.sym = (t.kind == Tok::PrefixSP) ? t.sym : t.iter_sym;
            f.is_iter = (t.kind == Tok::Iter);
            f.index = t.index;
            f.col = t.col;
            ++pos;
            if (toks[pos].kind != Tok::LParen)
              fail("expected '(' after '" + symbol(f.sym).name + "'", toks[pos].col);
            ops.push_back(f);
            OpEntry p;
            p.k = OpEntry::K::Paren;
            p.col = toks[pos].col;
            p.func_paren = true;
            p.value_mark = vals.size();
            ops.push_back(p);
            ++pos;
            break;
          }
          case Tok::LParen: {
            OpEntry p;
            p.k = OpEntry::K::Paren;
            p.col = t.col;
            p.value_mark = vals.size();
            ops.push_back(p);
            ++pos;
            break;
          }
          default:
            fail("expected a term", t.col);
        }
      } else {
        switch (t.kind) {
          case Tok::Append: {
            SchemaTerm v;
            v.kind = SchemaTerm::Kind::App;
            v.sym = t.sym;
            v.kids.push_back(std::move(vals.back()));
            vals.back() = std::move(v);
            ++pos;
            break;
          }
          case Tok::MetaAppend: {
            if (!allow_meta) fail("meta notation is only allowed in rule schemas", t.col);
            SchemaTerm v;
            v.kind = SchemaTerm::Kind::MetaApp;
            v.family = t.fam;
            v.index = t.index;
            v.mop = t.mop;
            v.kids.push_back(std::move(vals.back()));
            vals.back() = std::move(v);
            ++pos;
            break;
          }
          case Tok::Plus:
          case Tok::Star:
          case Tok::Tree: {
            int prec = (t.kind == Tok::Plus) ? 0 : (t.kind == Tok::Star) ? 1 : 2;
            SymbolId sym = (t.kind == Tok::Plus) ? kSymPlus
                         : (t.kind == Tok::Star) ? kSymTimes
                                                 : t.sym;
            while (!ops.empty() &&
                   (ops.back().k == OpEntry::K::PrefixMinus ||
                    (ops.back().k == OpEntry::K::Binary && ops.back().prec >= prec)))
              apply_top();
            OpEntry e;
            e.k = OpEntry::K::Binary;
            e.sym = sym;
            e.prec = prec;
            e.col = t.col;
            ops.push_back(e);
            expect_operand = true;
            ++pos;
            break;
          }
          case Tok::RParen: {
            drain(true, t.col);
            OpEntry p = ops.back();
            ops.pop_back();
            if (vals.size() != p.value_mark + 1)
              fail("expected exactly one term inside parentheses", t.col);
            if (p.func_paren) {
              OpEntry f = ops.back();
              ops.pop_back();
              assert(f.k == OpEntry::K::Func);
              SchemaTerm v;
              if (f.is_iter) {
                v.kind = SchemaTerm::Kind::MetaIter;
                v.iter_sym = f.sym;
                v.index = f.index;
              } else {
                v.kind = SchemaTerm::Kind::App;
                v.sym = f.sym;
              }
              v.kids.push_back(std::move(vals.back()));
              vals.back() = std::move(v);
            }
            ++pos;
            break;
          }
          case Tok::End: {
            drain(false, t.col);
            if (vals.size() != 1) fail("expected a single term", t.col);
            return std::move(vals.front());
          }
          default:
            fail("expected an operator or end of term", t.col);
        }
      }
      if (expect_operand && toks[pos].kind == Tok::End) {
        drain(false, toks[pos].col);  // reports the dangling operator
        fail("expected a term", toks[pos].col);
      }
    }
  }
};

}  // namespace

SchemaTerm parse_schema_term(std::string_view text, bool allow_vars, bool allow_meta,
                             int line, int col_offset) {
  Lexer lex{text, 0, line, col_offset};
  Parser p;
  p.toks = lex.run();
  p.line = line;
  p.allow_vars = allow_vars;
  p.allow_meta = allow_meta;
  if (p.toks.front().kind == Tok::End)
    throw Error(Errc::SyntaxError, "expected a term", line, 1 + col_offset);
  return p.run();
}

namespace {

TermId build_term(const SchemaTerm& st, bool vars_ok) {
  switch (st.kind) {
    case SchemaTerm::Kind::Var:
      if (!vars_ok) throw Error(Errc::OpenTerm, "term contains a variable");
      return make_var(var_index(st.sym));
    case SchemaTerm::Kind::App: {
      const Symbol& sy = symbol(st.sym);
      if (sy.arity == 0) return make_term(st.sym);
      TermId c0 = build_term(st.kids[0], vars_ok);
      if (sy.arity == 1) return make_term(st.sym, c0);
      return make_term(st.sym, c0, build_term(st.kids[1], vars_ok));
    }
    default:
      throw Error(Errc::SyntaxError, "meta notation cannot appear in a concrete term");
  }
}

}  // namespace

TermId to_term(const SchemaTerm& st) { return build_term(st, false); }
TermId to_pattern(const SchemaTerm& st) { return build_term(st, true); }

TermId parse_term(std::string_view text, const Signature& sig) {
  SchemaTerm st = parse_schema_term(text, /*allow_vars=*/false, /*allow_meta=*/false);
  std::vector<SymbolId> syms;
  st.collect_symbols(syms);
  for (SymbolId s : syms)
    if (!sig.contains(s))
      throw Error(Errc::UnknownSymbol,
                  "symbol '" + symbol(s).name + "' is not in signature '" + sig.name() + "'");
  return to_term(st);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence level a term exposes to its context.
int term_level(SymbolId sym) {
  const Symbol& sy = symbol(sym);
  switch (sy.kind) {
    case SymKind::Constant:
    case SymKind::Variable:
      return 5;
    case SymKind::Append:
      return 4;
    case SymKind::Prefix:
      return sym == kSymMinus ? 3 : 5;  // S(..)/P(..) are self-delimiting
    case SymKind::Tree:
      return 2;
    case SymKind::Infix:
      return sym == kSymTimes ? 1 : 0;
  }
  return 5;
}

}  // namespace

std::string print_term(TermId t) {
  std::string out;
  struct Ins {
    bool is_text;
    TermId t;
    int min_prec;
    std::string_view text;
  };
  std::vector<Ins> st;
  st.push_back({false, t, 0, {}});
  while (!st.empty()) {
    Ins in = st.back();
    st.pop_back();
    if (in.is_text) {
      out += in.text;
      continue;
    }
    TermView v = term(in.t);
    const Symbol& sy = symbol(v.sym);
    int level = term_level(v.sym);
    bool paren = level < in.min_prec;
    switch (sy.kind) {
      case SymKind::Constant:
      case SymKind::Variable:
        out += sy.name;
        break;
      case SymKind::Prefix:
        if (v.sym == kSymMinus) {
          if (paren) out += '(';
          out += '-';
          if (paren) st.push_back({true, 0, 0, ")"});
          st.push_back({false, v.child0, 3, {}});
        } else {
          out += sy.name;
          out += '(';
          st.push_back({true, 0, 0, ")"});
          st.push_back({false, v.child0, 0, {}});
        }
        break;
      case SymKind::Append: {
        if (paren) out += '(';
        if (paren) st.push_back({true, 0, 0, ")"});
        st.push_back({true, 0, 0, sy.name});
        // Append chains print parenthesized: (9:d7):d5.
        int child_prec = symbol(term(v.child0).sym).kind == SymKind::Append ? 5 : 4;
        st.push_back({false, v.child0, child_prec, {}});
        break;
      }
      case SymKind::Tree: {
        if (paren) out += '(';
        if (paren) st.push_back({true, 0, 0, ")"});
        st.push_back({false, v.child1, 3, {}});
        st.push_back({true, 0, 0, sy.name});
        st.push_back({false, v.child0, 2, {}});
        break;
      }
      case SymKind::Infix: {
        int p = (v.sym == kSymTimes) ? 1 : 0;
        if (paren) out += '(';
        if (paren) st.push_back({true, 0, 0, ")"});
        st.push_back({false, v.child1, p + 1, {}});
        st.push_back({true, 0, 0, sy.name});
        st.push_back({false, v.child0, p, {}});
        break;
      }
    }
  }
  return out;
}

namespace {

void print_schema_rec(const SchemaTerm& st, int min_prec, std::string& out) {
  switch (st.kind) {
    case SchemaTerm::Kind::Var:
      out += symbol(st.sym).name;
      return;
    case SchemaTerm::Kind::MetaDigit:
      out += '{';
      out += st.index;
      if (st.mop == SchemaTerm::MetaOp::Succ) out += '\'';
      if (st.mop == SchemaTerm::MetaOp::Star) out += '*';
      out += '}';
      return;
    case SchemaTerm::Kind::MetaIter:
      out += symbol(st.iter_sym).name;
      out += "^{";
      out += st.index;
      out += "}(";
      print_schema_rec(st.kids[0], 0, out);
      out += ')';
      return;
    case SchemaTerm::Kind::MetaApp: {
      bool paren = 4 < min_prec;
      if (paren) out += '(';
      bool chain = st.kids[0].kind == SchemaTerm::Kind::MetaApp ||
                   (st.kids[0].kind == SchemaTerm::Kind::App &&
                    symbol(st.kids[0].sym).kind == SymKind::Append);
      print_schema_rec(st.kids[0], chain ? 5 : 4, out);
      out += ':';
      out += "?ubd"[int(st.family)];
      out += '{';
      out += st.index;
      if (st.mop == SchemaTerm::MetaOp::Succ) out += '\'';
      if (st.mop == SchemaTerm::MetaOp::Star) out += '*';
      out += '}';
      if (paren) out += ')';
      return;
    }
    case SchemaTerm::Kind::App:
      break;
  }
  const Symbol& sy = symbol(st.sym);
  int level = term_level(st.sym);
  bool paren = level < min_prec;
  switch (sy.kind) {
    case SymKind::Constant:
      out += sy.name;
      break;
    case SymKind::Prefix:
      if (st.sym == kSymMinus) {
        if (paren) out += '(';
        out += '-';
        print_schema_rec(st.kids[0], 3, out);
        if (paren) out += ')';
      } else {
        out += sy.name;
        out += '(';
        print_schema_rec(st.kids[0], 0, out);
        out += ')';
      }
      break;
    case SymKind::Append: {
      if (paren) out += '(';
      bool chain = st.kids[0].kind == SchemaTerm::Kind::MetaApp ||
                   (st.kids[0].kind == SchemaTerm::Kind::App &&
                    symbol(st.kids[0].sym).kind == SymKind::Append);
      print_schema_rec(st.kids[0], chain ? 5 : 4, out);
      out += sy.name;
      if (paren) out += ')';
      break;
    }
    case SymKind::Tree: {
      if (paren) out += '(';
      print_schema_rec(st.kids[0], 2, out);
      out += sy.name;
      print_schema_rec(st.kids[1], 3, out);
      if (paren) out += ')';
      break;
    }
    case SymKind::Infix: {
      int p = (st.sym == kSymTimes) ? 1 : 0;
      if (paren) out += '(';
      print_schema_rec(st.kids[0], p, out);
      out += sy.name;
      print_schema_rec(st.kids[1], p + 1, out);
      if (paren) out += ')';
      break;
    }
    default:
      break;
  }
}

}  // namespace

std::string print_schema_term(const SchemaTerm& st) {
  std::string out;
  print_schema_rec(st, 0, out);
  return out;
}

}  // namespace ddrs
