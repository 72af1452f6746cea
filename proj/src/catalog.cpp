#include "ddrs/catalog.hpp"

#include "builtin_defs.hpp"

#include <cassert>
#include <cctype>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace ddrs {

RewriteSystem::RewriteSystem(std::string name, const Signature* sig,
                             std::vector<RewriteRule> rules, SystemStatus status, View view)
    : name_(std::move(name)), sig_(sig), rules_(std::move(rules)),
      status_(std::move(status)), view_(view) {
  for (size_t i = 0; i < rules_.size(); ++i) {
    SymbolId root = term(rules_[i].lhs).sym;
    assert(!is_var_symbol(root));
    by_root_[size_t(root)].push_back(int32_t(i));
  }
}

// ---------------------------------------------------------------------------
// File parsing

namespace {

std::string_view rstrip(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

size_t skip_ws(std::string_view s, size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

// Splits into lines, preserving 1-based numbering.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      lines.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return lines;
}

RuleSchema parse_rule_line(std::string_view line, int lineno) {
  RuleSchema schema;
  schema.line = lineno;
  size_t i = skip_ws(line, 0);
  assert(line.substr(i, 4) == "rule");
  i = skip_ws(line, i + 4);
  if (i >= line.size() || line[i] != '[')
    throw Error(Errc::SyntaxError, "expected '[' after 'rule'", lineno, int(i) + 1);
  size_t close = line.find(']', i);
  if (close == std::string_view::npos)
    throw Error(Errc::SyntaxError, "unterminated rule tag (missing ']')", lineno, int(i) + 1);
  schema.tag_template = std::string(line.substr(i + 1, close - i - 1));
  if (schema.tag_template.empty())
    throw Error(Errc::SyntaxError, "empty rule tag", lineno, int(i) + 1);
  for (char c : schema.tag_template)
    if (c == ' ' || c == '\t' || c == '[')
      throw Error(Errc::SyntaxError, "malformed rule tag", lineno, int(i) + 1);
  i = skip_ws(line, close + 1);

  if (line.substr(i, 3) == "for" &&
      (i + 3 >= line.size() || line[i + 3] == ' ' || line[i + 3] == '\t')) {
    i = skip_ws(line, i + 3);
    for (;;) {
      size_t clause_col = i + 1;
      if (i >= line.size() || !std::islower(static_cast<unsigned char>(line[i])))
        throw Error(Errc::SyntaxError, "expected an index name in for clause", lineno, int(clause_col));
      char name = line[i];
      for (const auto& r : schema.indices)
        if (r.name == name)
          throw Error(Errc::RangeError, std::string("duplicate index '") + name + "'", lineno,
                      int(clause_col));
      i = skip_ws(line, i + 1);
      if (line.substr(i, 2) != "in")
        throw Error(Errc::SyntaxError, "expected 'in' in for clause", lineno, int(i) + 1);
      i = skip_ws(line, i + 2);
      auto read_bound = [&](const char* what) {
        if (i >= line.size() || !std::isdigit(static_cast<unsigned char>(line[i])))
          throw Error(Errc::SyntaxError, std::string("expected ") + what + " bound", lineno,
                      int(i) + 1);
        int v = 0;
        size_t start = i;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
          v = v * 10 + (line[i] - '0');
          ++i;
          if (v > 99) break;
        }
        if (v > 9)
          throw Error(Errc::RangeError, "index bounds must be single digits 0..9", lineno,
                      int(start) + 1);
        return v;
      };
      int lo = read_bound("lower");
      if (line.substr(i, 2) != "..")
        throw Error(Errc::SyntaxError, "expected '..' in index range", lineno, int(i) + 1);
      i += 2;
      int hi = read_bound("upper");
      if (lo > hi)
        throw Error(Errc::RangeError, "empty index range: lower bound exceeds upper bound", lineno,
                    int(clause_col));
      schema.indices.push_back(IndexRange{name, lo, hi});
      if (schema.indices.size() > 2)
        throw Error(Errc::RangeError, "at most two indices per rule schema", lineno,
                    int(clause_col));
      i = skip_ws(line, i);
      if (i < line.size() && line[i] == ',') {
        i = skip_ws(line, i + 1);
        continue;
      }
      break;
    }
  }
  if (i >= line.size() || line[i] != ':')
    throw Error(Errc::SyntaxError, "expected ':' before the rule body", lineno, int(i) + 1);
  ++i;

  size_t arrow = line.find("->", i);
  if (arrow == std::string_view::npos)
    throw Error(Errc::SyntaxError, "expected '->' between the rule sides", lineno,
                int(line.size()) + 1);
  std::string_view lhs_text = line.substr(i, arrow - i);
  std::string_view rhs_text = rstrip(line.substr(arrow + 2));
  schema.lhs = parse_schema_term(lhs_text, true, true, lineno, int(i));
  schema.rhs = parse_schema_term(rhs_text, true, true, lineno, int(arrow) + 2);

  // Indices used in the body must be declared in the for clause.
  std::vector<char> used;
  schema.lhs.collect_indices(used);
  schema.rhs.collect_indices(used);
  for (char c : used) {
    bool found = false;
    for (const auto& r : schema.indices) found = found || r.name == c;
    if (!found)
      throw Error(Errc::RangeError,
                  std::string("index '") + c + "' is not declared in a for clause", lineno, 1);
  }
  return schema;
}

}  // namespace

DdrsFile parse_ddrs_file(std::string_view text) {
  std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty() || rstrip(lines[0]) != "# ddrs-format 1")
    throw Error(Errc::MissingHeader, "file must start with '# ddrs-format 1'", 1, 1);

  DdrsFile file;
  bool have_system = false;
  for (size_t n = 1; n < lines.size(); ++n) {
    std::string_view line = rstrip(lines[n]);
    int lineno = int(n) + 1;
    size_t i = skip_ws(line, 0);
    if (i >= line.size() || line[i] == '#') continue;
    std::string_view rest = line.substr(i);
    if (!have_system) {
      if (rest.substr(0, 7) != "system ")
        throw Error(Errc::MissingHeader, "expected 'system <name> over <signature>'", lineno,
                    int(i) + 1);
      size_t p = skip_ws(rest, 7);
      size_t q = p;
      while (q < rest.size() && rest[q] != ' ' && rest[q] != '\t') ++q;
      file.system_name = std::string(rest.substr(p, q - p));
      p = skip_ws(rest, q);
      if (rest.substr(p, 5) != "over ")
        throw Error(Errc::MissingHeader, "expected 'over <signature>' in the system line", lineno,
                    int(i + p) + 1);
      p = skip_ws(rest, p + 5);
      q = p;
      while (q < rest.size() && rest[q] != ' ' && rest[q] != '\t') ++q;
      file.signature_name = std::string(rest.substr(p, q - p));
      if (file.system_name.empty() || file.signature_name.empty() || skip_ws(rest, q) != rest.size())
        throw Error(Errc::MissingHeader, "malformed system line", lineno, int(i) + 1);
      have_system = true;
      continue;
    }
    if (rest.substr(0, 5) == "rule " || rest == "rule") {
      file.schemas.push_back(parse_rule_line(line, lineno));
      continue;
    }
    throw Error(Errc::SyntaxError, "expected a rule line or comment", lineno, int(i) + 1);
  }
  if (!have_system)
    throw Error(Errc::MissingHeader, "missing 'system <name> over <signature>' line", 1, 1);
  return file;
}

// ---------------------------------------------------------------------------
// Expansion

namespace {

int digit_op(int v, SchemaTerm::MetaOp op, int line) {
  switch (op) {
    case SchemaTerm::MetaOp::Plain:
      return v;
    case SchemaTerm::MetaOp::Succ:
      if (v > 8)
        throw Error(Errc::MetaDigitOutOfDomain,
                    "digit successor of 9 is undefined (domain 0..8)", line);
      return v + 1;
    case SchemaTerm::MetaOp::Star:
      if (v < 1)
        throw Error(Errc::MetaDigitOutOfDomain,
                    "0* is undefined: the 10-minus digit operation has domain 1..9", line);
      return 10 - v;
  }
  return v;
}

TermId instantiate(const SchemaTerm& st, const std::array<int, 26>& env, int line) {
  switch (st.kind) {
    case SchemaTerm::Kind::Var:
      return make_var(var_index(st.sym));
    case SchemaTerm::Kind::MetaDigit:
      return make_term(digit_symbol(digit_op(env[size_t(st.index - 'a')], st.mop, line)));
    case SchemaTerm::Kind::MetaApp: {
      int d = digit_op(env[size_t(st.index - 'a')], st.mop, line);
      SymbolId s = append_symbol(st.family, d);
      if (s < 0)
        throw Error(Errc::RangeError,
                    "append symbol ':" + std::string(1, "?ubd"[int(st.family)]) +
                        std::to_string(d) + "' does not exist",
                    line);
      return make_term(s, instantiate(st.kids[0], env, line));
    }
    case SchemaTerm::Kind::MetaIter: {
      int n = env[size_t(st.index - 'a')];
      TermId t = instantiate(st.kids[0], env, line);
      for (int k = 0; k < n; ++k) t = make_term(st.iter_sym, t);
      return t;
    }
    case SchemaTerm::Kind::App: {
      const Symbol& sy = symbol(st.sym);
      if (sy.arity == 0) return make_term(st.sym);
      TermId c0 = instantiate(st.kids[0], env, line);
      if (sy.arity == 1) return make_term(st.sym, c0);
      return make_term(st.sym, c0, instantiate(st.kids[1], env, line));
    }
  }
  throw std::logic_error("unreachable");
}

std::string instantiate_tag(const std::string& tmpl, const std::array<int, 26>& env,
                            const std::vector<IndexRange>& indices) {
  std::string out;
  size_t start = 0;
  auto is_index = [&](std::string_view seg) {
    if (seg.size() != 1) return false;
    for (const auto& r : indices)
      if (r.name == seg[0]) return true;
    return false;
  };
  for (size_t i = 0; i <= tmpl.size(); ++i) {
    if (i == tmpl.size() || tmpl[i] == '.') {
      std::string_view seg(tmpl.data() + start, i - start);
      if (!out.empty() || start > 0) out += '.';
      if (is_index(seg))
        out += std::to_string(env[size_t(seg[0] - 'a')]);
      else
        out += seg;
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::vector<RewriteRule> expand_schema(const RuleSchema& schema) {
  std::vector<RewriteRule> out;
  std::array<int, 26> env{};
  auto emit = [&]() {
    RewriteRule r;
    r.tag = instantiate_tag(schema.tag_template, env, schema.indices);
    r.lhs = instantiate(schema.lhs, env, schema.line);
    r.rhs = instantiate(schema.rhs, env, schema.line);
    out.push_back(std::move(r));
  };
  if (schema.indices.empty()) {
    emit();
  } else if (schema.indices.size() == 1) {
    const IndexRange& a = schema.indices[0];
    for (int i = a.lo; i <= a.hi; ++i) {
      env[size_t(a.name - 'a')] = i;
      emit();
    }
  } else {
    const IndexRange& a = schema.indices[0];
    const IndexRange& b = schema.indices[1];
    for (int i = a.lo; i <= a.hi; ++i)
      for (int j = b.lo; j <= b.hi; ++j) {
        env[size_t(a.name - 'a')] = i;
        env[size_t(b.name - 'a')] = j;
        emit();
      }
  }
  return out;
}

std::string serialize_ddrs_file(const DdrsFile& file) {
  std::string out = "# ddrs-format 1\n";
  out += "system " + file.system_name + " over " + file.signature_name + "\n";
  for (const RuleSchema& s : file.schemas) {
    out += "rule [" + s.tag_template + "]";
    if (!s.indices.empty()) {
      out += " for ";
      for (size_t k = 0; k < s.indices.size(); ++k) {
        if (k) out += ", ";
        out += s.indices[k].name;
        out += " in " + std::to_string(s.indices[k].lo) + ".." + std::to_string(s.indices[k].hi);
      }
    }
    out += ": " + print_schema_term(s.lhs) + " -> " + print_schema_term(s.rhs) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Loading with validation

namespace {

void collect_term_symbols(TermId t, std::vector<SymbolId>& out) {
  std::vector<TermId> st{t};
  while (!st.empty()) {
    TermView v = term(st.back());
    st.pop_back();
    out.push_back(v.sym);
    if (v.arity >= 1) st.push_back(v.child0);
    if (v.arity == 2) st.push_back(v.child1);
  }
}

void collect_term_vars(TermId t, std::array<bool, kNumVars>& seen) {
  std::vector<TermId> st{t};
  while (!st.empty()) {
    TermView v = term(st.back());
    st.pop_back();
    if (is_var_symbol(v.sym)) seen[size_t(var_index(v.sym))] = true;
    if (v.arity >= 1) st.push_back(v.child0);
    if (v.arity == 2) st.push_back(v.child1);
  }
}

RewriteSystem build_system(std::string_view text, SystemStatus status, View view) {
  DdrsFile file = parse_ddrs_file(text);
  const Signature& sig = [&]() -> const Signature& {
    try {
      return signature(file.signature_name);
    } catch (const Error& e) {
      throw Error(Errc::SignatureMismatch, e.what(), 2, 1);
    }
  }();

  std::vector<RewriteRule> rules;
  std::unordered_set<std::string> tags;
  for (const RuleSchema& schema : file.schemas) {
    std::vector<RewriteRule> expanded;
    try {
      expanded = expand_schema(schema);
    } catch (const Error& e) {
      throw Error(e.code(),
                  "in rule [" + schema.tag_template + "]: " + e.what(), schema.line, e.col());
    }
    for (RewriteRule& r : expanded) {
      if (!tags.insert(r.tag).second)
        throw Error(Errc::DuplicateTag, "duplicate rule tag '" + r.tag + "'", schema.line);
      if (term_is_var(r.lhs))
        throw Error(Errc::LhsIsVariable,
                    "rule [" + r.tag + "]: left-hand side is a bare variable", schema.line);
      std::array<bool, kNumVars> lhs_vars{}, rhs_vars{};
      collect_term_vars(r.lhs, lhs_vars);
      collect_term_vars(r.rhs, rhs_vars);
      for (int v = 0; v < kNumVars; ++v)
        if (rhs_vars[size_t(v)] && !lhs_vars[size_t(v)])
          throw Error(Errc::ExtraRhsVariables,
                      "rule [" + r.tag + "]: right-hand side uses variable '" +
                          symbol(kSymVarX + v).name + "' that the left-hand side does not bind",
                      schema.line);
      std::vector<SymbolId> syms;
      collect_term_symbols(r.lhs, syms);
      collect_term_symbols(r.rhs, syms);
      for (SymbolId s : syms)
        if (!is_var_symbol(s) && !sig.contains(s))
          throw Error(Errc::SignatureMismatch,
                      "rule [" + r.tag + "]: symbol '" + symbol(s).name +
                          "' is not in signature '" + sig.name() + "'",
                      schema.line);
      rules.push_back(std::move(r));
    }
  }
  return RewriteSystem(file.system_name, &sig, std::move(rules), std::move(status), view);
}

}  // namespace

RewriteSystem load_system(std::string_view text) {
  return build_system(text, SystemStatus{}, View::None);
}

// ---------------------------------------------------------------------------
// Built-in registry (definitions live in builtins.cpp)

namespace {

const BuiltinDef& find_builtin(std::string_view name) {
  for (const BuiltinDef& d : builtin_defs())
    if (name == d.name) return d;
  throw Error(Errc::UnknownSystem, "unknown system '" + std::string(name) + "'");
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const BuiltinDef& d : builtin_defs()) out.push_back(d.name);
  return out;
}

bool is_builtin(std::string_view name) {
  for (const BuiltinDef& d : builtin_defs())
    if (name == d.name) return true;
  return false;
}

const RewriteSystem& builtin(std::string_view name) {
  static std::mutex mu;
  static std::unordered_map<std::string, std::unique_ptr<RewriteSystem>> cache;
  const BuiltinDef& def = find_builtin(name);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(def.name);
  if (it == cache.end()) {
    auto sys = std::make_unique<RewriteSystem>(build_system(def.source, def.status, def.view));
    assert(sys->name() == def.name);
    it = cache.emplace(def.name, std::move(sys)).first;
  }
  return *it->second;
}

const std::string& builtin_source(std::string_view name) {
  static std::mutex mu;
  static std::unordered_map<std::string, std::string> cache;
  const BuiltinDef& def = find_builtin(name);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(def.name, def.source).first->second;
}

const SystemStatus& builtin_status(std::string_view name) { return find_builtin(name).status; }

View builtin_view(std::string_view name) { return find_builtin(name).view; }

}  // namespace ddrs
