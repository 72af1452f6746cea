#include "ddrs/term.hpp"

#include <atomic>
#include <cassert>
#include <mutex>
#include <unordered_map>

namespace ddrs {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidPosition: return "invalid-position";
    case Errc::SyntaxError: return "syntax-error";
    case Errc::UnknownSymbol: return "unknown-symbol";
    case Errc::DuplicateTag: return "duplicate-tag";
    case Errc::RangeError: return "range-error";
    case Errc::MetaDigitOutOfDomain: return "meta-digit-out-of-domain";
    case Errc::LhsIsVariable: return "lhs-is-variable";
    case Errc::MissingHeader: return "missing-header";
    case Errc::SignatureMismatch: return "signature-mismatch";
    case Errc::ExtraRhsVariables: return "extra-rhs-variables";
    case Errc::OpenTerm: return "open-term";
    case Errc::UnknownSystem: return "unknown-system";
    case Errc::Usage: return "usage";
  }
  return "error";
}

// ---------------------------------------------------------------------------
// Symbol universe

namespace {

std::vector<Symbol> build_universe() {
  std::vector<Symbol> u;
  u.reserve(kUniverseSize);
  for (int d = 0; d <= 9; ++d)
    u.push_back({std::string(1, char('0' + d)), SymKind::Constant, Family::None, d, 0});
  u.push_back({"S", SymKind::Prefix, Family::None, -1, 1});
  u.push_back({"P", SymKind::Prefix, Family::None, -1, 1});
  u.push_back({"-", SymKind::Prefix, Family::None, -1, 1});
  u.push_back({"+", SymKind::Infix, Family::None, -1, 2});
  u.push_back({"*", SymKind::Infix, Family::None, -1, 2});
  u.push_back({":b0", SymKind::Append, Family::B, 0, 1});
  u.push_back({":b1", SymKind::Append, Family::B, 1, 1});
  for (int d = 0; d <= 9; ++d)
    u.push_back({":d" + std::string(1, char('0' + d)), SymKind::Append, Family::D, d, 1});
  u.push_back({":u0", SymKind::Append, Family::U, 0, 1});
  u.push_back({"^u", SymKind::Tree, Family::U, -1, 2});
  u.push_back({"^b", SymKind::Tree, Family::B, -1, 2});
  u.push_back({"^d", SymKind::Tree, Family::D, -1, 2});
  const char* vars[] = {"x", "y", "z", "w"};
  for (auto* v : vars) u.push_back({v, SymKind::Variable, Family::None, -1, 0});
  assert(u.size() == kUniverseSize);
  return u;
}

const std::vector<Symbol>& universe() {
  static const std::vector<Symbol> u = build_universe();
  return u;
}

}  // namespace

const Symbol& symbol(SymbolId id) { return universe()[size_t(id)]; }

SymbolId symbol_id(std::string_view name) {
  static const std::unordered_map<std::string_view, SymbolId> index = [] {
    std::unordered_map<std::string_view, SymbolId> m;
    for (SymbolId i = 0; i < kUniverseSize; ++i) m.emplace(universe()[size_t(i)].name, i);
    return m;
  }();
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

SymbolId append_symbol(Family f, int digit) {
  switch (f) {
    case Family::B: return (digit == 0 || digit == 1) ? kSymB0 + digit : -1;
    case Family::D: return (digit >= 0 && digit <= 9) ? kSymD0 + digit : -1;
    case Family::U: return digit == 0 ? kSymU0 : -1;
    default: return -1;
  }
}

SymbolId tree_symbol(Family f) {
  switch (f) {
    case Family::U: return kSymTreeU;
    case Family::B: return kSymTreeB;
    case Family::D: return kSymTreeD;
    default: return -1;
  }
}

// ---------------------------------------------------------------------------
// Signatures

Signature::Signature(std::string name, std::vector<SymbolId> symbols)
    : name_(std::move(name)), symbols_(std::move(symbols)) {
  for (SymbolId s : symbols_) mask_[size_t(s)] = true;
}

namespace {

std::vector<SymbolId> ids(std::initializer_list<SymbolId> l) { return {l}; }

std::vector<SymbolId> digit_range_plus(std::initializer_list<SymbolId> extra) {
  std::vector<SymbolId> v;
  for (int d = 0; d <= 9; ++d) v.push_back(digit_symbol(d));
  v.insert(v.end(), extra);
  return v;
}

const std::vector<Signature>& signature_registry() {
  static const std::vector<Signature> regs = [] {
    std::vector<Signature> r;
    // Natural / integer numbers with successor and digit appends (the shared
    // signature of the unary, binary and decimal append views).
    std::vector<SymbolId> nat_append = digit_range_plus({kSymS, kSymPlus, kSymTimes, kSymB0, kSymB1});
    for (int d = 0; d <= 9; ++d) nat_append.push_back(kSymD0 + d);
    std::vector<SymbolId> int_append = digit_range_plus({kSymS, kSymP, kSymMinus, kSymPlus, kSymTimes, kSymB0, kSymB1});
    for (int d = 0; d <= 9; ++d) int_append.push_back(kSymD0 + d);
    r.emplace_back("ring", ids({digit_symbol(0), digit_symbol(1), kSymMinus, kSymPlus, kSymTimes}));
    r.emplace_back("nat-append", nat_append);
    r.emplace_back("int-append", int_append);
    r.emplace_back("nat-zeroappend", ids({digit_symbol(0), kSymPlus, kSymTimes, kSymU0}));
    r.emplace_back("int-zeroappend", ids({digit_symbol(0), kSymMinus, kSymPlus, kSymTimes, kSymU0}));
    r.emplace_back("nat-treeu", ids({digit_symbol(0), kSymPlus, kSymTimes, kSymTreeU}));
    r.emplace_back("int-treeu", ids({digit_symbol(0), kSymMinus, kSymPlus, kSymTimes, kSymTreeU}));
    r.emplace_back("nat-treeb", ids({digit_symbol(0), digit_symbol(1), kSymPlus, kSymTimes, kSymTreeB}));
    r.emplace_back("int-treeb", ids({digit_symbol(0), digit_symbol(1), kSymMinus, kSymPlus, kSymTimes, kSymTreeB}));
    std::vector<SymbolId> nat_treed = digit_range_plus({kSymS, kSymPlus, kSymTimes, kSymTreeD});
    std::vector<SymbolId> int_treed = digit_range_plus({kSymS, kSymP, kSymMinus, kSymPlus, kSymTimes, kSymTreeD});
    r.emplace_back("nat-treed", nat_treed);
    r.emplace_back("int-treed", int_treed);
    return r;
  }();
  return regs;
}

}  // namespace

const Signature& signature(std::string_view name) {
  for (const Signature& s : signature_registry())
    if (s.name() == name) return s;
  throw Error(Errc::SignatureMismatch, "unknown signature '" + std::string(name) + "'");
}

std::vector<std::string> signature_names() {
  std::vector<std::string> out;
  for (const Signature& s : signature_registry()) out.push_back(s.name());
  return out;
}

// ---------------------------------------------------------------------------
// Term store: chunked node storage (stable addresses, lock-free reads) with a
// mutex-guarded intern table.

namespace {

struct Node {
  SymbolId sym;
  TermId c0, c1;
  int32_t size;
  uint8_t closed;
};

constexpr int kChunkBits = 16;
constexpr size_t kChunkSize = size_t(1) << kChunkBits;
constexpr size_t kMaxChunks = size_t(1) << 15;  // up to 2^31 nodes

struct Store {
  std::array<std::atomic<Node*>, kMaxChunks> chunks{};
  std::atomic<size_t> count{0};
  std::mutex mu;
  // Key: (sym, c0, c1) packed; open-addressed map kept simple with std.
  std::unordered_map<uint64_t, std::vector<TermId>> intern;

  static uint64_t key_hash(SymbolId s, TermId a, TermId b) {
    uint64_t h = uint64_t(uint32_t(s));
    h = h * 0x9e3779b97f4a7c15ull + uint64_t(uint32_t(a + 1));
    h = h * 0x9e3779b97f4a7c15ull + uint64_t(uint32_t(b + 1));
    h ^= h >> 29;
    return h;
  }

  const Node& node(TermId id) const {
    return chunks[size_t(id) >> kChunkBits].load(std::memory_order_acquire)[size_t(id) & (kChunkSize - 1)];
  }

  TermId intern_node(SymbolId sym, TermId c0, TermId c1) {
    uint64_t h = key_hash(sym, c0, c1);
    std::lock_guard<std::mutex> lock(mu);
    auto& bucket = intern[h];
    for (TermId id : bucket) {
      const Node& n = node(id);
      if (n.sym == sym && n.c0 == c0 && n.c1 == c1) return id;
    }
    size_t idx = count.load(std::memory_order_relaxed);
    size_t chunk = idx >> kChunkBits;
    if (chunk >= kMaxChunks) throw std::runtime_error("term store exhausted");
    Node* arr = chunks[chunk].load(std::memory_order_acquire);
    if (arr == nullptr) {
      arr = new Node[kChunkSize];
      chunks[chunk].store(arr, std::memory_order_release);
    }
    Node& n = arr[idx & (kChunkSize - 1)];
    n.sym = sym;
    n.c0 = c0;
    n.c1 = c1;
    int32_t sz = 1;
    bool closed = !is_var_symbol(sym);
    if (c0 != kNoTerm) {
      const Node& a = node(c0);
      sz += a.size;
      closed = closed && a.closed;
    }
    if (c1 != kNoTerm) {
      const Node& b = node(c1);
      sz += b.size;
      closed = closed && b.closed;
    }
    n.size = sz;
    n.closed = closed ? 1 : 0;
    TermId id = TermId(idx);
    bucket.push_back(id);
    count.store(idx + 1, std::memory_order_release);
    return id;
  }
};

Store& store() {
  static Store* s = new Store();  // never destroyed: terms live for the process
  return *s;
}

}  // namespace

TermId make_term(SymbolId sym) {
  assert(symbol(sym).arity == 0);
  return store().intern_node(sym, kNoTerm, kNoTerm);
}

TermId make_term(SymbolId sym, TermId c0) {
  assert(symbol(sym).arity == 1 && c0 != kNoTerm);
  return store().intern_node(sym, c0, kNoTerm);
}

TermId make_term(SymbolId sym, TermId c0, TermId c1) {
  assert(symbol(sym).arity == 2 && c0 != kNoTerm && c1 != kNoTerm);
  return store().intern_node(sym, c0, c1);
}

TermId make_var(int index) {
  assert(index >= 0 && index < kNumVars);
  return store().intern_node(kSymVarX + index, kNoTerm, kNoTerm);
}

TermView term(TermId id) {
  const auto& n = store().node(id);
  int arity = (n.c0 == kNoTerm) ? 0 : (n.c1 == kNoTerm ? 1 : 2);
  return TermView{n.sym, arity, n.c0, n.c1, n.size, n.closed != 0};
}

size_t term_store_size() { return store().count.load(std::memory_order_acquire); }

TermId subterm_at(TermId t, const Position& pos) {
  TermId cur = t;
  for (size_t i = 0; i < pos.size(); ++i) {
    TermView v = term(cur);
    int32_t k = pos[i];
    if (k < 0 || k >= v.arity)
      throw Error(Errc::InvalidPosition,
                  "invalid position: child " + std::to_string(k) + " at depth " + std::to_string(i) +
                      " does not exist");
    cur = (k == 0) ? v.child0 : v.child1;
  }
  return cur;
}

TermId replace_at(TermId t, const Position& pos, TermId replacement) {
  // Iterative spine rebuild: positions can be as deep as the term.
  std::vector<TermId> spine;
  spine.reserve(pos.size());
  TermId cur = t;
  for (size_t i = 0; i < pos.size(); ++i) {
    TermView v = term(cur);
    int32_t k = pos[i];
    if (k < 0 || k >= v.arity)
      throw Error(Errc::InvalidPosition,
                  "invalid position: child " + std::to_string(k) + " at depth " + std::to_string(i) +
                      " does not exist");
    spine.push_back(cur);
    cur = (k == 0) ? v.child0 : v.child1;
  }
  TermId acc = replacement;
  for (size_t i = pos.size(); i-- > 0;) {
    TermView v = term(spine[i]);
    if (v.arity == 1)
      acc = make_term(v.sym, acc);
    else
      acc = (pos[i] == 0) ? make_term(v.sym, acc, v.child1) : make_term(v.sym, v.child0, acc);
  }
  return acc;
}

namespace {

bool match_rec(TermId pattern, TermId subject, Substitution& s) {
  TermView p = term(pattern);
  if (is_var_symbol(p.sym)) {
    int v = var_index(p.sym);
    if (s.has(v)) return s.get(v) == subject;  // repeated variables bind equal terms
    s.set(v, subject);
    return true;
  }
  TermView q = term(subject);
  if (p.sym != q.sym) return false;
  if (p.arity >= 1 && !match_rec(p.child0, q.child0, s)) return false;
  if (p.arity == 2 && !match_rec(p.child1, q.child1, s)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> match(TermId pattern, TermId subject) {
  Substitution s;
  if (match_rec(pattern, subject, s)) return s;
  return std::nullopt;
}

TermId apply_substitution(const Substitution& s, TermId pattern) {
  TermView p = term(pattern);
  if (is_var_symbol(p.sym)) {
    TermId b = s.get(var_index(p.sym));
    if (b == kNoTerm)
      throw Error(Errc::OpenTerm, "unbound variable '" + symbol(p.sym).name + "' in substitution");
    return b;
  }
  if (p.arity == 0) return pattern;
  TermId c0 = apply_substitution(s, p.child0);
  if (p.arity == 1) return make_term(p.sym, c0);
  return make_term(p.sym, c0, apply_substitution(s, p.child1));
}

}  // namespace ddrs
