#include "ddrs/semantics.hpp"

#include <array>
#include <functional>

#include "ddrs/syntax.hpp"
#include "json.hpp"

namespace ddrs {

namespace {

BigInt node_value(const Symbol& sym, SymbolId id, const BigInt* c0, const BigInt* c1) {
  switch (sym.kind) {
    case SymKind::Constant:
      return BigInt(sym.digit);
    case SymKind::Prefix:
      if (id == kSymS) return *c0 + 1;
      if (id == kSymP) return *c0 - 1;
      return -*c0;  // minus
    case SymKind::Append:
      if (sym.family == Family::B) return *c0 * 2 + sym.digit;
      if (sym.family == Family::D) return *c0 * 10 + sym.digit;
      return *c0 + 1;  // :u0
    case SymKind::Infix:
      if (id == kSymPlus) return *c0 + *c1;
      return *c0 * *c1;
    case SymKind::Tree:
      if (sym.family == Family::U) return *c0 + *c1 + 1;
      if (sym.family == Family::B) return *c0 * 2 + *c1;
      return *c0 * 10 + *c1;  // ^d
    case SymKind::Variable:
      break;
  }
  throw Error(Errc::OpenTerm, "cannot evaluate an open term (variable " + sym.name + ")");
}

}  // namespace

const BigInt& Evaluator::eval(TermId t) {
  std::vector<TermId> st;
  st.push_back(t);
  while (!st.empty()) {
    TermId u = st.back();
    if (memo_.count(u) != 0) {
      st.pop_back();
      continue;
    }
    TermView v = term(u);
    if (is_var_symbol(v.sym)) {
      throw Error(Errc::OpenTerm,
                  "cannot evaluate an open term (variable " + symbol(v.sym).name + ")");
    }
    bool ready = true;
    const BigInt* c0 = nullptr;
    const BigInt* c1 = nullptr;
    if (v.arity >= 1) {
      auto it = memo_.find(v.child0);
      if (it == memo_.end()) {
        st.push_back(v.child0);
        ready = false;
      } else {
        c0 = &it->second;
      }
    }
    if (v.arity == 2) {
      auto it = memo_.find(v.child1);
      if (it == memo_.end()) {
        st.push_back(v.child1);
        ready = false;
      } else {
        c1 = &it->second;
      }
    }
    if (!ready) continue;
    memo_.emplace(u, node_value(symbol(v.sym), v.sym, c0, c1));
    st.pop_back();
  }
  return memo_.at(t);
}

BigInt eval_term(TermId t) {
  Evaluator ev;
  return ev.eval(t);
}

namespace {

constexpr uint64_t kMaxLinearEncodingNodes = 10000000;

uint64_t linear_magnitude(const BigInt& a) {
  if (a > BigInt(kMaxLinearEncodingNodes)) {
    throw Error(Errc::RangeError,
                "refusing a unary-family encoding of more than 10000000 nodes");
  }
  return a.convert_to<uint64_t>();
}

// Base-b digits of a > 0, most significant first.
std::vector<int> digits_of(BigInt a, int base) {
  std::vector<int> ds;
  while (a > 0) {
    ds.push_back(int(a % base));
    a /= base;
  }
  std::reverse(ds.begin(), ds.end());
  return ds;
}

}  // namespace

TermId encode_int(const BigInt& n, View view) {
  const bool neg = n < 0;
  BigInt a = neg ? BigInt(-n) : n;
  TermId core = kNoTerm;
  switch (view) {
    case View::Unary: {
      uint64_t m = linear_magnitude(a);
      core = make_term(digit_symbol(0));
      for (uint64_t i = 0; i < m; ++i) core = make_term(kSymS, core);
      break;
    }
    case View::ZeroAppend: {
      uint64_t m = linear_magnitude(a);
      core = make_term(digit_symbol(0));
      for (uint64_t i = 0; i < m; ++i) core = make_term(kSymU0, core);
      break;
    }
    case View::BinaryAppend: {
      if (a <= 1) {
        core = make_term(digit_symbol(int(a)));
      } else {
        std::vector<int> ds = digits_of(a, 2);
        core = make_term(digit_symbol(ds[0]));
        for (size_t i = 1; i < ds.size(); ++i)
          core = make_term(ds[i] == 0 ? kSymB0 : kSymB1, core);
      }
      break;
    }
    case View::DecimalAppend: {
      if (a <= 9) {
        core = make_term(digit_symbol(int(a)));
      } else {
        std::vector<int> ds = digits_of(a, 10);
        core = make_term(digit_symbol(ds[0]));
        for (size_t i = 1; i < ds.size(); ++i) core = make_term(append_symbol(Family::D, ds[i]), core);
      }
      break;
    }
    case View::UnaryTree: {
      uint64_t m = linear_magnitude(a);
      core = make_term(digit_symbol(0));
      TermId zero = core;
      for (uint64_t i = 0; i < m; ++i) core = make_term(kSymTreeU, core, zero);
      break;
    }
    case View::BinaryTree: {
      if (a <= 1) {
        core = make_term(digit_symbol(int(a)));
      } else {
        std::vector<int> ds = digits_of(a, 2);
        core = make_term(digit_symbol(ds[0]));
        for (size_t i = 1; i < ds.size(); ++i)
          core = make_term(kSymTreeB, core, make_term(digit_symbol(ds[i])));
      }
      break;
    }
    case View::DecimalTree: {
      if (a <= 9) {
        core = make_term(digit_symbol(int(a)));
      } else {
        std::vector<int> ds = digits_of(a, 10);
        core = make_term(digit_symbol(ds[0]));
        for (size_t i = 1; i < ds.size(); ++i)
          core = make_term(kSymTreeD, core, make_term(digit_symbol(ds[i])));
      }
      break;
    }
    case View::Ring: {
      uint64_t m = linear_magnitude(a);
      if (m == 0) {
        core = make_term(digit_symbol(0));
      } else {
        TermId one = make_term(digit_symbol(1));
        core = one;
        for (uint64_t i = 1; i < m; ++i) core = make_term(kSymPlus, core, one);
      }
      break;
    }
    case View::None:
      throw Error(Errc::RangeError, "no canonical integer encoding is recorded for this system");
  }
  if (neg) core = make_term(kSymMinus, core);
  return core;
}

namespace {

void collect_vars_of(TermId t, std::array<bool, 4>& seen) {
  if (term_closed(t)) return;
  std::vector<TermId> st;
  st.push_back(t);
  while (!st.empty()) {
    TermId u = st.back();
    st.pop_back();
    if (term_closed(u)) continue;
    TermView v = term(u);
    if (is_var_symbol(v.sym)) {
      seen[size_t(var_index(v.sym))] = true;
      continue;
    }
    if (v.arity >= 1) st.push_back(v.child0);
    if (v.arity == 2) st.push_back(v.child1);
  }
}

// Small deterministic pool of boundary terms over a signature, ordered so
// the smallest / most degenerate assignments come first: 0, then every
// non-constant symbol applied to 0, then 1, the same applied to 1, then the
// remaining digit constants.
std::vector<TermId> boundary_pool(const Signature& sig) {
  std::vector<SymbolId> consts;
  std::vector<SymbolId> others;
  for (SymbolId s : sig.symbols()) {
    (symbol(s).arity == 0 ? consts : others).push_back(s);
  }
  std::vector<TermId> pool;
  TermId zero = make_term(consts.front());
  pool.push_back(zero);
  for (SymbolId s : others) {
    pool.push_back(symbol(s).arity == 1 ? make_term(s, zero) : make_term(s, zero, zero));
  }
  bool has_one = sig.contains(digit_symbol(1));
  if (has_one) {
    TermId one = make_term(digit_symbol(1));
    pool.push_back(one);
    for (SymbolId s : others) {
      pool.push_back(symbol(s).arity == 1 ? make_term(s, one) : make_term(s, one, one));
    }
  }
  for (size_t i = 1; i < consts.size(); ++i) {
    if (has_one && consts[i] == digit_symbol(1)) continue;
    pool.push_back(make_term(consts[i]));
  }
  return pool;
}

}  // namespace

TermId random_closed_term(const Signature& sig, int size, std::mt19937_64& rng) {
  std::vector<SymbolId> consts;
  std::vector<SymbolId> un;
  std::vector<SymbolId> bin;
  for (SymbolId s : sig.symbols()) {
    int a = symbol(s).arity;
    (a == 0 ? consts : a == 1 ? un : bin).push_back(s);
  }
  std::function<TermId(int)> gen = [&](int sz) -> TermId {
    if (un.empty() && sz % 2 == 0) --sz;  // only odd sizes reachable then
    if (sz <= 1) {
      std::uniform_int_distribution<size_t> d(0, consts.size() - 1);
      return make_term(consts[d(rng)]);
    }
    if (sz == 2 || bin.empty()) {
      std::uniform_int_distribution<size_t> d(0, un.size() - 1);
      return make_term(un[d(rng)], gen(sz - 1));
    }
    std::uniform_int_distribution<size_t> d(0, un.size() + bin.size() - 1);
    size_t c = d(rng);
    if (c < un.size()) return make_term(un[c], gen(sz - 1));
    SymbolId b = bin[c - un.size()];
    std::uniform_int_distribution<int> ld(1, sz - 2);
    int ls = ld(rng);
    TermId left = gen(ls);
    return make_term(b, left, gen(sz - 1 - ls));
  };
  return gen(size);
}

SoundnessReport check_system_soundness(const RewriteSystem& sys, uint64_t trials, uint64_t seed) {
  SoundnessReport rep;
  rep.system = sys.name();
  rep.trials = trials;
  rep.seed = seed;
  std::vector<TermId> pool = boundary_pool(sys.sig());
  Evaluator ev;

  for (const RewriteRule& r : sys.rules()) {
    RuleSoundness rs;
    rs.tag = r.tag;

    std::vector<int> vars;
    {
      std::array<bool, 4> seen{};
      collect_vars_of(r.lhs, seen);
      for (int i = 0; i < kNumVars; ++i)
        if (seen[size_t(i)]) vars.push_back(i);
    }

    std::vector<TermId> choice(vars.size());
    auto sound_under = [&](const std::vector<TermId>& c) -> bool {
      Substitution s;
      for (size_t k = 0; k < vars.size(); ++k) s.set(vars[k], c[k]);
      const BigInt& lv = ev.eval(apply_substitution(s, r.lhs));
      const BigInt& rv = ev.eval(apply_substitution(s, r.rhs));
      if (lv == rv) return true;
      if (rs.sound) {
        rs.sound = false;
        for (size_t k = 0; k < vars.size(); ++k) {
          rs.counterexample.emplace_back(symbol(SymbolId(kSymVarX + vars[k])).name,
                                         print_term(c[k]));
        }
        rs.lhs_value = lv.str();
        rs.rhs_value = rv.str();
      }
      return false;
    };

    // Phase 1: every assignment of boundary-pool terms, first variable
    // slowest; stop at the first counterexample.
    std::vector<size_t> idx(vars.size(), 0);
    for (;;) {
      for (size_t k = 0; k < vars.size(); ++k) choice[k] = pool[idx[k]];
      if (!sound_under(choice)) break;
      size_t k = vars.size();
      while (k > 0) {
        if (++idx[k - 1] < pool.size()) break;
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }

    // Phase 2: seeded random closed substitutions.
    if (rs.sound && !vars.empty()) {
      std::seed_seq sq{uint32_t(seed), uint32_t(seed >> 32),
                       uint32_t(std::hash<std::string>{}(r.tag))};
      std::mt19937_64 rng(sq);
      std::uniform_int_distribution<int> size_dist(1, 7);
      for (uint64_t i = 0; i < trials && rs.sound; ++i) {
        for (size_t k = 0; k < vars.size(); ++k)
          choice[k] = random_closed_term(sys.sig(), size_dist(rng), rng);
        sound_under(choice);
      }
    }

    if (!rs.sound) rep.all_sound = false;
    rep.rules.push_back(std::move(rs));
  }
  return rep;
}

std::string soundness_to_json(const SoundnessReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = "soundness-v1";
  j["system"] = rep.system;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["all_sound"] = rep.all_sound;
  nlohmann::ordered_json rules = nlohmann::ordered_json::array();
  for (const RuleSoundness& rs : rep.rules) {
    nlohmann::ordered_json jr;
    jr["tag"] = rs.tag;
    jr["verdict"] = rs.sound ? "sound" : "unsound";
    if (!rs.sound) {
      nlohmann::ordered_json cx = nlohmann::ordered_json::object();
      for (const auto& [var, text] : rs.counterexample) cx[var] = text;
      jr["counterexample"] = std::move(cx);
      jr["lhs_value"] = rs.lhs_value;
      jr["rhs_value"] = rs.rhs_value;
    }
    rules.push_back(std::move(jr));
  }
  j["rules"] = std::move(rules);
  return j.dump(2);
}

}  // namespace ddrs
