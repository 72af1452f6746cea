#include "ddrs/engine.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>
#include <utility>

#include "ddrs/syntax.hpp"
#include "json.hpp"

namespace ddrs {

Strategy parse_strategy(std::string_view name, uint64_t seed) {
  Strategy s;
  s.seed = seed;
  if (name == "innermost") {
    s.kind = StrategyKind::Innermost;
  } else if (name == "outermost") {
    s.kind = StrategyKind::Outermost;
  } else if (name == "random-redex") {
    s.kind = StrategyKind::RandomRedex;
  } else {
    throw Error(Errc::Usage, "unknown strategy '" + std::string(name) +
                                 "' (expected innermost, outermost, or random-redex)");
  }
  return s;
}

std::string strategy_name(const Strategy& s) {
  switch (s.kind) {
    case StrategyKind::Innermost:
      return "innermost";
    case StrategyKind::Outermost:
      return "outermost";
    case StrategyKind::RandomRedex:
      return "random-redex";
  }
  return "innermost";
}

namespace {

// All searches below are iterative so arbitrarily deep terms are safe.
// A set of known-normal term ids prunes repeated scans; normality of a term
// is context-free, so entries stay valid across rewriting steps within one
// system.

struct SearchFrame {
  TermId t;
  int8_t next;  // next child to descend into
};

bool matches_some_rule(const RewriteSystem& sys, TermId t, int32_t* out_rule) {
  TermView v = term(t);
  for (int32_t ri : sys.rules_rooted_at(v.sym)) {
    if (match(sys.rules()[size_t(ri)].lhs, t)) {
      if (out_rule != nullptr) *out_rule = ri;
      return true;
    }
  }
  return false;
}

// Leftmost-innermost redex: children left to right before the node itself.
bool find_innermost(const RewriteSystem& sys, std::unordered_set<TermId>& normal, TermId root,
                    Position& out_pos, int32_t& out_rule) {
  std::vector<SearchFrame> st;
  Position path;
  st.push_back({root, 0});
  while (!st.empty()) {
    SearchFrame& f = st.back();
    if (normal.count(f.t) != 0) {
      st.pop_back();
      if (!st.empty()) path.pop_back();
      continue;
    }
    TermView v = term(f.t);
    if (f.next < v.arity) {
      TermId child = f.next == 0 ? v.child0 : v.child1;
      path.push_back(f.next);
      ++f.next;
      st.push_back({child, 0});
      continue;
    }
    if (matches_some_rule(sys, f.t, &out_rule)) {
      out_pos = path;
      return true;
    }
    normal.insert(f.t);
    st.pop_back();
    if (!st.empty()) path.pop_back();
  }
  return false;
}

// Leftmost-outermost redex: the node itself before its children.
bool find_outermost(const RewriteSystem& sys, std::unordered_set<TermId>& normal, TermId root,
                    Position& out_pos, int32_t& out_rule) {
  struct Frame {
    TermId t;
    int8_t stage;  // 0 = test node, 1 + k = descend into child k
  };
  std::vector<Frame> st;
  Position path;
  st.push_back({root, 0});
  while (!st.empty()) {
    Frame& f = st.back();
    if (f.stage == 0) {
      if (normal.count(f.t) != 0) {
        st.pop_back();
        if (!st.empty()) path.pop_back();
        continue;
      }
      if (matches_some_rule(sys, f.t, &out_rule)) {
        out_pos = path;
        return true;
      }
      f.stage = 1;
      continue;
    }
    TermView v = term(f.t);
    int child_idx = f.stage - 1;
    if (child_idx < v.arity) {
      TermId child = child_idx == 0 ? v.child0 : v.child1;
      ++f.stage;
      path.push_back(int32_t(child_idx));
      st.push_back({child, 0});
      continue;
    }
    normal.insert(f.t);
    st.pop_back();
    if (!st.empty()) path.pop_back();
  }
  return false;
}

// Every redex in pre-order; optionally marks redex-free subtrees as normal.
void collect_redexes(const RewriteSystem& sys, std::unordered_set<TermId>* normal, TermId root,
                     std::vector<Redex>& out) {
  struct Frame {
    TermId t;
    int8_t stage;
    size_t entry_count;  // redexes found before entering this subtree
  };
  std::vector<Frame> st;
  Position path;
  st.push_back({root, 0, out.size()});
  while (!st.empty()) {
    Frame& f = st.back();
    if (f.stage == 0) {
      if (normal != nullptr && normal->count(f.t) != 0) {
        st.pop_back();
        if (!st.empty()) path.pop_back();
        continue;
      }
      TermView v = term(f.t);
      for (int32_t ri : sys.rules_rooted_at(v.sym)) {
        if (match(sys.rules()[size_t(ri)].lhs, f.t)) out.push_back({path, ri});
      }
      f.stage = 1;
      continue;
    }
    TermView v = term(f.t);
    int child_idx = f.stage - 1;
    if (child_idx < v.arity) {
      TermId child = child_idx == 0 ? v.child0 : v.child1;
      ++f.stage;
      path.push_back(int32_t(child_idx));
      st.push_back({child, 0, out.size()});
      continue;
    }
    if (normal != nullptr && out.size() == f.entry_count) normal->insert(f.t);
    st.pop_back();
    if (!st.empty()) path.pop_back();
  }
}

}  // namespace

std::vector<Redex> find_redexes(const RewriteSystem& sys, TermId t) {
  std::vector<Redex> out;
  collect_redexes(sys, nullptr, t, out);
  return out;
}

std::optional<TermId> rewrite_at(const RewriteSystem& sys, TermId t, const Position& pos,
                                 int32_t rule) {
  if (rule < 0 || size_t(rule) >= sys.rules().size())
    throw Error(Errc::RangeError, "rule index out of range");
  TermId sub = subterm_at(t, pos);
  const RewriteRule& r = sys.rules()[size_t(rule)];
  std::optional<Substitution> s = match(r.lhs, sub);
  if (!s) return std::nullopt;
  return replace_at(t, pos, apply_substitution(*s, r.rhs));
}

DerivationTrace normalize(const RewriteSystem& sys, TermId t, Strategy strategy,
                          uint64_t step_limit) {
  DerivationTrace tr;
  tr.system = &sys;
  tr.input = t;
  tr.strategy = strategy;
  tr.outcome = Outcome::NormalForm;
  tr.final_term = t;

  std::unordered_set<TermId> normal;
  std::mt19937_64 rng(strategy.seed);
  TermId cur = t;
  for (uint64_t n = 0; n < step_limit; ++n) {
    Position pos;
    int32_t rule = -1;
    bool found = false;
    switch (strategy.kind) {
      case StrategyKind::Innermost:
        found = find_innermost(sys, normal, cur, pos, rule);
        break;
      case StrategyKind::Outermost:
        found = find_outermost(sys, normal, cur, pos, rule);
        break;
      case StrategyKind::RandomRedex: {
        std::vector<Redex> rs;
        collect_redexes(sys, &normal, cur, rs);
        if (!rs.empty()) {
          std::uniform_int_distribution<size_t> pick(0, rs.size() - 1);
          const Redex& r = rs[pick(rng)];
          pos = r.pos;
          rule = r.rule;
          found = true;
        }
        break;
      }
    }
    if (!found) {
      tr.outcome = Outcome::NormalForm;
      tr.final_term = cur;
      return tr;
    }
    std::optional<TermId> next = rewrite_at(sys, cur, pos, rule);
    if (!next) throw Error(Errc::RangeError, "internal error: selected redex failed to rewrite");
    cur = *next;
    tr.steps.push_back({rule, std::move(pos), cur});
  }
  tr.outcome = Outcome::StepLimit;
  tr.final_term = cur;
  return tr;
}

std::string trace_to_json(const DerivationTrace& tr) {
  nlohmann::ordered_json j;
  j["schema"] = "trace-v1";
  j["system"] = tr.system->name();
  j["input"] = print_term(tr.input);
  j["strategy"] = strategy_name(tr.strategy);
  if (tr.strategy.kind == StrategyKind::RandomRedex) j["seed"] = tr.strategy.seed;
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  uint64_t n = 0;
  for (const Step& s : tr.steps) {
    nlohmann::ordered_json js;
    js["n"] = ++n;
    js["rule"] = tr.system->rules()[size_t(s.rule)].tag;
    js["position"] = s.pos;
    js["result"] = print_term(s.result);
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  j["outcome"] = tr.outcome == Outcome::NormalForm ? "normal-form" : "step-limit-hit";
  j["final"] = print_term(tr.final_term);
  return j.dump(2);
}

NormalFormsResult all_normal_forms(const RewriteSystem& sys, TermId t, uint64_t node_budget) {
  NormalFormsResult res;
  std::unordered_set<TermId> visited;
  std::vector<TermId> work;
  visited.insert(t);
  work.push_back(t);
  bool exceeded = false;
  while (!work.empty() && !exceeded) {
    TermId u = work.back();
    work.pop_back();
    std::vector<Redex> rs;
    collect_redexes(sys, nullptr, u, rs);
    if (rs.empty()) {
      res.forms.push_back(u);
      continue;
    }
    for (const Redex& r : rs) {
      std::optional<TermId> v = rewrite_at(sys, u, r.pos, r.rule);
      if (!v) continue;
      if (visited.insert(*v).second) {
        if (visited.size() > node_budget) {
          exceeded = true;
          break;
        }
        work.push_back(*v);
      }
    }
  }
  res.budget_exceeded = exceeded;
  res.visited = visited.size();
  std::sort(res.forms.begin(), res.forms.end(), term_less);
  return res;
}

bool term_less(TermId a, TermId b) {
  std::vector<std::pair<TermId, TermId>> st;
  st.emplace_back(a, b);
  while (!st.empty()) {
    auto [x, y] = st.back();
    st.pop_back();
    if (x == y) continue;
    TermView vx = term(x);
    TermView vy = term(y);
    if (vx.size != vy.size) return vx.size < vy.size;
    if (vx.sym != vy.sym) return vx.sym < vy.sym;
    if (vx.arity == 2) st.emplace_back(vx.child1, vy.child1);
    if (vx.arity >= 1) st.emplace_back(vx.child0, vy.child0);
  }
  return false;
}

TermId Normalizer::normal_form(TermId root) {
  // Explicit stack: derivation chains can be as long as the rewrite budget,
  // far deeper than the call stack allows.
  struct Frame {
    TermId t;                  // term this frame resolves
    TermId tt = kNoTerm;       // t with normalized children
    TermId pending = kNoTerm;  // rule-step instance awaiting its normal form
    uint8_t stage = 0;
  };
  std::vector<Frame> st;
  st.push_back({root, kNoTerm, kNoTerm, 0});
  while (!st.empty()) {
    Frame& f = st.back();
    if (f.stage == 0) {
      if (memo_.find(f.t) != memo_.end()) {
        st.pop_back();
        continue;
      }
      TermView v = term(f.t);
      f.stage = 1;  // set before push_back: it may invalidate f
      if (v.arity >= 1 && memo_.find(v.child0) == memo_.end())
        st.push_back({v.child0, kNoTerm, kNoTerm, 0});
      if (v.arity == 2 && memo_.find(v.child1) == memo_.end())
        st.push_back({v.child1, kNoTerm, kNoTerm, 0});
      continue;
    }
    if (f.stage == 1) {
      TermView v = term(f.t);
      TermId tt = f.t;
      if (v.arity == 1) {
        tt = make_term(v.sym, memo_.at(v.child0));
      } else if (v.arity == 2) {
        tt = make_term(v.sym, memo_.at(v.child0), memo_.at(v.child1));
      }
      if (tt != f.t) {
        auto hit = memo_.find(tt);
        if (hit != memo_.end()) {
          memo_.emplace(f.t, hit->second);
          st.pop_back();
          continue;
        }
      }
      TermId instance = kNoTerm;
      for (int32_t ri : sys_.rules_rooted_at(term(tt).sym)) {
        const RewriteRule& r = sys_.rules()[size_t(ri)];
        if (std::optional<Substitution> s = match(r.lhs, tt)) {
          if (remaining_ == 0)
            throw Error(Errc::RangeError, "rewrite budget exhausted while normalizing");
          --remaining_;
          instance = apply_substitution(*s, r.rhs);
          break;
        }
      }
      if (instance == kNoTerm) {
        memo_.emplace(f.t, tt);
        if (tt != f.t) memo_.emplace(tt, tt);
        st.pop_back();
        continue;
      }
      f.tt = tt;
      f.pending = instance;
      f.stage = 2;  // set before push_back: it may invalidate f
      if (memo_.find(instance) == memo_.end()) st.push_back({instance, kNoTerm, kNoTerm, 0});
      continue;
    }
    TermId result = memo_.at(f.pending);
    memo_.emplace(f.t, result);
    if (f.tt != f.t) memo_.emplace(f.tt, result);
    st.pop_back();
  }
  return memo_.at(root);
}

bool Normalizer::is_normal_form(TermId t) {
  auto it = normal_memo_.find(t);
  if (it != normal_memo_.end()) return it->second;
  TermView v = term(t);
  bool normal = true;
  if (v.arity >= 1 && !is_normal_form(v.child0)) normal = false;
  if (normal && v.arity == 2 && !is_normal_form(v.child1)) normal = false;
  if (normal && matches_some_rule(sys_, t, nullptr)) normal = false;
  normal_memo_.emplace(t, normal);
  return normal;
}

}  // namespace ddrs
