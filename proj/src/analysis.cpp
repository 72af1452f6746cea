#include "ddrs/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "ddrs/syntax.hpp"
#include "json.hpp"

namespace ddrs {

namespace {

std::vector<std::vector<TermId>> closed_terms_by_size(const Signature& sig, int max_size) {
  std::vector<std::vector<TermId>> by_size(size_t(std::max(max_size, 0)) + 1);
  for (int s = 1; s <= max_size; ++s) {
    std::vector<TermId>& out = by_size[size_t(s)];
    for (SymbolId sym : sig.symbols()) {
      const Symbol& info = symbol(sym);
      if (info.arity == 0) {
        if (s == 1) out.push_back(make_term(sym));
      } else if (info.arity == 1) {
        if (s >= 2)
          for (TermId c : by_size[size_t(s - 1)]) out.push_back(make_term(sym, c));
      } else {
        for (int ls = 1; ls <= s - 2; ++ls)
          for (TermId l : by_size[size_t(ls)])
            for (TermId r : by_size[size_t(s - 1 - ls)]) out.push_back(make_term(sym, l, r));
      }
    }
  }
  return by_size;
}

}  // namespace

std::vector<TermId> enumerate_closed(const Signature& sig, int max_size) {
  std::vector<std::vector<TermId>> by_size = closed_terms_by_size(sig, max_size);
  std::vector<TermId> all;
  size_t total = 0;
  for (const auto& v : by_size) total += v.size();
  all.reserve(total);
  for (const auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
  return all;
}

uint64_t count_closed(const Signature& sig, int max_size) {
  if (max_size < 1) return 0;
  std::vector<uint64_t> c(size_t(max_size) + 1, 0);
  for (int s = 1; s <= max_size; ++s) {
    uint64_t n = 0;
    for (SymbolId sym : sig.symbols()) {
      int a = symbol(sym).arity;
      if (a == 0) {
        if (s == 1) ++n;
      } else if (a == 1) {
        if (s >= 2) n += c[size_t(s - 1)];
      } else {
        for (int ls = 1; ls <= s - 2; ++ls) n += c[size_t(ls)] * c[size_t(s - 1 - ls)];
      }
    }
    c[size_t(s)] = n;
  }
  uint64_t total = 0;
  for (int s = 1; s <= max_size; ++s) total += c[size_t(s)];
  return total;
}

// ---- Normal-form grammars ---------------------------------------------------

namespace {

bool is_digit_in(TermId t, int lo, int hi) {
  TermView v = term(t);
  if (v.arity != 0) return false;
  const Symbol& s = symbol(v.sym);
  return s.kind == SymKind::Constant && s.digit >= lo && s.digit <= hi;
}

// S^n(0), n >= min_n.
bool is_s_chain(TermId t, uint64_t min_n) {
  uint64_t n = 0;
  while (term(t).sym == kSymS) {
    ++n;
    t = term(t).child0;
  }
  return is_digit_in(t, 0, 0) && n >= min_n;
}

// (0):u0...:u0 with n >= min_n appends.
bool is_u0_chain(TermId t, uint64_t min_n) {
  uint64_t n = 0;
  while (term(t).sym == kSymU0) {
    ++n;
    t = term(t).child0;
  }
  return is_digit_in(t, 0, 0) && n >= min_n;
}

// 1 with zero or more :b0/:b1 appends.
bool is_binary_pos(TermId t) {
  while (term(t).sym == kSymB0 || term(t).sym == kSymB1) t = term(t).child0;
  return is_digit_in(t, 1, 1);
}

// core digit 1..9 with zero or more :d appends.
bool is_decimal_pos(TermId t) {
  while (true) {
    TermView v = term(t);
    const Symbol& s = symbol(v.sym);
    if (s.kind == SymKind::Append && s.family == Family::D) {
      t = v.child0;
      continue;
    }
    return is_digit_in(t, 1, 9);
  }
}

// left spine of ^u nodes whose right children are all 0, over core 0.
bool is_utree(TermId t, uint64_t min_n) {
  uint64_t n = 0;
  while (term(t).sym == kSymTreeU && is_digit_in(term(t).child1, 0, 0)) {
    ++n;
    t = term(t).child0;
  }
  return is_digit_in(t, 0, 0) && n >= min_n;
}

// left spine of ^b nodes with digit 0/1 right children, over core 1.
bool is_btree_pos(TermId t) {
  while (term(t).sym == kSymTreeB && is_digit_in(term(t).child1, 0, 1)) t = term(t).child0;
  return is_digit_in(t, 1, 1);
}

// left spine of ^d nodes with digit right children, over core 1..9.
bool is_dtree_pos(TermId t) {
  while (term(t).sym == kSymTreeD && is_digit_in(term(t).child1, 0, 9)) t = term(t).child0;
  return is_digit_in(t, 1, 9);
}

// left spine of + nodes with right child 1, over core 1.
bool is_ring_pos(TermId t) {
  while (term(t).sym == kSymPlus && is_digit_in(term(t).child1, 1, 1)) t = term(t).child0;
  return is_digit_in(t, 1, 1);
}

bool minus_over(TermId t, bool (*pos)(TermId)) {
  TermView v = term(t);
  return v.sym == kSymMinus && pos(v.child0);
}

}  // namespace

bool NormalFormGrammar::contains(TermId t) const {
  switch (view_) {
    case View::Unary:
      if (is_s_chain(t, 0)) return true;
      return signed_ && term(t).sym == kSymMinus && is_s_chain(term(t).child0, 1);
    case View::ZeroAppend:
      if (is_u0_chain(t, 0)) return true;
      return signed_ && term(t).sym == kSymMinus && is_u0_chain(term(t).child0, 1);
    case View::BinaryAppend:
      if (is_digit_in(t, 0, 0) || is_binary_pos(t)) return true;
      return signed_ && minus_over(t, is_binary_pos);
    case View::DecimalAppend:
      if (is_digit_in(t, 0, 0) || is_decimal_pos(t)) return true;
      return signed_ && minus_over(t, is_decimal_pos);
    case View::UnaryTree:
      if (is_utree(t, 0)) return true;
      return signed_ && term(t).sym == kSymMinus && is_utree(term(t).child0, 1);
    case View::BinaryTree:
      if (is_digit_in(t, 0, 0) || is_btree_pos(t)) return true;
      return signed_ && minus_over(t, is_btree_pos);
    case View::DecimalTree:
      if (is_digit_in(t, 0, 0) || is_dtree_pos(t)) return true;
      return signed_ && minus_over(t, is_dtree_pos);
    case View::Ring:
      if (is_digit_in(t, 0, 0) || is_ring_pos(t)) return true;
      return signed_ && minus_over(t, is_ring_pos);
    case View::None:
      break;
  }
  return false;
}

namespace {

std::string grammar_base_name(std::string_view system_name) {
  std::string base(system_name);
  const std::string suffix = "-verbatim";
  if (base.size() > suffix.size() && base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0)
    base.resize(base.size() - suffix.size());
  return base;
}

}  // namespace

bool grammar_defined_for(std::string_view system_name) {
  std::string name(system_name);
  return is_builtin(name) && builtin_view(name) != View::None;
}

NormalFormGrammar grammar_for(std::string_view system_name) {
  std::string name(system_name);
  if (!grammar_defined_for(name)) {
    throw Error(Errc::UnknownSystem,
                "no normal-form grammar is recorded for system '" + name + "'");
  }
  std::string base = grammar_base_name(name);
  bool signed_view = !base.empty() && base[0] != 'N';
  return NormalFormGrammar(builtin_view(name), signed_view);
}

// ---- Ground-confluence desk check ------------------------------------------

const char* ground_failure_kind_name(GroundFailure::Kind k) {
  switch (k) {
    case GroundFailure::Kind::IrreducibleOutsideGrammar:
      return "irreducible-outside-grammar";
    case GroundFailure::Kind::GrammarReducible:
      return "grammar-reducible";
    case GroundFailure::Kind::MultipleNormalForms:
      return "multiple-normal-forms";
    case GroundFailure::Kind::NoNormalForm:
      return "no-normal-form";
    case GroundFailure::Kind::EvalMismatch:
      return "eval-mismatch";
  }
  return "unknown";
}

namespace {

std::vector<TermId> one_step_reducts(const RewriteSystem& sys, TermId t) {
  std::vector<TermId> out;
  for (const Redex& r : find_redexes(sys, t)) {
    if (std::optional<TermId> v = rewrite_at(sys, t, r.pos, r.rule)) out.push_back(*v);
  }
  // Structural order, not interning order: every downstream consumer (search
  // order, recorded counterexamples) stays independent of process history.
  std::sort(out.begin(), out.end(), term_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Reachable-normal-form search over one term's reduction graph. Fills
// `forms` with every irreducible term reachable from `root` (structurally
// sorted, deduplicated) and returns true when the whole graph fits the node
// budget; returns false on budget overrun. The budget charges each distinct
// visited term by its node count, so a graph of few huge terms aborts as
// quickly as a graph of many small ones, and the overrun verdict equals
// "the total node count of the reachable set exceeds the budget" — a pure
// function of the term, independent of traversal order.
//
// Deliberately cache-free across terms: a cross-term memo would make the
// overrun verdict depend on which terms the process happened to analyze
// earlier (cached cones charge nothing), and with it the report would vary
// with worker count and enumeration order. A verification report must not.
bool reachable_normal_forms(const RewriteSystem& sys, TermId root, uint64_t node_budget,
                            std::vector<TermId>& forms) {
  forms.clear();
  std::unordered_set<TermId> visited;
  std::vector<TermId> work;
  uint64_t expanded = 0;
  auto push = [&](TermId t) -> bool {
    if (!visited.insert(t).second) return true;
    expanded += term(t).size;
    if (expanded > node_budget) return false;
    work.push_back(t);
    return true;
  };
  if (!push(root)) return false;
  while (!work.empty()) {
    TermId u = work.back();
    work.pop_back();
    std::vector<TermId> rs = one_step_reducts(sys, u);
    if (rs.empty()) {
      forms.push_back(u);
      continue;
    }
    for (TermId v : rs) {
      if (!push(v)) return false;
    }
  }
  std::sort(forms.begin(), forms.end(), term_less);
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return true;
}

int resolve_workers(int workers) {
  if (workers > 0) return std::min(workers, 64);
  if (const char* env = std::getenv("DDRS_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return std::min(v, 64);
  }
  unsigned hc = std::thread::hardware_concurrency();
  if (hc == 0) hc = 1;
  return int(std::min<unsigned>(hc, 8));
}

struct WorkerOutput {
  std::vector<std::pair<uint64_t, GroundFailure>> failures;
  uint64_t failure_count = 0;
  std::vector<std::pair<uint64_t, TermId>> budget_examples;
  uint64_t budget_exceeded = 0;
  std::vector<std::pair<uint64_t, TermId>> undecided_examples;
  uint64_t undecided = 0;
};

// Per-worker scratch state shared across the terms of one range.
struct WorkerState {
  Evaluator ev;
  Normalizer nrm;
  uint64_t node_budget;
  // Terms whose reduction graph exceeded the budget. A term containing one
  // of these as a subterm provably exceeds it too: every term reachable from
  // the subterm reappears, wrapped in the unchanged context, as a distinct
  // term reachable from the whole, of no smaller node count — so the sweep
  // records the same overrun verdict without repeating the search.
  std::unordered_set<TermId> exhausted;
  std::vector<TermId> forms;  // scratch for reachable_normal_forms
  WorkerState(const RewriteSystem& sys, uint64_t nb) : nrm(sys), node_budget(nb) {}
};

// Fresh rule applications the rejoin fallback may spend per term (the budget
// is reset for every term) before the term is recorded as undecided. The
// normalizer memo persists across terms — normal forms are pure functions of
// the term, so the memo can only change speed, with one caveat: memo hits
// are free, so a warm memo charges fewer applications than a cold one.
// Verdicts stay order-independent because the budget is generous: terms that
// are not bailed out up front (see kMaxRejoinNfValue) normalize in far fewer
// applications even from cold, and cyclic derivations never complete, so
// they overrun any finite budget no matter what is memoized.
constexpr uint64_t kGroundRejoinRewriteBudget = 10000000;
// In views whose canonical form of value v has about |v| nodes (unary,
// zero-append, unary-tree, ring), the rejoin fallback would materialize huge
// terms; past this bound such terms are recorded as undecided up front.
const BigInt kMaxRejoinNfValue = 50000;

bool linear_normal_form_view(View v) {
  return v == View::Unary || v == View::ZeroAppend || v == View::UnaryTree || v == View::Ring;
}

bool contains_exhausted(TermId t, const std::unordered_set<TermId>& exhausted) {
  if (exhausted.empty()) return false;
  std::vector<TermId> st{t};
  while (!st.empty()) {
    TermId u = st.back();
    st.pop_back();
    if (exhausted.count(u) != 0) return true;
    TermView v = term(u);
    if (v.arity >= 1) st.push_back(v.child0);
    if (v.arity == 2) st.push_back(v.child1);
  }
  return false;
}

void check_one_term(const RewriteSystem& sys, TermId t, uint64_t idx,
                    const NormalFormGrammar* grammar, WorkerState& ws, WorkerOutput& out) {
  // At most one failure is recorded per term: the first failing check already
  // exhibits the term as a counterexample, and the later checks would only
  // re-describe the same defect.
  auto record = [&](GroundFailure f) {
    ++out.failure_count;
    if (out.failures.size() < size_t(kMaxRecordedFailures)) out.failures.emplace_back(idx, std::move(f));
  };
  if (ws.nrm.is_normal_form(t)) {
    // The only reachable form is the term itself, so the value-preservation
    // and uniqueness checks are vacuous; only grammar membership can fail.
    if (grammar != nullptr && !grammar->contains(t)) {
      record({GroundFailure::Kind::IrreducibleOutsideGrammar, t, {},
              "irreducible term outside the normal-form grammar"});
    }
    return;
  }
  if (grammar != nullptr && grammar->contains(t)) {
    record({GroundFailure::Kind::GrammarReducible, t, {}, "grammar member has a redex"});
    return;
  }

  // Unique-normal-form evidence: exhaustive graph search when the graph fits
  // the per-term budget, one-step rejoin against the innermost normal form
  // otherwise.
  bool fits = false;
  if (!contains_exhausted(t, ws.exhausted)) {
    fits = reachable_normal_forms(sys, t, ws.node_budget, ws.forms);
    if (!fits) ws.exhausted.insert(t);
  }
  TermId nf = kNoTerm;
  if (fits) {
    const std::vector<TermId>& forms = ws.forms;
    if (forms.empty()) {
      record({GroundFailure::Kind::NoNormalForm, t, {},
              "no normal form reachable (cyclic reduction graph)"});
      return;
    }
    if (forms.size() > 1) {
      GroundFailure f{GroundFailure::Kind::MultipleNormalForms, t, {}, ""};
      f.forms.assign(forms.begin(), forms.begin() + std::min<size_t>(forms.size(), 8));
      f.detail = std::to_string(forms.size()) + " distinct normal forms";
      record(std::move(f));
      return;
    }
    nf = forms[0];
  } else {
    ++out.budget_exceeded;
    if (out.budget_examples.size() < size_t(kMaxRecordedBudgetExamples))
      out.budget_examples.emplace_back(idx, t);
    if (grammar != nullptr && linear_normal_form_view(grammar->view())) {
      BigInt mag = abs(ws.ev.eval(t));
      if (mag > kMaxRejoinNfValue) {
        ++out.undecided;
        if (out.undecided_examples.size() < size_t(kMaxRecordedBudgetExamples))
          out.undecided_examples.emplace_back(idx, t);
        return;
      }
    }
    try {
      ws.nrm.set_rewrite_budget(kGroundRejoinRewriteBudget);
      nf = ws.nrm.normal_form(t);
      for (TermId u : one_step_reducts(sys, t)) {
        TermId nu = ws.nrm.normal_form(u);
        if (nu != nf) {
          GroundFailure f{GroundFailure::Kind::MultipleNormalForms, t, {}, ""};
          f.forms = {nf, nu};
          std::sort(f.forms.begin(), f.forms.end(), term_less);
          f.detail = "one-step reducts normalize to distinct terms";
          record(std::move(f));
          return;
        }
      }
    } catch (const Error&) {
      // Nothing established: the derivation blew the rewrite limit (huge
      // value, or a cyclic derivation). Recorded, not a violation.
      ++out.undecided;
      if (out.undecided_examples.size() < size_t(kMaxRecordedBudgetExamples))
        out.undecided_examples.emplace_back(idx, t);
      return;
    }
  }

  if (grammar != nullptr && !grammar->contains(nf)) {
    record({GroundFailure::Kind::IrreducibleOutsideGrammar, nf, {},
            "normal form of " + print_term(t) + " lies outside the grammar"});
    return;
  }
  const BigInt& tv = ws.ev.eval(t);
  const BigInt& fv = ws.ev.eval(nf);
  if (tv != fv) {
    record({GroundFailure::Kind::EvalMismatch, t, {nf},
            "value " + tv.str() + " but its normal form has value " + fv.str()});
  }
}

GroundReport merge_outputs(const RewriteSystem& sys, int max_size, uint64_t terms_checked,
                           std::vector<WorkerOutput> outs) {
  GroundReport rep;
  rep.system = sys.name();
  rep.max_size = max_size;
  rep.terms_checked = terms_checked;
  std::vector<std::pair<uint64_t, GroundFailure>> merged;
  std::vector<std::pair<uint64_t, TermId>> examples;
  std::vector<std::pair<uint64_t, TermId>> undecided;
  for (WorkerOutput& w : outs) {
    rep.failure_count += w.failure_count;
    rep.budget_exceeded += w.budget_exceeded;
    rep.undecided += w.undecided;
    for (auto& p : w.failures) merged.push_back(std::move(p));
    for (auto& p : w.budget_examples) examples.push_back(p);
    for (auto& p : w.undecided_examples) undecided.push_back(p);
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (merged.size() > size_t(kMaxRecordedFailures)) merged.resize(size_t(kMaxRecordedFailures));
  rep.failures.reserve(merged.size());
  for (auto& p : merged) rep.failures.push_back(std::move(p.second));
  std::sort(examples.begin(), examples.end());
  if (examples.size() > size_t(kMaxRecordedBudgetExamples))
    examples.resize(size_t(kMaxRecordedBudgetExamples));
  for (auto& p : examples) rep.budget_examples.push_back(p.second);
  std::sort(undecided.begin(), undecided.end());
  if (undecided.size() > size_t(kMaxRecordedBudgetExamples))
    undecided.resize(size_t(kMaxRecordedBudgetExamples));
  for (auto& p : undecided) rep.undecided_examples.push_back(p.second);
  return rep;
}

}  // namespace

GroundReport check_ground_confluence(const RewriteSystem& sys, int max_size, uint64_t node_budget,
                                     int workers) {
  std::vector<std::vector<TermId>> levels = closed_terms_by_size(sys.sig(), max_size);
  std::optional<NormalFormGrammar> grammar;
  if (grammar_defined_for(sys.name())) grammar = grammar_for(sys.name());
  const NormalFormGrammar* g = grammar ? &*grammar : nullptr;

  int nw = resolve_workers(workers);
  std::vector<WorkerOutput> outs(static_cast<size_t>(nw));
  std::vector<std::unique_ptr<WorkerState>> states;
  states.reserve(size_t(nw));
  for (int w = 0; w < nw; ++w) states.push_back(std::make_unique<WorkerState>(sys, node_budget));

  // Workers advance one size level at a time. Every proper subterm of a
  // level-s term lives at an earlier level, so unioning the workers'
  // exhausted sets at the level boundary lets every worker skip, in linear
  // time, each graph that provably cannot fit the budget.
  std::unordered_set<TermId> shared_exhausted;
  uint64_t base_idx = 0;
  for (int s = 1; s <= max_size; ++s) {
    const std::vector<TermId>& level = levels[size_t(s)];
    if (level.empty()) continue;
    int lw = nw;
    if (size_t(lw) > level.size()) lw = int(level.size());
    auto run_range = [&](int w) {
      size_t lo = level.size() * size_t(w) / size_t(lw);
      size_t hi = level.size() * size_t(w + 1) / size_t(lw);
      for (size_t i = lo; i < hi; ++i)
        check_one_term(sys, level[i], base_idx + i, g, *states[size_t(w)], outs[size_t(w)]);
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < lw; ++w) threads.emplace_back(run_range, w);
    run_range(0);
    for (std::thread& th : threads) th.join();
    for (int w = 0; w < lw; ++w)
      shared_exhausted.insert(states[size_t(w)]->exhausted.begin(),
                              states[size_t(w)]->exhausted.end());
    for (int w = 0; w < nw; ++w) states[size_t(w)]->exhausted = shared_exhausted;
    base_idx += level.size();
  }
  return merge_outputs(sys, max_size, base_idx, std::move(outs));
}

GroundReport check_ground_confluence_sampled(const RewriteSystem& sys, uint64_t count,
                                             int max_size, uint64_t seed, uint64_t node_budget) {
  std::optional<NormalFormGrammar> grammar;
  if (grammar_defined_for(sys.name())) grammar = grammar_for(sys.name());
  const NormalFormGrammar* g = grammar ? &*grammar : nullptr;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(1, max_size);
  std::vector<WorkerOutput> outs(1);
  WorkerState ws(sys, node_budget);
  for (uint64_t i = 0; i < count; ++i) {
    TermId t = random_closed_term(sys.sig(), size_dist(rng), rng);
    check_one_term(sys, t, i, g, ws, outs[0]);
  }
  GroundReport rep = merge_outputs(sys, max_size, count, std::move(outs));
  return rep;
}

std::string ground_report_to_json(const GroundReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = "ground-v1";
  j["system"] = rep.system;
  j["max_size"] = rep.max_size;
  j["checked"] = rep.terms_checked;
  j["failure_count"] = rep.failure_count;
  j["ok"] = rep.ok();
  j["budget_exceeded"] = rep.budget_exceeded;
  if (!rep.budget_examples.empty()) {
    nlohmann::ordered_json ex = nlohmann::ordered_json::array();
    for (TermId t : rep.budget_examples) ex.push_back(print_term(t));
    j["budget_exceeded_examples"] = std::move(ex);
  }
  j["undecided"] = rep.undecided;
  if (!rep.undecided_examples.empty()) {
    nlohmann::ordered_json ex = nlohmann::ordered_json::array();
    for (TermId t : rep.undecided_examples) ex.push_back(print_term(t));
    j["undecided_examples"] = std::move(ex);
  }
  nlohmann::ordered_json fails = nlohmann::ordered_json::array();
  for (const GroundFailure& f : rep.failures) {
    nlohmann::ordered_json jf;
    jf["kind"] = ground_failure_kind_name(f.kind);
    jf["term"] = print_term(f.term);
    if (!f.forms.empty()) {
      nlohmann::ordered_json forms = nlohmann::ordered_json::array();
      for (TermId ft : f.forms) forms.push_back(print_term(ft));
      jf["forms"] = std::move(forms);
    }
    if (!f.detail.empty()) jf["detail"] = f.detail;
    fails.push_back(std::move(jf));
  }
  j["failures"] = std::move(fails);
  return j.dump(2);
}

// ---- Weight certificates ----------------------------------------------------

WeightExpr w_const(long num, long den) {
  WeightExpr e;
  e.k = WeightExpr::K::Const;
  e.c = Rational(num, den);
  return e;
}

WeightExpr w_arg(int i) {
  WeightExpr e;
  e.k = i == 0 ? WeightExpr::K::Arg0 : WeightExpr::K::Arg1;
  return e;
}

WeightExpr w_add(WeightExpr a, WeightExpr b) {
  WeightExpr e;
  e.k = WeightExpr::K::Add;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

WeightExpr w_mul(WeightExpr a, WeightExpr b) {
  WeightExpr e;
  e.k = WeightExpr::K::Mul;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

namespace {

Rational eval_weight_expr(const WeightExpr& e, const Rational* a0, const Rational* a1) {
  switch (e.k) {
    case WeightExpr::K::Const:
      return e.c;
    case WeightExpr::K::Arg0:
      if (a0 == nullptr) throw Error(Errc::RangeError, "weight expression uses a missing child");
      return *a0;
    case WeightExpr::K::Arg1:
      if (a1 == nullptr) throw Error(Errc::RangeError, "weight expression uses a missing child");
      return *a1;
    case WeightExpr::K::Add:
      return eval_weight_expr(e.kids[0], a0, a1) + eval_weight_expr(e.kids[1], a0, a1);
    case WeightExpr::K::Mul:
      return eval_weight_expr(e.kids[0], a0, a1) * eval_weight_expr(e.kids[1], a0, a1);
  }
  return Rational(0);
}

}  // namespace

void WeightCertificate::set(SymbolId sym, WeightExpr e) {
  for (auto& [s, expr] : entries_) {
    if (s == sym) {
      expr = std::move(e);
      return;
    }
  }
  entries_.emplace_back(sym, std::move(e));
}

bool WeightCertificate::has(SymbolId sym) const {
  for (const auto& [s, expr] : entries_) {
    if (s == sym) return true;
  }
  return false;
}

Rational WeightCertificate::weight(TermId t) const {
  // Iterative post-order with a per-call memo.
  std::unordered_map<TermId, Rational> memo;
  std::vector<TermId> st;
  st.push_back(t);
  while (!st.empty()) {
    TermId u = st.back();
    if (memo.count(u) != 0) {
      st.pop_back();
      continue;
    }
    TermView v = term(u);
    const WeightExpr* e = nullptr;
    for (const auto& [s, expr] : entries_) {
      if (s == v.sym) {
        e = &expr;
        break;
      }
    }
    if (e == nullptr) {
      throw Error(Errc::RangeError,
                  "weight certificate does not cover symbol '" + symbol(v.sym).name + "'");
    }
    bool ready = true;
    const Rational* a0 = nullptr;
    const Rational* a1 = nullptr;
    if (v.arity >= 1) {
      auto it = memo.find(v.child0);
      if (it == memo.end()) {
        st.push_back(v.child0);
        ready = false;
      } else {
        a0 = &it->second;
      }
    }
    if (v.arity == 2) {
      auto it = memo.find(v.child1);
      if (it == memo.end()) {
        st.push_back(v.child1);
        ready = false;
      } else {
        a1 = &it->second;
      }
    }
    if (!ready) continue;
    memo.emplace(u, eval_weight_expr(*e, a0, a1));
    st.pop_back();
  }
  return memo.at(t);
}

WeightCertificate ring_weight_certificate() {
  WeightCertificate cert;
  cert.set(digit_symbol(0), w_const(2));
  cert.set(digit_symbol(1), w_const(2));
  cert.set(kSymMinus, w_add(w_const(1), w_mul(w_const(3, 2), w_arg(0))));
  cert.set(kSymPlus, w_add(w_arg(0), w_mul(w_const(2), w_arg(1))));
  cert.set(kSymTimes, w_mul(w_arg(0), w_mul(w_arg(1), w_arg(1))));
  return cert;
}

bool has_weight_certificate(std::string_view system_name) { return system_name == "RingZ"; }

namespace {

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

void collect_pattern_vars(TermId t, std::array<bool, 4>& seen) {
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

}  // namespace

WeightReport check_weight_certificate(const RewriteSystem& sys, const WeightCertificate& cert,
                                      int max_subst_size) {
  for (SymbolId s : sys.sig().symbols()) {
    if (!cert.has(s)) {
      throw Error(Errc::RangeError,
                  "weight certificate does not cover symbol '" + symbol(s).name + "'");
    }
  }
  WeightReport rep;
  rep.system = sys.name();
  rep.max_subst_size = max_subst_size;
  std::vector<TermId> domain = enumerate_closed(sys.sig(), max_subst_size);

  for (const RewriteRule& r : sys.rules()) {
    std::vector<int> vars;
    {
      std::array<bool, 4> seen{};
      collect_pattern_vars(r.lhs, seen);
      for (int i = 0; i < kNumVars; ++i)
        if (seen[size_t(i)]) vars.push_back(i);
    }
    std::vector<size_t> idx(vars.size(), 0);
    while (true) {
      Substitution s;
      for (size_t k = 0; k < vars.size(); ++k) s.set(vars[k], domain[idx[k]]);
      TermId li = apply_substitution(s, r.lhs);
      TermId ri = apply_substitution(s, r.rhs);
      Rational lw = cert.weight(li);
      Rational rw = cert.weight(ri);
      ++rep.instances_checked;
      if (!(lw > rw)) {
        ++rep.violation_count;
        if (rep.violations.size() < 8) {
          WeightViolation v;
          v.tag = r.tag;
          std::string sub;
          for (size_t k = 0; k < vars.size(); ++k) {
            if (!sub.empty()) sub += ", ";
            sub += symbol(SymbolId(kSymVarX + vars[k])).name + " := " + print_term(domain[idx[k]]);
          }
          v.substitution = sub;
          v.lhs_weight = rational_text(lw);
          v.rhs_weight = rational_text(rw);
          rep.violations.push_back(std::move(v));
        }
      }
      size_t k = vars.size();
      while (k > 0) {
        if (++idx[k - 1] < domain.size()) break;
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }
  return rep;
}

std::string weight_report_to_json(const WeightReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = "weights-v1";
  j["system"] = rep.system;
  j["max_subst_size"] = rep.max_subst_size;
  j["instances_checked"] = rep.instances_checked;
  j["violation_count"] = rep.violation_count;
  j["ok"] = rep.ok();
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const WeightViolation& v : rep.violations) {
    nlohmann::ordered_json jv;
    jv["tag"] = v.tag;
    jv["substitution"] = v.substitution;
    jv["lhs_weight"] = v.lhs_weight;
    jv["rhs_weight"] = v.rhs_weight;
    vs.push_back(std::move(jv));
  }
  j["violations"] = std::move(vs);
  return j.dump(2);
}

// ---- Status reports ---------------------------------------------------------

namespace {

const char* view_text(View v) {
  switch (v) {
    case View::Unary:
      return "unary";
    case View::ZeroAppend:
      return "unary zero-append";
    case View::BinaryAppend:
      return "binary append";
    case View::DecimalAppend:
      return "decimal append";
    case View::UnaryTree:
      return "unary tree";
    case View::BinaryTree:
      return "binary tree";
    case View::DecimalTree:
      return "decimal tree";
    case View::Ring:
      return "ring";
    case View::None:
      break;
  }
  return "none";
}

std::string status_line(const char* label, const char* word, const std::string& note) {
  std::string s = std::string(label) + ": " + word;
  if (!note.empty()) s += " — " + note;
  s += "\n";
  return s;
}

}  // namespace

std::string status_report(std::string_view system_name, int desk_max_size,
                          uint64_t desk_node_budget) {
  std::string name(system_name);
  if (!is_builtin(name)) {
    throw Error(Errc::UnknownSystem, "unknown system '" + name + "'");
  }
  SystemStatus st = builtin_status(name);
  View v = builtin_view(name);

  const RewriteSystem* sys = nullptr;
  std::string expansion_error;
  try {
    sys = &builtin(name);
  } catch (const Error& e) {
    expansion_error = e.what();
  }

  std::string out;
  out += "system: " + name + "\n";
  out += std::string("view: ") + view_text(v) + "\n";
  if (sys != nullptr) {
    out += "signature: " + sys->sig().name() + "\n";
    out += "rules: " + std::to_string(sys->rules().size()) + "\n";
  } else {
    out += "rules: expansion fails — " + expansion_error + "\n";
  }
  out += status_line("termination", st.termination == SystemStatus::Termination::Proven ? "proven" : "open",
                     st.termination_note);
  out += status_line("confluence", st.confluence == SystemStatus::Confluence::Refuted ? "refuted" : "open",
                     st.confluence_note);
  out += status_line("ground-confluence",
                     st.ground_confluence == SystemStatus::GroundConfluence::Proven ? "proven" : "open",
                     st.ground_confluence_note);

  if (sys == nullptr) {
    out += "desk check: skipped — the rule set does not expand\n";
    return out;
  }

  out += "desk check (fresh evidence; the recorded statuses above are unchanged):\n";
  GroundReport gr = check_ground_confluence(*sys, desk_max_size, desk_node_budget);
  out += "  ground sweep over closed terms of size <= " + std::to_string(desk_max_size) + ": " +
         std::to_string(gr.terms_checked) + " terms, " + std::to_string(gr.failure_count) +
         " failures";
  if (gr.budget_exceeded > 0)
    out += ", " + std::to_string(gr.budget_exceeded) +
           " graphs past the budget (rejoin evidence only)";
  if (gr.undecided > 0) out += ", " + std::to_string(gr.undecided) + " undecided";
  out += "\n";
  if (!gr.failures.empty()) {
    const GroundFailure& f = gr.failures.front();
    out += std::string("    first failure: ") + ground_failure_kind_name(f.kind) + " at " +
           print_term(f.term) + "\n";
  }
  SoundnessReport sr = check_system_soundness(*sys, 20);
  if (sr.all_sound) {
    out += "  soundness audit (20 random trials per rule): all rules sound\n";
  } else {
    std::string bad;
    for (const RuleSoundness& rs : sr.rules) {
      if (!rs.sound) {
        if (!bad.empty()) bad += ", ";
        bad += "[" + rs.tag + "]";
      }
    }
    out += "  soundness audit (20 random trials per rule): unsound rules: " + bad + "\n";
  }
  return out;
}

}  // namespace ddrs
