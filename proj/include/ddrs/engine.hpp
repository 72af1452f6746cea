#pragma once
// Rewriting engine: redex discovery, single steps, traced normalization under
// three strategies, exhaustive reduction graphs, and a memoizing normalizer
// for bulk work.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ddrs/catalog.hpp"

namespace ddrs {

enum class StrategyKind : uint8_t { Innermost, Outermost, RandomRedex };

struct Strategy {
  StrategyKind kind = StrategyKind::Innermost;
  uint64_t seed = 0;  // RandomRedex only
};

// "innermost" | "outermost" | "random-redex"; throws Error(Usage) otherwise.
Strategy parse_strategy(std::string_view name, uint64_t seed = 0);
std::string strategy_name(const Strategy& s);  // without the seed

struct Redex {
  Position pos;
  int32_t rule;  // index into system rule order
};

// Every redex, in pre-order (root before children, children left to right);
// multiple matching rules at one position appear in system order.
std::vector<Redex> find_redexes(const RewriteSystem& sys, TermId t);

// Applies one rule at one position; nullopt when the rule does not match
// there (a normal outcome, not an error).
std::optional<TermId> rewrite_at(const RewriteSystem& sys, TermId t, const Position& pos,
                                 int32_t rule);

inline constexpr uint64_t kDefaultStepLimit = 1000000;
inline constexpr uint64_t kDefaultNodeBudget = 10000000;

struct Step {
  int32_t rule;
  Position pos;
  TermId result;
};

enum class Outcome : uint8_t { NormalForm, StepLimit };

struct DerivationTrace {
  const RewriteSystem* system;
  TermId input;
  Strategy strategy;
  std::vector<Step> steps;
  Outcome outcome;
  TermId final_term;
};

// Step-by-step normalization under a strategy. Innermost picks the leftmost
// innermost redex, outermost the leftmost outermost one, random-redex picks
// uniformly among all redexes with a seeded deterministic generator.
DerivationTrace normalize(const RewriteSystem& sys, TermId t, Strategy strategy = {},
                          uint64_t step_limit = kDefaultStepLimit);

// trace-v1 JSON rendering of a derivation.
std::string trace_to_json(const DerivationTrace& trace);

struct NormalFormsResult {
  std::vector<TermId> forms;  // canonical order
  bool budget_exceeded = false;
  uint64_t visited = 0;  // distinct terms seen in the reduction graph
};

// Exhaustive reduction graph search collecting every reachable normal form.
// The budget bounds the number of distinct terms visited; cycles are safe.
NormalFormsResult all_normal_forms(const RewriteSystem& sys, TermId t,
                                   uint64_t node_budget = kDefaultNodeBudget);

// Canonical term order: size, then root symbol id, then children.
bool term_less(TermId a, TermId b);

// Memoizing leftmost-innermost normalizer. Step-for-step equivalent to
// normalize(sys, t, Innermost) on terminating systems, without the trace.
// Not reentrant; use one instance per thread.
class Normalizer {
 public:
  explicit Normalizer(const RewriteSystem& sys) : sys_(sys) {}
  // Throws Error(RangeError) when the rewrite budget runs out first.
  TermId normal_form(TermId t);
  // True when no rule matches anywhere in t (pure test, never rewrites).
  bool is_normal_form(TermId t);
  // Rule applications normal_form may still perform; memoized results are
  // free. Defaults to effectively unlimited.
  void set_rewrite_budget(uint64_t n) { remaining_ = n; }
  const RewriteSystem& system() const { return sys_; }

 private:
  const RewriteSystem& sys_;
  uint64_t remaining_ = ~uint64_t{0};
  std::unordered_map<TermId, TermId> memo_;
  std::unordered_map<TermId, bool> normal_memo_;
};

}  // namespace ddrs
