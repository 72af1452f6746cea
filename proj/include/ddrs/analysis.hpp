#pragma once
// Verification workbench: canonical enumeration of closed terms, normal-form
// grammars per view, the ground-confluence desk check, termination weight
// certificates, and textual status reports.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ddrs/engine.hpp"
#include "ddrs/semantics.hpp"

namespace ddrs {

using Rational = boost::multiprecision::cpp_rational;

// All closed terms over sig with size <= max_size, in canonical order
// (size ascending; within a size: root symbol in signature order, then
// children recursively in the same order).
std::vector<TermId> enumerate_closed(const Signature& sig, int max_size);

// Independent count of the same set (dynamic program over sizes).
uint64_t count_closed(const Signature& sig, int max_size);

// Normal-form grammar of a named builtin system (membership predicate).
// "-verbatim" variants share their base system's grammar.
class NormalFormGrammar {
 public:
  NormalFormGrammar(View view, bool signed_view) : view_(view), signed_(signed_view) {}
  bool contains(TermId t) const;
  View view() const { return view_; }
  bool signed_view() const { return signed_; }

 private:
  View view_;
  bool signed_;
};

bool grammar_defined_for(std::string_view system_name);
NormalFormGrammar grammar_for(std::string_view system_name);  // throws UnknownSystem

struct GroundFailure {
  enum class Kind : uint8_t {
    IrreducibleOutsideGrammar,  // no redex, yet not in the grammar
    GrammarReducible,           // in the grammar, yet has a redex
    MultipleNormalForms,        // two distinct reachable normal forms exhibited
    NoNormalForm,               // no normal form found (cycle or rewrite limit)
    EvalMismatch,               // the normal form changes the value
  };
  Kind kind;
  TermId term;
  std::vector<TermId> forms;  // for MultipleNormalForms, canonical order
  std::string detail;
};

const char* ground_failure_kind_name(GroundFailure::Kind k);

struct GroundReport {
  std::string system;
  int max_size = 0;
  uint64_t terms_checked = 0;
  uint64_t failure_count = 0;
  std::vector<GroundFailure> failures;  // first few, deterministic order
  // Terms whose reduction graph was larger than the per-term budget. Not
  // violations: each such term still passes the one-step rejoin check and
  // the grammar/eval checks, but uniqueness of its normal form rests on
  // that local evidence instead of the exhaustive graph.
  uint64_t budget_exceeded = 0;
  std::vector<TermId> budget_examples;  // first few, deterministic order
  // Subset of the budget-exceeded terms whose rejoin fallback was skipped or
  // hit its rewrite limit (e.g. a term denoting a huge value in a view whose
  // canonical forms grow linearly with the value), so nothing was established
  // about their normal forms. Not violations either, but a sweep with
  // undecided terms is weaker evidence.
  uint64_t undecided = 0;
  std::vector<TermId> undecided_examples;  // first few, deterministic order
  bool ok() const { return failure_count == 0; }
};

inline constexpr int kMaxRecordedFailures = 64;
inline constexpr int kMaxRecordedBudgetExamples = 16;

// Per-term reduction-graph budget for the ground sweep, counted in nodes
// (each distinct visited term charges its node count). Small by design: a
// term containing a digit-append like x:d3 rewrites into repeated
// multiplication, and the duplicated factors make the count of distinct
// reachable terms grow exponentially with term size, so graphs past this
// budget are abandoned in favour of the rejoin fallback.
inline constexpr uint64_t kDefaultGroundBudget = 5000;

// Per enumerated closed term t (size <= max_size), checks:
//   (a) t irreducible  =>  t in the grammar,
//   (b) t in the grammar  =>  t irreducible,
//   (c) the set of reachable normal forms of t is a singleton {n}
//       (exhaustive graph search within the per-term budget; where the graph
//       is larger, n := innermost normal form and every one-step reduct of t
//       must normalize to n — a disagreement exhibits two reachable normal
//       forms and is a definite violation),
//   (d) n is in the grammar and eval(n) == eval(t).
// The first failing check records the term as one failure; the later checks
// are then skipped, so failure_count counts failing terms, not diagnoses.
// Every per-term verdict (failure, budget-exceeded, undecided) is a function
// of the term and the budget alone, so the report does not depend on the
// worker count or on anything checked earlier in the process.
// workers = 0 reads DDRS_WORKERS (else hardware concurrency, capped).
GroundReport check_ground_confluence(const RewriteSystem& sys, int max_size,
                                     uint64_t node_budget = kDefaultGroundBudget,
                                     int workers = 0);

// Same checks over `count` seeded random closed terms of size <= max_size
// (sampled per-term sizes are uniform over reachable sizes).
GroundReport check_ground_confluence_sampled(const RewriteSystem& sys, uint64_t count,
                                             int max_size, uint64_t seed,
                                             uint64_t node_budget = kDefaultGroundBudget);

std::string ground_report_to_json(const GroundReport& report);

// ---- Termination weight certificates -------------------------------------

// Weight of a symbol as an expression over its children's weights.
struct WeightExpr {
  enum class K : uint8_t { Const, Arg0, Arg1, Add, Mul } k = K::Const;
  Rational c;                   // K::Const
  std::vector<WeightExpr> kids;  // K::Add / K::Mul: exactly two
};

WeightExpr w_const(long num, long den = 1);
WeightExpr w_arg(int i);
WeightExpr w_add(WeightExpr a, WeightExpr b);
WeightExpr w_mul(WeightExpr a, WeightExpr b);

class WeightCertificate {
 public:
  void set(SymbolId sym, WeightExpr e);
  bool has(SymbolId sym) const;
  Rational weight(TermId t) const;  // throws Error(RangeError) on uncovered symbol

 private:
  std::vector<std::pair<SymbolId, WeightExpr>> entries_;
};

// The recorded strict-decrease certificate for the ring-view system:
//   |0| = |1| = 2,  |-x| = 1 + (3/2)|x|,  |x+y| = |x| + 2|y|,  |x*y| = |x| * |y|^2.
WeightCertificate ring_weight_certificate();

// True when a recorded certificate exists for the named builtin.
bool has_weight_certificate(std::string_view system_name);

struct WeightViolation {
  std::string tag;
  std::string substitution;  // "x := t, y := u"
  std::string lhs_weight;    // exact rational, as "p/q" or integer text
  std::string rhs_weight;
};

struct WeightReport {
  std::string system;
  int max_subst_size = 0;
  uint64_t instances_checked = 0;
  std::vector<WeightViolation> violations;  // first few
  uint64_t violation_count = 0;
  bool ok() const { return violation_count == 0; }
};

// Checks strict decrease |lhs sigma| > |rhs sigma| for every rule and every
// substitution built from closed terms of size <= max_subst_size.
WeightReport check_weight_certificate(const RewriteSystem& sys, const WeightCertificate& cert,
                                      int max_subst_size);

std::string weight_report_to_json(const WeightReport& report);

// ---- Status reports -------------------------------------------------------

// Human-readable record for a named builtin: signature, rule count, recorded
// termination / confluence / ground-confluence statuses with notes, plus a
// small fresh desk check (evidence only; never upgrades a recorded status).
std::string status_report(std::string_view system_name, int desk_max_size = 3,
                          uint64_t desk_node_budget = kDefaultGroundBudget);

}  // namespace ddrs
