#pragma once
// Integer semantics: exact evaluation of closed terms, canonical encodings of
// integers in each view, and the eval-based soundness audit for rule sets.

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ddrs/catalog.hpp"

namespace ddrs {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer value of a closed term; throws Error(OpenTerm) on variables.
BigInt eval_term(TermId t);

// Evaluation with a persistent memo over shared subterms.
class Evaluator {
 public:
  const BigInt& eval(TermId t);

 private:
  std::unordered_map<TermId, BigInt> memo_;
};

// The canonical representation of n in a view (the normal form the view's
// systems rewrite to). Unary-family encodings grow linearly in |n|.
// Throws Error(RangeError) for negative n in a View without negation
// semantics only when impossible to represent; all eight views cover all of
// the integers except that the three "nat" grammars coincide with n >= 0
// (callers pass the signed view; negative input yields the minus-wrapped
// form, which is only meaningful for the integer systems).
TermId encode_int(const BigInt& n, View view);

inline constexpr uint64_t kDefaultAuditSeed = 20160809;

struct RuleSoundness {
  std::string tag;
  bool sound = true;
  // Variable name -> term text, present only when unsound.
  std::vector<std::pair<std::string, std::string>> counterexample;
  std::string lhs_value;  // decimal value of lhs under the counterexample
  std::string rhs_value;
};

struct SoundnessReport {
  std::string system;
  uint64_t trials = 0;
  uint64_t seed = 0;
  std::vector<RuleSoundness> rules;  // one entry per rule, system order
  bool all_sound = true;
};

// Checks eval(lhs sigma) == eval(rhs sigma) for every rule: first over a
// deterministic pool of boundary terms (all assignments of pool terms to the
// rule's variables), then over `trials` seeded random closed substitutions.
// The reported counterexample is the first failing assignment, so it is
// deterministic and minimal with respect to the pool order.
SoundnessReport check_system_soundness(const RewriteSystem& sys, uint64_t trials = 100,
                                       uint64_t seed = kDefaultAuditSeed);

std::string soundness_to_json(const SoundnessReport& report);

// Uniform-ish random closed term over a signature with the exact target size
// when reachable (falls back to the nearest smaller reachable size).
TermId random_closed_term(const Signature& sig, int size, std::mt19937_64& rng);

}  // namespace ddrs
