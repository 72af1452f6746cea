#include "doctest.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "ddrs/analysis.hpp"
#include "ddrs/catalog.hpp"
#include "ddrs/engine.hpp"
#include "ddrs/semantics.hpp"
#include "ddrs/syntax.hpp"
#include "ddrs/term.hpp"

using namespace ddrs;

namespace {

BigInt ev(const std::string& text, const char* sig = "int-append") {
  return eval_term(parse_term(text, signature(sig)));
}

}  // namespace

TEST_SUITE("semantics") {

TEST_CASE("eval pins for every operator") {
  CHECK(ev("0") == 0);
  CHECK(ev("9") == 9);
  CHECK(ev("S(0)") == 1);
  CHECK(ev("P(0)") == -1);
  CHECK(ev("S(P(5))") == 5);
  CHECK(ev("-7") == -7);
  CHECK(ev("--7") == 7);
  CHECK(ev("2+3") == 5);
  CHECK(ev("2*3") == 6);
  CHECK(ev("(2+3)*(1+1)") == 10);
  CHECK(ev("-(2*-3)") == 6);

  // Digit appends: x:bi = 2x+i, x:di = 10x+i, x:u0 = x+1.
  CHECK(ev("1:b0") == 2);
  CHECK(ev("1:b1") == 3);
  CHECK(ev("(1:b1):b0") == 6);
  CHECK(ev("9:d9") == 99);
  CHECK(ev("(9:d7):d5") == 975);
  CHECK(ev("-(1:d0)") == -10);
  CHECK(ev("0:u0", "int-zeroappend") == 1);
  CHECK(ev("(0:u0):u0", "int-zeroappend") == 2);

  // Tree constructors: t^u s = t+s+1, t^b s = 2t+s, t^d s = 10t+s.
  CHECK(ev("0^u0", "int-treeu") == 1);
  CHECK(ev("(0^u0)^u(0^u0)", "int-treeu") == 3);
  CHECK(ev("1^b1", "int-treeb") == 3);
  CHECK(ev("(1^b1)^b0", "int-treeb") == 6);
  CHECK(ev("(9^d7)^d5", "int-treed") == 975);
  CHECK(ev("-(1^d2)", "int-treed") == -12);
}

TEST_CASE("eval rejects open terms") {
  TermId open = make_term(kSymPlus, make_var(0), make_term(digit_symbol(1)));
  try {
    eval_term(open);
    FAIL("expected an open-term error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OpenTerm);
  }
}

TEST_CASE("memoized evaluator agrees with the one-shot evaluator") {
  Evaluator shared;
  for (const char* sig : {"int-append", "int-treed", "int-zeroappend"}) {
    CAPTURE(sig);
    for (TermId t : enumerate_closed(signature(sig), 3)) {
      CHECK(shared.eval(t) == eval_term(t));
    }
  }
}

TEST_CASE("encode_int shape pins across the eight views") {
  const Signature& za = signature("int-append");
  CHECK(encode_int(0, View::Unary) == parse_term("0", za));
  CHECK(encode_int(3, View::Unary) == parse_term("S(S(S(0)))", za));
  CHECK(encode_int(-2, View::Unary) == parse_term("-S(S(0))", za));
  CHECK(encode_int(3, View::ZeroAppend) ==
        parse_term("((0:u0):u0):u0", signature("int-zeroappend")));
  CHECK(encode_int(6, View::BinaryAppend) == parse_term("(1:b1):b0", za));
  CHECK(encode_int(1, View::BinaryAppend) == parse_term("1", za));
  CHECK(encode_int(975, View::DecimalAppend) == parse_term("(9:d7):d5", za));
  CHECK(encode_int(10, View::DecimalAppend) == parse_term("1:d0", za));
  CHECK(encode_int(2, View::UnaryTree) == parse_term("(0^u0)^u0", signature("int-treeu")));
  CHECK(encode_int(6, View::BinaryTree) == parse_term("(1^b1)^b0", signature("int-treeb")));
  CHECK(encode_int(975, View::DecimalTree) == parse_term("(9^d7)^d5", signature("int-treed")));
  CHECK(encode_int(0, View::Ring) == parse_term("0", signature("ring")));
  CHECK(encode_int(3, View::Ring) == parse_term("(1+1)+1", signature("ring")));
  CHECK(encode_int(-3, View::Ring) == parse_term("-((1+1)+1)", signature("ring")));

  try {
    encode_int(5, View::None);
    FAIL("expected a range error for a viewless encoding");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RangeError);
  }
}

TEST_CASE("encode_int round-trips through eval and is injective") {
  for (View v : {View::Unary, View::ZeroAppend, View::BinaryAppend, View::DecimalAppend,
                 View::UnaryTree, View::BinaryTree, View::DecimalTree, View::Ring}) {
    CAPTURE(int(v));
    std::set<TermId> seen;
    for (int n = -40; n <= 40; ++n) {
      TermId t = encode_int(n, v);
      CHECK(eval_term(t) == n);
      seen.insert(t);
    }
    CHECK(seen.size() == 81);  // injective on the sampled range
  }

  // Positional views handle numbers far beyond machine words.
  BigInt big("1000000000000000000000000000007");
  for (View v : {View::BinaryAppend, View::DecimalAppend, View::BinaryTree, View::DecimalTree}) {
    CAPTURE(int(v));
    CHECK(eval_term(encode_int(big, v)) == big);
    CHECK(eval_term(encode_int(-big, v)) == -big);
  }

  // Unary-family encodings refuse astronomically many nodes.
  try {
    encode_int(big, View::Unary);
    FAIL("expected a range error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RangeError);
  }
}

TEST_CASE("encoded integers are normal forms of their systems") {
  struct Pair {
    const char* system;
    View view;
  };
  for (const Pair& p : {Pair{"Zubd", View::Unary}, Pair{"Zu1", View::ZeroAppend},
                        Pair{"Zbud", View::BinaryAppend}, Pair{"Zdub", View::DecimalAppend},
                        Pair{"Zut", View::UnaryTree}, Pair{"Zbi", View::BinaryTree},
                        Pair{"Zdt", View::DecimalTree}, Pair{"RingZ", View::Ring}}) {
    CAPTURE(p.system);
    const RewriteSystem& sys = builtin(p.system);
    CHECK(builtin_view(p.system) == p.view);
    for (int n = -25; n <= 25; ++n) {
      CAPTURE(n);
      TermId t = encode_int(n, p.view);
      CHECK(find_redexes(sys, t).empty());
    }
  }
  // Natural-number systems: canonical non-negative encodings only.
  for (const Pair& p : {Pair{"Nubd", View::Unary}, Pair{"Nu1", View::ZeroAppend},
                        Pair{"Nbud", View::BinaryAppend}, Pair{"Ndub", View::DecimalAppend},
                        Pair{"Nut", View::UnaryTree}, Pair{"Nbt", View::BinaryTree},
                        Pair{"Ndt", View::DecimalTree}}) {
    CAPTURE(p.system);
    const RewriteSystem& sys = builtin(p.system);
    for (int n = 0; n <= 25; ++n) {
      CAPTURE(n);
      CHECK(find_redexes(sys, encode_int(n, p.view)).empty());
    }
  }
}

TEST_CASE("property: rewriting preserves the integer value") {
  // Sample derivations across views; every step keeps eval constant.
  struct Probe {
    const char* system;
    const char* term;
  };
  for (const Probe& p : {Probe{"Zbud", "9*9"}, Probe{"Zbud", "P(-(-(1:b0)))"},
                         Probe{"Ndub", "S((9:d9):d9)"}, Probe{"Zubd", "P(P(0))*S(S(0))"},
                         Probe{"Zu1", "-(0:u0)*(0:u0)"}, Probe{"Zdt", "(9^d9)*(2+3)"},
                         Probe{"Zbi", "(1^b1)*(0^b1)"}, Probe{"RingZ", "-(1+1)*(1+1+1)"},
                         Probe{"Zut", "(0^u0)*(0^u0^u0)"}, Probe{"Nbt", "(1^b1)*(1^b0)"}}) {
    CAPTURE(p.system);
    CAPTURE(p.term);
    const RewriteSystem& sys = builtin(p.system);
    TermId t = parse_term(p.term, sys.sig());
    BigInt value = eval_term(t);
    DerivationTrace tr = normalize(sys, t);
    REQUIRE(tr.outcome == Outcome::NormalForm);
    for (const Step& s : tr.steps) CHECK(eval_term(s.result) == value);
    // The normal form is the canonical encoding of the value.
    CHECK(tr.final_term == encode_int(value, sys.view()));
  }
}

TEST_CASE("soundness audit: every corrected built-in is sound") {
  for (const std::string& name : builtin_names()) {
    if (name == "Zdub-verbatim" || name == "Zubd-verbatim") continue;
    CAPTURE(name);
    SoundnessReport rep = check_system_soundness(builtin(name), 25);
    CHECK(rep.all_sound);
    CHECK(rep.system == name);
    CHECK(rep.rules.size() == builtin(name).rules().size());
    for (const RuleSoundness& rs : rep.rules) CHECK(rs.sound);
  }
}

TEST_CASE("soundness audit: the verbatim unary system fails exactly at its zero rule") {
  const RewriteSystem& sys = builtin("Zubd-verbatim");
  SoundnessReport rep = check_system_soundness(sys);
  CHECK(!rep.all_sound);
  std::vector<std::string> unsound;
  for (const RuleSoundness& rs : rep.rules)
    if (!rs.sound) unsound.push_back(rs.tag);
  REQUIRE(unsound == std::vector<std::string>{"u8"});
  for (const RuleSoundness& rs : rep.rules) {
    if (rs.sound) continue;
    // Minimal counterexample: x := S(0) makes the sides evaluate to 1 and 0.
    REQUIRE(rs.counterexample.size() == 1);
    CHECK(rs.counterexample[0].first == "x");
    CHECK(rs.counterexample[0].second == "S(0)");
    CHECK(rs.lhs_value == "1");
    CHECK(rs.rhs_value == "0");
  }

  std::string js = soundness_to_json(rep);
  CHECK(js.find("\"schema\": \"soundness-v1\"") != std::string::npos);
  CHECK(js.find("\"all_sound\": false") != std::string::npos);
  CHECK(js.find("\"u8\"") != std::string::npos);
  CHECK(js.find("S(0)") != std::string::npos);
}

TEST_CASE("soundness audit is deterministic for a fixed seed") {
  const RewriteSystem& sys = builtin("Zubd-verbatim");
  SoundnessReport a = check_system_soundness(sys, 50, 123);
  SoundnessReport b = check_system_soundness(sys, 50, 123);
  CHECK(soundness_to_json(a) == soundness_to_json(b));
  CHECK(a.seed == 123);
  CHECK(a.trials == 50);
}

TEST_CASE("random_closed_term hits the requested size and stays in signature") {
  std::mt19937_64 rng(7);
  const Signature& za = signature("int-append");
  for (int size : {1, 2, 3, 7, 20}) {
    CAPTURE(size);
    for (int k = 0; k < 20; ++k) {
      TermId t = random_closed_term(za, size, rng);
      CHECK(term_closed(t));
      CHECK(term_size(t) == size);
      std::vector<TermId> stack{t};
      while (!stack.empty()) {
        TermView v = term(stack.back());
        stack.pop_back();
        CHECK(za.contains(v.sym));
        if (v.child0 != kNoTerm) stack.push_back(v.child0);
        if (v.child1 != kNoTerm) stack.push_back(v.child1);
      }
    }
  }

  // nat-treeb has constants and binary symbols only: even sizes are
  // unreachable and fall back to the nearest smaller reachable size.
  const Signature& tb = signature("nat-treeb");
  for (int k = 0; k < 10; ++k) {
    TermId t = random_closed_term(tb, 4, rng);
    CHECK(term_size(t) == 3);
  }

  // Seeded reproducibility.
  std::mt19937_64 r1(99), r2(99);
  for (int k = 0; k < 25; ++k) CHECK(random_closed_term(za, 9, r1) == random_closed_term(za, 9, r2));
}

}  // TEST_SUITE("semantics")
