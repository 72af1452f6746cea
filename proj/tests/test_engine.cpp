#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ddrs/analysis.hpp"
#include "ddrs/catalog.hpp"
#include "ddrs/engine.hpp"
#include "ddrs/syntax.hpp"
#include "ddrs/term.hpp"

using namespace ddrs;

namespace {

TermId pt(const RewriteSystem& sys, const std::string& text) {
  return parse_term(text, sys.sig());
}

std::string tag_of(const RewriteSystem& sys, int32_t rule) {
  return sys.rules()[size_t(rule)].tag;
}

// A two-rule cyclic system over the ring signature (never terminates).
RewriteSystem cyclic_system() {
  return load_system(
      "# ddrs-format 1\n"
      "system cycle over ring\n"
      "rule [c1]: 0 -> 1\n"
      "rule [c2]: 1 -> 0\n");
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("strategy names parse and print") {
  CHECK(parse_strategy("innermost").kind == StrategyKind::Innermost);
  CHECK(parse_strategy("outermost").kind == StrategyKind::Outermost);
  Strategy r = parse_strategy("random-redex", 42);
  CHECK(r.kind == StrategyKind::RandomRedex);
  CHECK(r.seed == 42);
  CHECK(strategy_name(Strategy{StrategyKind::Innermost, 0}) == "innermost");
  CHECK(strategy_name(Strategy{StrategyKind::Outermost, 0}) == "outermost");
  CHECK(strategy_name(Strategy{StrategyKind::RandomRedex, 7}) == "random-redex");
  try {
    parse_strategy("leftmost");
    FAIL("expected a usage error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Usage);
  }
}

TEST_CASE("find_redexes is pre-order and every redex actually fires") {
  const RewriteSystem& zbud = builtin("Zbud");

  // The classic prefix peak: exactly two redexes, root rule first.
  TermId peak = pt(zbud, "P(-(-(1:b0)))");
  std::vector<Redex> rx = find_redexes(zbud, peak);
  REQUIRE(rx.size() == 2);
  CHECK(tag_of(zbud, rx[0].rule) == "b22");
  CHECK(rx[0].pos == Position{});
  CHECK(tag_of(zbud, rx[1].rule) == "b17");
  CHECK(rx[1].pos == Position{0});
  CHECK(print_term(*rewrite_at(zbud, peak, rx[0].pos, rx[0].rule)) == "-S(-1:b0)");
  CHECK(print_term(*rewrite_at(zbud, peak, rx[1].pos, rx[1].rule)) == "P(1:b0)");

  // Redexes on a normal form: none.
  CHECK(find_redexes(zbud, pt(zbud, "1:b0")).empty());
  CHECK(find_redexes(zbud, pt(zbud, "0")).empty());

  // Pre-order positions are lexicographically non-decreasing by construction
  // and every reported redex rewrites.
  TermId busy = pt(zbud, "(2+3)*(P(0)+S(1:b1))");
  std::vector<Redex> all = find_redexes(zbud, busy);
  CHECK(all.size() >= 3);
  for (size_t i = 1; i < all.size(); ++i) {
    CHECK(!std::lexicographical_compare(all[i].pos.begin(), all[i].pos.end(),
                                        all[i - 1].pos.begin(), all[i - 1].pos.end()));
  }
  for (const Redex& r : all) CHECK(rewrite_at(zbud, busy, r.pos, r.rule).has_value());

  // The tree association peak exposes re-association at two positions.
  const RewriteSystem& zbi = builtin("Zbi");
  TermId assoc = pt(zbi, "0 ^b (0 ^b (0 ^b 0))");
  std::set<std::string> seen;
  for (const Redex& r : find_redexes(zbi, assoc)) {
    std::string key = tag_of(zbi, r.rule) + "@";
    for (int32_t p : r.pos) key += std::to_string(p);
    seen.insert(key);
  }
  CHECK(seen.count("bi2@"));
  CHECK(seen.count("bi2@1"));
}

TEST_CASE("rewrite_at: non-matching rules return nullopt, bad positions throw") {
  const RewriteSystem& zbud = builtin("Zbud");
  TermId t = pt(zbud, "1+0");
  // Some rule index whose lhs cannot match at the root of 1+0: use a rule
  // rooted at * if any matches nothing here.
  bool found_nonmatching = false;
  for (int32_t i = 0; i < int32_t(zbud.rules().size()); ++i) {
    if (!rewrite_at(zbud, t, {}, i).has_value()) {
      found_nonmatching = true;
      break;
    }
  }
  CHECK(found_nonmatching);
  try {
    rewrite_at(zbud, t, {0, 0, 0}, 0);
    FAIL("expected invalid-position");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidPosition);
  }
}

TEST_CASE("innermost normalization pins") {
  const RewriteSystem& zbud = builtin("Zbud");
  DerivationTrace tr = normalize(zbud, pt(zbud, "2+1"));
  CHECK(tr.outcome == Outcome::NormalForm);
  CHECK(print_term(tr.final_term) == "1:b1");

  // The full four-step derivation of the peak term, frozen.
  DerivationTrace peak = normalize(zbud, pt(zbud, "P(-(-(1:b0)))"));
  REQUIRE(peak.steps.size() == 4);
  CHECK(tag_of(zbud, peak.steps[0].rule) == "b17");
  CHECK(peak.steps[0].pos == Position{0});
  CHECK(print_term(peak.steps[0].result) == "P(1:b0)");
  CHECK(tag_of(zbud, peak.steps[1].rule) == "b20");
  CHECK(peak.steps[1].pos == Position{});
  CHECK(print_term(peak.steps[1].result) == "P(1):b1");
  CHECK(tag_of(zbud, peak.steps[2].rule) == "b19");
  CHECK(peak.steps[2].pos == Position{0});
  CHECK(tag_of(zbud, peak.steps[3].rule) == "b1.1");
  CHECK(print_term(peak.final_term) == "1");

  const RewriteSystem& ndub = builtin("Ndub");
  CHECK(print_term(normalize(ndub, pt(ndub, "S((9:d9):d9)")).final_term) == "((1:d0):d0):d0");

  const RewriteSystem& zubd = builtin("Zubd");
  CHECK(print_term(normalize(zubd, pt(zubd, "-S(S(0))")).final_term) == "-S(S(0))");
  CHECK(print_term(normalize(zubd, pt(zubd, "S(P(0))")).final_term) == "0");
}

TEST_CASE("property: every trace step replays via rewrite_at") {
  const RewriteSystem& zbud = builtin("Zbud");
  for (const char* text : {"2+1", "P(-(-(1:b0)))", "(3+4)*5", "9*9", "-(7*-3)",
                           "S(P(S(0)))*2", "(1:d7)*(2+2)"}) {
    CAPTURE(text);
    for (StrategyKind k : {StrategyKind::Innermost, StrategyKind::Outermost}) {
      DerivationTrace tr = normalize(zbud, pt(zbud, text), Strategy{k, 0});
      REQUIRE(tr.outcome == Outcome::NormalForm);
      TermId cur = tr.input;
      for (const Step& s : tr.steps) {
        std::optional<TermId> next = rewrite_at(zbud, cur, s.pos, s.rule);
        REQUIRE(next.has_value());
        CHECK(*next == s.result);
        cur = s.result;
      }
      CHECK(cur == tr.final_term);
      CHECK(find_redexes(zbud, cur).empty());
    }
  }
}

TEST_CASE("strategies agree on normal forms over enumerated ground terms") {
  // Zbud is recorded ground-confluent: all strategies end at the same form.
  const RewriteSystem& zbud = builtin("Zbud");
  std::vector<TermId> terms = enumerate_closed(zbud.sig(), 3);
  CHECK(terms.size() == 2610);
  int random_checked = 0;
  for (size_t i = 0; i < terms.size(); ++i) {
    TermId t = terms[i];
    TermId inn = normalize(zbud, t, Strategy{StrategyKind::Innermost, 0}).final_term;
    TermId out = normalize(zbud, t, Strategy{StrategyKind::Outermost, 0}).final_term;
    CHECK(inn == out);
    if (i % 97 == 0) {  // sparse random-strategy spot checks keep this fast
      TermId rnd = normalize(zbud, t, Strategy{StrategyKind::RandomRedex, i}).final_term;
      CHECK(rnd == inn);
      ++random_checked;
    }
  }
  CHECK(random_checked == 27);
}

TEST_CASE("random-redex is deterministic per seed") {
  const RewriteSystem& zbud = builtin("Zbud");
  TermId t = pt(zbud, "(2+3)*(P(0)+S(1:b1))");
  DerivationTrace a = normalize(zbud, t, Strategy{StrategyKind::RandomRedex, 7});
  DerivationTrace b = normalize(zbud, t, Strategy{StrategyKind::RandomRedex, 7});
  REQUIRE(a.steps.size() == b.steps.size());
  for (size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].rule == b.steps[i].rule);
    CHECK(a.steps[i].pos == b.steps[i].pos);
    CHECK(a.steps[i].result == b.steps[i].result);
  }
  DerivationTrace c = normalize(zbud, t, Strategy{StrategyKind::RandomRedex, 8});
  CHECK(c.final_term == a.final_term);  // same normal form either way
}

TEST_CASE("step limit reports a truncated derivation") {
  RewriteSystem cyc = cyclic_system();
  DerivationTrace tr = normalize(cyc, make_term(digit_symbol(0)), Strategy{}, 25);
  CHECK(tr.outcome == Outcome::StepLimit);
  CHECK(tr.steps.size() == 25);
  // 0 -> 1 -> 0 -> ... alternates forever.
  CHECK(tr.steps[0].result == make_term(digit_symbol(1)));
  CHECK(tr.steps[1].result == make_term(digit_symbol(0)));
}

TEST_CASE("trace json carries schema, rules and outcome") {
  const RewriteSystem& zbud = builtin("Zbud");
  DerivationTrace tr = normalize(zbud, pt(zbud, "2+1"));
  std::string js = trace_to_json(tr);
  CHECK(js.find("\"schema\": \"trace-v1\"") != std::string::npos);
  CHECK(js.find("\"system\": \"Zbud\"") != std::string::npos);
  CHECK(js.find("\"strategy\": \"innermost\"") != std::string::npos);
  CHECK(js.find("\"outcome\": \"normal-form\"") != std::string::npos);
  CHECK(js.find("\"final\": \"1:b1\"") != std::string::npos);

  RewriteSystem cyc = cyclic_system();
  std::string cut = trace_to_json(normalize(cyc, make_term(digit_symbol(0)), Strategy{}, 3));
  CHECK(cut.find("\"outcome\": \"step-limit-hit\"") != std::string::npos);
}

TEST_CASE("all_normal_forms: singletons, genuine splits, budget flag") {
  const RewriteSystem& zbud = builtin("Zbud");
  NormalFormsResult one = all_normal_forms(zbud, pt(zbud, "P(-(-(1:b0)))"));
  REQUIRE(one.forms.size() == 1);
  CHECK(print_term(one.forms[0]) == "1");
  CHECK(!one.budget_exceeded);
  CHECK(one.visited >= 5);

  // The flawed unary variant genuinely splits: 0+S(0) reaches 0 and S(0).
  const RewriteSystem& flawed = builtin("Zubd-verbatim");
  NormalFormsResult split = all_normal_forms(flawed, pt(flawed, "0+S(0)"));
  REQUIRE(split.forms.size() == 2);
  CHECK(print_term(split.forms[0]) == "0");
  CHECK(print_term(split.forms[1]) == "S(0)");

  // Canonical order: forms come back sorted by term_less.
  CHECK(term_less(split.forms[0], split.forms[1]));
  CHECK(!term_less(split.forms[1], split.forms[0]));

  NormalFormsResult capped = all_normal_forms(zbud, pt(zbud, "9*9*9"), 3);
  CHECK(capped.budget_exceeded);
  CHECK(capped.visited == 4);  // the count includes the term that tripped the bound
}

TEST_CASE("term_less is a strict total order keyed by size first") {
  const RewriteSystem& zbud = builtin("Zbud");
  std::vector<TermId> terms = enumerate_closed(zbud.sig(), 2);
  REQUIRE(terms.size() == 160);
  for (size_t i = 0; i < terms.size(); ++i) {
    CHECK(!term_less(terms[i], terms[i]));
    for (size_t j = i + 1; j < terms.size(); ++j) {
      CHECK(term_less(terms[i], terms[j]) != term_less(terms[j], terms[i]));
    }
  }
  CHECK(std::is_sorted(terms.begin(), terms.end(), term_less));
  CHECK(term_less(pt(zbud, "9"), pt(zbud, "S(0)")));  // size beats symbol
}

TEST_CASE("memoizing normalizer matches the traced engine") {
  const RewriteSystem& zbud = builtin("Zbud");
  Normalizer nrm(zbud);
  for (TermId t : enumerate_closed(zbud.sig(), 3)) {
    TermId a = nrm.normal_form(t);
    TermId b = normalize(zbud, t).final_term;
    CHECK(a == b);
    CHECK(nrm.is_normal_form(t) == find_redexes(zbud, t).empty());
  }
}

TEST_CASE("normalizer rewrite budget throws and can be replenished") {
  const RewriteSystem& zubd = builtin("Zubd");
  // S^k(0) * S^k(0) needs many unary rule applications.
  TermId big = parse_term("S(S(S(S(S(S(S(S(0))))))))", zubd.sig());
  TermId prod = make_term(kSymTimes, big, big);
  Normalizer tight(zubd);
  tight.set_rewrite_budget(3);
  try {
    tight.normal_form(prod);
    FAIL("expected the rewrite budget to run out");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RangeError);
  }
  tight.set_rewrite_budget(1000000);
  TermId nf = tight.normal_form(prod);
  CHECK(nf == normalize(zubd, prod).final_term);

  RewriteSystem cyc = cyclic_system();
  Normalizer cnrm(cyc);
  cnrm.set_rewrite_budget(100);
  try {
    cnrm.normal_form(make_term(digit_symbol(0)));
    FAIL("expected the rewrite budget to stop the cycle");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RangeError);
  }
}

}  // TEST_SUITE("engine")
