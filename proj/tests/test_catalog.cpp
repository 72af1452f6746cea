#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ddrs/catalog.hpp"
#include "ddrs/syntax.hpp"
#include "ddrs/term.hpp"

using namespace ddrs;

namespace {

// Frozen rule counts for every expandable built-in.
const std::map<std::string, size_t> kRuleCounts = {
    {"Nubd", 25}, {"Zubd", 35}, {"Zubd-verbatim", 35}, {"Nu1", 4},  {"Zu1", 12},
    {"Nbud", 36}, {"Zbud", 60}, {"Ndub", 172},         {"Zdub", 445},
    {"Nut", 5},   {"Zut", 18},  {"Nbt", 10},           {"Zbi", 25}, {"Ndt", 62},
    {"Zdt", 218}, {"RingZ", 15}};

template <typename Fn>
Errc error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Usage;  // unreachable
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("built-in catalog lists exactly the seventeen systems") {
  std::vector<std::string> names = builtin_names();
  std::vector<std::string> expected = {
      "Nubd", "Zubd", "Zubd-verbatim", "Nu1", "Zu1",  "Nbud", "Zbud", "Ndub", "Zdub",
      "Zdub-verbatim", "Nut", "Zut", "Nbt", "Zbi", "Ndt", "Zdt", "RingZ"};
  CHECK(names == expected);
  for (const std::string& n : names) CHECK(is_builtin(n));
  CHECK(!is_builtin("Zxx"));
  CHECK(!is_builtin(""));
  CHECK(error_code_of([] { builtin("Zxx"); }) == Errc::UnknownSystem);
  CHECK(error_code_of([] { builtin_source("Zxx"); }) == Errc::UnknownSystem);
}

TEST_CASE("expanded rule counts match the frozen catalog") {
  for (const auto& [name, count] : kRuleCounts) {
    CAPTURE(name);
    const RewriteSystem& sys = builtin(name);
    CHECK(sys.rules().size() == count);
    CHECK(sys.name() == name);
  }
}

TEST_CASE("rule tags are unique and every lhs is indexed under its root") {
  for (const auto& [name, count] : kRuleCounts) {
    CAPTURE(name);
    const RewriteSystem& sys = builtin(name);
    std::set<std::string> tags;
    for (const RewriteRule& r : sys.rules()) {
      tags.insert(r.tag);
      CHECK(!term_is_var(r.lhs));
      CHECK(sys.sig().contains(term(r.lhs).sym));
    }
    CHECK(tags.size() == sys.rules().size());

    size_t indexed = 0;
    for (SymbolId s = 0; s < kUniverseSize; ++s) {
      for (int32_t idx : sys.rules_rooted_at(s)) {
        CHECK(term(sys.rules()[size_t(idx)].lhs).sym == s);
        ++indexed;
      }
    }
    CHECK(indexed == sys.rules().size());
    CHECK(sys.rules_rooted_at(kSymVarX).empty());
  }

  // Digits 2..9 are redexes of the binary view (rewritten to successor form).
  const RewriteSystem& zbud = builtin("Zbud");
  CHECK(zbud.rules_rooted_at(digit_symbol(2)).size() == 1);
  CHECK(zbud.rules_rooted_at(digit_symbol(9)).size() == 1);
  CHECK(zbud.rules_rooted_at(digit_symbol(0)).empty());
  CHECK(zbud.rules_rooted_at(digit_symbol(1)).empty());
}

TEST_CASE("the verbatim decimal system fails expansion exactly as recorded") {
  try {
    builtin("Zdub-verbatim");
    FAIL("expected the expansion to fail");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MetaDigitOutOfDomain);
    CHECK(std::string(e.what()).find("0* is undefined") != std::string::npos);
    CHECK(e.line() == 31);
  }
  // Status, view and source remain available without expansion.
  CHECK(builtin_view("Zdub-verbatim") == View::DecimalAppend);
  const SystemStatus& st = builtin_status("Zdub-verbatim");
  CHECK(st.termination == SystemStatus::Termination::Proven);
  CHECK(!builtin_source("Zdub-verbatim").empty());
  DdrsFile f = parse_ddrs_file(builtin_source("Zdub-verbatim"));
  CHECK(f.system_name == "Zdub-verbatim");
  CHECK(f.signature_name == "int-append");
}

TEST_CASE("views and recorded statuses of the built-ins") {
  CHECK(builtin_view("Nubd") == View::Unary);
  CHECK(builtin_view("Zubd") == View::Unary);
  CHECK(builtin_view("Zubd-verbatim") == View::Unary);
  CHECK(builtin_view("Nu1") == View::ZeroAppend);
  CHECK(builtin_view("Zu1") == View::ZeroAppend);
  CHECK(builtin_view("Nbud") == View::BinaryAppend);
  CHECK(builtin_view("Zbud") == View::BinaryAppend);
  CHECK(builtin_view("Ndub") == View::DecimalAppend);
  CHECK(builtin_view("Zdub") == View::DecimalAppend);
  CHECK(builtin_view("Nut") == View::UnaryTree);
  CHECK(builtin_view("Zut") == View::UnaryTree);
  CHECK(builtin_view("Nbt") == View::BinaryTree);
  CHECK(builtin_view("Zbi") == View::BinaryTree);
  CHECK(builtin_view("Ndt") == View::DecimalTree);
  CHECK(builtin_view("Zdt") == View::DecimalTree);
  CHECK(builtin_view("RingZ") == View::Ring);

  using T = SystemStatus::Termination;
  using C = SystemStatus::Confluence;
  using G = SystemStatus::GroundConfluence;

  const SystemStatus& zbud = builtin_status("Zbud");
  CHECK(zbud.termination == T::Proven);
  CHECK(zbud.confluence == C::Refuted);
  CHECK(zbud.ground_confluence == G::Proven);
  CHECK(zbud.confluence_note.find("P(-(-x))") != std::string::npos);

  const SystemStatus& zdt = builtin_status("Zdt");
  CHECK(zdt.termination == T::Open);
  CHECK(zdt.termination_note.find("Kluiving") != std::string::npos);
  CHECK(zdt.confluence == C::Refuted);
  CHECK(zdt.ground_confluence == G::Open);

  const SystemStatus& zdub = builtin_status("Zdub");
  CHECK(zdub.ground_confluence == G::Open);
  CHECK(zdub.ground_confluence_note.find("open question") != std::string::npos);

  CHECK(builtin_status("RingZ").termination == T::Proven);
  CHECK(builtin_status("RingZ").ground_confluence == G::Proven);
  CHECK(builtin_status("Nbt").ground_confluence_note.find("Walters & Zantema") !=
        std::string::npos);
  CHECK(builtin_status("Zdt").termination_note.find("open question") != std::string::npos);
}

TEST_CASE("parse_ddrs_file reads header, comments and schema lines") {
  const char* text =
      "# ddrs-format 1\n"
      "# a comment line\n"
      "system demo over int-append\n"
      "\n"
      "rule [a1]: 0 + x -> x\n"
      "rule [a2.i] for i in 0..8: {i'} -> S({i})\n"
      "rule [a3.i.j] for i in 0..9, j in 0..9: x:d{i} + {j} -> x:d{i} + {j}\n";
  DdrsFile f = parse_ddrs_file(text);
  CHECK(f.system_name == "demo");
  CHECK(f.signature_name == "int-append");
  REQUIRE(f.schemas.size() == 3);
  CHECK(f.schemas[0].tag_template == "a1");
  CHECK(f.schemas[0].indices.empty());
  CHECK(f.schemas[0].line == 5);
  CHECK(f.schemas[1].indices.size() == 1);
  CHECK(f.schemas[1].indices[0].name == 'i');
  CHECK(f.schemas[1].indices[0].lo == 0);
  CHECK(f.schemas[1].indices[0].hi == 8);
  CHECK(f.schemas[2].indices.size() == 2);
  CHECK(f.schemas[2].indices[1].name == 'j');
  CHECK(f.schemas[2].line == 7);
}

TEST_CASE("parse_ddrs_file rejects malformed files with the right codes") {
  CHECK(error_code_of([] { parse_ddrs_file("system demo over ring\n"); }) ==
        Errc::MissingHeader);
  CHECK(error_code_of([] { parse_ddrs_file("# ddrs-format 1\n"); }) == Errc::MissingHeader);
  CHECK(error_code_of([] {
          parse_ddrs_file("# ddrs-format 1\nsystem demo\n");
        }) == Errc::MissingHeader);
  CHECK(error_code_of([] {
          parse_ddrs_file("# ddrs-format 1\nsystem d over ring\nrule a: 0 -> 0\n");
        }) == Errc::SyntaxError);
  CHECK(error_code_of([] {
          parse_ddrs_file("# ddrs-format 1\nsystem d over ring\nrule [a]: 0 + -> 0\n");
        }) == Errc::SyntaxError);
  CHECK(error_code_of([] {
          parse_ddrs_file("# ddrs-format 1\nsystem d over ring\nrule [a]: 0 + 0 > 0\n");
        }) == Errc::SyntaxError);
  CHECK(error_code_of([] {
          parse_ddrs_file(
              "# ddrs-format 1\nsystem d over ring\nrule [a.i] for i in 5..3: {i} -> 0\n");
        }) == Errc::RangeError);
  CHECK(error_code_of([] {
          parse_ddrs_file(
              "# ddrs-format 1\nsystem d over ring\nrule [a.i] for i in 0..8, i in 0..8: {i} -> 0\n");
        }) == Errc::RangeError);

  // Error positions are 1-based line/column.
  try {
    parse_ddrs_file("# ddrs-format 1\nsystem d over ring\nrule [a]: 0 + ( -> 0\n");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(e.line() == 3);
    CHECK(e.col() > 10);
  }
}

TEST_CASE("expand_schema instantiates tags and digit operations") {
  DdrsFile f = parse_ddrs_file(
      "# ddrs-format 1\n"
      "system demo over int-append\n"
      "rule [s.i] for i in 0..8: {i'} -> S({i})\n"
      "rule [g.i.j] for i in 0..1, j in 1..3: x:b{i} * {j} -> x:b{i}\n");
  std::vector<RewriteRule> succ = expand_schema(f.schemas[0]);
  REQUIRE(succ.size() == 9);
  CHECK(succ.front().tag == "s.0");
  CHECK(succ.back().tag == "s.8");
  // {i'} with i = 3 instantiates the digit 4 on the left, 3 inside S on the right.
  CHECK(succ[3].lhs == make_term(digit_symbol(4)));
  CHECK(succ[3].rhs == make_term(kSymS, make_term(digit_symbol(3))));

  std::vector<RewriteRule> grid = expand_schema(f.schemas[1]);
  REQUIRE(grid.size() == 2 * 3);
  std::vector<std::string> tags;
  for (const RewriteRule& r : grid) tags.push_back(r.tag);
  CHECK(tags == std::vector<std::string>{"g.0.1", "g.0.2", "g.0.3", "g.1.1", "g.1.2", "g.1.3"});

  // Digit successor of 9 is undefined.
  DdrsFile bad = parse_ddrs_file(
      "# ddrs-format 1\nsystem demo over int-append\n"
      "rule [t.i] for i in 0..9: {i'} -> S({i})\n");
  CHECK(error_code_of([&] { expand_schema(bad.schemas[0]); }) == Errc::MetaDigitOutOfDomain);

  // Expanding a binary append outside {0,1} names a missing symbol.
  DdrsFile badapp = parse_ddrs_file(
      "# ddrs-format 1\nsystem demo over int-append\n"
      "rule [u.i] for i in 0..2: x:b{i} -> x\n");
  CHECK(error_code_of([&] { expand_schema(badapp.schemas[0]); }) == Errc::RangeError);

  // Iterated prefixes unroll to the index value.
  DdrsFile iter = parse_ddrs_file(
      "# ddrs-format 1\nsystem demo over int-append\n"
      "rule [v.i] for i in 0..3: S^{i}(0) -> 0\n");
  std::vector<RewriteRule> un = expand_schema(iter.schemas[0]);
  CHECK(un[0].lhs == make_term(digit_symbol(0)));
  CHECK(un[3].lhs ==
        make_term(kSymS, make_term(kSymS, make_term(kSymS, make_term(digit_symbol(0))))));
}

TEST_CASE("load_system validates expanded rules against the signature") {
  RewriteSystem sys = load_system(
      "# ddrs-format 1\n"
      "system tiny over ring\n"
      "rule [r1]: 0 + x -> x\n"
      "rule [r2]: x * 0 -> 0\n");
  CHECK(sys.name() == "tiny");
  CHECK(sys.sig().name() == "ring");
  CHECK(sys.rules().size() == 2);
  CHECK(sys.view() == View::None);
  CHECK(sys.status().termination == SystemStatus::Termination::Open);

  CHECK(error_code_of([] {
          load_system("# ddrs-format 1\nsystem t over ring\n"
                      "rule [a]: 0 -> 1\nrule [a]: 1 -> 0\n");
        }) == Errc::DuplicateTag);
  CHECK(error_code_of([] {
          load_system("# ddrs-format 1\nsystem t over ring\nrule [a]: x -> 0\n");
        }) == Errc::LhsIsVariable);
  CHECK(error_code_of([] {
          load_system("# ddrs-format 1\nsystem t over ring\nrule [a]: 0 + x -> x + y\n");
        }) == Errc::ExtraRhsVariables);
  CHECK(error_code_of([] {
          load_system("# ddrs-format 1\nsystem t over ring\nrule [a]: S(x) -> x\n");
        }) == Errc::SignatureMismatch);
  CHECK(error_code_of([] {
          load_system("# ddrs-format 1\nsystem t over no-such-signature\nrule [a]: 0 -> 0\n");
        }) == Errc::SignatureMismatch);
}

TEST_CASE("serialization round-trips byte-stably for every built-in source") {
  for (const std::string& name : builtin_names()) {
    CAPTURE(name);
    const std::string& src = builtin_source(name);
    DdrsFile f1 = parse_ddrs_file(src);
    std::string s1 = serialize_ddrs_file(f1);
    DdrsFile f2 = parse_ddrs_file(s1);
    std::string s2 = serialize_ddrs_file(f2);
    CHECK(s1 == s2);
    CHECK(f2.system_name == f1.system_name);
    CHECK(f2.signature_name == f1.signature_name);
    CHECK(f2.schemas.size() == f1.schemas.size());
  }
}

TEST_CASE("serialized sources reload to systems with identical rules") {
  for (const std::string& name : builtin_names()) {
    if (name == "Zdub-verbatim") continue;  // expansion fails by design
    CAPTURE(name);
    const RewriteSystem& orig = builtin(name);
    std::string dumped = serialize_ddrs_file(parse_ddrs_file(builtin_source(name)));
    RewriteSystem reloaded = load_system(dumped);
    REQUIRE(reloaded.rules().size() == orig.rules().size());
    for (size_t i = 0; i < orig.rules().size(); ++i) {
      CHECK(reloaded.rules()[i].tag == orig.rules()[i].tag);
      CHECK(reloaded.rules()[i].lhs == orig.rules()[i].lhs);
      CHECK(reloaded.rules()[i].rhs == orig.rules()[i].rhs);
    }
  }
}

}  // TEST_SUITE("catalog")
