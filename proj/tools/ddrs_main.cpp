// ddrs — command-line workbench for the built-in integer rewrite systems and
// user rule files (# ddrs-format 1).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ddrs/analysis.hpp"
#include "ddrs/catalog.hpp"
#include "ddrs/engine.hpp"
#include "ddrs/semantics.hpp"
#include "ddrs/syntax.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

int classify_exit(const ddrs::Error& e) {
  switch (e.code()) {
    case ddrs::Errc::Usage:
    case ddrs::Errc::SyntaxError:
    case ddrs::Errc::UnknownSymbol:
    case ddrs::Errc::UnknownSystem:
    case ddrs::Errc::InvalidPosition:
    case ddrs::Errc::MissingHeader:
    case ddrs::Errc::OpenTerm:
      return 2;  // usage / parse problems
    default:
      return 1;  // content failures: expansion, validation, range
  }
}

struct Loaded {
  const ddrs::RewriteSystem* sys = nullptr;
  std::optional<ddrs::RewriteSystem> owned;
};

Loaded load_target(const std::string& system, const std::string& file) {
  if (!system.empty() && !file.empty())
    throw ddrs::Error(ddrs::Errc::Usage, "use --system or --file, not both");
  if (system.empty() && file.empty())
    throw ddrs::Error(ddrs::Errc::Usage, "one of --system or --file is required");
  Loaded out;
  if (!system.empty()) {
    out.sys = &ddrs::builtin(system);
    return out;
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ddrs::Error(ddrs::Errc::Usage, "cannot read rule file '" + file + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  out.owned = ddrs::load_system(ss.str());
  out.sys = &*out.owned;
  return out;
}

std::string position_text(const ddrs::Position& pos) {
  std::string s = "[";
  for (size_t k = 0; k < pos.size(); ++k) {
    if (k != 0) s += ",";
    s += std::to_string(pos[k]);
  }
  return s + "]";
}

void print_ground_failures(const ddrs::GroundReport& rep) {
  for (const ddrs::GroundFailure& f : rep.failures) {
    std::cout << "  " << ddrs::ground_failure_kind_name(f.kind) << " at "
              << ddrs::print_term(f.term);
    if (!f.forms.empty()) {
      std::cout << ":";
      for (ddrs::TermId ft : f.forms) std::cout << " " << ddrs::print_term(ft);
    }
    if (!f.detail.empty()) std::cout << " (" << f.detail << ")";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ddrs — a rewriting workbench for integer arithmetic rule systems"};
  app.set_version_flag("--version", "ddrs 0.1.0");
  app.require_subcommand(1);
  int rc = 0;

  // ---- normalize ----------------------------------------------------------
  std::string n_system, n_file, n_strategy = "innermost", n_term;
  uint64_t n_seed = 0, n_limit = ddrs::kDefaultStepLimit;
  bool n_json = false, n_trace = false;
  CLI::App* norm = app.add_subcommand("normalize", "Rewrite a term to its normal form");
  norm->add_option("--system", n_system, "built-in system name (see `ddrs list`)");
  norm->add_option("--file", n_file, "rule file in `# ddrs-format 1`");
  norm->add_option("--strategy", n_strategy, "innermost | outermost | random-redex")
      ->capture_default_str();
  norm->add_option("--seed", n_seed, "seed for random-redex")->capture_default_str();
  norm->add_option("--step-limit", n_limit, "abort after this many steps")->capture_default_str();
  norm->add_flag("--json", n_json, "print a trace-v1 JSON document");
  norm->add_flag("--trace", n_trace, "also print every step");
  norm->add_option("term", n_term, "term to normalize")->required();
  norm->callback([&]() {
    Loaded L = load_target(n_system, n_file);
    ddrs::TermId t = ddrs::parse_term(n_term, L.sys->sig());
    ddrs::Strategy st = ddrs::parse_strategy(n_strategy, n_seed);
    ddrs::DerivationTrace tr = ddrs::normalize(*L.sys, t, st, n_limit);
    if (n_json) {
      std::cout << ddrs::trace_to_json(tr) << "\n";
    } else {
      if (n_trace) {
        for (size_t i = 0; i < tr.steps.size(); ++i) {
          const ddrs::Step& s = tr.steps[i];
          std::cout << (i + 1) << ". [" << L.sys->rules()[size_t(s.rule)].tag << "] at "
                    << position_text(s.pos) << " -> " << ddrs::print_term(s.result) << "\n";
        }
      }
      std::cout << ddrs::print_term(tr.final_term) << "\n";
    }
    if (tr.outcome == ddrs::Outcome::StepLimit) {
      std::cerr << "ddrs: step limit (" << n_limit << ") hit before reaching a normal form\n";
      rc = 1;
    }
  });

  // ---- convert ------------------------------------------------------------
  std::string c_from, c_to, c_term;
  CLI::App* conv = app.add_subcommand(
      "convert", "Convert a normal form between the unary, binary and decimal views");
  conv->add_option("--from", c_from, "unary | binary | decimal")->required();
  conv->add_option("--to", c_to, "unary | binary | decimal")->required();
  conv->add_option("term", c_term, "a normal form of the source view")->required();
  conv->callback([&]() {
    auto pick = [](const std::string& v) -> std::pair<ddrs::View, const char*> {
      if (v == "unary") return {ddrs::View::Unary, "Zubd"};
      if (v == "binary") return {ddrs::View::BinaryAppend, "Zbud"};
      if (v == "decimal") return {ddrs::View::DecimalAppend, "Zdub"};
      throw ddrs::Error(ddrs::Errc::Usage,
                        "unknown view '" + v + "' (expected unary, binary, or decimal)");
    };
    auto [from_view, from_sys] = pick(c_from);
    auto [to_view, to_sys] = pick(c_to);
    (void)to_sys;
    ddrs::TermId t = ddrs::parse_term(c_term, ddrs::builtin(from_sys).sig());
    if (!ddrs::grammar_for(from_sys).contains(t)) {
      throw ddrs::Error(ddrs::Errc::Usage,
                        "input is not a " + c_from + " normal form: " + ddrs::print_term(t));
    }
    ddrs::BigInt value = ddrs::eval_term(t);
    ddrs::TermId out = ddrs::encode_int(value, to_view);
    if (ddrs::term_size(out) > 10000) {
      std::cerr << "ddrs: warning: output term has " << ddrs::term_size(out) << " nodes\n";
    }
    std::cout << ddrs::print_term(out) << "\n";
  });

  // ---- check --------------------------------------------------------------
  std::string k_system, k_file, k_what = "all";
  uint64_t k_trials = 100, k_seed = ddrs::kDefaultAuditSeed, k_samples = 200;
  uint64_t k_budget = ddrs::kDefaultGroundBudget;
  int k_max_size = 3, k_sample_max_size = 7, k_weight_max_size = 4;
  bool k_json = false;
  CLI::App* chk = app.add_subcommand("check", "Run soundness / ground-confluence / weight checks");
  chk->add_option("--system", k_system, "built-in system name");
  chk->add_option("--file", k_file, "rule file in `# ddrs-format 1`");
  chk->add_option("--what", k_what, "soundness | ground-confluence | weights | all")
      ->capture_default_str();
  chk->add_option("--trials", k_trials, "random soundness trials per rule")->capture_default_str();
  chk->add_option("--seed", k_seed, "seed for the random phases")->capture_default_str();
  chk->add_option("--max-size", k_max_size, "exhaustive ground sweep size bound")
      ->capture_default_str();
  chk->add_option("--samples", k_samples, "random ground-check sample count (0 disables)")
      ->capture_default_str();
  chk->add_option("--sample-max-size", k_sample_max_size, "size bound for sampled terms")
      ->capture_default_str();
  chk->add_option("--node-budget", k_budget, "reduction-graph node budget per term")
      ->capture_default_str();
  chk->add_option("--weights-max-size", k_weight_max_size,
                  "substitution size bound for the weight check")
      ->capture_default_str();
  chk->add_flag("--json", k_json, "print one combined JSON document");
  chk->callback([&]() {
    if (k_what != "all" && k_what != "soundness" && k_what != "ground-confluence" &&
        k_what != "weights") {
      throw ddrs::Error(ddrs::Errc::Usage, "unknown --what '" + k_what + "'");
    }
    Loaded L = load_target(k_system, k_file);
    const ddrs::RewriteSystem& sys = *L.sys;
    bool failed = false;
    ordered_json combined;
    combined["schema"] = "check-v1";
    combined["system"] = sys.name();

    if (k_what == "all" || k_what == "soundness") {
      ddrs::SoundnessReport rep = ddrs::check_system_soundness(sys, k_trials, k_seed);
      if (!rep.all_sound) failed = true;
      if (k_json) {
        combined["soundness"] = ordered_json::parse(ddrs::soundness_to_json(rep));
      } else {
        size_t sound = 0;
        for (const ddrs::RuleSoundness& rs : rep.rules) sound += rs.sound ? 1 : 0;
        std::cout << "soundness: " << sound << "/" << rep.rules.size() << " rules sound (trials="
                  << k_trials << ", seed=" << k_seed << ")\n";
        for (const ddrs::RuleSoundness& rs : rep.rules) {
          if (rs.sound) continue;
          std::cout << "  [" << rs.tag << "] unsound with";
          for (const auto& [var, text] : rs.counterexample) std::cout << " " << var << " := " << text;
          std::cout << " (lhs=" << rs.lhs_value << ", rhs=" << rs.rhs_value << ")\n";
        }
      }
    }

    if (k_what == "all" || k_what == "ground-confluence") {
      ddrs::GroundReport rep = ddrs::check_ground_confluence(sys, k_max_size, k_budget);
      if (!rep.ok()) failed = true;
      if (k_json) {
        combined["ground_exhaustive"] = ordered_json::parse(ddrs::ground_report_to_json(rep));
      } else {
        std::cout << "ground sweep (size <= " << k_max_size << "): " << rep.terms_checked
                  << " terms, " << rep.failure_count << " failures";
        if (rep.budget_exceeded > 0)
          std::cout << ", " << rep.budget_exceeded
                    << " graphs past the budget (rejoin evidence only)";
        if (rep.undecided > 0) std::cout << ", " << rep.undecided << " undecided";
        std::cout << "\n";
        print_ground_failures(rep);
      }
      if (k_samples > 0) {
        ddrs::GroundReport srep = ddrs::check_ground_confluence_sampled(
            sys, k_samples, k_sample_max_size, k_seed, k_budget);
        if (!srep.ok()) failed = true;
        if (k_json) {
          combined["ground_sampled"] = ordered_json::parse(ddrs::ground_report_to_json(srep));
        } else {
          std::cout << "ground samples (" << k_samples << " random terms, size <= "
                    << k_sample_max_size << ", seed=" << k_seed << "): " << srep.failure_count
                    << " failures";
          if (srep.budget_exceeded > 0)
            std::cout << ", " << srep.budget_exceeded
                      << " graphs past the budget (rejoin evidence only)";
          if (srep.undecided > 0) std::cout << ", " << srep.undecided << " undecided";
          std::cout << "\n";
          print_ground_failures(srep);
        }
      }
    }

    if (k_what == "all" || k_what == "weights") {
      if (!ddrs::has_weight_certificate(sys.name())) {
        if (k_json) {
          combined["weights"] = nullptr;
        } else if (k_what == "weights") {
          std::cout << "weights: no termination weight certificate recorded for " << sys.name()
                    << "\n";
        }
      } else {
        ddrs::WeightReport rep = ddrs::check_weight_certificate(
            sys, ddrs::ring_weight_certificate(), k_weight_max_size);
        if (!rep.ok()) failed = true;
        if (k_json) {
          combined["weights"] = ordered_json::parse(ddrs::weight_report_to_json(rep));
        } else {
          std::cout << "weights (substitutions of size <= " << k_weight_max_size << "): "
                    << rep.instances_checked << " instances, " << rep.violation_count
                    << " violations\n";
          for (const ddrs::WeightViolation& v : rep.violations) {
            std::cout << "  [" << v.tag << "] with " << v.substitution << ": |lhs|="
                      << v.lhs_weight << " <= |rhs|=" << v.rhs_weight << "\n";
          }
        }
      }
    }

    if (k_json) {
      combined["ok"] = !failed;
      std::cout << combined.dump(2) << "\n";
    } else {
      std::cout << (failed ? "FAIL" : "OK") << "\n";
    }
    if (failed) rc = 1;
  });

  // ---- enumerate ----------------------------------------------------------
  std::string e_system, e_file;
  int e_max_size = 3;
  bool e_grammar_only = false, e_count_only = false;
  CLI::App* enu = app.add_subcommand("enumerate", "List closed terms in canonical order");
  enu->add_option("--system", e_system, "built-in system name");
  enu->add_option("--file", e_file, "rule file in `# ddrs-format 1`");
  enu->add_option("--max-size", e_max_size, "size bound")->capture_default_str();
  enu->add_flag("--grammar-only", e_grammar_only, "only normal-form grammar members");
  enu->add_flag("--count", e_count_only, "print only the count");
  enu->callback([&]() {
    Loaded L = load_target(e_system, e_file);
    std::optional<ddrs::NormalFormGrammar> grammar;
    if (e_grammar_only) {
      if (!ddrs::grammar_defined_for(L.sys->name())) {
        throw ddrs::Error(ddrs::Errc::Usage, "--grammar-only requires a built-in system with a "
                                             "recorded normal-form grammar");
      }
      grammar = ddrs::grammar_for(L.sys->name());
    }
    std::vector<ddrs::TermId> terms = ddrs::enumerate_closed(L.sys->sig(), e_max_size);
    uint64_t count = 0;
    for (ddrs::TermId t : terms) {
      if (grammar && !grammar->contains(t)) continue;
      ++count;
      if (!e_count_only) std::cout << ddrs::print_term(t) << "\n";
    }
    if (e_count_only) std::cout << count << "\n";
  });

  // ---- dump ---------------------------------------------------------------
  std::string d_system;
  CLI::App* dmp = app.add_subcommand("dump", "Print the source of a built-in system");
  dmp->add_option("--system", d_system, "built-in system name")->required();
  dmp->callback([&]() { std::cout << ddrs::builtin_source(d_system); });

  // ---- status ---------------------------------------------------------------
  std::string s_system;
  int s_max_size = 3;
  CLI::App* sts = app.add_subcommand(
      "status", "Recorded termination/confluence status plus a fresh desk check");
  sts->add_option("--system", s_system, "built-in system name")->required();
  sts->add_option("--max-size", s_max_size, "desk-check sweep size bound")->capture_default_str();
  sts->callback([&]() { std::cout << ddrs::status_report(s_system, s_max_size); });

  // ---- list -----------------------------------------------------------------
  CLI::App* lst = app.add_subcommand("list", "List the built-in systems");
  lst->callback([&]() {
    std::vector<std::string> notes;
    std::printf("%-16s %7s  %-12s %-11s %s\n", "name", "rules", "termination", "confluence",
                "ground-confluence");
    for (const std::string& name : ddrs::builtin_names()) {
      std::string rules_text;
      try {
        rules_text = std::to_string(ddrs::builtin(name).rules().size());
      } catch (const ddrs::Error& e) {
        rules_text = "fails";
        notes.push_back(name + " does not expand: " + e.what());
      }
      const ddrs::SystemStatus& st = ddrs::builtin_status(name);
      const char* term_word =
          st.termination == ddrs::SystemStatus::Termination::Proven ? "proven" : "open";
      const char* conf_word =
          st.confluence == ddrs::SystemStatus::Confluence::Refuted ? "refuted" : "open";
      const char* gc_word =
          st.ground_confluence == ddrs::SystemStatus::GroundConfluence::Proven ? "proven" : "open";
      std::printf("%-16s %7s  %-12s %-11s %s\n", name.c_str(), rules_text.c_str(), term_word,
                  conf_word, gc_word);
    }
    for (const std::string& n : notes) std::printf("note: %s\n", n.c_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ddrs::Error& e) {
    std::cerr << "ddrs: error: " << e.what();
    if (e.line() > 0 && e.col() > 0) {
      std::cerr << " (line " << e.line() << ", col " << e.col() << ")";
    } else if (e.line() > 0) {
      std::cerr << " (line " << e.line() << ")";
    }
    std::cerr << "\n";
    return classify_exit(e);
  } catch (const std::exception& e) {
    std::cerr << "ddrs: internal error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
