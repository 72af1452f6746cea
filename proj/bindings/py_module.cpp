// Python bindings: string-in/string-out wrappers over the C++ core. Reports
// cross the boundary as JSON text; the package __init__ parses them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddrs/analysis.hpp"
#include "ddrs/catalog.hpp"
#include "ddrs/engine.hpp"
#include "ddrs/semantics.hpp"
#include "ddrs/syntax.hpp"

namespace py = pybind11;

namespace {

const ddrs::RewriteSystem& sys_by_name(const std::string& name) { return ddrs::builtin(name); }

ddrs::TermId parse_in(const ddrs::RewriteSystem& sys, const std::string& term) {
  return ddrs::parse_term(term, sys.sig());
}

ddrs::View view_by_name(const std::string& name) {
  if (name == "unary") return ddrs::View::Unary;
  if (name == "zero-append") return ddrs::View::ZeroAppend;
  if (name == "binary") return ddrs::View::BinaryAppend;
  if (name == "decimal") return ddrs::View::DecimalAppend;
  if (name == "unary-tree") return ddrs::View::UnaryTree;
  if (name == "binary-tree") return ddrs::View::BinaryTree;
  if (name == "decimal-tree") return ddrs::View::DecimalTree;
  if (name == "ring") return ddrs::View::Ring;
  throw ddrs::Error(ddrs::Errc::Usage, "unknown view '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rewriting workbench for integer arithmetic rule systems";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ddrs::Error& e) {
      std::string msg = std::string(ddrs::errc_name(e.code())) + ": " + e.what();
      PyErr_SetString(PyExc_ValueError, msg.c_str());
    }
  });

  m.def("builtins", []() { return ddrs::builtin_names(); });

  m.def("rule_count",
        [](const std::string& name) { return sys_by_name(name).rules().size(); });

  m.def("dump_system",
        [](const std::string& name) { return ddrs::builtin_source(name); });

  m.def("load_system_text", [](const std::string& text) {
    ddrs::RewriteSystem sys = ddrs::load_system(text);
    return py::make_tuple(sys.name(), sys.rules().size());
  });

  m.def(
      "normal_form",
      [](const std::string& system, const std::string& term, const std::string& strategy,
         uint64_t seed, uint64_t step_limit) {
        const ddrs::RewriteSystem& sys = sys_by_name(system);
        ddrs::DerivationTrace tr =
            ddrs::normalize(sys, parse_in(sys, term), ddrs::parse_strategy(strategy, seed),
                            step_limit);
        if (tr.outcome == ddrs::Outcome::StepLimit)
          throw ddrs::Error(ddrs::Errc::RangeError, "step limit hit before a normal form");
        return ddrs::print_term(tr.final_term);
      },
      py::arg("system"), py::arg("term"), py::arg("strategy") = "innermost", py::arg("seed") = 0,
      py::arg("step_limit") = ddrs::kDefaultStepLimit);

  m.def(
      "normalize_json",
      [](const std::string& system, const std::string& term, const std::string& strategy,
         uint64_t seed, uint64_t step_limit) {
        const ddrs::RewriteSystem& sys = sys_by_name(system);
        return ddrs::trace_to_json(ddrs::normalize(
            sys, parse_in(sys, term), ddrs::parse_strategy(strategy, seed), step_limit));
      },
      py::arg("system"), py::arg("term"), py::arg("strategy") = "innermost", py::arg("seed") = 0,
      py::arg("step_limit") = ddrs::kDefaultStepLimit);

  m.def("eval_term", [](const std::string& system, const std::string& term) {
    const ddrs::RewriteSystem& sys = sys_by_name(system);
    std::string digits = ddrs::eval_term(parse_in(sys, term)).str();
    return py::module_::import("builtins").attr("int")(digits);
  });

  m.def(
      "encode",
      [](const std::string& value, const std::string& view) {
        return ddrs::print_term(ddrs::encode_int(ddrs::BigInt(value), view_by_name(view)));
      },
      py::arg("value"), py::arg("view"));

  m.def("find_redexes", [](const std::string& system, const std::string& term) {
    const ddrs::RewriteSystem& sys = sys_by_name(system);
    ddrs::TermId t = parse_in(sys, term);
    py::list out;
    for (const ddrs::Redex& r : ddrs::find_redexes(sys, t)) {
      py::list pos;
      for (int32_t p : r.pos) pos.append(p);
      out.append(py::make_tuple(pos, sys.rules()[size_t(r.rule)].tag));
    }
    return out;
  });

  m.def(
      "all_normal_forms",
      [](const std::string& system, const std::string& term, uint64_t node_budget) {
        const ddrs::RewriteSystem& sys = sys_by_name(system);
        ddrs::NormalFormsResult res =
            ddrs::all_normal_forms(sys, parse_in(sys, term), node_budget);
        py::dict d;
        py::list forms;
        for (ddrs::TermId f : res.forms) forms.append(ddrs::print_term(f));
        d["forms"] = forms;
        d["budget_exceeded"] = res.budget_exceeded;
        d["visited"] = res.visited;
        return d;
      },
      py::arg("system"), py::arg("term"), py::arg("node_budget") = ddrs::kDefaultNodeBudget);

  m.def(
      "check_soundness_json",
      [](const std::string& system, uint64_t trials, uint64_t seed) {
        return ddrs::soundness_to_json(
            ddrs::check_system_soundness(sys_by_name(system), trials, seed));
      },
      py::arg("system"), py::arg("trials") = 100, py::arg("seed") = ddrs::kDefaultAuditSeed);

  m.def(
      "check_ground_confluence_json",
      [](const std::string& system, int max_size, uint64_t node_budget) {
        return ddrs::ground_report_to_json(
            ddrs::check_ground_confluence(sys_by_name(system), max_size, node_budget));
      },
      py::arg("system"), py::arg("max_size") = 3,
      py::arg("node_budget") = ddrs::kDefaultGroundBudget);

  m.def(
      "check_ring_weights_json",
      [](int max_size) {
        return ddrs::weight_report_to_json(ddrs::check_weight_certificate(
            sys_by_name("RingZ"), ddrs::ring_weight_certificate(), max_size));
      },
      py::arg("max_size") = 4);

  m.def(
      "enumerate_terms",
      [](const std::string& system, int max_size, bool grammar_only) {
        const ddrs::RewriteSystem& sys = sys_by_name(system);
        std::optional<ddrs::NormalFormGrammar> grammar;
        if (grammar_only) grammar = ddrs::grammar_for(system);
        std::vector<std::string> out;
        for (ddrs::TermId t : ddrs::enumerate_closed(sys.sig(), max_size)) {
          if (grammar && !grammar->contains(t)) continue;
          out.push_back(ddrs::print_term(t));
        }
        return out;
      },
      py::arg("system"), py::arg("max_size") = 3, py::arg("grammar_only") = false);

  m.def("grammar_contains", [](const std::string& system, const std::string& term) {
    const ddrs::RewriteSystem& sys = sys_by_name(system);
    return ddrs::grammar_for(system).contains(parse_in(sys, term));
  });

  m.def("convert", [](const std::string& term, const std::string& from_view,
                      const std::string& to_view) {
    auto pick = [](const std::string& v) -> const char* {
      if (v == "unary") return "Zubd";
      if (v == "binary") return "Zbud";
      if (v == "decimal") return "Zdub";
      throw ddrs::Error(ddrs::Errc::Usage,
                        "unknown view '" + v + "' (expected unary, binary, or decimal)");
    };
    const ddrs::RewriteSystem& from_sys = ddrs::builtin(pick(from_view));
    ddrs::TermId t = ddrs::parse_term(term, from_sys.sig());
    if (!ddrs::grammar_for(from_sys.name()).contains(t)) {
      throw ddrs::Error(ddrs::Errc::Usage, "input is not a " + from_view + " normal form");
    }
    return ddrs::print_term(ddrs::encode_int(ddrs::eval_term(t), view_by_name(to_view)));
  });

  m.def("status", [](const std::string& system) { return ddrs::status_report(system); });
}
