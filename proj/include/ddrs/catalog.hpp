#pragma once
// Rewrite-system catalog: rule schemata with digit index ranges, the
// `# ddrs-format 1` file format (parse/expand/serialize), and the built-in
// systems for naturals and integers in unary, binary, decimal, tree-shaped
// and ring presentations.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ddrs/syntax.hpp"
#include "ddrs/term.hpp"

namespace ddrs {

struct RewriteRule {
  std::string tag;
  TermId lhs;
  TermId rhs;
};

struct IndexRange {
  char name;  // 'i', 'j', ...
  int lo, hi;
};

struct RuleSchema {
  std::string tag_template;         // "b10.i.j"; index segments replaced on expansion
  std::vector<IndexRange> indices;  // empty for plain rules
  SchemaTerm lhs, rhs;
  int line = 0;
};

// Recorded meta-status of a system, with free-form citation notes. Desk
// checks report evidence separately and never change these.
struct SystemStatus {
  enum class Termination : uint8_t { Proven, Open };
  enum class Confluence : uint8_t { Refuted, Open };
  enum class GroundConfluence : uint8_t { Proven, Open };
  Termination termination = Termination::Open;
  Confluence confluence = Confluence::Open;
  GroundConfluence ground_confluence = GroundConfluence::Open;
  std::string termination_note, confluence_note, ground_confluence_note;
};

// Number representation a system normalizes into (drives integer encoding).
enum class View : uint8_t {
  None, Unary, ZeroAppend, BinaryAppend, DecimalAppend, UnaryTree, BinaryTree,
  DecimalTree, Ring,
};

class RewriteSystem {
 public:
  RewriteSystem(std::string name, const Signature* sig, std::vector<RewriteRule> rules,
                SystemStatus status = {}, View view = View::None);
  const std::string& name() const { return name_; }
  const Signature& sig() const { return *sig_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  // Rule indices (in system order) whose left-hand side is rooted at s.
  const std::vector<int32_t>& rules_rooted_at(SymbolId s) const { return by_root_[size_t(s)]; }
  const SystemStatus& status() const { return status_; }
  View view() const { return view_; }

 private:
  std::string name_;
  const Signature* sig_;
  std::vector<RewriteRule> rules_;
  SystemStatus status_;
  View view_;
  std::array<std::vector<int32_t>, kUniverseSize> by_root_;
};

struct DdrsFile {
  std::string system_name;
  std::string signature_name;
  std::vector<RuleSchema> schemas;
};

// Parses the textual format:
//   # ddrs-format 1
//   system <name> over <signature>
//   rule [<tag>]: <lhs> -> <rhs>
//   rule [<tag>.i] for i in 0..8: <lhs> -> <rhs>
//   rule [<tag>.i.j] for i in 0..9, j in 0..9: <lhs> -> <rhs>
// '#' lines are comments. Errors: missing-header, syntax-error (with line and
// column), range-error.
DdrsFile parse_ddrs_file(std::string_view text);

// Instantiates one schema over its index ranges. Errors:
// meta-digit-out-of-domain (digit successor of 9, 10-minus of 0),
// range-error (resulting append symbol does not exist).
std::vector<RewriteRule> expand_schema(const RuleSchema& schema);

// Canonical serialization of a parsed file (one schema per line).
std::string serialize_ddrs_file(const DdrsFile& file);

// Parse + expand + validate. Errors additionally: duplicate-tag,
// lhs-is-variable, extra-rhs-variables, signature-mismatch (rule symbol
// outside the declared signature).
RewriteSystem load_system(std::string_view text);

// Built-in catalog.
std::vector<std::string> builtin_names();
bool is_builtin(std::string_view name);
// Cached, expanded built-in. Throws Error(UnknownSystem) for unknown names;
// Zdub-verbatim throws its expansion error (meta-digit-out-of-domain).
const RewriteSystem& builtin(std::string_view name);
// Source text of a built-in (byte-stable; dump output). Available for all
// built-ins including Zdub-verbatim.
const std::string& builtin_source(std::string_view name);
// Recorded status without expanding the rules (works for Zdub-verbatim too).
const SystemStatus& builtin_status(std::string_view name);
View builtin_view(std::string_view name);

}  // namespace ddrs
