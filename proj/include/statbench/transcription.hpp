#pragma once

// Turning module computations into script statements and back.
//
// interpolate() renders a code template with concrete argument values into one
// statement and runs that same statement, so the text shown to the user and
// the result it produced never diverge. Stored statements form a Script;
// replaying the script from the original data reproduces every stored result.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "statbench/commands.hpp"
#include "statbench/dsl.hpp"
#include "statbench/errors.hpp"
#include "statbench/results.hpp"

namespace statbench::transcription {

class TemplateError : public Error {
 public:
  using Error::Error;
};

/// A replayed statement failed. statement() is the 1-based position in the script.
class ReplayError : public Error {
 public:
  ReplayError(const std::string& message, std::size_t statement, std::size_t line, std::string text)
      : Error(message), statement_(statement), line_(line), text_(std::move(text)) {}
  std::size_t statement() const { return statement_; }
  std::size_t line() const { return line_; }
  const std::string& text() const { return text_; }

 private:
  std::size_t statement_;
  std::size_t line_;
  std::string text_;
};

/// Statement text with `{name}` placeholders.
class CodeTemplate {
 public:
  /// Throws TemplateError on malformed placeholders.
  explicit CodeTemplate(std::string skeleton);

  const std::string& skeleton() const { return skeleton_; }
  /// Distinct placeholder names in order of first appearance.
  const std::vector<std::string>& placeholder_order() const { return order_; }

  std::string render(const std::map<std::string, std::string>& rendered_values) const;

 private:
  std::string skeleton_;
  std::vector<std::string> order_;
};

struct Binding {
  std::string name;
  dsl::Value value;
};

struct RenderedStatement {
  std::string text;
  std::string module_id;
  std::uint64_t produced_at = 0;
};

/// Either a result or the message of the error that replaced it.
struct Outcome {
  std::optional<Result> value;
  std::string error;

  bool ok() const { return value.has_value(); }
};

using Evaluator = std::function<Result(const dsl::Call&)>;

struct Interpolation {
  RenderedStatement statement;
  Outcome result;
};

/// Renders the template and immediately evaluates the rendered statement.
/// Throws TemplateError for missing, duplicate, or unknown bindings and for values
/// that have no literal form; evaluation failures land in result.error.
Interpolation interpolate(const CodeTemplate& tmpl, std::span<const Binding> bindings, const Evaluator& evaluator,
                          std::string module_id = {}, std::uint64_t produced_at = 0);

struct Script {
  std::vector<RenderedStatement> preamble;  // data provenance
  std::vector<RenderedStatement> stored;    // explicit store actions, in order

  /// Preamble then stored statements, one per line.
  std::string text() const;
};

/// Appends; storing the same statement twice stores it twice.
Script store_statement(Script script, RenderedStatement stmt);

/// True for statements that only establish data provenance (load_data).
bool is_provenance(const dsl::Call& call);

struct StatementResult {
  std::size_t line = 0;
  std::string text;
  Result result;
};

/// Evaluates statements in order against env, stopping at the first failure
/// with a ReplayError naming the statement and its line.
std::vector<StatementResult> eval_script(const dsl::ScriptAst& ast, Environment& env,
                                         const CommandRegistry& commands);

struct ReportBlock {
  bool setup = false;               // provenance statements only
  std::optional<std::string> code;  // absent when code is hidden
  std::optional<Result> result;     // absent for setup blocks
  std::string text;                 // rendered result text
  std::optional<std::string> image; // relative path of the plot image
};

struct ReportDocument {
  std::vector<ReportBlock> blocks;
  bool include_code = true;

  /// Blocks that carry a stored result, in order.
  std::vector<const ReportBlock*> result_blocks() const;
};

struct ReportBundle {
  ReportDocument document;
  std::string markdown;
  std::map<std::string, std::string> images;  // relative path -> SVG text
};

/// Replays the script from a fresh environment holding only `files` and weaves
/// code and results into a Markdown document with SVG plot images.
ReportBundle render_report(const Script& script, const DataFiles& files, bool include_code,
                           const CommandRegistry& commands);

/// Splits script text into preamble (leading load_data) and stored statements.
/// Throws ParseError.
Script script_from_text(std::string_view text);

}  // namespace statbench::transcription
