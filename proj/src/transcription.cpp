#include "statbench/transcription.hpp"

#include <cmath>
#include <set>

#include "statbench/svg.hpp"

namespace statbench::transcription {

namespace {

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Calls fn(literal_text) and fn_ph(name) in skeleton order.
template <class Lit, class Ph>
void scan(const std::string& s, Lit&& lit, Ph&& ph) {
  std::size_t i = 0, start = 0;
  while (i < s.size()) {
    if (s[i] == '}') throw TemplateError("unmatched '}' at offset " + std::to_string(i));
    if (s[i] != '{') {
      ++i;
      continue;
    }
    lit(std::string_view(s).substr(start, i - start));
    std::size_t j = i + 1;
    while (j < s.size() && ident_char(s[j])) ++j;
    if (j >= s.size() || s[j] != '}') throw TemplateError("malformed placeholder at offset " + std::to_string(i));
    std::string name = s.substr(i + 1, j - i - 1);
    if (!dsl::is_identifier(name)) throw TemplateError("invalid placeholder name '" + name + "'");
    ph(name);
    i = start = j + 1;
  }
  lit(std::string_view(s).substr(start));
}

void check_literal(const dsl::Value& v, const std::string& name) {
  if (v.is<double>() && !std::isfinite(v.as<double>())) {
    throw TemplateError("binding '" + name + "' is not a finite number");
  }
  if (v.is<dsl::List>()) {
    for (const auto& item : v.as<dsl::List>()) check_literal(item, name);
  }
  if (v.is<dsl::CallPtr>()) throw TemplateError("binding '" + name + "' must be a literal value");
}

}  // namespace

CodeTemplate::CodeTemplate(std::string skeleton) : skeleton_(std::move(skeleton)) {
  std::set<std::string> seen;
  scan(
      skeleton_, [](std::string_view) {},
      [&](const std::string& name) {
        if (seen.insert(name).second) order_.push_back(name);
      });
}

std::string CodeTemplate::render(const std::map<std::string, std::string>& rendered_values) const {
  std::string out;
  scan(
      skeleton_, [&](std::string_view lit) { out += lit; },
      [&](const std::string& name) {
        auto it = rendered_values.find(name);
        if (it == rendered_values.end()) throw TemplateError("no binding for placeholder '" + name + "'");
        out += it->second;
      });
  return out;
}

Interpolation interpolate(const CodeTemplate& tmpl, std::span<const Binding> bindings, const Evaluator& evaluator,
                          std::string module_id, std::uint64_t produced_at) {
  std::map<std::string, std::string> rendered;
  std::set<std::string> wanted(tmpl.placeholder_order().begin(), tmpl.placeholder_order().end());
  for (const auto& b : bindings) {
    if (!wanted.count(b.name)) throw TemplateError("binding '" + b.name + "' matches no placeholder");
    check_literal(b.value, b.name);
    if (!rendered.emplace(b.name, dsl::print(b.value)).second) {
      throw TemplateError("binding '" + b.name + "' given twice");
    }
  }
  for (const auto& name : tmpl.placeholder_order()) {
    if (!rendered.count(name)) throw TemplateError("no binding for placeholder '" + name + "'");
  }

  Interpolation out;
  out.statement = {tmpl.render(rendered), std::move(module_id), produced_at};
  // A template that renders to something unparseable is a manifest bug, not a user error.
  dsl::Call call;
  try {
    call = dsl::parse_statement(out.statement.text);
  } catch (const ParseError& e) {
    throw TemplateError("rendered statement does not parse: " + std::string(e.what()));
  }
  // Canonical spelling, so a statement re-read from script text prints identically.
  out.statement.text = dsl::print(call);
  try {
    out.result.value = evaluator(call);
  } catch (const std::exception& e) {
    out.result.error = e.what();
  }
  return out;
}

std::string Script::text() const {
  std::string out;
  for (const auto* part : {&preamble, &stored}) {
    for (const auto& s : *part) {
      out += s.text;
      out.push_back('\n');
    }
  }
  return out;
}

Script store_statement(Script script, RenderedStatement stmt) {
  script.stored.push_back(std::move(stmt));
  return script;
}

bool is_provenance(const dsl::Call& call) { return call.name == "load_data"; }

std::vector<StatementResult> eval_script(const dsl::ScriptAst& ast, Environment& env,
                                         const CommandRegistry& commands) {
  std::vector<StatementResult> out;
  out.reserve(ast.statements.size());
  for (std::size_t i = 0; i < ast.statements.size(); ++i) {
    const auto& call = ast.statements[i];
    const std::string text = dsl::print(call);
    try {
      out.push_back({call.pos.line, text, evaluate(call, env, commands)});
    } catch (const std::exception& e) {
      throw ReplayError("line " + std::to_string(call.pos.line) + ": " + e.what(), i + 1, call.pos.line, text);
    }
  }
  return out;
}

std::vector<const ReportBlock*> ReportDocument::result_blocks() const {
  std::vector<const ReportBlock*> out;
  for (const auto& b : blocks) {
    if (b.result) out.push_back(&b);
  }
  return out;
}

ReportBundle render_report(const Script& script, const DataFiles& files, bool include_code,
                           const CommandRegistry& commands) {
  const auto ast = dsl::parse_script(script.text());
  const std::size_t n_pre = script.preamble.size();
  if (ast.statements.size() != n_pre + script.stored.size()) {
    throw ReplayError("script statements do not parse one per line", 0, 0, "");
  }

  Environment env;
  env.files = files;
  const auto results = eval_script(ast, env, commands);

  ReportBundle bundle;
  ReportDocument& doc = bundle.document;
  doc.include_code = include_code;

  if (include_code && n_pre > 0) {
    ReportBlock setup;
    setup.setup = true;
    std::string code;
    for (std::size_t i = 0; i < n_pre; ++i) code += results[i].text + "\n";
    setup.code = code;
    doc.blocks.push_back(std::move(setup));
  }

  std::size_t n_images = 0;
  for (std::size_t i = n_pre; i < results.size(); ++i) {
    const auto& r = results[i];
    if (is_provenance(ast.statements[i])) {
      if (!include_code) continue;
      ReportBlock b;
      b.setup = true;
      b.code = r.text + "\n";
      doc.blocks.push_back(std::move(b));
      continue;
    }
    ReportBlock b;
    if (include_code) b.code = r.text;
    b.result = r.result;
    b.text = format_text(r.result);
    if (const auto* spec = std::get_if<plot::PlotSpec>(&r.result)) {
      const std::string path = "images/plot-" + std::to_string(++n_images) + ".svg";
      bundle.images.emplace(path, svg::render(*spec));
      b.image = path;
    }
    doc.blocks.push_back(std::move(b));
  }

  std::string& md = bundle.markdown;
  md = "# Analysis report\n";
  std::size_t k = 0;
  for (const auto& b : doc.blocks) {
    if (b.setup) {
      md += "\n## Setup\n\n```\n" + *b.code + "```\n";
      continue;
    }
    md += "\n## Result " + std::to_string(++k) + "\n";
    if (b.code) md += "\n```\n" + *b.code + "\n```\n";
    if (b.image) {
      const auto& spec = std::get<plot::PlotSpec>(*b.result);
      md += "\n![" + std::string(plot::to_string(spec.kind)) + " of " + spec.x_label + "](" + *b.image + ")\n";
    } else {
      md += "\n```text\n" + b.text + (b.text.empty() || b.text.back() != '\n' ? "\n" : "") + "```\n";
    }
  }
  return bundle;
}

Script script_from_text(std::string_view text) {
  const auto ast = dsl::parse_script(text);
  Script script;
  for (std::size_t i = 0; i < ast.statements.size(); ++i) {
    RenderedStatement s{dsl::print(ast.statements[i]), {}, 0};
    if (i == 0 && is_provenance(ast.statements[i])) {
      script.preamble.push_back(std::move(s));
    } else {
      script.stored.push_back(std::move(s));
    }
  }
  return script;
}

}  // namespace statbench::transcription
