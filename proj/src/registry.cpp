#include "statbench/registry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace statbench::registry {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const char* code, const std::string& message) { throw ManifestError(code, message); }

constexpr Category kCategories[] = {Category::Data, Category::Summaries, Category::Inference};

struct Named {
  WidgetKind kind;
  const char* name;
};
constexpr Named kWidgets[] = {{WidgetKind::Select, "Select"},
                              {WidgetKind::MultiSelect, "MultiSelect"},
                              {WidgetKind::NumericField, "NumericField"},
                              {WidgetKind::Slider, "Slider"},
                              {WidgetKind::Checkbox, "Checkbox"},
                              {WidgetKind::ActionButton, "ActionButton"}};

std::optional<ChoiceKind> variable_kind(std::string_view s) {
  if (s == "NumericVariables") return ChoiceKind::NumericVariables;
  if (s == "CategoricalVariables") return ChoiceKind::CategoricalVariables;
  if (s == "AllVariables") return ChoiceKind::AllVariables;
  return std::nullopt;
}

std::string_view variable_kind_name(ChoiceKind k) {
  switch (k) {
    case ChoiceKind::NumericVariables: return "NumericVariables";
    case ChoiceKind::CategoricalVariables: return "CategoricalVariables";
    case ChoiceKind::AllVariables: return "AllVariables";
    case ChoiceKind::Static: return "Static";
    case ChoiceKind::ByInput: return "ByInput";
  }
  return "?";
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail("SCHEMA", where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string string_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string() || v.get<std::string>().empty()) {
    fail("SCHEMA", where + ": field '" + key + "' must be a non-empty string");
  }
  return v.get<std::string>();
}

double number_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number()) fail("SCHEMA", where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

bool valid_id(const std::string& s) { return dsl::is_identifier(s); }

SliderRange parse_slider(const json& j, const std::string& where) {
  SliderRange s;
  s.min = number_field(j, "min", where);
  s.max = number_field(j, "max", where);
  s.step = number_field(j, "step", where);
  s.default_value = number_field(j, "default", where);
  auto on_grid = [&](double v) {
    const double k = (v - s.min) / s.step;
    return std::fabs(k - std::round(k)) <= 1e-6;
  };
  if (!(s.min < s.max)) fail("SLIDER_RANGE", where + ": slider min must be below max");
  if (!(s.step > 0) || s.step > s.max - s.min) fail("SLIDER_RANGE", where + ": slider step must be in (0, max - min]");
  if (!(s.default_value >= s.min && s.default_value <= s.max)) {
    fail("SLIDER_RANGE", where + ": slider default lies outside [min, max]");
  }
  if (!on_grid(s.max) || !on_grid(s.default_value)) {
    fail("SLIDER_RANGE", where + ": slider max and default must lie on the step grid");
  }
  return s;
}

ChoiceSource parse_choice_source(const json& j, const std::string& where) {
  ChoiceSource src;
  if (j.is_string()) {
    auto k = variable_kind(j.get<std::string>());
    if (!k) fail("SCHEMA", where + ": unknown choice_source '" + j.get<std::string>() + "'");
    src.kind = *k;
    return src;
  }
  if (j.is_object() && j.size() == 1 && j.contains("Static")) {
    src.kind = ChoiceKind::Static;
    const json& list = j.at("Static");
    if (!list.is_array() || list.empty()) fail("SCHEMA", where + ": Static choices must be a non-empty array");
    for (const auto& item : list) {
      if (item.is_string()) {
        src.options.push_back({item.get<std::string>(), item.get<std::string>()});
      } else if (item.is_object()) {
        src.options.push_back({string_field(item, "label", where), string_field(item, "value", where)});
      } else {
        fail("SCHEMA", where + ": Static choices must be strings or {label, value} objects");
      }
    }
    std::set<std::string> seen;
    for (const auto& o : src.options) {
      if (!seen.insert(o.value).second) fail("DUPLICATE_ID", where + ": duplicate choice '" + o.value + "'");
    }
    return src;
  }
  if (j.is_object() && j.size() == 1 && j.contains("ByInput")) {
    src.kind = ChoiceKind::ByInput;
    const json& spec = j.at("ByInput");
    src.input = string_field(spec, "input", where);
    const json& cases = field(spec, "cases", where);
    if (!cases.is_object() || cases.empty()) fail("SCHEMA", where + ": ByInput cases must be a non-empty object");
    for (const auto& [value, kind] : cases.items()) {
      auto k = kind.is_string() ? variable_kind(kind.get<std::string>()) : std::nullopt;
      if (!k) fail("SCHEMA", where + ": ByInput case '" + value + "' must name a variable choice source");
      src.cases.emplace(value, *k);
    }
    return src;
  }
  fail("SCHEMA", where + ": malformed choice_source");
}

std::optional<dsl::Value> parse_default(const json& j, const std::string& where) {
  if (j.is_number()) return dsl::Value(j.get<double>());
  if (j.is_string()) return dsl::Value(j.get<std::string>());
  if (j.is_boolean()) return dsl::Value(j.get<bool>());
  fail("SCHEMA", where + ": default must be a number, string or boolean");
}

InputDescriptor parse_input(const json& j, std::size_t k) {
  const std::string where = "inputs[" + std::to_string(k) + "]";
  InputDescriptor in;
  in.id = string_field(j, "id", where);
  if (!valid_id(in.id)) fail("SCHEMA", where + ": id '" + in.id + "' is not an identifier");
  in.label = string_field(j, "label", where);
  const std::string w = where + " (" + in.id + ")";

  const json& widget = field(j, "widget", w);
  if (widget.is_string()) {
    const auto name = widget.get<std::string>();
    auto it = std::find_if(std::begin(kWidgets), std::end(kWidgets), [&](const Named& n) { return name == n.name; });
    if (it == std::end(kWidgets)) fail("SCHEMA", w + ": unknown widget '" + name + "'");
    if (it->kind == WidgetKind::Slider) fail("SCHEMA", w + ": Slider needs {\"Slider\": {min, max, step, default}}");
    in.widget = it->kind;
  } else if (widget.is_object() && widget.size() == 1 && widget.contains("Slider")) {
    in.widget = WidgetKind::Slider;
    in.slider = parse_slider(widget.at("Slider"), w);
  } else {
    fail("SCHEMA", w + ": malformed widget");
  }

  const bool select = in.widget == WidgetKind::Select || in.widget == WidgetKind::MultiSelect;
  if (j.contains("choice_source")) {
    if (!select) fail("SCHEMA", w + ": choice_source is only valid on Select and MultiSelect");
    in.choices = parse_choice_source(j.at("choice_source"), w);
  } else if (select) {
    fail("SCHEMA", w + ": a select needs a choice_source");
  }
  if (j.contains("choice_index")) {
    const json& ci = j.at("choice_index");
    if (!ci.is_number_unsigned()) fail("SCHEMA", w + ": choice_index must be a non-negative integer");
    if (!in.variable_choice()) fail("SCHEMA", w + ": choice_index applies to variable choices only");
    in.choice_index = ci.get<std::size_t>();
  }

  if (j.contains("default")) {
    in.default_value = parse_default(j.at("default"), w);
    const dsl::Value& d = *in.default_value;
    switch (in.widget) {
      case WidgetKind::NumericField:
        if (!d.is<double>()) fail("SCHEMA", w + ": NumericField default must be a number");
        break;
      case WidgetKind::Checkbox:
        if (!d.is<bool>()) fail("SCHEMA", w + ": Checkbox default must be a boolean");
        break;
      case WidgetKind::Select:
        if (in.variable_choice()) fail("SCHEMA", w + ": variable selects take no default");
        if (!d.is<std::string>() ||
            std::none_of(in.choices->options.begin(), in.choices->options.end(),
                         [&](const StaticChoice& c) { return c.value == d.as<std::string>(); })) {
          fail("SCHEMA", w + ": default is not one of the choices");
        }
        break;
      default:
        fail("SCHEMA", w + ": this widget takes no default");
    }
  }
  return in;
}

OutputDescriptor parse_output(const json& j, std::size_t k) {
  const std::string where = "outputs[" + std::to_string(k) + "]";
  OutputDescriptor out;
  out.id = string_field(j, "id", where);
  if (!valid_id(out.id)) fail("SCHEMA", where + ": id '" + out.id + "' is not an identifier");
  const auto kind = string_field(j, "kind", where);
  if (kind == "Text") {
    out.kind = OutputKind::Text;
  } else if (kind == "Table") {
    out.kind = OutputKind::Table;
  } else if (kind == "Plot") {
    out.kind = OutputKind::Plot;
  } else {
    fail("SCHEMA", where + ": unknown output kind '" + kind + "'");
  }
  out.title = string_field(j, "title", where);
  return out;
}

ComputeBinding parse_binding(const json& j, std::size_t k) {
  const std::string where = "bindings[" + std::to_string(k) + "]";
  ComputeBinding b;
  b.kernel = string_field(j, "kernel", where);
  const json& pm = field(j, "param_map", where);
  if (!pm.is_object()) fail("SCHEMA", where + ": param_map must be an object");
  for (const auto& [from, to] : pm.items()) {
    if (!to.is_string()) fail("SCHEMA", where + ": param_map values must be strings");
    b.param_map.emplace(from, to.get<std::string>());
  }
  try {
    b.tmpl = transcription::CodeTemplate(string_field(j, "template", where));
  } catch (const transcription::TemplateError& e) {
    fail("TEMPLATE_MISMATCH", where + ": " + e.what());
  }
  b.output_id = string_field(j, "output_id", where);
  if (j.contains("when")) {
    const json& w = j.at("when");
    b.when = Condition{string_field(w, "input", where + ".when"), string_field(w, "equals", where + ".when")};
  }
  return b;
}

const InputDescriptor* static_select(const ModuleManifest& m, const std::string& id) {
  const InputDescriptor* in = m.input(id);
  if (!in || in->widget != WidgetKind::Select || !in->choices || in->choices->kind != ChoiceKind::Static) {
    return nullptr;
  }
  return in;
}

bool has_option(const InputDescriptor& in, const std::string& value) {
  return std::any_of(in.choices->options.begin(), in.choices->options.end(),
                     [&](const StaticChoice& c) { return c.value == value; });
}

void validate(const ModuleManifest& m, const CommandRegistry& commands) {
  std::set<std::string> ids;
  for (const auto& in : m.inputs) {
    if (!ids.insert(in.id).second) fail("DUPLICATE_ID", "input id '" + in.id + "' is used twice");
  }
  for (const auto& d : m.derived) {
    if (!ids.insert(d.id).second) fail("DUPLICATE_ID", "derived id '" + d.id + "' collides with another id");
  }
  std::set<std::string> out_ids;
  for (const auto& o : m.outputs) {
    if (!out_ids.insert(o.id).second) fail("DUPLICATE_ID", "output id '" + o.id + "' is used twice");
  }

  const InputDescriptor* store = m.store_button.empty() ? nullptr : m.input(m.store_button);
  if (!store) fail("STORE_BUTTON_MISSING", "the module has no store button");
  if (store->widget != WidgetKind::ActionButton) {
    fail("STORE_BUTTON_MISSING", "store_button '" + m.store_button + "' is not an ActionButton");
  }
  if (m.options_width != 4 || m.results_width != 8) {
    fail("LAYOUT_WIDTHS", "layout must be options_width 4 and results_width 8, got " +
                              std::to_string(m.options_width) + "/" + std::to_string(m.results_width));
  }

  auto value_input = [&](const std::string& id) {
    const InputDescriptor* in = m.input(id);
    return in && in->widget != WidgetKind::ActionButton;
  };

  for (const auto& in : m.inputs) {
    if (!in.choices || in.choices->kind != ChoiceKind::ByInput) continue;
    const InputDescriptor* ctl = static_select(m, in.choices->input);
    if (!ctl) fail("DANGLING_INPUT", "input '" + in.id + "' switches on '" + in.choices->input + "', not a static select");
    for (const auto& [value, kind] : in.choices->cases) {
      if (!has_option(*ctl, value)) {
        fail("DANGLING_INPUT", "input '" + in.id + "' has a case for '" + value + "', which '" + ctl->id +
                                   "' never takes");
      }
    }
  }

  for (const auto& d : m.derived) {
    try {
      transcription::CodeTemplate t(d.format);
      for (const auto& name : t.placeholder_order()) {
        if (!value_input(name)) fail("DANGLING_INPUT", "derived '" + d.id + "' refers to unknown input '" + name + "'");
      }
    } catch (const transcription::TemplateError& e) {
      fail("SCHEMA", "derived '" + d.id + "': " + e.what());
    }
  }

  for (std::size_t k = 0; k < m.bindings.size(); ++k) {
    const auto& b = m.bindings[k];
    const std::string where = "bindings[" + std::to_string(k) + "]";
    const CommandSpec* cmd = commands.find(b.kernel);
    if (!cmd) fail("UNKNOWN_KERNEL", where + ": unknown kernel '" + b.kernel + "'");
    if (!m.output(b.output_id)) fail("DANGLING_OUTPUT", where + ": output '" + b.output_id + "' is not declared");

    std::set<std::string> params;
    for (const auto& [from, to] : b.param_map) {
      const bool derived = std::any_of(m.derived.begin(), m.derived.end(), [&](const auto& d) { return d.id == from; });
      if (!value_input(from) && !derived) {
        fail("DANGLING_PARAM_MAP", where + ": '" + from + "' is not an input of this module");
      }
      if (!cmd->param(to)) fail("DANGLING_PARAM_MAP", where + ": " + b.kernel + " has no parameter '" + to + "'");
      if (!params.insert(to).second) fail("DANGLING_PARAM_MAP", where + ": parameter '" + to + "' is mapped twice");
    }
    const auto& order = b.tmpl.placeholder_order();
    const std::set<std::string> placeholders(order.begin(), order.end());
    if (placeholders != params) {
      fail("TEMPLATE_MISMATCH", where + ": template placeholders differ from the mapped kernel parameters");
    }
    for (const auto& p : cmd->params) {
      if (p.required && !p.default_value && !params.count(p.name)) {
        fail("TEMPLATE_MISMATCH", where + ": required parameter '" + p.name + "' of " + b.kernel + " is not bound");
      }
    }
    // The skeleton must be a call of the kernel once placeholders are filled.
    std::map<std::string, std::string> dummy;
    for (const auto& name : order) dummy.emplace(name, "0");
    try {
      if (dsl::parse_statement(b.tmpl.render(dummy)).name != b.kernel) {
        fail("TEMPLATE_MISMATCH", where + ": template does not call " + b.kernel);
      }
    } catch (const ParseError& e) {
      fail("TEMPLATE_MISMATCH", where + ": template does not parse: " + e.what());
    }
    if (b.when) {
      const InputDescriptor* ctl = static_select(m, b.when->input);
      if (!ctl) fail("DANGLING_INPUT", where + ": when refers to '" + b.when->input + "', not a static select");
      if (!has_option(*ctl, b.when->equals)) {
        fail("DANGLING_INPUT", where + ": '" + ctl->id + "' never equals '" + b.when->equals + "'");
      }
    }
  }
  for (const auto& o : m.outputs) {
    if (std::none_of(m.bindings.begin(), m.bindings.end(), [&](const auto& b) { return b.output_id == o.id; })) {
      fail("DANGLING_OUTPUT", "output '" + o.id + "' has no binding");
    }
  }
}

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Data: return "data";
    case Category::Summaries: return "summaries";
    case Category::Inference: return "inference";
  }
  return "?";
}

std::optional<Category> category_from_string(std::string_view name) {
  for (auto c : kCategories) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::string heading(Category c) {
  std::string s(to_string(c));
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string_view to_string(WidgetKind w) {
  for (const auto& n : kWidgets) {
    if (n.kind == w) return n.name;
  }
  return "?";
}

std::string_view to_string(OutputKind k) {
  switch (k) {
    case OutputKind::Text: return "Text";
    case OutputKind::Table: return "Table";
    case OutputKind::Plot: return "Plot";
  }
  return "?";
}

std::string ModuleManifest::id() const { return std::string(to_string(category)) + "/" + name; }

const InputDescriptor* ModuleManifest::input(std::string_view id) const {
  for (const auto& in : inputs) {
    if (in.id == id) return &in;
  }
  return nullptr;
}

const OutputDescriptor* ModuleManifest::output(std::string_view id) const {
  for (const auto& o : outputs) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

ModuleManifest load_manifest(std::string_view bytes, const CommandRegistry& commands) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail("SCHEMA", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("SCHEMA", "manifest must be a JSON object");

  ModuleManifest m;
  const auto cat = string_field(j, "category", "manifest");
  auto c = category_from_string(cat);
  if (!c) fail("CATEGORY", "unknown category '" + cat + "' (expected data, summaries or inference)");
  m.category = *c;
  m.name = string_field(j, "name", "manifest");
  if (!valid_id(m.name)) fail("SCHEMA", "module name '" + m.name + "' is not an identifier");
  m.title = string_field(j, "title", "manifest");

  auto array = [&](const char* key, bool required) -> const json* {
    if (!j.contains(key)) {
      if (required) fail("SCHEMA", std::string("manifest: missing field '") + key + "'");
      return nullptr;
    }
    if (!j.at(key).is_array()) fail("SCHEMA", std::string("manifest: '") + key + "' must be an array");
    return &j.at(key);
  };
  const json& inputs = *array("inputs", true);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    m.inputs.push_back(parse_input(inputs[k], k));
    auto& in = m.inputs.back();
    // Paired selects over the same variables default to successive names.
    if (in.variable_choice() && !inputs[k].contains("choice_index")) {
      in.choice_index = static_cast<std::size_t>(std::count_if(m.inputs.begin(), m.inputs.end() - 1, [&](const auto& o) {
        return o.variable_choice() && o.choices->kind == in.choices->kind && o.choices->input == in.choices->input;
      }));
    }
  }
  const json& outputs = *array("outputs", true);
  for (std::size_t k = 0; k < outputs.size(); ++k) m.outputs.push_back(parse_output(outputs[k], k));
  const json& bindings = *array("bindings", true);
  for (std::size_t k = 0; k < bindings.size(); ++k) m.bindings.push_back(parse_binding(bindings[k], k));
  if (const json* derived = array("derived", false)) {
    for (std::size_t k = 0; k < derived->size(); ++k) {
      const std::string where = "derived[" + std::to_string(k) + "]";
      DerivedValue d{string_field((*derived)[k], "id", where), string_field((*derived)[k], "format", where)};
      if (!valid_id(d.id)) fail("SCHEMA", where + ": id '" + d.id + "' is not an identifier");
      m.derived.push_back(std::move(d));
    }
  }
  if (m.outputs.empty()) fail("SCHEMA", "manifest declares no outputs");

  if (j.contains("layout")) {
    const json& layout = j.at("layout");
    auto width = [&](const char* key) {
      const json& v = field(layout, key, "layout");
      if (!v.is_number_integer()) fail("LAYOUT_WIDTHS", std::string("layout.") + key + " must be an integer");
      return v.get<int>();
    };
    m.options_width = width("options_width");
    m.results_width = width("results_width");
  }
  if (j.contains("store_button")) {
    if (!j.at("store_button").is_string()) fail("SCHEMA", "store_button must be a string");
    m.store_button = j.at("store_button").get<std::string>();
  }
  validate(m, commands);
  return m;
}

json to_json(const InputDescriptor& in) {
  json j{{"id", in.id}, {"label", in.label}, {"widget", std::string(to_string(in.widget))}};
  if (in.slider) {
    j["slider"] = {{"min", in.slider->min},
                   {"max", in.slider->max},
                   {"step", in.slider->step},
                   {"default", in.slider->default_value}};
  }
  if (in.choices) {
    const auto& c = *in.choices;
    if (c.kind == ChoiceKind::Static) {
      json opts = json::array();
      for (const auto& o : c.options) opts.push_back({{"label", o.label}, {"value", o.value}});
      j["choice_source"] = {{"Static", opts}};
    } else if (c.kind == ChoiceKind::ByInput) {
      json cases = json::object();
      for (const auto& [v, k] : c.cases) cases[v] = std::string(variable_kind_name(k));
      j["choice_source"] = {{"ByInput", {{"input", c.input}, {"cases", cases}}}};
    } else {
      j["choice_source"] = std::string(variable_kind_name(c.kind));
    }
  }
  if (in.default_value) {
    const auto& d = *in.default_value;
    if (d.is<double>()) j["default"] = d.as<double>();
    if (d.is<std::string>()) j["default"] = d.as<std::string>();
    if (d.is<bool>()) j["default"] = d.as<bool>();
  }
  return j;
}

json to_json(const ModuleManifest& m) {
  json inputs = json::array();
  for (const auto& in : m.inputs) inputs.push_back(to_json(in));
  json outputs = json::array();
  for (const auto& o : m.outputs) outputs.push_back({{"id", o.id}, {"kind", std::string(to_string(o.kind))}, {"title", o.title}});
  return {{"id", m.id()},
          {"category", std::string(to_string(m.category))},
          {"name", m.name},
          {"title", m.title},
          {"inputs", inputs},
          {"outputs", outputs},
          {"layout", {{"options_width", m.options_width}, {"results_width", m.results_width}}},
          {"store_button", m.store_button}};
}

Registry::Registry(std::vector<ModuleManifest> modules) : modules_(std::move(modules)) {
  std::stable_sort(modules_.begin(), modules_.end(), [](const ModuleManifest& a, const ModuleManifest& b) {
    if (a.category != b.category) return a.category < b.category;
    return a.name < b.name;
  });
  for (std::size_t i = 1; i < modules_.size(); ++i) {
    if (modules_[i].id() == modules_[i - 1].id()) fail("DUPLICATE_ID", "module '" + modules_[i].id() + "' appears twice");
  }
}

const ModuleManifest* Registry::find(std::string_view id) const {
  for (const auto& m : modules_) {
    if (m.id() == id) return &m;
  }
  return nullptr;
}

std::vector<std::string> Registry::ids() const {
  std::vector<std::string> out;
  for (const auto& m : modules_) out.push_back(m.id());
  return out;
}

Registry discover(const std::filesystem::path& modules_dir, const std::optional<std::vector<std::string>>& enabled,
                  const CommandRegistry& commands) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(modules_dir)) fail("DISCOVERY", modules_dir.string() + ": not a directory");

  std::vector<fs::path> category_dirs;
  for (const auto& e : fs::directory_iterator(modules_dir)) {
    if (e.is_directory()) category_dirs.push_back(e.path());
  }
  std::sort(category_dirs.begin(), category_dirs.end());

  std::vector<ModuleManifest> found;
  for (const auto& cdir : category_dirs) {
    const auto cat = cdir.filename().string();
    if (!category_from_string(cat)) fail("CATEGORY", cdir.string() + ": unknown category '" + cat + "'");
    std::vector<fs::path> module_dirs;
    for (const auto& e : fs::directory_iterator(cdir)) {
      if (e.is_directory()) module_dirs.push_back(e.path());
    }
    std::sort(module_dirs.begin(), module_dirs.end());
    for (const auto& mdir : module_dirs) {
      const auto file = mdir / "manifest.json";
      std::ifstream in(file, std::ios::binary);
      if (!in) fail("DISCOVERY", file.string() + ": cannot read manifest");
      std::ostringstream buf;
      buf << in.rdbuf();
      ModuleManifest m;
      try {
        m = load_manifest(buf.str(), commands);
      } catch (const ManifestError& e) {
        throw ManifestError(e.code(), file.string() + ": " + e.what());
      }
      if (std::string(to_string(m.category)) != cat || m.name != mdir.filename().string()) {
        fail("DISCOVERY", file.string() + ": declares " + m.id() + " but lives in " + cat + "/" +
                              mdir.filename().string());
      }
      found.push_back(std::move(m));
    }
  }

  Registry all(std::move(found));
  if (!all.find(kDataSources)) fail("DISCOVERY", modules_dir.string() + ": the required data/sources module is missing");
  if (!enabled) return all;

  std::set<std::string> keep{std::string(kDataSources)};
  for (const auto& id : *enabled) {
    if (!all.find(id)) fail("DISCOVERY", "cannot enable unknown module '" + id + "'");
    keep.insert(id);
  }
  std::vector<ModuleManifest> selected;
  for (const auto& m : all.modules()) {
    if (keep.count(m.id())) selected.push_back(m);
  }
  return Registry(std::move(selected));
}

std::vector<NavSection> nav_structure(const Registry& reg) {
  std::vector<NavSection> out;
  for (auto c : kCategories) {
    NavSection section{heading(c), {}};
    for (const auto& m : reg.modules()) {
      if (m.category == c) section.entries.push_back({m.id(), m.title});
    }
    if (!section.entries.empty()) out.push_back(std::move(section));
  }
  return out;
}

json to_json(const std::vector<NavSection>& nav) {
  json out = json::array();
  for (const auto& s : nav) {
    json entries = json::array();
    for (const auto& e : s.entries) entries.push_back({{"id", e.id}, {"title", e.title}});
    out.push_back({{"heading", s.heading}, {"entries", entries}});
  }
  return out;
}

CommandRegistry command_vocabulary(const Registry& reg, const CommandRegistry& all) {
  std::set<std::string> names{"load_data", "transform"};
  for (const auto& m : reg.modules()) {
    for (const auto& b : m.bindings) names.insert(b.kernel);
  }
  CommandRegistry out;
  for (const auto& n : names) {
    if (const CommandSpec* spec = all.find(n)) out.add(*spec);
  }
  return out;
}

}  // namespace statbench::registry
