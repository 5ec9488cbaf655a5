#pragma once

// Declarative statistics modules.
//
// A module is one manifest.json under modules/<category>/<name>/. Its
// sections stand in for the six-file anatomy of the original design:
//   bindings        helper  (kernel invocations and their code templates)
//   choice_source   observe (variable-list refresh rules)
//   derived         reactive (values computed from other inputs)
//   outputs         output
//   inputs, layout  ui

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "statbench/commands.hpp"
#include "statbench/dsl.hpp"
#include "statbench/errors.hpp"
#include "statbench/transcription.hpp"

namespace statbench::registry {

/// Validation failure. code() is one of SCHEMA, STORE_BUTTON_MISSING,
/// LAYOUT_WIDTHS, DANGLING_PARAM_MAP, DANGLING_OUTPUT, DANGLING_INPUT,
/// TEMPLATE_MISMATCH, DUPLICATE_ID, SLIDER_RANGE, UNKNOWN_KERNEL, CATEGORY,
/// or DISCOVERY for directory-level problems.
class ManifestError : public Error {
 public:
  ManifestError(std::string code, const std::string& message)
      : Error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

enum class Category { Data, Summaries, Inference };

std::string_view to_string(Category c);
std::optional<Category> category_from_string(std::string_view name);
/// "Data", "Summaries", "Inference".
std::string heading(Category c);

enum class WidgetKind { Select, MultiSelect, NumericField, Slider, Checkbox, ActionButton };

std::string_view to_string(WidgetKind w);

struct SliderRange {
  double min = 0, max = 1, step = 0.1, default_value = 0;
};

enum class ChoiceKind { NumericVariables, CategoricalVariables, AllVariables, Static, ByInput };

struct StaticChoice {
  std::string label;
  std::string value;
};

struct ChoiceSource {
  ChoiceKind kind = ChoiceKind::AllVariables;
  std::vector<StaticChoice> options;          // Static
  std::string input;                          // ByInput: id of a Static select
  std::map<std::string, ChoiceKind> cases;    // ByInput: that input's value -> variable kind

  /// True when the choices are dataset variables (rendered as col("name")).
  bool variables() const { return kind != ChoiceKind::Static; }
};

struct InputDescriptor {
  std::string id;
  std::string label;
  WidgetKind widget = WidgetKind::Select;
  std::optional<SliderRange> slider;
  std::optional<ChoiceSource> choices;
  std::optional<dsl::Value> default_value;
  /// Default pick among variable choices; when omitted, the k-th select over
  /// the same choice source picks the k-th name.
  std::size_t choice_index = 0;

  bool variable_choice() const { return choices && choices->variables(); }
};

enum class OutputKind { Text, Table, Plot };

std::string_view to_string(OutputKind k);

struct OutputDescriptor {
  std::string id;
  OutputKind kind = OutputKind::Text;
  std::string title;
};

struct Condition {
  std::string input;
  std::string equals;
};

struct ComputeBinding {
  std::string kernel;
  std::map<std::string, std::string> param_map;  // input or derived id -> kernel parameter
  transcription::CodeTemplate tmpl{""};
  std::string output_id;
  std::optional<Condition> when;
};

/// A string assembled from other inputs, e.g. a new column name "{op}_{source}".
struct DerivedValue {
  std::string id;
  std::string format;
};

struct ModuleManifest {
  Category category = Category::Data;
  std::string name;
  std::string title;
  std::vector<InputDescriptor> inputs;
  std::vector<OutputDescriptor> outputs;
  std::vector<ComputeBinding> bindings;
  std::vector<DerivedValue> derived;
  int options_width = 4;
  int results_width = 8;
  std::string store_button;

  /// "category/name"
  std::string id() const;
  const InputDescriptor* input(std::string_view id) const;
  const OutputDescriptor* output(std::string_view id) const;
};

/// Parses and validates one manifest. Kernel names are checked against commands.
ModuleManifest load_manifest(std::string_view bytes, const CommandRegistry& commands = CommandRegistry::builtin());

/// Descriptor sent to clients (without live choices).
nlohmann::json to_json(const ModuleManifest& m);
nlohmann::json to_json(const InputDescriptor& in);

class Registry {
 public:
  Registry() = default;
  /// Orders modules by category, then name. Throws DUPLICATE_ID on repeated ids.
  explicit Registry(std::vector<ModuleManifest> modules);

  const std::vector<ModuleManifest>& modules() const { return modules_; }
  const ModuleManifest* find(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  std::vector<ModuleManifest> modules_;
};

inline constexpr std::string_view kDataSources = "data/sources";

/// Loads modules_dir/<category>/<name>/manifest.json. With an enabled list,
/// keeps only those modules plus data/sources. Errors name the offending path.
Registry discover(const std::filesystem::path& modules_dir,
                  const std::optional<std::vector<std::string>>& enabled = std::nullopt,
                  const CommandRegistry& commands = CommandRegistry::builtin());

struct NavEntry {
  std::string id;
  std::string title;
};

struct NavSection {
  std::string heading;
  std::vector<NavEntry> entries;
};

std::vector<NavSection> nav_structure(const Registry& reg);
nlohmann::json to_json(const std::vector<NavSection>& nav);

/// Commands reachable from the registry's bindings plus load_data and transform.
CommandRegistry command_vocabulary(const Registry& reg, const CommandRegistry& all = CommandRegistry::builtin());

}  // namespace statbench::registry
