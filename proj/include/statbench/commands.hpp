#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "statbench/dataset.hpp"
#include "statbench/dsl.hpp"
#include "statbench/results.hpp"

namespace statbench {

enum class ParamType { NumericColumn, CategoricalColumn, AnyColumn, Number, Integer, String, Bool };

struct ParamSpec {
  std::string name;
  ParamType type;
  bool required = true;
  std::optional<dsl::Value> default_value;
  std::vector<std::string> allowed;  // String params only; empty means any
};

/// Uploaded files by name, the data source for load_data.
using DataFiles = std::map<std::string, std::string>;

struct Environment {
  DatasetPtr data;
  DataFiles files;

  /// Throws DomainError when no dataset is loaded.
  const Dataset& dataset() const;
};

/// Arguments of one call after matching against a command's parameters.
class BoundArgs {
 public:
  BoundArgs(const Environment& env, std::map<std::string, dsl::Value> values)
      : env_(&env), values_(std::move(values)) {}

  bool has(const std::string& name) const { return values_.count(name) != 0; }
  const Column& column(const std::string& name) const;
  double number(const std::string& name) const;
  int integer(const std::string& name) const;
  const std::string& string(const std::string& name) const;
  bool boolean(const std::string& name) const;

 private:
  const dsl::Value& get(const std::string& name) const;
  const Environment* env_;
  std::map<std::string, dsl::Value> values_;
};

struct CommandSpec {
  std::string name;
  std::vector<ParamSpec> params;
  bool mutates_data = false;
  std::function<Result(Environment&, const BoundArgs&)> run;

  const ParamSpec* param(std::string_view name) const;
};

class CommandRegistry {
 public:
  void add(CommandSpec spec);
  const CommandSpec* find(std::string_view name) const;
  std::vector<std::string> names() const;

  /// Data commands (load_data, transform, data_summary) and every statistics kernel.
  static const CommandRegistry& builtin();

 private:
  std::map<std::string, CommandSpec, std::less<>> commands_;
};

/// Runs one statement. Throws NotFoundError for unknown commands, TypeError for
/// argument mismatches, and the kernel's own errors otherwise.
Result evaluate(const dsl::Call& call, Environment& env, const CommandRegistry& commands);

}  // namespace statbench
