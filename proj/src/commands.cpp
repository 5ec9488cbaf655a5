#include "statbench/commands.hpp"

#include <cmath>

#include "statbench/errors.hpp"
#include "statbench/numfmt.hpp"
#include "statbench/plot.hpp"
#include "statbench/stats.hpp"

namespace statbench {

const Dataset& Environment::dataset() const {
  if (!data) throw DomainError("no dataset is loaded");
  return *data;
}

const dsl::Value& BoundArgs::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw TypeError("missing argument '" + name + "'");
  return it->second;
}

const Column& BoundArgs::column(const std::string& name) const {
  return env_->dataset().column(get(name).as<dsl::ColumnRef>().name);
}

double BoundArgs::number(const std::string& name) const { return get(name).as<double>(); }

int BoundArgs::integer(const std::string& name) const { return static_cast<int>(get(name).as<double>()); }

const std::string& BoundArgs::string(const std::string& name) const { return get(name).as<std::string>(); }

bool BoundArgs::boolean(const std::string& name) const { return get(name).as<bool>(); }

const ParamSpec* CommandSpec::param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void CommandRegistry::add(CommandSpec spec) {
  auto name = spec.name;
  if (!commands_.emplace(name, std::move(spec)).second) {
    throw ConflictError("command '" + name + "' is already registered");
  }
}

const CommandSpec* CommandRegistry::find(std::string_view name) const {
  auto it = commands_.find(name);
  return it == commands_.end() ? nullptr : &it->second;
}

std::vector<std::string> CommandRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : commands_) out.push_back(name);
  return out;
}

namespace {

std::string_view type_name(ParamType t) {
  switch (t) {
    case ParamType::NumericColumn: return "a numeric variable";
    case ParamType::CategoricalColumn: return "a categorical variable";
    case ParamType::AnyColumn: return "a variable";
    case ParamType::Number: return "a number";
    case ParamType::Integer: return "an integer";
    case ParamType::String: return "a string";
    case ParamType::Bool: return "true or false";
  }
  return "?";
}

void check_arg(const CommandSpec& cmd, const ParamSpec& p, const dsl::Value& v, const Environment& env) {
  auto mismatch = [&] {
    return TypeError(cmd.name + ": argument '" + p.name + "' must be " + std::string(type_name(p.type)) +
                     ", got " + dsl::print(v));
  };
  switch (p.type) {
    case ParamType::NumericColumn:
    case ParamType::CategoricalColumn:
    case ParamType::AnyColumn: {
      if (!v.is<dsl::ColumnRef>()) throw mismatch();
      const auto& name = v.as<dsl::ColumnRef>().name;
      const Column& c = env.dataset().column(name);
      if (p.type == ParamType::NumericColumn && c.type() != ColumnType::Numeric) {
        throw TypeError("variable '" + name + "' must be numeric");
      }
      if (p.type == ParamType::CategoricalColumn && c.type() != ColumnType::Categorical) {
        throw TypeError("variable '" + name + "' must be categorical");
      }
      break;
    }
    case ParamType::Number:
      if (!v.is<double>()) throw mismatch();
      break;
    case ParamType::Integer:
      if (!v.is<double>() || std::floor(v.as<double>()) != v.as<double>() || std::fabs(v.as<double>()) > 1e9) {
        throw mismatch();
      }
      break;
    case ParamType::String:
      if (!v.is<std::string>()) throw mismatch();
      if (!p.allowed.empty()) {
        bool ok = false;
        for (const auto& a : p.allowed) ok = ok || a == v.as<std::string>();
        if (!ok) {
          std::string list;
          for (const auto& a : p.allowed) list += (list.empty() ? "" : ", ") + dsl::quote(a);
          throw TypeError(cmd.name + ": argument '" + p.name + "' must be one of " + list);
        }
      }
      break;
    case ParamType::Bool:
      if (!v.is<bool>()) throw mismatch();
      break;
  }
}

stats::HypothesisSpec hypothesis(const BoundArgs& a) {
  stats::HypothesisSpec spec;
  spec.alternative = *stats::alternative_from_string(a.string("alternative"));
  spec.conf_level = a.number("conf_level");
  spec.mu = a.number("mu");
  return spec;
}

ParamSpec column(std::string name, ParamType type, bool required = true) {
  return ParamSpec{std::move(name), type, required, std::nullopt, {}};
}

ParamSpec with_default(std::string name, ParamType type, dsl::Value def, std::vector<std::string> allowed = {}) {
  return ParamSpec{std::move(name), type, false, std::move(def), std::move(allowed)};
}

std::vector<ParamSpec> hypothesis_params() {
  return {with_default("mu", ParamType::Number, 0.0),
          with_default("alternative", ParamType::String, "two.sided", {"two.sided", "greater", "less"}),
          with_default("conf_level", ParamType::Number, 0.95)};
}

CommandRegistry make_builtin() {
  using P = ParamType;
  CommandRegistry reg;

  reg.add({"load_data",
           {column("file", P::String)},
           true,
           [](Environment& env, const BoundArgs& a) -> Result {
             const auto& name = a.string("file");
             auto it = env.files.find(name);
             if (it == env.files.end()) throw NotFoundError("data file '" + name + "' is not available");
             env.data = std::make_shared<const Dataset>(parse_csv(it->second));
             return summarize(*env.data);
           }});

  std::vector<std::string> ops;
  for (auto op : {TransformOp::Log, TransformOp::Sqrt, TransformOp::Square, TransformOp::Standardize,
                  TransformOp::BinEqualWidth}) {
    ops.emplace_back(to_string(op));
  }
  reg.add({"transform",
           {column("source", P::NumericColumn), ParamSpec{"op", P::String, true, std::nullopt, ops},
            column("target", P::String), with_default("bins", P::Integer, 4.0)},
           true,
           [](Environment& env, const BoundArgs& a) -> Result {
             TransformSpec spec;
             spec.source = a.column("source").name();
             spec.op = *transform_op_from_string(a.string("op"));
             spec.target = a.string("target");
             spec.bins = a.integer("bins");
             env.data = std::make_shared<const Dataset>(apply_transform(env.dataset(), spec));
             return summarize(*env.data);
           }});

  reg.add({"data_summary", {}, false,
           [](Environment& env, const BoundArgs&) -> Result { return summarize(env.dataset()); }});

  reg.add({"numeric_summary",
           {column("x", P::NumericColumn)},
           false,
           [](Environment&, const BoundArgs& a) -> Result { return stats::numeric_summary(a.column("x").cells()); }});

  reg.add({"ols_fit",
           {column("x", P::NumericColumn), column("y", P::NumericColumn)},
           false,
           [](Environment&, const BoundArgs& a) -> Result {
             return stats::ols_fit(a.column("x").cells(), a.column("y").cells());
           }});

  auto t_params = std::vector<ParamSpec>{column("x", P::NumericColumn), column("y", P::NumericColumn, false)};
  for (auto& p : hypothesis_params()) t_params.push_back(p);
  reg.add({"t_test", t_params, false, [](Environment&, const BoundArgs& a) -> Result {
             auto x = a.column("x").numbers();
             std::vector<double> y;
             if (a.has("y")) y = a.column("y").numbers();
             return stats::t_test(x, y, hypothesis(a));
           }});

  auto w_params = std::vector<ParamSpec>{column("x", P::NumericColumn), column("y", P::NumericColumn)};
  for (auto& p : hypothesis_params()) w_params.push_back(p);
  reg.add({"wilcoxon_rank_sum", w_params, false, [](Environment&, const BoundArgs& a) -> Result {
             return stats::wilcoxon_rank_sum(a.column("x").numbers(), a.column("y").numbers(), hypothesis(a));
           }});

  reg.add({"contingency",
           {column("a", P::CategoricalColumn), column("b", P::CategoricalColumn)},
           false,
           [](Environment&, const BoundArgs& a) -> Result {
             return stats::contingency(a.column("a").cells(), a.column("b").cells());
           }});

  reg.add({"histogram",
           {column("x", P::NumericColumn), with_default("bins", P::Integer, 0.0)},
           false,
           [](Environment& env, const BoundArgs& a) -> Result {
             plot::PlotOptions opts;
             if (a.integer("bins") != 0) opts.bins = a.integer("bins");
             return plot::plot_spec(plot::PlotKind::Histogram, env.dataset(), {a.column("x").name(), std::nullopt},
                                    opts);
           }});
  reg.add({"bar_chart",
           {column("x", P::CategoricalColumn)},
           false,
           [](Environment& env, const BoundArgs& a) -> Result {
             return plot::plot_spec(plot::PlotKind::Bar, env.dataset(), {a.column("x").name(), std::nullopt});
           }});
  reg.add({"scatter_plot",
           {column("x", P::NumericColumn), column("y", P::NumericColumn)},
           false,
           [](Environment& env, const BoundArgs& a) -> Result {
             return plot::plot_spec(plot::PlotKind::Scatter, env.dataset(),
                                    {a.column("x").name(), a.column("y").name()});
           }});
  reg.add({"box_plot",
           {column("x", P::NumericColumn), column("group", P::CategoricalColumn, false)},
           false,
           [](Environment& env, const BoundArgs& a) -> Result {
             std::optional<std::string> group;
             if (a.has("group")) group = a.column("group").name();
             return plot::plot_spec(plot::PlotKind::Box, env.dataset(), {a.column("x").name(), group});
           }});
  reg.add({"mosaic_plot",
           {column("x", P::CategoricalColumn), column("y", P::CategoricalColumn)},
           false,
           [](Environment& env, const BoundArgs& a) -> Result {
             return plot::plot_spec(plot::PlotKind::Mosaic, env.dataset(),
                                    {a.column("x").name(), a.column("y").name()});
           }});
  return reg;
}

}  // namespace

const CommandRegistry& CommandRegistry::builtin() {
  static const CommandRegistry reg = make_builtin();
  return reg;
}

Result evaluate(const dsl::Call& call, Environment& env, const CommandRegistry& commands) {
  const CommandSpec* cmd = commands.find(call.name);
  if (!cmd) throw NotFoundError("unknown command " + call.name);

  std::map<std::string, dsl::Value> values;
  std::size_t positional = 0;
  bool seen_keyword = false;
  for (const auto& arg : call.args) {
    const ParamSpec* p = nullptr;
    if (arg.keyword) {
      seen_keyword = true;
      p = cmd->param(*arg.keyword);
      if (!p) throw TypeError(cmd->name + ": unknown argument '" + *arg.keyword + "'");
    } else {
      if (seen_keyword) throw TypeError(cmd->name + ": positional argument after keyword arguments");
      if (positional >= cmd->params.size()) {
        throw TypeError(cmd->name + ": too many arguments (takes at most " + std::to_string(cmd->params.size()) +
                        ")");
      }
      p = &cmd->params[positional++];
    }
    if (values.count(p->name)) throw TypeError(cmd->name + ": argument '" + p->name + "' given twice");
    check_arg(*cmd, *p, arg.value, env);
    values.emplace(p->name, arg.value);
  }
  for (const auto& p : cmd->params) {
    if (values.count(p.name)) continue;
    if (p.default_value) {
      values.emplace(p.name, *p.default_value);
    } else if (p.required) {
      throw TypeError(cmd->name + ": missing argument '" + p.name + "'");
    }
  }
  return cmd->run(env, BoundArgs(env, std::move(values)));
}

}  // namespace statbench
