#include "statbench/session.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "statbench/numfmt.hpp"

namespace statbench::session {

using nlohmann::json;
using registry::ChoiceKind;
using registry::InputDescriptor;
using registry::ModuleManifest;
using registry::WidgetKind;

namespace {

const std::string kDatasetNode = "dataset";

std::string input_node(const std::string& mod, const std::string& input) { return mod + "/" + input; }
std::string choices_node(const std::string& mod, const std::string& input) { return mod + "/" + input + "#choices"; }
std::string resolved_node(const std::string& mod, const std::string& input) { return mod + "/" + input + "#value"; }
std::string derived_node(const std::string& mod, const std::string& id) { return mod + "/" + id + "#derived"; }
std::string output_node(const std::string& mod, const std::string& out) { return mod + "#output/" + out; }

const dsl::Value& as_dsl(const Value& v) { return std::get<dsl::Value>(v); }

json value_json(const dsl::Value& v) {
  if (v.is<double>()) return v.as<double>();
  if (v.is<std::string>()) return v.as<std::string>();
  if (v.is<bool>()) return v.as<bool>();
  if (v.is<dsl::ColumnRef>()) return v.as<dsl::ColumnRef>().name;
  if (v.is<dsl::List>()) {
    json out = json::array();
    for (const auto& item : v.as<dsl::List>()) out.push_back(value_json(item));
    return out;
  }
  return dsl::print(v);
}

std::string value_text(const dsl::Value& v) {
  if (v.is<std::string>()) return v.as<std::string>();
  if (v.is<double>()) return format_number(v.as<double>());
  if (v.is<bool>()) return v.as<bool>() ? "true" : "false";
  if (v.is<dsl::ColumnRef>()) return v.as<dsl::ColumnRef>().name;
  return dsl::print(v);
}

// A variable select with nothing to choose from; the output reports it instead of a result.
struct Unavailable {
  std::string message;
};

std::vector<std::string> variables(const Dataset& ds, ChoiceKind kind) {
  switch (kind) {
    case ChoiceKind::NumericVariables: return numeric_names(ds);
    case ChoiceKind::CategoricalVariables: return categorical_names(ds);
    case ChoiceKind::AllVariables: {
      std::vector<std::string> out;
      for (const auto& c : ds.columns()) out.push_back(c.name());
      return out;
    }
    default: return {};
  }
}

dsl::Value initial_value(const InputDescriptor& in) {
  if (in.default_value) return *in.default_value;
  switch (in.widget) {
    case WidgetKind::Select:
      if (!in.variable_choice()) return dsl::Value(in.choices->options.front().value);
      return dsl::Value(std::string());
    case WidgetKind::MultiSelect: return dsl::Value(dsl::List{});
    case WidgetKind::NumericField: return dsl::Value(0.0);
    case WidgetKind::Slider: return dsl::Value(in.slider->default_value);
    case WidgetKind::Checkbox: return dsl::Value(false);
    case WidgetKind::ActionButton: return dsl::Value(0.0);
  }
  return {};
}

// Decimal places of the step as written, so snapped values print cleanly.
int step_decimals(double step) {
  const std::string s = format_number(step);
  if (s.find_first_of("eE") != std::string::npos) return -1;
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

double snap(const registry::SliderRange& r, double v) {
  const double tol = 1e-9 * (r.max - r.min);
  if (!std::isfinite(v) || v < r.min - tol || v > r.max + tol) {
    throw DomainError("value " + format_number(v) + " is outside [" + format_number(r.min) + ", " +
                      format_number(r.max) + "]");
  }
  const double k = std::round((v - r.min) / r.step);
  double out = r.min + k * r.step;
  const int d = step_decimals(r.step);
  if (d >= 0 && d <= 15) {
    const double scale = std::pow(10.0, d);
    out = std::round(out * scale) / scale;
  }
  return std::clamp(out, r.min, r.max);
}

std::string file_argument(const dsl::Call& call) {
  for (const auto& a : call.args) {
    if ((!a.keyword || *a.keyword == "file") && a.value.is<std::string>()) return a.value.as<std::string>();
  }
  throw TypeError("load_data needs a file name");
}

}  // namespace

bool ValueEqual::operator()(const Value& a, const Value& b) const {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, std::monostate>) {
          return true;
        } else {
          // Datasets and output states compare by identity: a new value is a change.
          return x == y;
        }
      },
      a);
}

json to_json(const OutputState& out) {
  json j{{"module", out.module_id}, {"output", out.output_id}};
  j["statement"] = out.statement ? json(out.statement->text) : json(nullptr);
  if (out.outcome.ok()) {
    j["result"] = statbench::to_json(*out.outcome.value);
    j["text"] = format_text(*out.outcome.value);
    j["error"] = nullptr;
  } else {
    j["result"] = nullptr;
    j["text"] = "";
    j["error"] = out.outcome.error;
  }
  return j;
}

json to_json(const ChangeSet& changes) {
  json outputs = json::object();
  for (const auto& [key, state] : changes.outputs) outputs[key] = to_json(*state);
  return {{"outputs", outputs}, {"code_panel", changes.code_panel}};
}

Session::Session(std::string id, const registry::Registry& reg, const CommandRegistry& commands, std::string filename,
                 std::string csv)
    : id_(std::move(id)), reg_(&reg), commands_(&commands) {
  if (filename.empty()) filename = "data.csv";
  auto ds = std::make_shared<const Dataset>(parse_csv(csv));
  script_.preamble.push_back({load_statement(filename), "", 0});
  files_[filename] = std::move(csv);
  current_file_ = filename;
  graph_.register_input(kDatasetNode, DatasetPtr(ds));
  for (const auto& m : reg.modules()) wire(m);
}

std::string Session::load_statement(const std::string& filename) const {
  return "load_data(file = " + dsl::quote(filename) + ")";
}

bool Session::wired(std::string_view module_id) const { return wired_.find(module_id) != wired_.end(); }

const ModuleManifest& Session::module(std::string_view module_id) const {
  auto it = wired_.find(module_id);
  if (it == wired_.end()) throw NotFoundError("module '" + std::string(module_id) + "' is not enabled");
  return *it->second.manifest;
}

void Session::wire(const ModuleManifest& m) {
  const std::string mod = m.id();
  if (wired(mod)) throw ConflictError("module '" + mod + "' is already wired into this session");
  for (const auto& in : m.inputs) {
    if (graph_.contains(input_node(mod, in.id))) throw ConflictError("node '" + input_node(mod, in.id) + "' exists");
  }
  wired_.emplace(mod, Wired{&m, 0});
  Graph& g = graph_;
  const CommandRegistry* commands = commands_;

  // helper: plain inputs first, so later closures can rely on them existing.
  for (const auto& in : m.inputs) g.register_input(input_node(mod, in.id), initial_value(in));

  // observe: variable lists follow the dataset; selections follow the lists.
  for (const auto& in : m.inputs) {
    if (!in.variable_choice()) continue;
    const auto src = *in.choices;
    g.register_computed(choices_node(mod, in.id), [src, mod](Graph& g) -> Value {
      const auto& ds = *std::get<DatasetPtr>(g.read(kDatasetNode));
      ChoiceKind kind = src.kind;
      if (kind == ChoiceKind::ByInput) {
        const auto& ctl = as_dsl(g.read(input_node(mod, src.input))).as<std::string>();
        auto it = src.cases.find(ctl);
        if (it == src.cases.end()) return std::vector<std::string>{};
        kind = it->second;
      }
      return variables(ds, kind);
    });
    const bool multi = in.widget == WidgetKind::MultiSelect;
    const std::size_t pick = in.choice_index;
    const std::string raw_id = input_node(mod, in.id);
    g.register_computed(resolved_node(mod, in.id), [=](Graph& g) -> Value {
      const auto& choices = std::get<std::vector<std::string>>(g.read(choices_node(mod, in.id)));
      const auto& raw = as_dsl(g.read(raw_id));
      auto member = [&](const std::string& s) { return std::find(choices.begin(), choices.end(), s) != choices.end(); };
      if (multi) {
        dsl::List kept;
        for (const auto& v : raw.as<dsl::List>()) {
          if (member(v.as<std::string>())) kept.push_back(v);
        }
        return dsl::Value(std::move(kept));
      }
      const auto& current = raw.as<std::string>();
      if (member(current)) return raw;
      if (choices.empty()) return dsl::Value(std::string());
      return dsl::Value(choices[pick < choices.size() ? pick : 0]);
    });
    // Write the resolved selection back so the input itself never holds a stale name.
    g.set_input(raw_id, g.read(resolved_node(mod, in.id)));
    g.register_observer(raw_id + "#sync", [=](Graph& g) {
      const Value& resolved = g.read(resolved_node(mod, in.id));
      if (!ValueEqual{}(resolved, g.read(raw_id))) g.defer_input(raw_id, resolved);
    });
  }

  // reactive: derived strings.
  auto param_value = [&m, mod](Graph& g, const std::string& from) -> dsl::Value {
    if (const InputDescriptor* in = m.input(from)) {
      if (!in->variable_choice()) return as_dsl(g.read(input_node(mod, from)));
      const auto& v = as_dsl(g.read(resolved_node(mod, from)));
      if (in->widget == WidgetKind::MultiSelect) {
        dsl::List cols;
        for (const auto& item : v.as<dsl::List>()) cols.push_back(dsl::ColumnRef{item.as<std::string>()});
        return dsl::Value(std::move(cols));
      }
      if (v.as<std::string>().empty()) throw Unavailable{"no suitable variable for '" + in->label + "'"};
      return dsl::ColumnRef{v.as<std::string>()};
    }
    return as_dsl(g.read(derived_node(mod, from)));
  };

  for (const auto& d : m.derived) {
    const transcription::CodeTemplate fmt(d.format);
    g.register_computed(derived_node(mod, d.id), [fmt, param_value](Graph& g) -> Value {
      std::map<std::string, std::string> parts;
      for (const auto& name : fmt.placeholder_order()) parts[name] = value_text(param_value(g, name));
      return dsl::Value(fmt.render(parts));
    });
  }

  // output: one interpolated computation per output.
  for (const auto& out : m.outputs) {
    const std::string out_id = out.id;
    g.register_computed(output_node(mod, out_id), [&m, mod, out_id, commands, param_value](Graph& g) -> Value {
      auto state = std::make_shared<OutputState>();
      state->module_id = mod;
      state->output_id = out_id;
      const registry::ComputeBinding* binding = nullptr;
      for (const auto& b : m.bindings) {
        if (b.output_id != out_id) continue;
        if (b.when && as_dsl(g.read(input_node(mod, b.when->input))).as<std::string>() != b.when->equals) continue;
        binding = &b;
        break;
      }
      if (!binding) {
        state->outcome.error = "no computation applies to the current options";
        return OutputPtr(state);
      }
      try {
        std::vector<transcription::Binding> args;
        for (const auto& [from, param] : binding->param_map) args.push_back({param, param_value(g, from)});
        const DatasetPtr ds = std::get<DatasetPtr>(g.read(kDatasetNode));
        const CommandSpec* cmd = commands->find(binding->kernel);
        auto evaluator = [&](const dsl::Call& call) -> Result {
          Environment env{ds, {}};
          Result r = evaluate(call, env, *commands);
          if (cmd && cmd->mutates_data) state->data_after = env.data;
          return r;
        };
        auto done = transcription::interpolate(binding->tmpl, args, evaluator, mod, g.epoch());
        state->statement = std::move(done.statement);
        state->outcome = std::move(done.result);
      } catch (const Unavailable& u) {
        state->outcome.error = u.message;
      } catch (const transcription::TemplateError& e) {
        state->outcome.error = e.what();
      }
      return OutputPtr(state);
    });
    g.register_observer(mod + "#publish/" + out_id, [this, mod, out_id](Graph& g) {
      const auto state = std::get<OutputPtr>(g.read(output_node(mod, out_id)));
      module_code_[mod] = state->statement ? state->statement->text : "";
      if (recording_) {
        recording_->outputs[mod + "/" + out_id] = state;
        recording_->code_panel[mod] = module_code_[mod];
      }
    });
  }

  // store: appends when the button counter moves past what was last seen.
  const std::string button = input_node(mod, m.store_button);
  g.register_observer(mod + "#store", [this, &m, mod, button](Graph& g) {
    const double count = as_dsl(g.read(button)).as<double>();
    std::vector<OutputPtr> states;
    for (const auto& out : m.outputs) states.push_back(std::get<OutputPtr>(g.read(output_node(mod, out.id))));
    auto& w = wired_.find(mod)->second;
    if (count <= w.store_seen) return;
    w.store_seen = count;
    for (const auto& s : states) {
      if (!s->statement || !s->outcome.ok()) continue;
      script_.stored.push_back(*s->statement);
      if (s->data_after) g.defer_input(kDatasetNode, s->data_after);
    }
  });
}

ChangeSet Session::run(const std::string& node, Value value) {
  ChangeSet changes;
  recording_ = &changes;
  struct Reset {
    ChangeSet*& r;
    ~Reset() { r = nullptr; }
  } reset{recording_};
  graph_.set_input(node, std::move(value));
  return changes;
}

ChangeSet Session::replace_data(const std::string& filename, std::string csv, Dataset ds, bool record) {
  if (record) {
    if (script_.stored.empty()) {
      files_.clear();
      script_.preamble = {{load_statement(filename), "", 0}};
    } else {
      script_.stored.push_back({load_statement(filename), "", 0});
    }
  }
  files_[filename] = std::move(csv);
  current_file_ = filename;
  return run(kDatasetNode, DatasetPtr(std::make_shared<const Dataset>(std::move(ds))));
}

UploadResult Session::upload(std::string filename, std::string csv) {
  if (filename.empty()) filename = "data.csv";
  Dataset ds = parse_csv(csv);
  // Earlier stored statements may still load the old bytes under this name.
  if (!script_.stored.empty()) {
    const auto dot = filename.rfind('.');
    const std::string stem = dot == std::string::npos || dot == 0 ? filename : filename.substr(0, dot);
    const std::string ext = stem.size() == filename.size() ? "" : filename.substr(dot);
    std::string name = filename;
    for (int k = 2; files_.count(name) && files_.at(name) != csv; ++k) name = stem + "_" + std::to_string(k) + ext;
    filename = name;
  }
  UploadResult result;
  result.summary = summarize(ds);
  result.filename = filename;
  result.changes = replace_data(filename, std::move(csv), std::move(ds), true);
  return result;
}

ChangeSet Session::set_input(const std::string& input_id, const json& value) {
  const auto slash = input_id.rfind('/');
  if (slash == std::string::npos) throw NotFoundError("unknown input '" + input_id + "'");
  const ModuleManifest& m = module(input_id.substr(0, slash));
  const InputDescriptor* in = m.input(input_id.substr(slash + 1));
  if (!in) throw NotFoundError("unknown input '" + input_id + "'");
  const std::string mod = m.id();

  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw TypeError("input '" + input_id + "' expects " + what);
  };
  auto check_choice = [&](const std::string& s) {
    if (in->variable_choice()) {
      const auto& choices = std::get<std::vector<std::string>>(graph_.read(choices_node(mod, in->id)));
      if (std::find(choices.begin(), choices.end(), s) == choices.end()) {
        throw DomainError("'" + s + "' is not an available variable for '" + in->label + "'");
      }
    } else if (std::none_of(in->choices->options.begin(), in->choices->options.end(),
                            [&](const auto& o) { return o.value == s; })) {
      throw DomainError("'" + s + "' is not a choice of '" + in->label + "'");
    }
  };

  dsl::Value v;
  switch (in->widget) {
    case WidgetKind::Select:
      require(value.is_string(), "a string");
      check_choice(value.get<std::string>());
      v = value.get<std::string>();
      break;
    case WidgetKind::MultiSelect: {
      require(value.is_array(), "an array of strings");
      dsl::List items;
      std::set<std::string> seen;
      for (const auto& item : value) {
        require(item.is_string(), "an array of strings");
        check_choice(item.get<std::string>());
        if (seen.insert(item.get<std::string>()).second) items.push_back(item.get<std::string>());
      }
      v = std::move(items);
      break;
    }
    case WidgetKind::NumericField:
      require(value.is_number() && std::isfinite(value.get<double>()), "a finite number");
      v = value.get<double>();
      break;
    case WidgetKind::Slider:
      require(value.is_number(), "a number");
      v = snap(*in->slider, value.get<double>());
      break;
    case WidgetKind::Checkbox:
      require(value.is_boolean(), "true or false");
      v = value.get<bool>();
      break;
    case WidgetKind::ActionButton:
      throw TypeError("input '" + input_id + "' is a button; use the store action");
  }
  return run(input_node(mod, in->id), std::move(v));
}

StoreResult Session::store(std::string_view module_id) {
  const ModuleManifest& m = module(module_id);
  const std::string mod = m.id();
  bool any = false;
  for (const auto& out : m.outputs) {
    const auto state = output(mod, out.id);
    if (!state->statement) continue;
    any = true;
    if (!state->outcome.ok()) throw DomainError("latest result is an error: " + state->outcome.error);
  }
  if (!any) throw NotFoundError("nothing to store");
  const std::string button = input_node(mod, m.store_button);
  const double count = as_dsl(graph_.read(button)).as<double>();
  StoreResult result;
  result.changes = run(button, dsl::Value(count + 1));
  result.script_length = script_.stored.size();
  return result;
}

transcription::ReportBundle Session::report() const {
  return transcription::render_report(script_, files_, code_visible_, *commands_);
}

DatasetPtr Session::dataset() { return std::get<DatasetPtr>(graph_.read(kDatasetNode)); }

OutputPtr Session::output(std::string_view module_id, std::string_view output_id) {
  const ModuleManifest& m = module(module_id);
  if (!m.output(output_id)) throw NotFoundError("module '" + m.id() + "' has no output '" + std::string(output_id) + "'");
  return std::get<OutputPtr>(graph_.read(output_node(m.id(), std::string(output_id))));
}

json Session::module_ui(std::string_view module_id) {
  const ModuleManifest& m = module(module_id);
  const std::string mod = m.id();
  json j = registry::to_json(m);
  for (std::size_t k = 0; k < m.inputs.size(); ++k) {
    const auto& in = m.inputs[k];
    auto& ji = j["inputs"][k];
    ji["node"] = input_node(mod, in.id);
    ji["value"] = value_json(as_dsl(graph_.read(input_node(mod, in.id))));
    if (in.variable_choice()) ji["choices"] = std::get<std::vector<std::string>>(graph_.read(choices_node(mod, in.id)));
  }
  json outputs = json::object();
  for (const auto& out : m.outputs) outputs[out.id] = to_json(*output(mod, out.id));
  j["current"] = outputs;
  j["code"] = module_code_.count(mod) ? module_code_.at(mod) : "";
  return j;
}

std::unique_ptr<Session> Session::resume(std::string id, const registry::Registry& reg,
                                         const CommandRegistry& commands, std::string_view script_text,
                                         const DataFiles& files) {
  const transcription::Script script = transcription::script_from_text(script_text);
  auto bytes_for = [&](const std::string& name) -> const std::string& {
    auto it = files.find(name);
    if (it != files.end()) return it->second;
    if (files.size() == 1) return files.begin()->second;
    throw NotFoundError("data file '" + name + "' was not supplied");
  };

  std::string first;
  std::string first_text;
  if (!script.preamble.empty()) {
    first_text = script.preamble.front().text;
    try {
      first = file_argument(dsl::parse_statement(first_text));
    } catch (const std::exception& e) {
      throw transcription::ReplayError(std::string("line 1: ") + e.what(), 1, 1, first_text);
    }
  } else if (files.size() == 1) {
    first = files.begin()->first;
  } else {
    throw transcription::ReplayError("a script without load_data needs exactly one data file", 0, 0, "");
  }

  std::unique_ptr<Session> s;
  try {
    s = std::make_unique<Session>(std::move(id), reg, commands, first, bytes_for(first));
  } catch (const std::exception& e) {
    throw transcription::ReplayError(std::string("line 1: ") + e.what(), 1, 1, first_text);
  }

  const std::size_t offset = script.preamble.size();
  for (std::size_t i = 0; i < script.stored.size(); ++i) {
    const auto& stmt = script.stored[i];
    const std::size_t line = offset + i + 1;
    try {
      const dsl::Call call = dsl::parse_statement(stmt.text);
      if (transcription::is_provenance(call)) {
        const std::string name = file_argument(call);
        const std::string& bytes = bytes_for(name);
        s->replace_data(name, bytes, parse_csv(bytes), false);
        s->script_.stored.push_back(stmt);
        continue;
      }
      Environment env{s->dataset(), {}};
      evaluate(call, env, commands);
      const CommandSpec* cmd = commands.find(call.name);
      if (cmd && cmd->mutates_data) s->run(kDatasetNode, env.data);
      std::string module_id;
      for (const auto& m : reg.modules()) {
        for (const auto& b : m.bindings) {
          if (b.kernel == call.name && module_id.empty()) module_id = m.id();
        }
      }
      s->script_.stored.push_back({stmt.text, module_id, s->graph_.epoch()});
    } catch (const std::exception& e) {
      throw transcription::ReplayError("line " + std::to_string(line) + ": " + e.what(), line, line, stmt.text);
    }
  }
  return s;
}

// ---- SessionManager ----

SessionManager::SessionManager(const registry::Registry& reg, std::chrono::seconds ttl)
    : reg_(&reg), commands_(registry::command_vocabulary(reg)), ttl_(ttl) {}

SessionManager::Turn::Turn(Slot& slot) : slot_(slot) {
  std::unique_lock lock(slot_.mutex);
  const std::uint64_t ticket = slot_.next_ticket++;
  slot_.cv.wait(lock, [&] { return slot_.serving == ticket; });
}

SessionManager::Turn::~Turn() {
  {
    std::lock_guard lock(slot_.mutex);
    ++slot_.serving;
    slot_.last_used = Clock::now();
  }
  slot_.cv.notify_all();
}

std::string SessionManager::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}() ^ static_cast<std::uint64_t>(Clock::now().time_since_epoch().count())};
  std::random_device dev;
  char buf[33];
  const std::uint64_t a = rng() ^ (static_cast<std::uint64_t>(dev()) << 32 | dev());
  const std::uint64_t b = rng() ^ (static_cast<std::uint64_t>(dev()) << 32 | dev());
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(a),
                static_cast<unsigned long long>(b));
  return buf;
}

std::string SessionManager::add(std::unique_ptr<Session> session) {
  auto slot = std::make_shared<Slot>();
  const std::string id = session->id();
  slot->session = std::move(session);
  slot->last_used = Clock::now();
  std::lock_guard lock(mutex_);
  slots_.emplace(id, std::move(slot));
  return id;
}

std::string SessionManager::create() {
  evict_expired();
  return add(std::make_unique<Session>(fresh_id(), *reg_, commands_, std::string(kDemoFile), std::string(kDemoCsv)));
}

std::string SessionManager::resume(std::string_view script_text, const DataFiles& files) {
  evict_expired();
  return add(Session::resume(fresh_id(), *reg_, commands_, script_text, files));
}

std::shared_ptr<SessionManager::Slot> SessionManager::acquire(const std::string& id) {
  evict_expired();
  std::lock_guard lock(mutex_);
  auto it = slots_.find(id);
  if (it == slots_.end()) throw NotFoundError("no session '" + id + "'");
  return it->second;
}

std::size_t SessionManager::size() {
  std::lock_guard lock(mutex_);
  return slots_.size();
}

void SessionManager::evict_expired() {
  if (ttl_.count() <= 0) return;
  const auto now = Clock::now();
  std::lock_guard lock(mutex_);
  for (auto it = slots_.begin(); it != slots_.end();) {
    Slot& slot = *it->second;
    std::lock_guard slot_lock(slot.mutex);
    const bool idle = slot.next_ticket == slot.serving;
    if (idle && now - slot.last_used > ttl_) {
      it = slots_.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace statbench::session
