#pragma once

// One user's live workbench state, and the table of live sessions.
//
// Every module is wired into the session's reactive graph. Node ids are
// qualified by module: an input is "<category>/<name>/<input>", and internal
// nodes append a '#'-suffix ("…/x#choices", "…#output/result").

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "statbench/commands.hpp"
#include "statbench/reactive.hpp"
#include "statbench/registry.hpp"
#include "statbench/transcription.hpp"

namespace statbench::session {

extern const std::string_view kDemoCsv;
inline constexpr std::string_view kDemoFile = "demo.csv";

/// Latest computation of one module output.
struct OutputState {
  std::string module_id;
  std::string output_id;
  std::optional<transcription::RenderedStatement> statement;  // absent when no statement could be formed
  transcription::Outcome outcome;
  DatasetPtr data_after;  // dataset the command would leave behind, for data-changing commands
};
using OutputPtr = std::shared_ptr<const OutputState>;

nlohmann::json to_json(const OutputState& out);

using Value = std::variant<std::monostate, dsl::Value, DatasetPtr, std::vector<std::string>, OutputPtr>;

struct ValueEqual {
  bool operator()(const Value& a, const Value& b) const;
};

using Graph = reactive::Graph<Value, ValueEqual>;

/// Outputs recomputed by one request, keyed "<module>/<output>", and the
/// refreshed code-panel statement of every module they belong to.
struct ChangeSet {
  std::map<std::string, OutputPtr> outputs;
  std::map<std::string, std::string> code_panel;
};

nlohmann::json to_json(const ChangeSet& changes);

struct UploadResult {
  DataSummary summary;
  std::string filename;  // may differ from the requested name, see Session::upload
  ChangeSet changes;
};

struct StoreResult {
  std::size_t script_length = 0;
  ChangeSet changes;
};

class Session {
 public:
  /// Starts from the given data file and wires every module of the registry.
  /// reg and commands must outlive the session. Throws ParseError for bad CSV.
  Session(std::string id, const registry::Registry& reg, const CommandRegistry& commands, std::string filename,
          std::string csv);
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Replays script_text against files. A script without a load_data preamble
  /// starts from the single supplied file. Throws ParseError or ReplayError.
  static std::unique_ptr<Session> resume(std::string id, const registry::Registry& reg,
                                         const CommandRegistry& commands, std::string_view script_text,
                                         const DataFiles& files);

  const std::string& id() const { return id_; }

  /// Throws ConflictError when the module is already wired.
  void wire(const registry::ModuleManifest& m);
  bool wired(std::string_view module_id) const;

  /// Replaces the active dataset. With no stored statements the preamble is
  /// rewritten; otherwise a load_data statement is stored so earlier results
  /// stay replayable. A name already used for different bytes gets a suffix.
  UploadResult upload(std::string filename, std::string csv);

  /// Validates value against the input's widget, then runs one transaction.
  ChangeSet set_input(const std::string& input_id, const nlohmann::json& value);

  /// Appends the module's latest statements to the script.
  StoreResult store(std::string_view module_id);

  const transcription::Script& script() const { return script_; }
  bool code_visible() const { return code_visible_; }
  void set_code_visible(bool visible) { code_visible_ = visible; }
  transcription::ReportBundle report() const;

  DatasetPtr dataset();
  const DataFiles& files() const { return files_; }
  const std::string& current_file() const { return current_file_; }
  /// Original bytes of the most recent upload.
  const std::string& current_bytes() const { return files_.at(current_file_); }

  OutputPtr output(std::string_view module_id, std::string_view output_id);
  /// Latest statement text per module, for the code panel.
  const std::map<std::string, std::string>& module_code() const { return module_code_; }
  /// Module descriptor with live choices and current values.
  nlohmann::json module_ui(std::string_view module_id);

  Graph& graph() { return graph_; }

 private:
  struct Wired {
    const registry::ModuleManifest* manifest;
    double store_seen = 0;
  };

  std::string load_statement(const std::string& filename) const;
  ChangeSet replace_data(const std::string& filename, std::string csv, Dataset ds, bool record);
  ChangeSet run(const std::string& node, Value value);
  const registry::ModuleManifest& module(std::string_view module_id) const;

  std::string id_;
  const registry::Registry* reg_;
  const CommandRegistry* commands_;
  Graph graph_;
  std::map<std::string, Wired, std::less<>> wired_;
  transcription::Script script_;
  std::map<std::string, std::string> module_code_;
  DataFiles files_;
  std::string current_file_;
  bool code_visible_ = true;
  ChangeSet* recording_ = nullptr;
};

/// Live sessions with idle expiry. Operations on one session run one at a
/// time in arrival order; different sessions proceed in parallel.
class SessionManager {
 public:
  using Clock = std::chrono::steady_clock;

  SessionManager(const registry::Registry& reg, std::chrono::seconds ttl);

  std::string create();
  /// Throws ParseError or ReplayError.
  std::string resume(std::string_view script_text, const DataFiles& files);

  /// Runs fn(Session&) under the session's FIFO lock. Throws NotFoundError
  /// for unknown or expired ids.
  template <class F>
  auto with(const std::string& id, F&& fn) -> decltype(fn(std::declval<Session&>())) {
    auto slot = acquire(id);
    Turn turn(*slot);
    return fn(*slot->session);
  }

  std::size_t size();
  void evict_expired();

  const registry::Registry& registry() const { return *reg_; }
  const CommandRegistry& commands() const { return commands_; }

 private:
  struct Slot {
    std::unique_ptr<Session> session;
    std::mutex mutex;
    std::condition_variable cv;
    std::uint64_t next_ticket = 0;
    std::uint64_t serving = 0;
    Clock::time_point last_used;
  };

  // Takes a ticket on construction and waits for it; releases on destruction.
  class Turn {
   public:
    explicit Turn(Slot& slot);
    ~Turn();
    Turn(const Turn&) = delete;
    Turn& operator=(const Turn&) = delete;

   private:
    Slot& slot_;
  };

  std::shared_ptr<Slot> acquire(const std::string& id);
  std::string add(std::unique_ptr<Session> session);
  std::string fresh_id();

  const registry::Registry* reg_;
  CommandRegistry commands_;
  std::chrono::seconds ttl_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

}  // namespace statbench::session
