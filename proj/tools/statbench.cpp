// Command-line entry point: serve the workbench, validate a module manifest,
// or render a report from a script and its data without a browser.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "statbench/registry.hpp"
#include "statbench/server.hpp"
#include "statbench/transcription.hpp"

namespace fs = std::filesystem;
using namespace statbench;

namespace {

#ifndef STATBENCH_SOURCE_DIR
#define STATBENCH_SOURCE_DIR "."
#endif

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

httplib::Server* g_server = nullptr;

int serve(server::ServerConfig config) {
  server::Service service(std::move(config));
  httplib::Server http;
  service.install(http);
  g_server = &http;
  std::signal(SIGINT, [](int) { g_server->stop(); });
  std::signal(SIGTERM, [](int) { g_server->stop(); });
  const auto& c = service.config();
  std::cerr << "statbench: " << service.registry().modules().size() << " modules, theme " << c.theme
            << ", listening on http://" << c.host << ":" << c.port << "/\n";
  if (!http.listen(c.host, c.port)) {
    std::cerr << "statbench: cannot listen on " << c.host << ":" << c.port << "\n";
    return 1;
  }
  return 0;
}

int validate(const fs::path& path) {
  try {
    const auto m = registry::load_manifest(read_file(path));
    std::cout << "ok " << m.id() << ": " << m.inputs.size() << " inputs, " << m.outputs.size() << " outputs, "
              << m.bindings.size() << " bindings\n";
    return 0;
  } catch (const registry::ManifestError& e) {
    std::cout << "invalid " << path.string() << ": " << e.what() << "\n";
    return 1;
  }
}

int report(const fs::path& script_path, const std::vector<fs::path>& csvs, const std::string& out_dir, bool no_code) {
  transcription::Script script = transcription::script_from_text(read_file(script_path));
  DataFiles files;
  for (const auto& p : csvs) files[p.filename().string()] = read_file(p);
  if (script.preamble.empty()) {
    script.preamble.push_back({"load_data(file = " + dsl::quote(csvs.front().filename().string()) + ")", "", 0});
  } else if (csvs.size() == 1) {
    // A single data file stands in for whatever name the script loads first.
    const auto call = dsl::parse_statement(script.preamble.front().text);
    for (const auto& a : call.args) {
      if (a.value.is<std::string>()) files.emplace(a.value.as<std::string>(), files.begin()->second);
    }
  }
  const auto bundle = transcription::render_report(script, files, !no_code, CommandRegistry::builtin());
  if (out_dir.empty()) {
    std::cout << bundle.markdown;
    return 0;
  }
  write_file(fs::path(out_dir) / "report.md", bundle.markdown);
  for (const auto& [rel, svg] : bundle.images) write_file(fs::path(out_dir) / rel, svg);
  std::cerr << "wrote " << (fs::path(out_dir) / "report.md").string() << " with "
            << bundle.document.result_blocks().size() << " results and " << bundle.images.size() << " images\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statbench: a modular statistics workbench with replayable analysis scripts"};
  app.require_subcommand(1);

  server::ServerConfig config;
  config.modules_dir = fs::path(STATBENCH_SOURCE_DIR) / "modules";
  config.web_dir = fs::path(STATBENCH_SOURCE_DIR) / "web";
  std::string modules_dir = config.modules_dir.string(), web_dir = config.web_dir.string();
  std::vector<std::string> enabled;
  std::string ttl = "2h";
  std::size_t max_upload_mib = 8;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service and web UI");
  serve_cmd->add_option("--modules-dir", modules_dir, "Module tree <category>/<name>/manifest.json")->capture_default_str();
  serve_cmd->add_option("--enable", enabled, "Modules to enable, as category/name (data/sources is always on)")
      ->delimiter(',');
  serve_cmd->add_option("--theme", config.theme, "Stylesheet name under <web-dir>/themes")->capture_default_str();
  serve_cmd->add_option("--host", config.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--port", config.port, "Listen port")->capture_default_str();
  serve_cmd->add_option("--session-ttl", ttl, "Idle session lifetime, e.g. 90s, 30m, 2h")->capture_default_str();
  serve_cmd->add_option("--max-upload-mib", max_upload_mib, "Upload size limit in MiB")->capture_default_str();
  serve_cmd->add_option("--web-dir", web_dir, "Static web assets")->capture_default_str();

  std::string manifest;
  auto* validate_cmd = app.add_subcommand("validate", "Validate one module manifest");
  validate_cmd->add_option("manifest", manifest, "Path to manifest.json")->required();

  std::string script_path, out_dir;
  std::vector<std::string> csvs;
  bool no_code = false;
  auto* report_cmd = app.add_subcommand("report", "Replay a script and render its report");
  report_cmd->add_option("script", script_path, "Analysis script")->required();
  report_cmd->add_option("csv", csvs, "Data file(s) the script loads")->required();
  report_cmd->add_option("-o,--out", out_dir, "Write report.md and images/ here instead of printing Markdown");
  report_cmd->add_flag("--no-code", no_code, "Leave statements out of the report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) {
      config.modules_dir = modules_dir;
      config.web_dir = web_dir;
      if (!enabled.empty()) config.enabled = enabled;
      config.session_ttl = server::parse_duration(ttl);
      config.max_upload = max_upload_mib << 20;
      return serve(std::move(config));
    }
    if (*validate_cmd) return validate(manifest);
    std::vector<fs::path> paths(csvs.begin(), csvs.end());
    return report(script_path, paths, out_dir, no_code);
  } catch (const transcription::ReplayError& e) {
    std::cerr << "statbench: replay failed at statement " << e.statement() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "statbench: " << e.what() << "\n";
    return 1;
  }
}
