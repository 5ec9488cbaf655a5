#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "statbench/registry.hpp"
#include "statbench/session.hpp"

namespace httplib {
class Server;
}

namespace statbench::server {

struct ServerConfig {
  std::filesystem::path modules_dir;
  std::optional<std::vector<std::string>> enabled;
  std::string theme = "default";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::chrono::seconds session_ttl{std::chrono::hours(2)};
  std::size_t max_upload = 8u << 20;
  std::filesystem::path web_dir;
};

/// "90", "90s", "15m", "2h", "1d". Throws DomainError.
std::chrono::seconds parse_duration(std::string_view text);

/// Theme names bundled under web_dir/themes/<name>.css, sorted.
std::vector<std::string> available_themes(const std::filesystem::path& web_dir);

/// Discovers modules and checks the theme; throws Error describing the problem.
class Service {
 public:
  explicit Service(ServerConfig config);

  void install(httplib::Server& http);

  const registry::Registry& registry() const { return registry_; }
  session::SessionManager& sessions() { return sessions_; }
  const ServerConfig& config() const { return config_; }

 private:
  ServerConfig config_;
  registry::Registry registry_;
  session::SessionManager sessions_;
};

}  // namespace statbench::server
