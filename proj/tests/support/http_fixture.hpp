#pragma once

// An in-process server on an ephemeral port.

#include <memory>
#include <thread>

#include <httplib.h>

#include "modules.hpp"
#include "statbench/server.hpp"

namespace fixtures {

struct LiveServer {
  statbench::server::Service service;
  httplib::Server http;
  std::thread thread;
  int port = 0;

  explicit LiveServer(statbench::server::ServerConfig config) : service(prepare(std::move(config))) {
    service.install(http);
    port = http.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { http.listen_after_bind(); });
    http.wait_until_ready();
  }
  ~LiveServer() {
    http.stop();
    thread.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(60, 0);
    return c;
  }

  static statbench::server::ServerConfig prepare(statbench::server::ServerConfig c) {
    if (c.modules_dir.empty()) c.modules_dir = source_dir() / "modules";
    if (c.web_dir.empty()) c.web_dir = source_dir() / "web";
    return c;
  }
};

}  // namespace fixtures
