#include "statbench/server.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <httplib.h>


namespace statbench::server {

using nlohmann::json;

std::chrono::seconds parse_duration(std::string_view text) {
  long long n = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  const std::string_view unit(end, static_cast<std::size_t>(text.data() + text.size() - end));
  if (ec != std::errc() || end == text.data() || n < 0) throw DomainError("bad duration '" + std::string(text) + "'");
  if (unit.empty() || unit == "s") return std::chrono::seconds(n);
  if (unit == "m") return std::chrono::minutes(n);
  if (unit == "h") return std::chrono::hours(n);
  if (unit == "d") return std::chrono::hours(24 * n);
  throw DomainError("bad duration unit in '" + std::string(text) + "' (use s, m, h or d)");
}

std::vector<std::string> available_themes(const std::filesystem::path& web_dir) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(web_dir / "themes", ec)) {
    if (e.path().extension() == ".css") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

registry::Registry checked_registry(const ServerConfig& config) {
  auto themes = available_themes(config.web_dir);
  if (std::find(themes.begin(), themes.end(), config.theme) == themes.end()) {
    std::string list;
    for (const auto& t : themes) list += (list.empty() ? "" : ", ") + t;
    throw Error("unknown theme '" + config.theme + "'; available: " + (list.empty() ? "(none found)" : list));
  }
  return registry::discover(config.modules_dir, config.enabled);
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  send_json(res, extra, status);
}

// Maps library exceptions onto HTTP statuses.
template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const transcription::ReplayError& e) {
    send_error(res, 422, e.what(), {{"statement", e.statement()}, {"line", e.line()}, {"text", e.text()}});
  } catch (const ParseError& e) {
    send_error(res, 400, e.what(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const registry::ManifestError& e) {
    send_error(res, 400, e.what(), {{"code", e.code()}});
  } catch (const NotFoundError& e) {
    send_error(res, 404, e.what());
  } catch (const ConflictError& e) {
    send_error(res, 409, e.what());
  } catch (const TypeError& e) {
    send_error(res, 422, e.what());
  } catch (const DomainError& e) {
    send_error(res, 422, e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("malformed JSON body: ") + e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string attachment(const std::string& filename) {
  std::string safe;
  for (char c : filename) safe.push_back(c == '"' || c == '\\' || c == '\n' || c == '\r' ? '_' : c);
  return "attachment; filename=\"" + safe + "\"";
}

json session_json(session::Session& s) {
  return {{"session_id", s.id()},
          {"script", s.script().text()},
          {"script_length", s.script().stored.size()},
          {"code_visible", s.code_visible()},
          {"code_panel", s.module_code()},
          {"data_file", s.current_file()}};
}

}  // namespace

Service::Service(ServerConfig config)
    : config_(std::move(config)), registry_(checked_registry(config_)), sessions_(registry_, config_.session_ttl) {}

void Service::install(httplib::Server& http) {
  http.set_payload_max_length(config_.max_upload);
  auto& sessions = sessions_;
  const auto& reg = registry_;
  const std::string sid = "/api/sessions/([0-9a-f]+)";

  http.Post("/api/sessions", [&](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      const auto id = sessions.create();
      send_json(res, sessions.with(id, session_json), 201);
    });
  });

  http.Post("/api/sessions/resume", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      DataFiles files;
      if (body.contains("files")) {
        for (const auto& [name, bytes] : body.at("files").items()) files[name] = bytes.get<std::string>();
      }
      if (body.contains("data")) files[body.value("filename", std::string("data.csv"))] = body.at("data").get<std::string>();
      const auto id = sessions.resume(body.at("script").get<std::string>(), files);
      send_json(res, sessions.with(id, session_json), 201);
    });
  });

  http.Get(sid, [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, sessions.with(req.matches[1], session_json)); });
  });

  http.Post(sid + "/data", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string filename = req.has_param("filename") ? req.get_param_value("filename") : "data.csv";
      sessions.with(req.matches[1], [&](session::Session& s) {
        auto up = s.upload(filename, req.body);
        json j = to_json(up.summary);
        j["filename"] = up.filename;
        j["changes"] = to_json(up.changes);
        j["script"] = s.script().text();
        send_json(res, j);
      });
    });
  });

  http.Get(sid + "/data", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      sessions.with(req.matches[1], [&](session::Session& s) {
        res.set_header("Content-Disposition", attachment(s.current_file()));
        res.set_content(s.current_bytes(), "text/csv");
      });
    });
  });

  http.Get("/api/modules", [&](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      send_json(res, {{"nav", to_json(registry::nav_structure(reg))}, {"enabled", reg.ids()}, {"theme", config_.theme}});
    });
  });

  http.Get(sid + "/modules/([a-z]+)/([A-Za-z0-9_]+)/ui", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string mod = std::string(req.matches[2]) + "/" + std::string(req.matches[3]);
      send_json(res, sessions.with(req.matches[1], [&](session::Session& s) { return s.module_ui(mod); }));
    });
  });

  http.Put(sid + "/inputs/(.+)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      const json value = body.is_object() && body.contains("value") ? body.at("value") : body;
      sessions.with(req.matches[1], [&](session::Session& s) {
        send_json(res, to_json(s.set_input(req.matches[2], value)));
      });
    });
  });

  http.Post(sid + "/modules/([a-z]+)/([A-Za-z0-9_]+)/store", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string mod = std::string(req.matches[2]) + "/" + std::string(req.matches[3]);
      sessions.with(req.matches[1], [&](session::Session& s) {
        auto stored = s.store(mod);
        json j = to_json(stored.changes);
        j["script_length"] = stored.script_length;
        j["script"] = s.script().text();
        send_json(res, j);
      });
    });
  });

  http.Get(sid + "/script", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      sessions.with(req.matches[1], [&](session::Session& s) {
        if (req.has_param("download")) res.set_header("Content-Disposition", attachment("analysis.sb"));
        res.set_content(s.script().text(), "text/plain; charset=utf-8");
      });
    });
  });

  http.Put(sid + "/code-visibility", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      const json v = body.is_object() ? body.at("visible") : body;
      if (!v.is_boolean()) throw TypeError("visible must be true or false");
      sessions.with(req.matches[1], [&](session::Session& s) {
        s.set_code_visible(v.get<bool>());
        send_json(res, {{"visible", s.code_visible()}});
      });
    });
  });

  http.Post(sid + "/report", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto bundle = sessions.with(req.matches[1], [](session::Session& s) { return s.report(); });
      json blocks = json::array();
      for (const auto& b : bundle.document.blocks) {
        json jb{{"setup", b.setup}};
        jb["code"] = b.code ? json(*b.code) : json(nullptr);
        jb["result"] = b.result ? to_json(*b.result) : json(nullptr);
        jb["text"] = b.text;
        jb["image"] = b.image ? json(*b.image) : json(nullptr);
        blocks.push_back(std::move(jb));
      }
      send_json(res, {{"markdown", bundle.markdown},
                      {"images", bundle.images},
                      {"include_code", bundle.document.include_code},
                      {"blocks", blocks}});
    });
  });

  http.Get("/theme.css", [&](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      res.set_content(read_file(config_.web_dir / "themes" / (config_.theme + ".css")), "text/css");
    });
  });

  if (!http.set_mount_point("/", config_.web_dir.string())) {
    throw Error("web directory " + config_.web_dir.string() + " does not exist");
  }
}

}  // namespace statbench::server
