#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "statbench/registry.hpp"

using namespace statbench;
using namespace statbench::registry;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kSource = STATBENCH_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json nonparametric() { return json::parse(slurp(kSource / "contrib/modules/inference/nonparametric/manifest.json")); }

std::string code_of(const json& j) {
  try {
    load_manifest(j.dump());
  } catch (const ManifestError& e) {
    return e.code();
  }
  return "ok";
}

// A scratch modules tree, removed on scope exit.
struct TempTree {
  fs::path root;
  TempTree() {
    root = fs::temp_directory_path() / ("statbench-reg-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(root);
    fs::copy(kSource / "modules", root, fs::copy_options::recursive);
  }
  ~TempTree() { fs::remove_all(root); }
  void add(const std::string& rel, const std::string& text) {
    fs::create_directories((root / rel).parent_path());
    std::ofstream(root / rel) << text;
  }
};

std::vector<std::string> headings(const Registry& r) {
  std::vector<std::string> out;
  for (const auto& s : nav_structure(r)) out.push_back(s.heading);
  return out;
}

}  // namespace

TEST_CASE("the default tree has seven modules in three sections") {
  const Registry r = discover(kSource / "modules");
  CHECK(r.ids() == std::vector<std::string>{"data/sources", "data/transform", "summaries/graphical",
                                            "summaries/numerical", "inference/contingency", "inference/regression",
                                            "inference/ttest"});
  const auto nav = nav_structure(r);
  REQUIRE(nav.size() == 3);
  CHECK(headings(r) == std::vector<std::string>{"Data", "Summaries", "Inference"});
  CHECK(nav[0].entries.size() == 2);
  CHECK(nav[1].entries.size() == 2);
  CHECK(nav[2].entries.size() == 3);
  for (const auto& m : r.modules()) {
    CHECK(m.options_width == 4);
    CHECK(m.results_width == 8);
  }
}

TEST_CASE("an enabled list keeps those modules plus data sources") {
  const Registry r = discover(kSource / "modules", std::vector<std::string>{"data/transform", "summaries/numerical"});
  CHECK(r.ids() == std::vector<std::string>{"data/sources", "data/transform", "summaries/numerical"});
  CHECK(headings(r) == std::vector<std::string>{"Data", "Summaries"});

  const Registry only = discover(kSource / "modules", std::vector<std::string>{});
  CHECK(only.ids() == std::vector<std::string>{"data/sources"});
  CHECK(headings(only) == std::vector<std::string>{"Data"});

  CHECK_THROWS_AS(discover(kSource / "modules", std::vector<std::string>{"inference/anova"}), ManifestError);
}

TEST_CASE("every subset of modules is exposed exactly") {
  const Registry all = discover(kSource / "modules");
  std::vector<std::string> optional;
  for (const auto& id : all.ids())
    if (id != kDataSources) optional.push_back(id);
  for (unsigned mask = 0; mask < (1u << optional.size()); ++mask) {
    std::vector<std::string> pick;
    for (std::size_t i = 0; i < optional.size(); ++i)
      if (mask & (1u << i)) pick.push_back(optional[i]);
    const Registry r = discover(kSource / "modules", pick);
    std::set<std::string> want(pick.begin(), pick.end());
    want.insert(std::string(kDataSources));
    const auto ids = r.ids();
    CHECK(std::set<std::string>(ids.begin(), ids.end()) == want);
    std::size_t listed = 0;
    for (const auto& s : nav_structure(r)) listed += s.entries.size();
    CHECK(listed == want.size());
  }
}

TEST_CASE("dropping in the nonparametric manifest adds it under Inference") {
  TempTree t;
  t.add("inference/nonparametric/manifest.json", slurp(kSource / "contrib/modules/inference/nonparametric/manifest.json"));
  const Registry r = discover(t.root);
  CHECK(r.modules().size() == 8);
  const auto nav = nav_structure(r);
  REQUIRE(nav.size() == 3);
  CHECK(nav[2].heading == "Inference");
  std::vector<std::string> ids;
  for (const auto& e : nav[2].entries) ids.push_back(e.id);
  CHECK(ids == std::vector<std::string>{"inference/contingency", "inference/nonparametric", "inference/regression",
                                        "inference/ttest"});
  const auto* m = r.find("inference/nonparametric");
  REQUIRE(m);
  CHECK(m->title == "Nonparametric");
  CHECK(m->input("conflevel")->slider->default_value == 0.95);
  CHECK(command_vocabulary(r).find("wilcoxon_rank_sum"));
  CHECK_FALSE(command_vocabulary(discover(kSource / "modules")).find("wilcoxon_rank_sum"));
}

TEST_CASE("discovery errors name the path") {
  {
    TempTree t;
    t.add("inference/broken/manifest.json", "{not json");
    try {
      discover(t.root);
      FAIL("expected an error");
    } catch (const ManifestError& e) {
      CHECK(std::string(e.what()).find("broken") != std::string::npos);
    }
  }
  {
    TempTree t;
    t.add("plots/fancy/manifest.json", nonparametric().dump());
    CHECK_THROWS_AS(discover(t.root), ManifestError);
  }
  {
    TempTree t;
    t.add("inference/elsewhere/manifest.json", nonparametric().dump());
    CHECK_THROWS_AS(discover(t.root), ManifestError);
  }
  {
    TempTree t;
    fs::remove_all(t.root / "data/sources");
    CHECK_THROWS_AS(discover(t.root), ManifestError);
  }
}

TEST_CASE("the nonparametric manifest parses as written") {
  const auto m = load_manifest(nonparametric().dump());
  CHECK(m.id() == "inference/nonparametric");
  CHECK(m.store_button == "store");
  REQUIRE(m.inputs.size() == 6);
  CHECK(m.inputs[0].choices->kind == ChoiceKind::NumericVariables);
  CHECK(m.inputs[2].choices->options.size() == 3);
  CHECK(m.inputs[5].widget == WidgetKind::ActionButton);
  CHECK(m.bindings[0].param_map.at("hypval") == "mu");
  CHECK(to_json(m)["inputs"].size() == 6);
}

TEST_CASE("validation rules") {
  using Edit = std::function<void(json&)>;
  const std::vector<std::pair<std::string, Edit>> cases = {
      {"STORE_BUTTON_MISSING", [](json& j) { j.erase("store_button"); }},
      {"STORE_BUTTON_MISSING", [](json& j) { j["store_button"] = "group1"; }},
      {"STORE_BUTTON_MISSING", [](json& j) { j["store_button"] = "nothere"; }},
      {"LAYOUT_WIDTHS", [](json& j) { j["layout"]["options_width"] = 6; }},
      {"LAYOUT_WIDTHS", [](json& j) { j["layout"]["results_width"] = 6; }},
      {"DANGLING_PARAM_MAP", [](json& j) { j["bindings"][0]["param_map"]["ghost"] = "x"; }},
      {"DANGLING_PARAM_MAP", [](json& j) { j["bindings"][0]["param_map"]["group1"] = "nope"; }},
      {"DANGLING_OUTPUT", [](json& j) { j["bindings"][0]["output_id"] = "other"; }},
      {"DANGLING_OUTPUT", [](json& j) { j["outputs"].push_back({{"id", "extra"}, {"kind", "Text"}, {"title", "E"}}); }},
      {"TEMPLATE_MISMATCH", [](json& j) { j["bindings"][0]["template"] = "wilcoxon_rank_sum(x = {x}, y = {y})"; }},
      {"TEMPLATE_MISMATCH", [](json& j) { j["bindings"][0]["template"] = "wilcoxon_rank_sum(x = {x"; }},
      {"DUPLICATE_ID", [](json& j) { j["inputs"][1]["id"] = "group1"; }},
      {"SLIDER_RANGE", [](json& j) { j["inputs"][4]["widget"]["Slider"]["min"] = 1.5; }},
      {"SLIDER_RANGE", [](json& j) { j["inputs"][4]["widget"]["Slider"]["default"] = 0.955; }},
      {"UNKNOWN_KERNEL", [](json& j) { j["bindings"][0]["kernel"] = "mann_whitney"; }},
      {"CATEGORY", [](json& j) { j["category"] = "plots"; }},
      {"SCHEMA", [](json& j) { j.erase("title"); }},
      {"SCHEMA", [](json& j) { j["inputs"][0]["widget"] = "Dial"; }},
      {"SCHEMA", [](json& j) { j["inputs"][2]["default"] = "sideways"; }},
  };
  CHECK(code_of(nonparametric()) == "ok");
  for (const auto& [code, edit] : cases) {
    json j = nonparametric();
    edit(j);
    CHECK_MESSAGE(code_of(j) == code, j.dump());
  }
  CHECK(code_of(json::parse("[]")) == "SCHEMA");
  try {
    load_manifest("{");
    FAIL("expected an error");
  } catch (const ManifestError& e) {
    CHECK(e.code() == "SCHEMA");
  }
}

TEST_CASE("layout may be omitted and defaults to 4/8") {
  json j = nonparametric();
  j.erase("layout");
  const auto m = load_manifest(j.dump());
  CHECK(m.options_width == 4);
  CHECK(m.results_width == 8);
}

TEST_CASE("duplicate modules are rejected") {
  const auto m = load_manifest(nonparametric().dump());
  CHECK_THROWS_AS(Registry({m, m}), ManifestError);
}

TEST_CASE("headings capitalize category names") {
  CHECK(heading(Category::Inference) == "Inference");
  CHECK(category_from_string("inference") == Category::Inference);
  CHECK_FALSE(category_from_string("Inference"));
}
