#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "faithbench/commands.hpp"
#include "faithbench/errors.hpp"

using namespace faithbench;
using namespace faithbench::cli;

namespace {

namespace fs = std::filesystem;

struct TempTree {
  fs::path root;

  TempTree() {
    root = fs::temp_directory_path() /
           ("faithbench-cli-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~TempTree() { fs::remove_all(root); }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path path = root / name;
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
  }
};

std::string questions_jsonl() {
  return R"({"id": "t1", "task": "toy", "question": "Toy question one?", "choices": ["Yes", "No"], "gold": 0}
{"id": "t2", "task": "toy", "question": "Toy question two?", "choices": ["Yes", "No"], "gold": 1}
)";
}

std::string mock_script_json() {
  nlohmann::json rules = nlohmann::json::array();
  rules.push_back({{"match", "Toy question one?"},
                   {"response", "A) Yes."},
                   {"ends_with", "The correct answer is choice ("}});
  rules.push_back({{"match", "Toy question two?"},
                   {"response", "A) Yes."},
                   {"ends_with", "The correct answer is choice ("}});
  return nlohmann::json{{"rules", rules}}.dump();
}

std::string config_json(const TempTree& tree, const std::vector<std::string>& strategies) {
  nlohmann::json j{
      {"backend", {{"kind", "mock"}, {"script", (tree.root / "mock.json").string()}}},
      {"cache_dir", (tree.root / "cache").string()},
      {"tasks", {{{"name", "toy"}, {"path", (tree.root / "questions.jsonl").string()}}}},
      {"strategies", strategies},
      {"questions_per_task", 2},
      {"example_store",
       std::string(FAITHBENCH_SOURCE_DIR) + "/core/data/fewshot_examples.json"},
      {"sampling", {{"n_best", 1}}},
  };
  return j.dump(2);
}

long count_lines(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  long n = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("config loads, validates, and applies overrides") {
  TempTree tree;
  tree.write("questions.jsonl", questions_jsonl());
  tree.write("mock.json", mock_script_json());
  const fs::path config_path = tree.write("config.json", config_json(tree, {"zero_shot"}));

  RunConfig config = RunConfig::load(config_path);
  CHECK(config.backend.kind == "mock");
  CHECK(config.tasks.size() == 1);
  CHECK(config.strategies == std::vector<Strategy>{Strategy::ZeroShot});

  config.override_seed(100);
  CHECK(config.seeds.question_sampling == 100);
  CHECK(config.seeds.suggestion == 101);
  CHECK(config.seeds.mistake_positions == 102);
  CHECK_THROWS_AS(config.override_backend("carrier-pigeon"), Error);

  const fs::path bad = tree.write("bad.json", config_json(tree, {"no_such_strategy"}));
  CHECK_THROWS_AS(RunConfig::load(bad), Error);
}

TEST_CASE("run writes one record per question x strategy and resumes without duplicates") {
  TempTree tree;
  tree.write("questions.jsonl", questions_jsonl());
  tree.write("mock.json", mock_script_json());
  const RunConfig config =
      RunConfig::load(tree.write("config.json", config_json(tree, {"zero_shot", "few_shot"})));

  const fs::path out = tree.root / "records.jsonl";
  {
    Session session(config);
    CHECK(cmd_run(session, out.string()) == 0);
  }
  CHECK(count_lines(out) == 4);
  const auto records = read_records(out.string());
  REQUIRE(records.size() == 4);
  for (const auto& r : records) {
    CHECK(r.task == "toy");
    CHECK(r.predicted_label == 'A');
    CHECK(r.correct == (r.gold_label == 'A'));
  }

  // Re-running appends nothing and, with a warm cache, calls the mock zero times.
  {
    Session session(config);
    CHECK(cmd_run(session, out.string()) == 0);
    CHECK(session.backend_calls() == 0);
  }
  CHECK(count_lines(out) == 4);
}

TEST_CASE("parallel fan-out writes the same records in the same order") {
  TempTree tree;
  std::string lines;
  for (int i = 0; i < 12; ++i) {
    lines += R"({"id": "p)" + std::to_string(i) + R"(", "task": "toy", "question": "Parallel question )" +
             std::to_string(i) + R"( ?", "choices": ["Yes", "No"], "gold": 0})" + "\n";
  }
  tree.write("questions.jsonl", lines);
  nlohmann::json rules = nlohmann::json::array();
  rules.push_back({{"match", "Parallel question"},
                   {"response", "A) Yes."},
                   {"ends_with", "The correct answer is choice ("}});
  tree.write("mock.json", nlohmann::json{{"rules", rules}}.dump());

  nlohmann::json base = nlohmann::json::parse(config_json(tree, {"zero_shot"}));
  base["questions_per_task"] = 12;
  const fs::path serial_cfg = tree.write("serial.json", base.dump());
  base["workers"] = 4;
  base["cache_dir"] = (tree.root / "cache-parallel").string();
  const fs::path parallel_cfg = tree.write("parallel.json", base.dump());

  const fs::path serial_out = tree.root / "serial.jsonl";
  const fs::path parallel_out = tree.root / "parallel.jsonl";
  {
    Session session(RunConfig::load(serial_cfg));
    cmd_run(session, serial_out.string());
  }
  {
    Session session(RunConfig::load(parallel_cfg));
    cmd_run(session, parallel_out.string());
  }
  std::ifstream a(serial_out), b(parallel_out);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)),
                            std::istreambuf_iterator<char>());
  const std::string bytes_b((std::istreambuf_iterator<char>(b)),
                            std::istreambuf_iterator<char>());
  CHECK(bytes_a == bytes_b);
  CHECK(count_lines(serial_out) == 12);
}

TEST_CASE("perturb honours the truncate/corrupt toggles") {
  TempTree tree;
  tree.write("questions.jsonl", questions_jsonl());
  nlohmann::json rules = nlohmann::json::array();
  rules.push_back({{"match", "Toy question"},
                   {"response", "A) Yes."},
                   {"ends_with", "The correct answer is choice ("}});
  rules.push_back({{"match", "Toy question"},
                   {"response", "\n\n1) fact one.\n\n2) fact two."},
                   {"ends_with", "Let's think step by step:"}});
  tree.write("mock.json", nlohmann::json{{"rules", rules}}.dump());

  nlohmann::json base = nlohmann::json::parse(config_json(tree, {"cot"}));
  base["perturb"] = {{"truncate", true}, {"corrupt", false}};
  const fs::path config_path = tree.write("config.json", base.dump());
  const RunConfig config = RunConfig::load(config_path);

  const fs::path run_out = tree.root / "run.jsonl";
  const fs::path variants_out = tree.root / "variants.jsonl";
  {
    Session session(config);
    cmd_run(session, run_out.string());
  }
  {
    Session session(config);
    cmd_perturb(session, run_out.string(), variants_out.string());
  }
  const auto variants = read_records(variants_out.string());
  CHECK(variants.size() == 2 * 3);  // 2 questions x prefixes 0..2, no corruption
  for (const auto& v : variants) {
    CHECK(v.lineage.kind == Lineage::Kind::Truncated);
  }
}

TEST_CASE("report writes deterministic outputs and rejects empty input") {
  TempTree tree;
  tree.write("questions.jsonl", questions_jsonl());
  tree.write("mock.json", mock_script_json());
  const RunConfig config =
      RunConfig::load(tree.write("config.json", config_json(tree, {"zero_shot"})));
  const fs::path out = tree.root / "records.jsonl";
  {
    Session session(config);
    cmd_run(session, out.string());
  }

  const fs::path report_dir = tree.root / "report";
  CHECK(cmd_report({out.string()}, report_dir.string()) == 0);
  CHECK(fs::exists(report_dir / "report.json"));
  CHECK(fs::exists(report_dir / "curve_points.csv"));

  std::ifstream in(report_dir / "report.json");
  const std::string first_pass((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
  CHECK(cmd_report({out.string()}, report_dir.string()) == 0);
  std::ifstream in2(report_dir / "report.json");
  const std::string second_pass((std::istreambuf_iterator<char>(in2)),
                                std::istreambuf_iterator<char>());
  CHECK(first_pass == second_pass);

  const fs::path empty = tree.write("empty.jsonl", "");
  CHECK_THROWS_AS(cmd_report({empty.string()}, (tree.root / "r2").string()), EmptyInput);
}

TEST_CASE("the installed binary drives the same pipeline") {
  TempTree tree;
  tree.write("questions.jsonl", questions_jsonl());
  tree.write("mock.json", mock_script_json());
  const fs::path config_path = tree.write("config.json", config_json(tree, {"zero_shot"}));
  const fs::path out = tree.root / "records.jsonl";

  const std::string base = std::string(FAITHBENCH_CLI_PATH);
  const std::string run_cmd = base + " run --config " + config_path.string() + " --out " +
                              out.string() + " --backend mock --seed 7 2>/dev/null";
  CHECK(std::system(run_cmd.c_str()) == 0);
  CHECK(count_lines(out) == 2);

  const std::string report_cmd = base + " report --records " + out.string() + " --out " +
                                 (tree.root / "report").string() + " 2>/dev/null";
  CHECK(std::system(report_cmd.c_str()) == 0);
  CHECK(fs::exists(tree.root / "report" / "report.json"));

  // Unknown strategy names in the config are a usage error.
  const fs::path bad = tree.write("bad.json", config_json(tree, {"telepathy"}));
  const std::string bad_cmd = base + " run --config " + bad.string() + " --out " +
                              (tree.root / "x.jsonl").string() + " 2>/dev/null";
  CHECK(std::system(bad_cmd.c_str()) != 0);
}
