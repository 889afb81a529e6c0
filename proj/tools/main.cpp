#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gmalab/scenario.hpp"

namespace {

int emit(const gmalab::BatchResult& res, const std::string& out_path) {
  std::string doc = res.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << out_path << " for writing\n";
      return 2;
    }
    out << doc;
  }
  if (res.report.contains("error"))
    std::cerr << res.report.at("error").get<std::string>() << "\n";
  return res.status;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenario runner for finite group representations over truncated local rings"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string oracle = "exhaustive";
  unsigned long long max_order = 4096;
  std::string out_path;
  app.add_option("--oracle", oracle, "cross-check mode")
      ->check(CLI::IsMember({"exhaustive", "fast"}));
  app.add_option("--max-order", max_order, "largest algebra checked exhaustively");
  app.add_option("--out", out_path, "write the report here instead of stdout");

  std::string run_file;
  CLI::App* run_cmd = app.add_subcommand("run", "run a scenario file");
  run_cmd->add_option("file", run_file, "scenario file (json object or array)")->required();

  std::string demo_name;
  CLI::App* demo_cmd = app.add_subcommand("demo", "run a built-in demo");
  demo_cmd->add_option("name", demo_name, "s3_p3, m2_full, cri1_suite or wl_suite")->required();

  std::string fuzz_kind;
  unsigned long long fuzz_count = 0;
  std::uint64_t seed = 1;
  CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "run seeded random instances");
  fuzz_cmd->add_option("kind", fuzz_kind, "gma or criterion")->required();
  fuzz_cmd->add_option("count", fuzz_count, "number of instances, at least 1")->required();
  fuzz_cmd->add_option("--seed", seed, "rng seed");

  CLI11_PARSE(app, argc, argv);

  gmalab::RunOptions opt{oracle == "exhaustive", max_order};
  auto start = std::chrono::steady_clock::now();
  gmalab::BatchResult res;
  try {
    if (*run_cmd) {
      std::ifstream in(run_file, std::ios::binary);
      if (!in) {
        std::cerr << "cannot read " << run_file << "\n";
        return 2;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      res = gmalab::run_scenario_text(buf.str(), opt);
    } else if (*demo_cmd) {
      nlohmann::json rep = gmalab::demo_report(demo_name, opt);
      res = {rep, rep.at("invariants_pass").get<bool>() ? 0 : 1};
    } else {
      res = gmalab::fuzz_report(fuzz_kind, fuzz_count, seed, opt);
    }
  } catch (const gmalab::error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  // timing stays off the report so documents are byte-identical across runs
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cerr << "elapsed_ms " << ms << "\n";
  return emit(res, out_path);
}
