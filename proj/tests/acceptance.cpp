// Acceptance criteria, one per invocation: acceptance --criterion N.
// Prints one PASS/FAIL line per criterion (plus the failing rows) and exits
// non-zero on failure.

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "lpsampler/bench.hpp"
#include "lpsampler/pipeline.hpp"
#include "lpsampler/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
};

void add_suite(Outcome& out, const std::string& suite) {
  const lps::SuiteReport report = lps::run_suite(suite, kSeed);
  for (const lps::CheckRow& row : report.rows) {
    if (!row.pass) {
      out.pass = false;
      std::ostringstream note;
      note << suite << '/' << row.name << " measured " << row.measured << " threshold " << row.threshold;
      out.notes.push_back(note.str());
    }
  }
  if (report.rows.empty()) out.pass = false;
}

Outcome update_cost() {
  Outcome out;
  // Derivations per update against the model at default parameters, and the
  // time ratio between n = 2^16 and n = 2^8.
  const std::vector<std::uint64_t> ns{256, 65536};
  const std::vector<lps::BenchRow> rows = lps::run_bench(ns, 60, kSeed);
  for (const lps::BenchRow& b : rows) {
    if (b.derivations_min != b.derivations_model || b.derivations_max != b.derivations_model) {
      out.pass = false;
      out.notes.push_back("n=" + std::to_string(b.n) + " derivations " + std::to_string(b.derivations_min) + ".." +
                          std::to_string(b.derivations_max) + " model " + std::to_string(b.derivations_model));
    }
  }
  const double ratio = rows[1].median_us / rows[0].median_us;
  std::ostringstream note;
  note << "median us " << rows[0].median_us << " -> " << rows[1].median_us << ", ratio " << ratio << " (limit 8.8)";
  out.notes.push_back(note.str());
  if (!(ratio <= 8.8)) out.pass = false;

  // Stream position 1 versus 10^6.
  lps::SamplerConfig c = lps::end_to_end_config(16, 1.0, kSeed);
  lps::LpSampler sampler(c);
  std::uint64_t first = 0, last = 0;
  for (std::uint64_t t = 1; t <= 1'000'000; ++t) {
    const std::uint64_t before = sampler.tape_derivations();
    sampler.process_update(t % 16, (t % 2) ? 1 : -1);
    const std::uint64_t spent = sampler.tape_derivations() - before;
    if (t == 1) first = spent;
    if (t == 1'000'000) last = spent;
  }
  if (first != last || first != sampler.derivations_per_update()) {
    out.pass = false;
    out.notes.push_back("position 1 cost " + std::to_string(first) + ", position 1e6 cost " + std::to_string(last));
  }
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Drops the timing columns (the last two) from bench CSV rows.
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      for (int cut = 0; cut < 2; ++cut) line = line.substr(0, line.rfind(','));
    }
    out += line + '\n';
  }
  return out;
}

int run(const std::string& command) { return std::system(command.c_str()); }

Outcome determinism(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.pass = false;
    out.notes.push_back("--cli not given");
    return out;
  }
  const fs::path dir = fs::temp_directory_path() / ("lps_determinism_" + std::to_string(kSeed));
  fs::create_directories(dir);
  {
    std::ofstream stream(dir / "x21.txt");
    stream << "n=2 p=1\n1 2\n2 1\n";
  }
  const std::string stream = (dir / "x21.txt").string();
  const std::array<std::pair<std::string, std::string>, 3> commands{{
      {"sample", "sample " + stream + " --seed 7 --runs 50"},
      {"verify", "verify gamma --seed 7"},
      {"bench", "bench --n 16,64 --updates 5 --seed 7"},
  }};
  for (const auto& [name, args] : commands) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path file = dir / (name + std::to_string(rep) + ".csv");
      const int code = run("\"" + cli + "\" " + args + " --out \"" + file.string() + "\"");
      if (code != 0) {
        out.pass = false;
        out.notes.push_back(name + ": command exited with status " + std::to_string(code));
      }
      outputs[rep] = slurp(file);
    }
    const bool same = name == "bench" ? without_timing(outputs[0]) == without_timing(outputs[1])
                                      : outputs[0] == outputs[1];
    if (!same || outputs[0].empty()) {
      out.pass = false;
      out.notes.push_back(name + ": outputs differ between identical runs");
    }
  }
  fs::remove_all(dir);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int criterion = 0;
  std::string cli;
  app.add_option("--criterion", criterion, "criterion number, 1 to 8")->required()->check(CLI::Range(1, 8));
  app.add_option("--cli", cli, "path to the lpsampler executable (criterion 8)");
  CLI11_PARSE(app, argc, argv);

  static const char* const names[] = {"",
                                      "gamma identities",
                                      "characteristic function",
                                      "cdf oracle",
                                      "head and tail samplers",
                                      "dense sketch",
                                      "end-to-end perfection",
                                      "update cost",
                                      "determinism"};
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    switch (criterion) {
      case 1: add_suite(outcome, "gamma"); break;
      case 2: add_suite(outcome, "cf"); break;
      case 3: add_suite(outcome, "cdf"); break;
      case 4:
        add_suite(outcome, "head");
        add_suite(outcome, "tail");
        break;
      case 5: add_suite(outcome, "sketch"); break;
      case 6: add_suite(outcome, "end2end"); break;
      case 7: outcome = update_cost(); break;
      case 8: outcome = determinism(cli); break;
    }
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.notes.push_back(std::string("error: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const std::string& note : outcome.notes) std::cout << "  " << note << '\n';
  std::printf("criterion %d (%s): %s in %.1f s\n", criterion, names[criterion], outcome.pass ? "PASS" : "FAIL",
              seconds);
  return outcome.pass ? 0 : 1;
}
