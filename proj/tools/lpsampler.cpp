// lpsampler: run the sampler on stream files, run verification suites, time
// updates. Exit codes: 0 success, 1 verification failure, 2 usage or parse
// error (also I/O and config errors).

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "lpsampler/bench.hpp"
#include "lpsampler/error.hpp"
#include "lpsampler/pipeline.hpp"
#include "lpsampler/stream_file.hpp"
#include "lpsampler/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Shortest round-trip text, independent of locale and stream state.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string num_int(T v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Writes to --out if given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
  }

  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void echo_config(std::ostream& os, const lps::SamplerConfig& c) {
  os << "# n=" << c.n << " p=" << num(c.p) << " delta=" << num(c.delta) << " tau=" << c.tau << " k=" << c.k
     << " r=" << c.r << " instances=" << c.instances << " eps_test=" << num(c.eps_test) << " l_bits=" << c.l_bits
     << " quad_tolerance=" << num(c.quadrature.tolerance) << " quad_mesh=" << num(c.quadrature.initial_mesh)
     << " quad_halvings=" << c.quadrature.max_halvings << " quad_growth=" << num(c.quadrature.growth)
     << " second_condition=" << (c.second_condition ? 1 : 0) << " magnitude_bound=" << c.magnitude_bound << '\n';
}

int cmd_sample(const std::string& path, std::uint64_t seed, double delta, int runs, const std::string& out_path) {
  const lps::StreamFile stream = lps::read_stream_file(path);
  lps::SamplerConfig base;
  base.n = stream.n;
  base.p = stream.p;
  base.delta = delta;
  base.seed = seed;
  const lps::SamplerConfig effective = base.resolved();

  Sink sink(out_path);
  std::ostream& os = sink.out();
  os << "# command=sample stream=" << path << " updates=" << stream.updates.size() << " runs=" << runs
     << " seed=" << seed << '\n';
  echo_config(os, effective);
  os << "run,seed,result_index_or_bot,instance,z1,z2,Z,mu\n";
  for (int run = 0; run < runs; ++run) {
    lps::SamplerConfig config = base;
    config.seed = seed + static_cast<std::uint64_t>(run);
    lps::LpSampler sampler(config);
    for (const lps::StreamUpdate& u : stream.updates) sampler.process_update(u.index, u.delta);
    const lps::SampleOutcome outcome = sampler.finalize();
    const lps::InstanceReport& r = outcome.report;
    os << run << ',' << config.seed << ',' << (outcome.index ? num_int(*outcome.index + 1) : std::string("bot")) << ','
       << r.instance << ',' << num(r.z1) << ',' << num(r.z2) << ',' << num(r.norm) << ',' << num(r.mu) << '\n';
  }
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out_path) {
  const lps::SuiteReport report = lps::run_suite(suite, seed);
  Sink sink(out_path);
  std::ostream& os = sink.out();
  os << "# command=verify suite=" << suite << " seed=" << seed << '\n';
  os << "name,measured,threshold,pass\n";
  for (const lps::CheckRow& row : report.rows) {
    os << row.name << ',' << num(row.measured) << ',' << num(row.threshold) << ',' << (row.pass ? 1 : 0) << '\n';
  }
  int failed = 0;
  for (const lps::CheckRow& row : report.rows) {
    if (!row.pass) {
      std::cerr << "FAIL " << row.name << " measured " << num(row.measured) << " threshold " << num(row.threshold)
                << '\n';
      ++failed;
    }
  }
  std::cerr << suite << ": " << report.rows.size() - static_cast<std::size_t>(failed) << '/' << report.rows.size()
            << " checks passed\n";
  return failed == 0 ? kOk : kFailed;
}

int cmd_bench(const std::vector<std::uint64_t>& ns, int updates, std::uint64_t seed, const std::string& out_path) {
  if (updates < 1) throw lps::DomainError("--updates must be positive");
  for (const auto n : ns) {
    if (n < 1) throw lps::DomainError("--n entries must be positive");
  }
  const double delta = 0.8;
  const std::vector<lps::BenchRow> rows = lps::run_bench(ns, updates, seed, delta);
  Sink sink(out_path);
  std::ostream& os = sink.out();
  os << "# command=bench updates=" << updates << " seed=" << seed << " delta=" << num(delta)
     << " (other parameters at their n-dependent defaults)\n";
  os << "n,tau,k,r,instances,updates,derivations_total,derivations_min,derivations_max,derivations_model,mean_us,"
        "median_us\n";
  for (const lps::BenchRow& b : rows) {
    os << b.n << ',' << b.tau << ',' << b.k << ',' << b.r << ',' << b.instances << ',' << b.updates << ','
       << b.derivations_total << ',' << b.derivations_min << ',' << b.derivations_max << ',' << b.derivations_model
       << ',' << num(b.mean_us) << ',' << num(b.median_us) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect L_p sampler for turnstile streams"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out;

  auto* sample = app.add_subcommand("sample", "sample a coordinate from a stream file");
  std::string stream_path;
  double delta = 0.05;
  int runs = 1;
  sample->add_option("stream", stream_path, "stream file")->required();
  sample->add_option("--seed", seed, "base seed; run j uses seed + j")->capture_default_str();
  sample->add_option("--delta", delta, "failure probability")->capture_default_str()->check(CLI::Range(1e-12, 0.999999));
  sample->add_option("--runs", runs, "independent runs")->capture_default_str()->check(CLI::PositiveNumber);
  sample->add_option("--out", out, "CSV output path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "gamma, cf, cdf, head, tail, sketch or end2end")
      ->required()
      ->check(CLI::IsMember(lps::suite_names()));
  verify->add_option("--seed", seed, "seed")->capture_default_str();
  verify->add_option("--out", out, "CSV output path (stdout if omitted)");

  auto* bench = app.add_subcommand("bench", "time single updates at default parameters");
  std::vector<std::uint64_t> ns{256, 65536};
  int updates = 200;
  bench->add_option("--n", ns, "coordinate counts")->capture_default_str()->delimiter(',');
  bench->add_option("--updates", updates, "timed updates per n")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "seed")->capture_default_str();
  bench->add_option("--out", out, "CSV output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sample) return cmd_sample(stream_path, seed, delta, runs, out);
    if (*verify) return cmd_verify(suite, seed, out);
    if (*bench) return cmd_bench(ns, updates, seed, out);
  } catch (const lps::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kUsage;
}
