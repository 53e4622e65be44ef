#include "farofangs/cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "farofangs/error.hpp"
#include "farofangs/fangs.hpp"
#include "farofangs/faro.hpp"
#include "farofangs/io.hpp"
#include "farofangs/lap.hpp"
#include "parallel.hpp"

namespace farofangs::cli {

namespace {

// Raised for problems in the command line itself (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

unsigned default_threads() {
  if (const char* env = std::getenv("FAROFANGS_THREADS")) {
    unsigned value = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size()) return value;
    throw UsageError("FAROFANGS_THREADS must be a non-negative integer, got '" +
                     std::string(s) + "'");
  }
  return 0;
}

LossParams checked_params(double a) {
  if (!(a > 0.0 && a < 2.0)) {
    throw UsageError("--a must lie strictly between 0 and 2, got " +
                     format_number(a));
  }
  return LossParams(a);
}

SampleSet load_samples(const std::vector<std::string>& paths, bool csv) {
  if (!csv && paths.size() == 1) return io::parse_samples(paths.front());
  std::vector<FeatureAllocation> all;
  for (const auto& path : paths) {
    if (csv) {
      all.push_back(io::parse_csv(path));
    } else {
      const SampleSet part = io::parse_samples(path);
      all.insert(all.end(), part.begin(), part.end());
    }
  }
  return SampleSet(std::move(all));
}

FeatureAllocation load_single(const std::string& path, bool csv) {
  if (csv) return io::parse_csv(path);
  const SampleSet set = io::parse_samples(path);
  if (set.size() != 1) {
    throw Error(path + " holds " + std::to_string(set.size()) +
                " matrices; expected exactly one");
  }
  return set[0];
}

void emit(const std::string& text, const std::string& out_path,
          std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    io::write_file(out_path, text);
  }
}

std::vector<std::size_t> parse_k_list(const std::string& spec) {
  std::vector<std::size_t> ks;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t k = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), k);
    if (ec != std::errc() || ptr != item.data() + item.size() || k == 0) {
      throw UsageError("--k expects a comma-separated list of positive "
                       "integers, got '" + spec + "'");
    }
    if (k > kMaxBruteForceSize) {
      throw UsageError("--k values above " +
                       std::to_string(kMaxBruteForceSize) +
                       " are refused (exhaustive arm is k!)");
    }
    ks.push_back(k);
  }
  if (ks.empty()) throw UsageError("--k needs at least one value");
  return ks;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << std::setw(4) << "K" << std::setw(12) << "K!" << std::setw(16)
     << "exhaustive_ms" << std::setw(8) << "K^3" << std::setw(12) << "lap_ms"
     << std::setw(14) << "ratio" << std::setw(8) << "agree" << "\n";
  for (const auto& r : rows) {
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= r.k; ++i) fact *= i;
    const double ratio = r.lap_ms > 0.0 ? r.exhaustive_ms / r.lap_ms : 0.0;
    os << std::setw(4) << r.k << std::setw(12) << fact << std::setw(16)
       << std::fixed << std::setprecision(4) << r.exhaustive_ms << std::setw(8)
       << r.k * r.k * r.k << std::setw(12) << r.lap_ms << std::setw(14)
       << std::setprecision(1) << ratio << std::setw(8)
       << (r.costs_agree ? "yes" : "NO") << "\n";
    os.unsetf(std::ios::floatfield);
  }
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "FARO loss and FANGS point estimation for binary feature-allocation "
      "matrices",
      "farofangs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kToolVersion));

  double a = 1.0;
  bool csv = false;
  std::string out_path;
  unsigned threads = 0;
  bool threads_given = false;

  const auto add_a = [&](CLI::App* sub) {
    sub->add_option("--a", a, "penalty for an estimated one absent from the "
                              "sample (b = 2 - a)")
        ->capture_default_str();
  };
  const auto add_csv = [&](CLI::App* sub) {
    sub->add_flag("--csv", csv, "read inputs as one comma-separated matrix "
                                "per file");
  };
  const auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads,
                    "worker threads (0 = all cores; default from "
                    "FAROFANGS_THREADS)")
        ->each([&](const std::string&) { threads_given = true; });
  };

  // loss
  std::string x_path, y_path;
  auto* loss = app.add_subcommand("loss", "FARO loss between two matrices");
  loss->add_option("X", x_path, "estimate matrix")->required()
      ->check(CLI::ExistingFile);
  loss->add_option("Y", y_path, "sample matrix")->required()
      ->check(CLI::ExistingFile);
  add_a(loss);
  add_csv(loss);

  // expected-loss
  std::string cand_path;
  std::vector<std::string> sample_paths;
  auto* eloss = app.add_subcommand(
      "expected-loss", "Monte Carlo expected FARO loss of a candidate");
  eloss->add_option("CANDIDATE", cand_path)->required()
      ->check(CLI::ExistingFile);
  eloss->add_option("SAMPLES", sample_paths)->required()
      ->check(CLI::ExistingFile);
  add_a(eloss);
  add_csv(eloss);
  add_threads(eloss);

  // estimate
  SearchConfig cfg;
  auto* estimate = app.add_subcommand("estimate", "FANGS point estimate");
  estimate->add_option("SAMPLES", sample_paths)->required()
      ->check(CLI::ExistingFile);
  add_a(estimate);
  add_csv(estimate);
  add_threads(estimate);
  estimate->add_option("--n-init", cfg.n_init, "baselines")
      ->capture_default_str();
  estimate->add_option("--n-sweet", cfg.n_sweet, "candidates to sweeten")
      ->capture_default_str();
  estimate->add_option("--n-iter", cfg.n_iter, "flip proposals per candidate")
      ->capture_default_str();
  estimate->add_option("--seed", cfg.seed)->capture_default_str();
  estimate->add_option("--out", out_path, "write JSON here instead of stdout");

  // draws
  auto* draws = app.add_subcommand("draws", "best sample under FARO loss");
  draws->add_option("SAMPLES", sample_paths)->required()
      ->check(CLI::ExistingFile);
  add_a(draws);
  add_csv(draws);
  add_threads(draws);
  draws->add_option("--out", out_path);

  // sifa
  auto* sifa = app.add_subcommand(
      "sifa", "sequential-alignment elementwise-mode estimate");
  sifa->add_option("SAMPLES", sample_paths)->required()
      ->check(CLI::ExistingFile);
  add_a(sifa);
  add_csv(sifa);
  add_threads(sifa);
  sifa->add_option("--out", out_path);

  // bench
  std::string k_spec = "4,6,8,10";
  std::size_t bench_n = 100;
  std::size_t reps = 100;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand(
      "bench", "time exhaustive vs linear-assignment alignment");
  bench->add_option("--k", k_spec, "comma-separated widths")
      ->capture_default_str();
  bench->add_option("--n", bench_n)->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--reps", reps)->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed)->capture_default_str();

  // gen-synthetic
  std::string truth_path;
  io::SyntheticConfig syn;
  auto* gen = app.add_subcommand(
      "gen-synthetic", "perturbed copies of a truth matrix");
  gen->add_option("--truth", truth_path)->required()->check(CLI::ExistingFile);
  gen->add_option("--b", syn.samples, "number of samples")->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--flip-prob", syn.flip_prob)->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--max-extra-cols", syn.max_extra_columns,
                  "append 0..M random extra columns per sample")
      ->capture_default_str();
  gen->add_option("--extra-density", syn.extra_density)
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", syn.seed)->capture_default_str();
  gen->add_option("--out", out_path, "write samples here instead of stdout");
  add_csv(gen);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!threads_given) threads = default_threads();

    if (*loss) {
      const LossParams p = checked_params(a);
      const FeatureAllocation x = load_single(x_path, csv);
      const FeatureAllocation y = load_single(y_path, csv);
      const FaroResult r = faro_loss(x, y, p);
      out << "loss " << format_number(r.loss) << "\n";
      out << "k_aligned " << r.k_aligned << "\n";
      out << "alignment";
      for (std::size_t i = 0; i < r.alignment.perm.size(); ++i)
        out << " " << i + 1 << "->" << r.alignment.perm[i] + 1;
      out << "\n";
    } else if (*eloss) {
      const LossParams p = checked_params(a);
      const FeatureAllocation cand = load_single(cand_path, csv);
      const SampleSet samples = load_samples(sample_paths, csv);
      out << "expected_loss "
          << format_number(expected_loss(cand, samples, p, threads)) << "\n";
    } else if (*estimate) {
      checked_params(a);
      cfg.a = a;
      cfg.threads = threads;
      const SampleSet samples = load_samples(sample_paths, csv);
      const SearchResult result = fangs(samples, cfg);
      const io::ResultDocument doc = io::make_document(
          result, cfg, detail::resolve_threads(threads));
      emit(io::to_json(doc), out_path, out);
    } else if (*draws) {
      const LossParams p = checked_params(a);
      const SampleSet samples = load_samples(sample_paths, csv);
      const auto started = std::chrono::steady_clock::now();
      const DrawsResult r = draws_method(samples, p, threads);
      io::ResultDocument doc;
      doc.subcommand = "draws";
      doc.a = a;
      doc.estimate = r.estimate;
      doc.expected_loss = r.expected_loss;
      doc.draw_index = r.index;
      doc.threads = detail::resolve_threads(threads);
      doc.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - started)
                             .count();
      emit(io::to_json(doc), out_path, out);
    } else if (*sifa) {
      const LossParams p = checked_params(a);
      const SampleSet samples = load_samples(sample_paths, csv);
      const auto started = std::chrono::steady_clock::now();
      io::ResultDocument doc;
      doc.subcommand = "sifa";
      doc.a = a;
      doc.estimate = sifa_estimate(samples, p);
      doc.expected_loss = expected_loss(doc.estimate, samples, p, threads);
      doc.threads = detail::resolve_threads(threads);
      doc.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - started)
                             .count();
      emit(io::to_json(doc), out_path, out);
    } else if (*bench) {
      const auto ks = parse_k_list(k_spec);
      out << bench_table(bench_alignment(ks, bench_n, reps, bench_seed));
    } else if (*gen) {
      const FeatureAllocation truth = load_single(truth_path, csv);
      emit(io::format_faz(io::generate_synthetic(truth, syn)), out_path, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace farofangs::cli
