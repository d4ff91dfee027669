// Command-line driver: counting, statistics, node drawing and Monte-Carlo
// level estimates for pseudoline arrangements and abstract order types.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "psla/enumerate.hpp"
#include "psla/estimate.hpp"
#include "psla/pipeline.hpp"
#include "psla/stats.hpp"

namespace {

struct ShardFlags {
  int split_level = 8;
  std::uint64_t modulus = 0;
  std::uint64_t klass = 0;

  bool active() const { return modulus != 0 || klass != 0; }
  psla::ShardSpec spec() const {
    if (modulus == 0 || klass == 0)
      throw CLI::ValidationError("--mod and --class must be given together");
    return psla::ShardSpec{split_level, modulus, klass};
  }
};

void add_shard_flags(CLI::App* cmd, ShardFlags& f) {
  cmd->add_option("--split-level", f.split_level,
                  "Tree level whose nodes are distributed over shard classes");
  cmd->add_option("--mod", f.modulus, "Number of shard classes");
  cmd->add_option("--class", f.klass, "Shard class to expand (1..mod)");
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

int run_count(int max_n, int points, std::string objects, const ShardFlags& shard,
              const std::string& exclude_path, const std::string& out_path) {
  const bool by_points = objects != "pslas";
  if (!by_points && max_n == 0)
    throw CLI::ValidationError("count: pslas are sized in lines; give --max-n");
  int target = by_points ? (points ? points : max_n) : max_n;
  if (by_points) target -= 1;  // m points correspond to m-1 lines
  if (target < 2 || target > psla::kMaxLines)
    throw CLI::ValidationError("count: size out of range");

  std::optional<psla::ShardSpec> spec;
  if (shard.active()) spec = shard.spec();
  std::optional<psla::ExcludeSet> exclude;
  if (!exclude_path.empty()) {
    if (spec)
      throw CLI::ValidationError("--exclude cannot be combined with sharding");
    exclude = psla::load_exclude(exclude_path);
  }

  psla::SurveyOptions opt;
  opt.max_level = target;
  opt.canonical = by_points;
  opt.shard = spec ? &*spec : nullptr;
  opt.exclude = exclude ? &*exclude : nullptr;
  const psla::SurveyResult res = psla::run_survey(opt);

  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  if (objects == "pslas") {
    for (int n = 3; n <= target; ++n) out << n << ' ' << res.psla.nodes[n] << '\n';
  } else if (objects == "aots") {
    for (int m = 3; m <= target + 1; ++m) out << m << ' ' << res.aot[m - 1] << '\n';
  } else {
    for (int m = 3; m <= target + 1; ++m) out << m << ' ' << res.oaot(m - 1) << '\n';
  }
  return 0;
}

int run_stats(int points, const ShardFlags& shard, const std::string& exclude_path,
              const std::string& out_path) {
  if (points < 3 || points > psla::kMaxLines + 1)
    throw CLI::ValidationError("stats: point count out of range");
  std::optional<psla::ShardSpec> spec;
  if (shard.active()) spec = shard.spec();
  std::optional<psla::ExcludeSet> exclude;
  if (!exclude_path.empty()) {
    if (spec)
      throw CLI::ValidationError("--exclude cannot be combined with sharding");
    exclude = psla::load_exclude(exclude_path);
  }
  psla::SurveyOptions opt;
  opt.max_level = points - 1;
  opt.ledger = true;
  opt.shard = spec ? &*spec : nullptr;
  opt.exclude = exclude ? &*exclude : nullptr;
  const psla::SurveyResult res = psla::run_survey(opt);
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  psla::write_log(res.ledger, out);
  return 0;
}

int run_draw(const std::string& code_text) {
  const psla::DeweyCode code = psla::parse_dewey(code_text);
  const psla::Arrangement arr = psla::arrangement_at(code);
  std::cout << psla::render_wiring(psla::wiring_diagram(arr));
  return 0;
}

int run_estimate(int depth, std::uint64_t samples, std::uint64_t seed,
                 const std::string& strategy, const std::string& out_path) {
  if (depth < 3 || depth > psla::kMaxLines)
    throw CLI::ValidationError("estimate: depth out of range");
  if (samples == 0) throw CLI::ValidationError("estimate: need at least one dive");
  const psla::DiveStrategy strat = strategy == "weighted"
                                       ? psla::DiveStrategy::kWeightedByChildren
                                       : psla::DiveStrategy::kUniform;
  psla::SplitMix64 rng(seed);
  std::vector<psla::DiveRecord> records;
  records.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i)
    records.push_back(psla::random_dive(depth, rng, strat));
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  psla::write_estimates_csv(psla::aggregate_estimates(records), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Enumeration of x-monotone pseudoline arrangements and abstract order "
      "types"};
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "Print per-level object counts");
  int count_max_n = 0, count_points = 0;
  std::string objects = "pslas", count_exclude, count_out;
  ShardFlags count_shard;
  count->add_option("--max-n", count_max_n,
                    "Largest size (lines for pslas, points for aots/oaots)");
  count->add_option("--points", count_points, "Largest point count (aots/oaots)");
  count->add_option("--objects", objects, "pslas, aots or oaots")
      ->check(CLI::IsMember({"pslas", "aots", "oaots"}));
  count->add_option("--exclude", count_exclude, "Exclude-file of Dewey codes");
  count->add_option("--out", count_out, "Output file (default stdout)");
  add_shard_flags(count, count_shard);

  auto* stats = app.add_subcommand("stats", "Write the AOT statistics ledger");
  int stats_points = 0;
  std::string stats_out, stats_exclude;
  ShardFlags stats_shard;
  stats->add_option("--points", stats_points, "Point count of the AOTs")
      ->required();
  stats->add_option("--out", stats_out, "Output file (default stdout)");
  stats->add_option("--exclude", stats_exclude, "Exclude-file of Dewey codes");
  add_shard_flags(stats, stats_shard);

  auto* draw = app.add_subcommand("draw", "Print the wiring diagram of a node");
  std::string code_text;
  draw->add_option("--code", code_text, "Dewey code of the node")->required();

  auto* estimate =
      app.add_subcommand("estimate", "Monte-Carlo estimates of level sizes");
  int depth = 9;
  std::uint64_t samples = 1000, seed = 1;
  std::string strategy = "uniform", est_out;
  estimate->add_option("--depth", depth, "Deepest level to estimate");
  estimate->add_option("--samples", samples, "Number of dives");
  estimate->add_option("--seed", seed, "RNG seed");
  estimate->add_option("--strategy", strategy, "uniform or weighted")
      ->check(CLI::IsMember({"uniform", "weighted"}));
  estimate->add_option("--out", est_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
    if (count->parsed()) {
      if (count_max_n == 0 && count_points == 0)
        throw CLI::ValidationError("count: give --max-n or --points");
      return run_count(count_max_n, count_points, objects, count_shard,
                       count_exclude, count_out);
    }
    if (stats->parsed())
      return run_stats(stats_points, stats_shard, stats_exclude, stats_out);
    if (draw->parsed()) return run_draw(code_text);
    return run_estimate(depth, samples, seed, strategy, est_out);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
