#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lowdeg/distinguisher.hpp"
#include "lowdeg/planted.hpp"
#include "lowdeg/stats.hpp"

namespace lowdeg {

enum class Experiment { rs_matrix, rs_tensor_k, partite, spectral, lda_curve, gs_bench, kwise };

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

// Text form, one "key = value" per line, '#' starts a comment:
//   experiment = partite
//   trials = 20
//   seed = 1
//   out = results/partite.csv
//   n = 512
// Keys other than experiment, trials, seed, out and threads are experiment
// parameters.
struct ExperimentConfig {
  Experiment experiment = Experiment::rs_matrix;
  std::map<std::string, std::string> params;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::string out_path;
  unsigned threads = 1;
  bool timing = false;  // fill wall_time_ms; off keeps the CSV reproducible

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  // Applies one key = value assignment.
  void set(const std::string& key, const std::string& value);
  // Stable text form (sorted keys); parse(to_text()) round-trips.
  std::string to_text() const;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::uint64_t get_uint(const std::string& key) const;  // required
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key) const;  // required
  double get_double(const std::string& key, double fallback) const;

  // Throws std::invalid_argument when a required parameter is missing or
  // malformed, or epsilon lies outside [0, 1].
  void validate() const;
};

// "exhaustive", "oracle" or "budget=N".
struct PolicySpec {
  GuessPolicy::Mode mode = GuessPolicy::Mode::oracle;
  std::uint64_t budget = 0;
  static PolicySpec parse(const std::string& s);
};

struct TrialReport {
  std::uint64_t trial_id = 0;
  std::string label;  // "null" or "planted"
  int decision = 0;
  double statistic = 0.0;
  std::uint64_t sub_seed = 0;
  double wall_time_ms = 0.0;
};

struct LdaCurveRow {
  unsigned d = 0;
  double gamma = 0.0;
  std::size_t m = 0;
  double lambda_star = 0.0;
  double restricted_lda = 0.0;
  double ev_ldlr_bound = 0.0;
  bool regime_ok = false;
};

struct LabelSummary {
  std::uint64_t trials = 0;
  std::uint64_t correct = 0;
  std::optional<double> rate;  // none when trials = 0
  Interval wilson{0.0, 1.0};
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialReport> trials;  // sorted by (trial_id, label)
  std::vector<LdaCurveRow> curve;   // lda_curve only
  std::map<std::string, LabelSummary> labels;
  // Decision each label must produce to count as correct.
  std::map<std::string, int> expected;
};

// Runs every trial (null and planted per trial_id, kwise: one test per
// trial) on config.threads workers. Each trial draws from
// derive_subseed(master_seed, trial_id, label), so the output does not
// depend on the thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "trial_id,label,decision,statistic,sub_seed,wall_time_ms";
inline constexpr const char* kLdaCsvHeader = "d,gamma,m,lambda_star,restricted_lda,ev_ldlr_bound,regime_ok";

std::string trials_csv(const std::vector<TrialReport>& trials);
std::string lda_curve_csv(const std::vector<LdaCurveRow>& rows);
nlohmann::json summary_json(const ExperimentResult& r);

// True iff every label with trials reaches min_rate (param "min_rate",
// default 0.95) and, for lda_curve, restricted_lda <= ev_ldlr_bound on
// every regime-valid row.
bool meets_threshold(const ExperimentResult& r);

// Writes the CSV to config.out_path and the summary next to it with the
// extension replaced by ".json". Throws std::runtime_error on I/O failure.
void write_outputs(const ExperimentResult& r);

nlohmann::json witness_to_json(const PlantedWitness& w);
PlantedWitness witness_from_json(const nlohmann::json& j);
void save_witness(const std::string& path, const PlantedWitness& w);
PlantedWitness load_witness(const std::string& path);

nlohmann::json report_to_json(const DistinguishReport& r);

}  // namespace lowdeg
