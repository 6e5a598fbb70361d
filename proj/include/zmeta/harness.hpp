#pragma once

// Configuration, orchestration and output of certification runs.

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "zmeta/equations.hpp"
#include "zmeta/levelset.hpp"
#include "zmeta/zeta_line.hpp"

namespace zmeta {

struct Tolerances {
  double quad_rel = 1e-11;
  double level_res = 1e-10;
  double eq_res = 1e-8;
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct RunConfig {
  double U = std::numbers::pi / 8;
  std::vector<int> L_list{20, 100, 500};
  LadderModel ladder = LadderModel::asymptotic();
  MotherMode mode = MotherMode::ASYMPTOTIC;
  ParameterSet params;
  std::uint64_t seed = 1;
  int draws = 0;  // 0: use params as given; otherwise this many seeded draws
  Tolerances tol;
  double arc_step = 0.02;
  int arc_count = 256;
  std::string report_path = "report.json";
  std::string scaling_path = "scaling.csv";
  std::string atlas_dir = "atlas";

  // Throws ConfigError.
  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Flat "key = value" text; '#' starts a comment. Unknown keys and malformed
// values throw ConfigError. Keys not present keep their defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

// Single-key setters shared by the file parser and command-line overrides.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

LadderModel parse_ladder(const std::string& text);
MotherMode parse_mode(const std::string& text);
std::string mode_name(MotherMode mode);

// xorshift64*: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; return x * 0x2545F4914F6CDD1D,
// with the state seeded as seed ^ 0x9E3779B97F4A7C15 (never zero).
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);
  std::uint64_t next();
  double uniform();  // [0, 1) from the top 53 bits

 private:
  std::uint64_t state_;
};

// n_i = 1 + r % 4, p_i = r % 7 - 3, k_i^2 = 0.05 + 0.9 u, drawn in the order
// n_1..n_6, p_1..p_6, k_1..k_6 for each set.
std::vector<ParameterSet> draw_parameter_sets(std::uint64_t seed, int count);

// The parameter sets a run uses: [config.params] or the seeded draws.
std::vector<ParameterSet> run_parameter_sets(const RunConfig& config);

struct RunResult {
  nlohmann::json report;  // {"header": ..., "payload": ...}
  bool certified = false;
};

// Every (U, L) in the grid and every parameter set; errors are recorded per
// grid point and the run carries on.
RunResult run(const RunConfig& config);

// The part of the report that must reproduce byte for byte.
std::string payload_text(const nlohmann::json& report);

struct ScalingRow {
  int L = 0;
  double theta = 0.0;
  double abs_theta_minus_1 = 0.0;
  double lnln_over_ln = 0.0;  // ln ln(pi L) / ln(pi L)
  double ratio = 0.0;         // |theta - 1| / lnln_over_ln
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double fitted_constant = 0.0;   // least squares |theta - 1| ~ C x over the lower half
  double max_upper_ratio = 0.0;   // over the upper half
  bool within_bound = false;      // max_upper_ratio <= 2 C
};

double lnln_over_ln(double T);

// Needs mode ASYMPTOTIC and at least three increasing L values. The lower half
// is the first ceil(n/2) rows, the upper half the rest.
ScalingResult scaling_study(const RunConfig& config);
std::string scaling_csv(const ScalingResult& result);

struct AtlasResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json summary;
  bool certified = true;
};

// One CSV per slot (columns re, im, residual) for the first L of the grid
// and the first parameter set, plus atlas.json in out_dir.
AtlasResult emit_atlas(const RunConfig& config, const std::vector<Slot>& slots,
                       const std::filesystem::path& out_dir);

// "8:1,12:2" -> {{8,1},{12,2}}. Throws ConfigError.
std::vector<Slot> parse_slots(const std::string& text);

}  // namespace zmeta
