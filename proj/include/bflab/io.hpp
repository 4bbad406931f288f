#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bflab/coefficient_system.hpp"
#include "bflab/frame_transport.hpp"
#include "bflab/initial_data.hpp"

namespace bflab {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::vector<std::string>& problems);
  std::vector<std::string> problems;
};

// Batch run description; JSON schema carries a format_version field.
struct RunConfig {
  AlphaSequence alphas = AlphaSequence::single(Cplx{0.5, 0.0});
  double t_start = 1.0;
  double t_end = 0.05;
  std::vector<double> snapshot_times = {0.05};
  double ode_rel_tol = 1e-10;
  double ode_abs_tol = 1e-12;
  std::int64_t ode_max_steps = 4'000'000;
  double x_half_domain = 26.0;
  double grid_h = 0.0;  // 0 = choose from the resolution rule
  double taper_fraction = 0.2;
  double taper_margin = 10.0;
  int k_min = 8;
  int k_max = 14;
  int xi_samples_per_window = 41;
  Frame seed_frame = Frame::canonical();
  double seed_x0 = 0.0;
  std::string output_dir = "out";
};

// Problems are returned as "field: reason" lines; empty means valid.
std::vector<std::string> validate(const RunConfig& config);
void validate_or_throw(const RunConfig& config);

nlohmann::json alpha_to_json(const AlphaSequence& alphas);
AlphaSequence alpha_from_json(const nlohmann::json& j);

struct Snapshot {
  CoefficientState state;
  AlphaSequence alphas = AlphaSequence::single(Cplx{0.0, 0.0});
};

nlohmann::json snapshot_to_json(const CoefficientState& state, const AlphaSequence& alphas);
Snapshot snapshot_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

RunConfig load_config(const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

// 17 significant digits, locale-independent.
std::string format_g17(double v);
// Short time token for file names, e.g. 0.05 -> "0.05".
std::string time_token(double t);

// CSV with a header row; numeric cells written with format_g17.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  size_t columns_;
};

}  // namespace bflab
