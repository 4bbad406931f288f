#include "bflab/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bflab/spectral_energy.hpp"

namespace bflab {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string s = "configuration invalid:";
  for (const auto& p : problems) s += "\n  " + p;
  return s;
}

const nlohmann::json& require_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name))
    throw ConfigError({std::string(name) + ": missing required field"});
  return j.at(name);
}

std::vector<Cplx> complex_array(const nlohmann::json& j, const char* name) {
  std::vector<Cplx> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw ConfigError({std::string(name) + ": entries must be [re, im] pairs"});
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(const std::vector<std::string>& problems_)
    : std::runtime_error(join_problems(problems_)), problems(problems_) {}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> out;
  if (!(c.t_start > 0.0)) out.push_back("t_start: must be > 0");
  if (!(c.t_end > 0.0)) out.push_back("t_end: must be > 0");
  if (c.t_start == c.t_end) out.push_back("t_start/t_end: must differ");
  if (!(c.ode_rel_tol > 0.0)) out.push_back("ode_rel_tol: must be > 0");
  if (!(c.ode_abs_tol > 0.0)) out.push_back("ode_abs_tol: must be > 0");
  if (c.ode_max_steps < 1) out.push_back("ode_max_steps: must be >= 1");

  const double lo = std::min(c.t_start, c.t_end);
  const double hi = std::max(c.t_start, c.t_end);
  if (c.snapshot_times.empty()) out.push_back("snapshot_times: must not be empty");
  for (double s : c.snapshot_times)
    if (!(s >= lo && s <= hi)) {
      out.push_back("snapshot_times: entries must lie between t_start and t_end");
      break;
    }

  if (!(c.taper_fraction > 0.0) || c.taper_fraction > 0.25)
    out.push_back("taper_fraction: must lie in (0, 0.25]");
  if (!(c.taper_margin >= 0.0)) out.push_back("taper_margin: must be >= 0");
  if (c.k_min < 0) out.push_back("k_min: must be >= 0");
  if (c.k_max < c.k_min) out.push_back("k_max: must be >= k_min");
  if (c.xi_samples_per_window < 33)
    out.push_back("xi_samples_per_window: must be >= 33");
  else if (c.xi_samples_per_window % 2 == 0)
    out.push_back("xi_samples_per_window: must be odd (Simpson nodes)");

  double extent = 0.0;
  for (int j : c.alphas.corner_positions())
    extent = std::max(extent, std::abs(static_cast<double>(j)));
  TaperConfig taper{c.x_half_domain, c.taper_fraction, c.taper_margin};
  double t_check = hi;
  for (double s : c.snapshot_times) t_check = std::max(t_check, s);
  const double need = taper.minimal_L(t_check, extent, static_cast<double>(c.k_max) + 1.0);
  if (c.x_half_domain < need) {
    std::ostringstream os;
    os << "x_half_domain: too small for k_max at the latest snapshot; minimal L = " << need;
    out.push_back(os.str());
  }

  if (c.grid_h < 0.0) out.push_back("grid_h: must be >= 0 (0 = automatic)");
  if (c.seed_frame.orthonormality_error() > 1e-9)
    out.push_back("seed_frame: not orthonormal");
  if (std::abs(c.seed_x0) > c.x_half_domain)
    out.push_back("seed_x0: must lie inside [-x_half_domain, x_half_domain]");
  if (c.output_dir.empty()) out.push_back("output_dir: must not be empty");
  return out;
}

void validate_or_throw(const RunConfig& config) {
  const auto problems = validate(config);
  if (!problems.empty()) throw ConfigError(problems);
}

nlohmann::json alpha_to_json(const AlphaSequence& alphas) {
  nlohmann::json arr = nlohmann::json::array();
  for (int j = alphas.j_min(); j <= alphas.j_max(); ++j) {
    const Cplx a = alphas.alpha(j);
    arr.push_back({a.real(), a.imag()});
  }
  return {{"j_min", alphas.j_min()}, {"j_max", alphas.j_max()}, {"alpha", arr}};
}

AlphaSequence alpha_from_json(const nlohmann::json& j) {
  const int j_min = require_field(j, "j_min").get<int>();
  const int j_max = require_field(j, "j_max").get<int>();
  auto values = complex_array(require_field(j, "alpha"), "alpha");
  if (static_cast<int>(values.size()) != j_max - j_min + 1)
    throw ConfigError({"alpha: length must equal j_max - j_min + 1"});
  return AlphaSequence(j_min, std::move(values));
}

nlohmann::json snapshot_to_json(const CoefficientState& state, const AlphaSequence& alphas) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Cplx& a : state.a_tilde) arr.push_back({a.real(), a.imag()});
  return {{"format_version", 1},
          {"t", state.t},
          {"alphas", alpha_to_json(alphas)},
          {"a_tilde", arr}};
}

Snapshot snapshot_from_json(const nlohmann::json& j) {
  Snapshot s;
  s.alphas = alpha_from_json(require_field(j, "alphas"));
  s.state.t = require_field(j, "t").get<double>();
  s.state.j_min = s.alphas.j_min();
  s.state.a_tilde = complex_array(require_field(j, "a_tilde"), "a_tilde");
  if (static_cast<int>(s.state.a_tilde.size()) != s.alphas.size())
    throw ConfigError({"a_tilde: length must match the alphas window"});
  if (!(s.state.t > 0.0)) throw ConfigError({"t: must be > 0"});
  return s;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["alphas"] = alpha_to_json(c.alphas);
  j["t_start"] = c.t_start;
  j["t_end"] = c.t_end;
  j["snapshot_times"] = c.snapshot_times;
  j["ode_rel_tol"] = c.ode_rel_tol;
  j["ode_abs_tol"] = c.ode_abs_tol;
  j["ode_max_steps"] = c.ode_max_steps;
  j["x_half_domain"] = c.x_half_domain;
  j["grid_h"] = c.grid_h;
  j["taper_fraction"] = c.taper_fraction;
  j["taper_margin"] = c.taper_margin;
  j["k_min"] = c.k_min;
  j["k_max"] = c.k_max;
  j["xi_samples_per_window"] = c.xi_samples_per_window;
  j["seed_frame"] = {{c.seed_frame.T.x, c.seed_frame.T.y, c.seed_frame.T.z},
                     {c.seed_frame.e1.x, c.seed_frame.e1.y, c.seed_frame.e1.z},
                     {c.seed_frame.e2.x, c.seed_frame.e2.y, c.seed_frame.e2.z}};
  j["seed_x0"] = c.seed_x0;
  j["output_dir"] = c.output_dir;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (j.contains("alphas")) c.alphas = alpha_from_json(j.at("alphas"));
    if (j.contains("t_start")) c.t_start = j.at("t_start").get<double>();
    if (j.contains("t_end")) c.t_end = j.at("t_end").get<double>();
    if (j.contains("snapshot_times"))
      c.snapshot_times = j.at("snapshot_times").get<std::vector<double>>();
    if (j.contains("ode_rel_tol")) c.ode_rel_tol = j.at("ode_rel_tol").get<double>();
    if (j.contains("ode_abs_tol")) c.ode_abs_tol = j.at("ode_abs_tol").get<double>();
    if (j.contains("ode_max_steps"))
      c.ode_max_steps = j.at("ode_max_steps").get<std::int64_t>();
    if (j.contains("x_half_domain")) c.x_half_domain = j.at("x_half_domain").get<double>();
    if (j.contains("grid_h")) c.grid_h = j.at("grid_h").get<double>();
    if (j.contains("taper_fraction"))
      c.taper_fraction = j.at("taper_fraction").get<double>();
    if (j.contains("taper_margin")) c.taper_margin = j.at("taper_margin").get<double>();
    if (j.contains("k_min")) c.k_min = j.at("k_min").get<int>();
    if (j.contains("k_max")) c.k_max = j.at("k_max").get<int>();
    if (j.contains("xi_samples_per_window"))
      c.xi_samples_per_window = j.at("xi_samples_per_window").get<int>();
    if (j.contains("seed_frame")) {
      const auto& f = j.at("seed_frame");
      if (!f.is_array() || f.size() != 3)
        throw ConfigError({"seed_frame: must be a 3x3 row matrix [T, e1, e2]"});
      auto row = [&](size_t i) {
        return Vec3{f[i][0].get<double>(), f[i][1].get<double>(), f[i][2].get<double>()};
      };
      c.seed_frame = Frame{row(0), row(1), row(2)};
    }
    if (j.contains("seed_x0")) c.seed_x0 = j.at("seed_x0").get<double>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({std::string("config: ") + e.what()});
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open " + path.string()});
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({std::string("config: parse error: ") + e.what()});
  }
  return config_from_json(j);
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"snapshot: cannot open " + path.string()});
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({std::string("snapshot: parse error: ") + e.what()});
  }
  return snapshot_from_json(j);
}

void save_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string time_token(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  for (size_t i = 0; i < header.size(); ++i)
    out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_g17(values[i]);
  out_ << "\n";
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

}  // namespace bflab
