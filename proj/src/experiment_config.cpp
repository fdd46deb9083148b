#include "zygmund/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace zygmund {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text, int line) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError(key, "expected a number, got '" + text + "'", line);
  return v;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text,
                          int line) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_number<T>(key, item, line));
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message,
                         int line)
    : ParameterError((line > 0 ? "line " + std::to_string(line) + ": " : "") +
                     field + ": " + message),
      field_(std::move(field)),
      message_(message),
      line_(line) {}

PsiSpec ExperimentConfig::psi() const {
  if (psi_family == "power") return PsiSpec::power(psi_r);
  if (psi_family == "power_log") return PsiSpec::power_log(psi_r, psi_alpha, psi_c);
  if (psi_family == "power_inv_log")
    return PsiSpec::power_inv_log(psi_r, psi_alpha, psi_c);
  if (psi_family == "power_log_log")
    return PsiSpec::power_log_log(psi_r, psi_alpha, psi_c);
  throw ConfigError("psi.family", "unknown family '" + psi_family + "'");
}

MethodParams ExperimentConfig::method() const { return MethodParams(s, q, beta); }

void validate_config(const ExperimentConfig& cfg) {
  if (!(cfg.s > 0)) throw ConfigError("method.s", "must be positive");
  if (!(cfg.q > 1) || !std::isfinite(cfg.q))
    throw ConfigError("method.q", "must lie in (1, inf)");
  if (!std::isfinite(cfg.beta)) throw ConfigError("method.beta", "must be finite");
  if (!(cfg.band_limit >= 1)) throw ConfigError("band_limit", "must be >= 1");
  if (cfg.n_grid.empty()) throw ConfigError("n_grid", "must not be empty");
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] < 2) throw ConfigError("n_grid", "entries must be >= 2");
    if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1])
      throw ConfigError("n_grid", "must be strictly increasing");
  }
  if (cfg.witness_n && *cfg.witness_n < 2)
    throw ConfigError("witness.n", "must be >= 2");
  try {
    (void)cfg.psi();
  } catch (const ConfigError&) {
    throw;
  } catch (const ParameterError& e) {
    throw ConfigError("psi", e.what());
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::map<std::string, int> key_line;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(text, "expected 'key = value'", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    key_line[key] = line;

    if (key == "psi.family") cfg.psi_family = value;
    else if (key == "psi.r") cfg.psi_r = parse_number<double>(key, value, line);
    else if (key == "psi.alpha") cfg.psi_alpha = parse_number<double>(key, value, line);
    else if (key == "psi.c") cfg.psi_c = parse_number<double>(key, value, line);
    else if (key == "method.s") cfg.s = parse_number<double>(key, value, line);
    else if (key == "method.q") cfg.q = parse_number<double>(key, value, line);
    else if (key == "method.beta") cfg.beta = parse_number<double>(key, value, line);
    else if (key == "n_grid") cfg.n_grid = parse_list<int>(key, value, line);
    else if (key == "band_limit") cfg.band_limit = parse_number<double>(key, value, line);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value, line);
    else if (key == "table.r_list") cfg.r_list = parse_list<double>(key, value, line);
    else if (key == "witness.n") cfg.witness_n = parse_number<int>(key, value, line);
    else throw ConfigError(key, "unknown key", line);
  }
  try {
    validate_config(cfg);
  } catch (const ConfigError& e) {
    const auto it = key_line.find(e.field());
    if (it == key_line.end() || e.line() > 0) throw;
    throw ConfigError(e.field(), e.message(), it->second);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace zygmund
