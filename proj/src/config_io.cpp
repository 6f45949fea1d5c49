#include "gfra/config_io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace gfra {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': " + v);
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': " + v);
  }
}

}  // namespace

RunConfig default_run_config() {
  RunConfig run;
  run.system = table1_config(100, 120);
  return run;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig run = default_run_config();
  std::optional<long> active_count;
  std::optional<double> activity_prob;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ConfigError("config: empty value for '" + key + "'");

    if (key == "n_users") {
      run.system.n_users = static_cast<int>(parse_long(key, value));
    } else if (key == "n_antennas") {
      run.system.n_antennas = static_cast<int>(parse_long(key, value));
    } else if (key == "block_len") {
      run.system.block_len = static_cast<int>(parse_long(key, value));
    } else if (key == "pilot_len") {
      run.system.pilot_len = static_cast<int>(parse_long(key, value));
    } else if (key == "payload_bits") {
      run.system.payload_bits = static_cast<int>(parse_long(key, value));
    } else if (key == "active_count") {
      active_count = parse_long(key, value);
    } else if (key == "activity_prob") {
      activity_prob = parse_double(key, value);
    } else if (key == "rx_power_db") {
      run.rx_power_db = parse_double(key, value);
    } else if (key == "noise_dbm") {
      run.noise_dbm = parse_double(key, value);
    } else if (key == "trials") {
      run.trials = parse_long(key, value);
    } else if (key == "seed") {
      run.seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "amp_max_iters") {
      run.system.solver.amp_max_iters = static_cast<int>(parse_long(key, value));
    } else if (key == "amp_tol") {
      run.system.solver.amp_tol = parse_double(key, value);
    } else if (key == "trunc_tol") {
      run.system.solver.trunc_tol = parse_double(key, value);
    } else if (key == "mode") {
      if (value != "exact" && value != "fast")
        throw ConfigError("config: mode must be 'exact' or 'fast'");
      run.mode = value;
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  if (active_count && activity_prob)
    throw ConfigError(
        "config: give exactly one of active_count / activity_prob");
  run.system.rx_power = SystemConfig::db_to_linear(run.rx_power_db);
  run.system.noise_var = SystemConfig::dbm_to_linear(run.noise_dbm);
  if (activity_prob)
    set_activity_prob(run.system, *activity_prob);
  else
    set_fixed_active_count(run.system,
                           static_cast<int>(active_count.value_or(
                               run.system.active_count)));
  run.system.validate();
  if (run.trials < 0) throw ConfigError("config: trials must be >= 0");
  return run;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  char buf[64];
  auto put_num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << key << " = " << buf << "\n";
  };
  out << "n_users = " << cfg.system.n_users << "\n";
  out << "n_antennas = " << cfg.system.n_antennas << "\n";
  out << "block_len = " << cfg.system.block_len << "\n";
  out << "pilot_len = " << cfg.system.pilot_len << "\n";
  out << "payload_bits = " << cfg.system.payload_bits << "\n";
  if (cfg.system.activity_mode == ActivityMode::kFixedCount)
    out << "active_count = " << cfg.system.active_count << "\n";
  else
    put_num("activity_prob", cfg.system.activity_prob);
  put_num("rx_power_db", cfg.rx_power_db);
  put_num("noise_dbm", cfg.noise_dbm);
  out << "trials = " << cfg.trials << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "amp_max_iters = " << cfg.system.solver.amp_max_iters << "\n";
  put_num("amp_tol", cfg.system.solver.amp_tol);
  put_num("trunc_tol", cfg.system.solver.trunc_tol);
  out << "mode = " << cfg.mode << "\n";
  return out.str();
}

}  // namespace gfra
