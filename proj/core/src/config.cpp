#include "stmd/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "stmd/errors.hpp"
#include "text_util.hpp"

namespace stmd {

namespace {

using detail::trim;

double to_double(const std::string& key, const std::string& value) {
  try {
    return detail::parse_double(value, key.c_str());
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
}

int to_int(const std::string& key, const std::string& value) {
  try {
    return int(detail::parse_int(value, key.c_str()));
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError("boolean value expected for " + key + ", got '" + value + "'");
}

}  // namespace

void RunConfig::validate() const {
  try {
    pipeline.validate();
    contrast.validate();
    classifier.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  if (nms_radius < 1) throw ConfigError("nms_radius must be >= 1");
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "sigma1") c.pipeline.sigma1 = to_double(key, value);
  else if (key == "n1") c.pipeline.n1 = to_int(key, value);
  else if (key == "tau1") c.pipeline.tau1 = to_double(key, value);
  else if (key == "n2") c.pipeline.n2 = to_int(key, value);
  else if (key == "tau2") c.pipeline.tau2 = to_double(key, value);
  else if (key == "alpha1") c.pipeline.alpha1 = to_int(key, value);
  else if (key == "n3") c.pipeline.n3 = to_int(key, value);
  else if (key == "tau3") c.pipeline.tau3 = to_double(key, value);
  else if (key == "n4") c.pipeline.n4 = to_int(key, value);
  else if (key == "tau4") c.pipeline.tau4 = to_double(key, value);
  else if (key == "n5") c.pipeline.n5 = to_int(key, value);
  else if (key == "tau5") c.pipeline.tau5 = to_double(key, value);
  else if (key == "A") c.pipeline.inhib_a = to_double(key, value);
  else if (key == "B") c.pipeline.inhib_b = to_double(key, value);
  else if (key == "e") c.pipeline.inhib_e = to_double(key, value);
  else if (key == "rho") c.pipeline.inhib_rho = to_double(key, value);
  else if (key == "sigma2") c.pipeline.sigma2 = to_double(key, value);
  else if (key == "sigma3") c.pipeline.sigma3 = to_double(key, value);
  else if (key == "eta") c.contrast.eta = to_double(key, value);
  else if (key == "alpha2") c.contrast.alpha2 = to_int(key, value);
  else if (key == "beta") c.pipeline.beta = to_double(key, value);
  else if (key == "gamma") c.classifier.gamma = to_double(key, value);
  else if (key == "m") c.classifier.sd_samples = to_int(key, value);
  else if (key == "match_radius") c.classifier.match_radius = to_double(key, value);
  else if (key == "max_gap") c.classifier.max_gap = to_int(key, value);
  else if (key == "min_trace_len") c.classifier.min_trace_len = to_int(key, value);
  else if (key == "nms_radius") c.nms_radius = to_int(key, value);
  else if (key == "contrast_pathway") c.contrast_pathway = to_bool(key, value);
  else throw ConfigError("unknown config key: " + key);
}

void apply_setting(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("expected key=value, got '" + assignment + "'");
  }
  apply_setting(config, std::string(trim(assignment.substr(0, eq))),
                std::string(trim(assignment.substr(eq + 1))));
}

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not 'key = value'");
    }
    apply_setting(config, std::string(trim(sv.substr(0, eq))),
                  std::string(trim(sv.substr(eq + 1))));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "sigma1", "n1", "tau1", "n2", "tau2", "alpha1", "n3", "tau3", "n4",
      "tau4", "n5", "tau5", "A", "B", "e", "rho", "sigma2", "sigma3", "eta",
      "alpha2", "beta", "gamma", "m", "match_radius", "max_gap", "nms_radius",
      "contrast_pathway", "min_trace_len"};
  return keys;
}

}  // namespace stmd
