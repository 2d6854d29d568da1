#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stmd/contrast_pathway.hpp"
#include "stmd/motion_pathway.hpp"
#include "stmd/mushroom_body.hpp"

namespace stmd {

// Full run configuration. Defaults reproduce the reference parameter set;
// every key can be overridden from a config file or a key=value string.
struct RunConfig {
  PipelineParams pipeline;
  ContrastParams contrast;
  ClassifierParams classifier;
  int nms_radius = 5;
  bool contrast_pathway = true;

  void validate() const;
};

// Applies one `key=value` (or separate key/value) setting.
// Keys: sigma1, n1, tau1, n2, tau2, alpha1, n3, tau3, n4, tau4, n5, tau5,
// A, B, e, rho, sigma2, sigma3, eta, alpha2, beta, gamma, m, match_radius,
// max_gap, nms_radius, contrast_pathway, min_trace_len.
void apply_setting(RunConfig& config, const std::string& key,
                   const std::string& value);
void apply_setting(RunConfig& config, const std::string& assignment);

// `key = value` lines, '#' comments.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

// All recognized keys, in canonical order.
const std::vector<std::string>& config_keys();

}  // namespace stmd
