#pragma once

#include <cstdint>
#include <string>

#include "homoclinic/integrator.hpp"
#include "homoclinic/vector_field.hpp"

namespace homoclinic {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelConfig {
  Interval a, b, F, G;  // G = [G_l, G_r], outward-rounded decimals
  bool reversed_time = false;
  LocalChart chart;
};

struct ProofParams {
  double R = 0.0, T = 0.0;
  double L_u = 0.0, L_s = 0.0, M_u = 0.0, M_s = 0.0;
  double unstable_codomain_radius = 0.0;  // defaults to R
  double stable_codomain_radius = 0.0;    // defaults to R
  double theta_scale_unstable = 1.0;
  double theta_scale_stable = 1.0;
  int launch_branch = 1;  // +1: shoot from (R, w^u(R)); -1: from (-R, w^u(-R))
};

struct VerificationConfig {
  int subdivision = 0;       // 2^k cells per axis in rate/cone sups
  int max_face_depth = 24;   // isolating-block adaptive subdivision
  long face_max_boxes = 200000;
};

struct OutputConfig {
  std::string dir = "out";
};

struct ProofConfig {
  ModelConfig model;
  ProofParams proof;
  IntegratorConfig integrator;
  VerificationConfig verification;
  OutputConfig output;

  std::string canonical;  // sorted-key serialization the hash binds to
  std::uint64_t config_hash = 0;

  void validate() const;
};

/// Parse a JSON config. All real-valued entries are decimal strings and are
/// outward-rounded on parse; chart entries are taken as the nearest doubles
/// (the chart is a choice of coordinates, not a measured quantity).
ProofConfig parse_config(const std::string& json_text);
ProofConfig load_config(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace homoclinic
