#pragma once

#include <string>
#include <vector>

#include "homoclinic/config.hpp"
#include "homoclinic/eigen.hpp"
#include "homoclinic/lognorm.hpp"
#include "homoclinic/newton.hpp"
#include "homoclinic/shooting.hpp"

namespace homoclinic {

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FixedPointStage {
  bool verified = false;
  IntervalVector domain;            // the Newton box X
  IntervalVector enclosure;         // world coordinates, all theta
  IntervalVector image_of_operator; // N(x0, X)
  IntervalVector local_enclosure;   // chart coordinates family box
  IntervalVector local_domain;
  IntervalVector local_image;
};

struct EigenStage {
  bool verified = false;
  bool hyperbolic = false;
  Interval lambda1;
  Interval lambda23_re, lambda23_im;
  IntervalVector vec1;
  IntervalVector vec2_re, vec2_im;
  Interval saddle;
  std::string saddle_sign;  // negative | positive | undetermined
};

struct BlockStage {
  SplitBlock block;
  Verdict isolating = Verdict::undetermined;
  RateCertificate rate;
  ConeCertificate cone;
};

/// The complete machine-checkable record of the proof: every verified
/// inequality is stored as intervals so the verdict chain can be re-derived
/// by pure comparisons, without re-running any integration.
struct ProofCertificate {
  std::string tool_version;
  std::uint64_t config_hash = 0;
  std::string config_canonical;
  double wall_time_seconds = 0.0;

  FixedPointStage fixed_point;
  EigenStage eigen;
  BlockStage unstable, stable;
  ShootingResult shooting;

  bool overall = false;

  /// Conjunction of the stage verdicts, from stored data only.
  bool derive_overall() const;

  std::string serialize() const;
  static ProofCertificate parse(const std::string& text);
};

struct RecheckReport {
  bool ok = false;
  std::vector<std::string> failures;  // named stages with mismatches
};

/// Re-derives every verdict flag from the stored intervals, reverifies each
/// stage digest and the config hash. Any single altered endpoint flips a
/// stage digest, so tampering is reported with the stage name.
RecheckReport recheck_certificate_text(const std::string& text);

}  // namespace homoclinic
