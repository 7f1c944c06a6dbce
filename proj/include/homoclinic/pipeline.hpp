#pragma once

#include <functional>
#include <optional>

#include "homoclinic/certificate.hpp"

namespace homoclinic {

inline constexpr const char* kToolVersion = "0.1.0";

struct StageFailure : std::runtime_error {
  std::string stage;
  Verdict verdict;
  StageFailure(std::string stage_, const std::string& msg,
               Verdict v = Verdict::undetermined)
      : std::runtime_error("stage '" + stage_ + "': " + msg),
        stage(std::move(stage_)), verdict(v) {}
};

struct PipelineArtifacts {
  ProofCertificate certificate;
  // retained for figure export
  std::optional<HRun> run_left, run_right;
  std::optional<HPrimeRun> run_family;
  FieldPtr local_field;
  ManifoldEnclosure unstable, stable;
};

using StageLogger = std::function<void(const std::string&)>;

/// The five-step proof pipeline: fixed points + eigenvalues, unstable-stage
/// certification, stable-stage certification on the reversed field, cone
/// certification, shooting. Stops at the first failing stage by throwing
/// StageFailure with the stage named.
PipelineArtifacts run_pipeline(const ProofConfig& cfg, const StageLogger& log = {});

/// CSV exports: manifold enclosure boundaries, trajectory tubes, and the two
/// flow-image points. Returns the file names written.
std::vector<std::string> export_figures(const PipelineArtifacts& art,
                                        const std::string& out_dir);

int thread_budget();

}  // namespace homoclinic
