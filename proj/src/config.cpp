#include "homoclinic/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace homoclinic {

namespace {

using nlohmann::json;

Interval dec_interval(const json& j, const char* what) {
  if (!j.is_string())
    throw ConfigError(std::string(what) + ": expected a decimal string");
  try {
    return Interval::from_decimal(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

double dec_double(const json& j, const char* what) {
  if (!j.is_string())
    throw ConfigError(std::string(what) + ": expected a decimal string");
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ConfigError(std::string(what) + ": cannot parse '" + s + "'");
  return v;
}

Interval dec_range(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(std::string(what) + ": expected [lo, hi] decimal strings");
  Interval lo = dec_interval(j[0], what), hi = dec_interval(j[1], what);
  if (lo.lo() > hi.hi()) throw ConfigError(std::string(what) + ": empty range");
  return Interval(lo.lo(), hi.hi());
}

const json& need(const json& j, const char* key, const char* scope) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string(scope) + ": missing key '" + key + "'");
  return *it;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void ProofConfig::validate() const {
  if (!(proof.R > 0) || !(proof.T > 0) || !(proof.L_u > 0) || !(proof.L_s > 0) ||
      !(proof.M_u > 0) || !(proof.M_s > 0))
    throw ConfigError("proof: R, T, L_u, L_s, M_u, M_s must be positive");
  if (!(proof.unstable_codomain_radius > 0) ||
      proof.unstable_codomain_radius > proof.R ||
      !(proof.stable_codomain_radius > 0) || proof.stable_codomain_radius > proof.R)
    throw ConfigError("proof: codomain radii must lie in (0, R]");
  if (!(proof.theta_scale_unstable > 0) || !(proof.theta_scale_stable > 0))
    throw ConfigError("proof: theta scales must be positive");
  if (!model.G.is_finite()) throw ConfigError("model: G range must be finite");
  integrator.validate();
  if (verification.subdivision < 0 || verification.subdivision > 12)
    throw ConfigError("verification: subdivision must be in [0, 12]");
}

ProofConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  ProofConfig c;
  const json& model = need(j, "model", "config");
  c.model.a = dec_interval(need(model, "a", "model"), "model.a");
  c.model.b = dec_interval(need(model, "b", "model"), "model.b");
  c.model.F = dec_interval(need(model, "F", "model"), "model.F");
  c.model.G = dec_range(need(model, "G", "model"), "model.G");
  c.model.reversed_time =
      model.value("time_direction", std::string("forward")) == std::string("reversed");
  {
    const json& chart = need(model, "chart", "model");
    const json& q0 = need(chart, "q0", "model.chart");
    const json& C = need(chart, "C", "model.chart");
    if (!q0.is_array() || q0.size() != 3 || !C.is_array() || C.size() != 3)
      throw ConfigError("model.chart: q0 must be 3 strings, C a 3x3 grid of strings");
    VecD q0v;
    for (const auto& e : q0) q0v.push_back(dec_double(e, "model.chart.q0"));
    MatD Cv;
    for (const auto& row : C) {
      if (!row.is_array() || row.size() != 3)
        throw ConfigError("model.chart.C: ragged rows");
      VecD r;
      for (const auto& e : row) r.push_back(dec_double(e, "model.chart.C"));
      Cv.push_back(std::move(r));
    }
    c.model.chart = LocalChart(std::move(q0v), std::move(Cv));
  }

  const json& proof = need(j, "proof", "config");
  c.proof.R = dec_double(need(proof, "R", "proof"), "proof.R");
  c.proof.T = dec_double(need(proof, "T", "proof"), "proof.T");
  c.proof.L_u = dec_double(need(proof, "L_u", "proof"), "proof.L_u");
  c.proof.L_s = dec_double(need(proof, "L_s", "proof"), "proof.L_s");
  c.proof.M_u = dec_double(need(proof, "M_u", "proof"), "proof.M_u");
  c.proof.M_s = dec_double(need(proof, "M_s", "proof"), "proof.M_s");
  c.proof.unstable_codomain_radius =
      proof.contains("unstable_codomain_radius")
          ? dec_double(proof["unstable_codomain_radius"], "proof.unstable_codomain_radius")
          : c.proof.R;
  c.proof.stable_codomain_radius =
      proof.contains("stable_codomain_radius")
          ? dec_double(proof["stable_codomain_radius"], "proof.stable_codomain_radius")
          : c.proof.R;
  c.proof.theta_scale_unstable =
      proof.contains("theta_scale_unstable")
          ? dec_double(proof["theta_scale_unstable"], "proof.theta_scale_unstable")
          : 1.0;
  c.proof.theta_scale_stable =
      proof.contains("theta_scale_stable")
          ? dec_double(proof["theta_scale_stable"], "proof.theta_scale_stable")
          : 1.0;
  c.proof.launch_branch = proof.value("launch_branch", 1);
  if (c.proof.launch_branch != 1 && c.proof.launch_branch != -1)
    throw ConfigError("proof.launch_branch: expected +1 or -1");

  if (j.contains("integrator")) {
    const json& integ = j["integrator"];
    c.integrator.order = integ.value("order", c.integrator.order);
    if (integ.contains("h_init")) c.integrator.h_init = dec_double(integ["h_init"], "integrator.h_init");
    if (integ.contains("h_min")) c.integrator.h_min = dec_double(integ["h_min"], "integrator.h_min");
    if (integ.contains("tol")) c.integrator.tol = dec_double(integ["tol"], "integrator.tol");
    c.integrator.max_steps = integ.value("max_steps", c.integrator.max_steps);
    if (integ.contains("wrapping_control")) {
      std::string w = integ["wrapping_control"].get<std::string>();
      if (w != "qr" && w != "none")
        throw ConfigError("integrator.wrapping_control: expected 'qr' or 'none'");
      c.integrator.qr_wrapping = (w == "qr");
    }
    if (integ.contains("blowup_threshold"))
      c.integrator.blowup_threshold = dec_double(integ["blowup_threshold"], "integrator.blowup_threshold");
  }

  if (j.contains("verification")) {
    const json& v = j["verification"];
    c.verification.subdivision = v.value("subdivision", c.verification.subdivision);
    c.verification.max_face_depth = v.value("max_face_depth", c.verification.max_face_depth);
    c.verification.face_max_boxes = v.value("face_max_boxes", c.verification.face_max_boxes);
  }
  if (j.contains("output")) {
    c.output.dir = j["output"].value("dir", c.output.dir);
  }

  c.canonical = j.dump();  // nlohmann objects iterate in sorted key order
  c.config_hash = fnv1a64(c.canonical);
  c.validate();
  return c;
}

ProofConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace homoclinic
