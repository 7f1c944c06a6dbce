#include "homoclinic/certificate.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace homoclinic {

namespace {

using nlohmann::json;

std::string dtos(double v) {
  std::array<char, 64> buf{};
  auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

double stod_exact(const std::string& s, const char* what) {
  double v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw CertificateError(std::string("bad number in certificate at ") + what +
                           ": '" + s + "'");
  return v;
}

json iv_to_json(const Interval& v) { return json::array({dtos(v.lo()), dtos(v.hi())}); }

Interval iv_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw CertificateError(std::string("bad interval at ") + what);
  return Interval(stod_exact(j[0].get<std::string>(), what),
                  stod_exact(j[1].get<std::string>(), what));
}

json vec_to_json(const IntervalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(iv_to_json(x));
  return a;
}

IntervalVector vec_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw CertificateError(std::string("bad box at ") + what);
  IntervalVector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.dim(); ++i) v[i] = iv_from_json(j[static_cast<size_t>(i)], what);
  return v;
}

std::string hash_hex(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t hash_from_hex(const std::string& s, const char* what) {
  if (s.size() != 18 || s[0] != '0' || s[1] != 'x')
    throw CertificateError(std::string("bad hash at ") + what);
  return std::strtoull(s.c_str() + 2, nullptr, 16);
}

json with_digest(json stage) {
  stage.erase("digest");
  std::uint64_t d = fnv1a64(stage.dump());
  stage["digest"] = hash_hex(d);
  return stage;
}

bool digest_ok(json stage) {
  if (!stage.contains("digest")) return false;
  std::string stored = stage["digest"].get<std::string>();
  stage.erase("digest");
  return stored == hash_hex(fnv1a64(stage.dump()));
}

json block_to_json(const SplitBlock& b) {
  json j;
  j["x_radius"] = dtos(b.x_radius);
  j["y_radius"] = dtos(b.y_radius);
  j["u"] = b.u;
  j["s"] = b.s;
  j["theta"] = iv_to_json(b.theta);
  return j;
}

SplitBlock block_from_json(const json& j) {
  SplitBlock b;
  b.x_radius = stod_exact(j.at("x_radius").get<std::string>(), "block.x_radius");
  b.y_radius = stod_exact(j.at("y_radius").get<std::string>(), "block.y_radius");
  b.u = j.at("u").get<int>();
  b.s = j.at("s").get<int>();
  b.theta = iv_from_json(j.at("theta"), "block.theta");
  return b;
}

json verdict_to_json(Verdict v) { return to_string(v); }

Verdict verdict_from_json(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "verified") return Verdict::verified;
  if (s == "failed") return Verdict::failed;
  return Verdict::undetermined;
}

json blockstage_to_json(const BlockStage& b) {
  json j;
  j["block"] = block_to_json(b.block);
  j["isolating"] = verdict_to_json(b.isolating);
  json r;
  r["L"] = dtos(b.rate.L);
  r["mu1"] = iv_to_json(b.rate.mu1);
  r["mu2"] = iv_to_json(b.rate.mu2);
  r["xi"] = iv_to_json(b.rate.xi);
  r["isolating"] = b.rate.isolating;
  r["rate_ok"] = b.rate.rate_ok;
  r["contraction_C"] = iv_to_json(b.rate.contraction_C);
  j["rate"] = r;
  json c;
  c["M"] = dtos(b.cone.M);
  c["mu_M"] = iv_to_json(b.cone.mu_M);
  c["xi_M"] = iv_to_json(b.cone.xi_M);
  c["slope_bound"] = dtos(b.cone.slope_bound);
  c["theta_scale"] = dtos(b.cone.theta_scale);
  c["ok"] = b.cone.ok;
  j["cone"] = c;
  return j;
}

BlockStage blockstage_from_json(const json& j) {
  BlockStage b;
  b.block = block_from_json(j.at("block"));
  b.isolating = verdict_from_json(j.at("isolating"));
  const json& r = j.at("rate");
  b.rate.L = stod_exact(r.at("L").get<std::string>(), "rate.L");
  b.rate.mu1 = iv_from_json(r.at("mu1"), "rate.mu1");
  b.rate.mu2 = iv_from_json(r.at("mu2"), "rate.mu2");
  b.rate.xi = iv_from_json(r.at("xi"), "rate.xi");
  b.rate.isolating = r.at("isolating").get<bool>();
  b.rate.rate_ok = r.at("rate_ok").get<bool>();
  b.rate.contraction_C = iv_from_json(r.at("contraction_C"), "rate.contraction_C");
  b.rate.verdict = b.rate.rate_ok ? Verdict::verified : Verdict::undetermined;
  const json& c = j.at("cone");
  b.cone.M = stod_exact(c.at("M").get<std::string>(), "cone.M");
  b.cone.mu_M = iv_from_json(c.at("mu_M"), "cone.mu_M");
  b.cone.xi_M = iv_from_json(c.at("xi_M"), "cone.xi_M");
  b.cone.slope_bound = stod_exact(c.at("slope_bound").get<std::string>(), "cone.slope_bound");
  b.cone.theta_scale = stod_exact(c.at("theta_scale").get<std::string>(), "cone.theta_scale");
  b.cone.ok = c.at("ok").get<bool>();
  b.cone.verdict = b.cone.ok ? Verdict::verified : Verdict::undetermined;
  return b;
}

}  // namespace

bool ProofCertificate::derive_overall() const {
  return fixed_point.verified && eigen.verified && eigen.hyperbolic &&
         unstable.isolating == Verdict::verified && unstable.rate.rate_ok &&
         unstable.cone.ok && stable.isolating == Verdict::verified &&
         stable.rate.rate_ok && stable.cone.ok && shooting.existence &&
         shooting.uniqueness;
}

std::string ProofCertificate::serialize() const {
  json j;
  j["format"] = "homoclinic-proof-certificate-v1";
  j["tool_version"] = tool_version;
  j["config_hash"] = hash_hex(config_hash);
  j["config"] = config_canonical;
  j["wall_time_seconds"] = wall_time_seconds;
  j["overall"] = overall;

  json fp;
  fp["verified"] = fixed_point.verified;
  fp["domain"] = vec_to_json(fixed_point.domain);
  fp["enclosure"] = vec_to_json(fixed_point.enclosure);
  fp["image_of_operator"] = vec_to_json(fixed_point.image_of_operator);
  fp["local_domain"] = vec_to_json(fixed_point.local_domain);
  fp["local_enclosure"] = vec_to_json(fixed_point.local_enclosure);
  fp["local_image"] = vec_to_json(fixed_point.local_image);
  j["stages"]["fixed_point"] = with_digest(fp);

  json ei;
  ei["verified"] = eigen.verified;
  ei["hyperbolic"] = eigen.hyperbolic;
  ei["lambda1"] = iv_to_json(eigen.lambda1);
  ei["lambda23_re"] = iv_to_json(eigen.lambda23_re);
  ei["lambda23_im"] = iv_to_json(eigen.lambda23_im);
  ei["vec1"] = vec_to_json(eigen.vec1);
  ei["vec2_re"] = vec_to_json(eigen.vec2_re);
  ei["vec2_im"] = vec_to_json(eigen.vec2_im);
  ei["saddle_quantity"] = iv_to_json(eigen.saddle);
  ei["saddle_sign"] = eigen.saddle_sign;
  j["stages"]["eigen"] = with_digest(ei);

  j["stages"]["unstable_block"] = with_digest(blockstage_to_json(unstable));
  j["stages"]["stable_block"] = with_digest(blockstage_to_json(stable));

  json sh;
  sh["theta_l"] = iv_to_json(shooting.theta_l);
  sh["theta_r"] = iv_to_json(shooting.theta_r);
  sh["h_left"] = iv_to_json(shooting.h_left);
  sh["h_right"] = iv_to_json(shooting.h_right);
  sh["h_prime"] = iv_to_json(shooting.h_prime);
  sh["stays_in_D"] = shooting.stays_in_D;
  sh["existence"] = shooting.existence;
  sh["uniqueness"] = shooting.uniqueness;
  sh["orientation"] = shooting.orientation;
  sh["mean_value_ok"] = shooting.mean_value_ok;
  j["stages"]["shooting"] = with_digest(sh);

  return j.dump(2) + "\n";
}

ProofCertificate ProofCertificate::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateError(std::string("certificate parse error: ") + e.what());
  }
  if (j.value("format", std::string()) != "homoclinic-proof-certificate-v1")
    throw CertificateError("unknown certificate format");
  ProofCertificate c;
  c.tool_version = j.value("tool_version", std::string());
  c.config_hash = hash_from_hex(j.at("config_hash").get<std::string>(), "config_hash");
  c.config_canonical = j.at("config").get<std::string>();
  c.wall_time_seconds = j.value("wall_time_seconds", 0.0);
  c.overall = j.at("overall").get<bool>();

  const json& st = j.at("stages");
  {
    const json& fp = st.at("fixed_point");
    c.fixed_point.verified = fp.at("verified").get<bool>();
    c.fixed_point.domain = vec_from_json(fp.at("domain"), "fixed_point.domain");
    c.fixed_point.enclosure = vec_from_json(fp.at("enclosure"), "fixed_point.enclosure");
    c.fixed_point.image_of_operator =
        vec_from_json(fp.at("image_of_operator"), "fixed_point.image");
    c.fixed_point.local_domain = vec_from_json(fp.at("local_domain"), "fp.local_domain");
    c.fixed_point.local_enclosure =
        vec_from_json(fp.at("local_enclosure"), "fp.local_enclosure");
    c.fixed_point.local_image = vec_from_json(fp.at("local_image"), "fp.local_image");
  }
  {
    const json& ei = st.at("eigen");
    c.eigen.verified = ei.at("verified").get<bool>();
    c.eigen.hyperbolic = ei.at("hyperbolic").get<bool>();
    c.eigen.lambda1 = iv_from_json(ei.at("lambda1"), "eigen.lambda1");
    c.eigen.lambda23_re = iv_from_json(ei.at("lambda23_re"), "eigen.lambda23_re");
    c.eigen.lambda23_im = iv_from_json(ei.at("lambda23_im"), "eigen.lambda23_im");
    c.eigen.vec1 = vec_from_json(ei.at("vec1"), "eigen.vec1");
    c.eigen.vec2_re = vec_from_json(ei.at("vec2_re"), "eigen.vec2_re");
    c.eigen.vec2_im = vec_from_json(ei.at("vec2_im"), "eigen.vec2_im");
    c.eigen.saddle = iv_from_json(ei.at("saddle_quantity"), "eigen.saddle");
    c.eigen.saddle_sign = ei.at("saddle_sign").get<std::string>();
  }
  c.unstable = blockstage_from_json(st.at("unstable_block"));
  c.stable = blockstage_from_json(st.at("stable_block"));
  {
    const json& sh = st.at("shooting");
    c.shooting.theta_l = iv_from_json(sh.at("theta_l"), "shooting.theta_l");
    c.shooting.theta_r = iv_from_json(sh.at("theta_r"), "shooting.theta_r");
    c.shooting.h_left = iv_from_json(sh.at("h_left"), "shooting.h_left");
    c.shooting.h_right = iv_from_json(sh.at("h_right"), "shooting.h_right");
    c.shooting.h_prime = iv_from_json(sh.at("h_prime"), "shooting.h_prime");
    c.shooting.stays_in_D = sh.at("stays_in_D").get<bool>();
    c.shooting.existence = sh.at("existence").get<bool>();
    c.shooting.uniqueness = sh.at("uniqueness").get<bool>();
    c.shooting.orientation = sh.at("orientation").get<std::string>();
    c.shooting.mean_value_ok = sh.at("mean_value_ok").get<bool>();
  }
  return c;
}

RecheckReport recheck_certificate_text(const std::string& text) {
  RecheckReport rep;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    rep.failures.push_back(std::string("parse: ") + e.what());
    return rep;
  }

  ProofCertificate c;
  try {
    c = ProofCertificate::parse(text);
  } catch (const CertificateError& e) {
    rep.failures.push_back(std::string("structure: ") + e.what());
    return rep;
  }

  // integrity digests
  try {
    const json& st = j.at("stages");
    for (const char* name :
         {"fixed_point", "eigen", "unstable_block", "stable_block", "shooting"}) {
      if (!digest_ok(st.at(name)))
        rep.failures.push_back(std::string(name) + ": digest mismatch");
    }
  } catch (const json::exception& e) {
    rep.failures.push_back(std::string("stages: ") + e.what());
    return rep;
  }

  if (c.config_hash != fnv1a64(c.config_canonical))
    rep.failures.push_back("config: hash mismatch");

  // semantic re-derivation, pure comparisons on stored intervals
  const FixedPointStage& fp = c.fixed_point;
  if (fp.verified &&
      !(fp.image_of_operator.subset_of(fp.domain) && fp.enclosure.subset_of(fp.domain) &&
        fp.local_image.subset_of(fp.local_domain) &&
        fp.local_enclosure.subset_of(fp.local_domain)))
    rep.failures.push_back("fixed_point: verified flag not supported by containments");

  {
    bool hyp = c.eigen.lambda1.lo() > 0.0 && c.eigen.lambda23_re.hi() < 0.0 &&
               c.eigen.lambda23_im.lo() > 0.0;
    if (c.eigen.hyperbolic != (c.eigen.verified && hyp))
      rep.failures.push_back("eigen: hyperbolic flag mismatch");
    Interval s = saddle_quantity(c.eigen.lambda1, c.eigen.lambda23_re);
    if (!(s == c.eigen.saddle))
      rep.failures.push_back("eigen: saddle quantity mismatch");
    std::string sign = c.eigen.saddle.hi() < 0.0
                           ? "negative"
                           : (c.eigen.saddle.lo() > 0.0 ? "positive" : "undetermined");
    if (sign != c.eigen.saddle_sign)
      rep.failures.push_back("eigen: saddle sign mismatch");
  }

  auto check_block = [&](const BlockStage& b, const char* name) {
    if (!b.rate.recheck())
      rep.failures.push_back(std::string(name) + ": rate_ok flag mismatch");
    if (!b.cone.recheck())
      rep.failures.push_back(std::string(name) + ": cone ok flag mismatch");
    Interval invL = Interval(1.0) / Interval(b.rate.L);
    double dom = (std::string(name) == "unstable_block") ? b.block.x_radius
                                                         : b.block.y_radius;
    Interval cc = Interval(2.0) * Interval(dom) * (Interval(1.0) + invL);
    if (!(cc == b.rate.contraction_C))
      rep.failures.push_back(std::string(name) + ": contraction constant mismatch");
    double sb = 1.0 / b.cone.M;
    if (sb != b.cone.slope_bound)
      rep.failures.push_back(std::string(name) + ": slope bound mismatch");
  };
  check_block(c.unstable, "unstable_block");
  check_block(c.stable, "stable_block");

  if (!c.shooting.recheck())
    rep.failures.push_back("shooting: existence/uniqueness flags mismatch");
  {
    Interval lhs = c.shooting.h_right - c.shooting.h_left;
    Interval rhs = c.shooting.h_prime * (c.shooting.theta_r - c.shooting.theta_l);
    if (c.shooting.mean_value_ok != rhs.contains(lhs))
      rep.failures.push_back("shooting: mean value flag mismatch");
  }

  if (c.overall != c.derive_overall())
    rep.failures.push_back("overall: verdict is not the stage conjunction");

  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace homoclinic
