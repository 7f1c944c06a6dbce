#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "homoclinic/lorenz84.hpp"
#include "homoclinic/pipeline.hpp"
#include "homoclinic/seed.hpp"

namespace {

using namespace homoclinic;

constexpr int kExitVerified = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitUsage = 3;

int verdict_exit(Verdict v) {
  return v == Verdict::failed ? kExitFailed : kExitUndetermined;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  int subdivision = -1;
  bool export_figures = false;
  bool verbose = false;
};

ProofConfig load(const CommonOpts& o) {
  ProofConfig cfg = load_config(o.config_path);
  if (o.subdivision >= 0) cfg.verification.subdivision = o.subdivision;
  if (!o.out_dir.empty()) cfg.output.dir = o.out_dir;
  return cfg;
}

StageLogger logger(const CommonOpts& o) {
  if (!o.verbose) return {};
  return [](const std::string& s) { std::cerr << "[homoclinic] " << s << "\n"; };
}

int cmd_fixed_point(const CommonOpts& o) {
  ProofConfig cfg = load(o);
  FieldPtr base = std::make_shared<Lorenz84Field>(cfg.model.a, cfg.model.b,
                                                  cfg.model.F, cfg.model.G);
  FieldPtr f = cfg.model.reversed_time ? reverse_time(base) : base;
  auto fn = [&](const IntervalVector& x) { return f->evaluate(x); };
  auto jc = [&](const IntervalVector& x) { return f->state_jacobian(x); };
  VecD x0 = seed::newton([&](const VecD& p) { return f->evaluate_d(p); },
                         [&](const VecD& p) { return f->jacobian_d(p); },
                         cfg.model.chart.q0);
  NewtonResult nr = interval_newton_inflate(fn, jc, x0, 1e-10);
  if (!nr.verified) {
    std::cerr << "fixed-point: not verified: " << nr.reason << "\n";
    return kExitUndetermined;
  }
  std::cout << "fixed point enclosure (all theta in " << cfg.model.G.to_string() << "):\n";
  for (int i = 0; i < nr.enclosure.dim(); ++i)
    std::cout << "  " << nr.enclosure[i].to_string() << "\n";
  return kExitVerified;
}

int run_pipeline_cmd(const CommonOpts& o, bool write_cert, bool figures_only) {
  ProofConfig cfg = load(o);
  PipelineArtifacts art;
  try {
    art = run_pipeline(cfg, logger(o));
  } catch (const StageFailure& e) {
    std::cerr << "pipeline stopped: " << e.what() << "\n";
    if (figures_only) std::cerr << "nothing to export\n";
    return verdict_exit(e.verdict);
  }
  const ProofCertificate& cert = art.certificate;

  if (write_cert) {
    std::filesystem::create_directories(cfg.output.dir);
    std::string path = cfg.output.dir + "/proof.cert";
    std::ofstream out(path);
    out << cert.serialize();
    std::cout << "certificate written to " << path << "\n";
  }
  if (o.export_figures || figures_only) {
    auto files = export_figures(art, cfg.output.dir);
    if (files.empty() && figures_only) {
      std::cerr << "nothing to export\n";
      return kExitUndetermined;
    }
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
  }

  std::cout << "fixed point:  " << (cert.fixed_point.verified ? "verified" : "FAILED") << "\n";
  std::cout << "eigenvalues:  lambda1 in " << cert.eigen.lambda1.to_string()
            << ", pair Re " << cert.eigen.lambda23_re.to_string() << " Im "
            << cert.eigen.lambda23_im.to_string() << "\n";
  std::cout << "saddle:       " << cert.eigen.saddle.to_string() << " ("
            << cert.eigen.saddle_sign << ")\n";
  std::cout << "rates:        unstable " << (cert.unstable.rate.rate_ok ? "ok" : "FAILED")
            << ", stable " << (cert.stable.rate.rate_ok ? "ok" : "FAILED") << "\n";
  std::cout << "cones:        unstable " << (cert.unstable.cone.ok ? "ok" : "FAILED")
            << ", stable " << (cert.stable.cone.ok ? "ok" : "FAILED") << "\n";
  std::cout << "h(theta_l):   " << cert.shooting.h_left.to_string() << "\n";
  std::cout << "h(theta_r):   " << cert.shooting.h_right.to_string() << "\n";
  std::cout << "h'(theta):    " << cert.shooting.h_prime.to_string() << "\n";
  std::cout << "existence:    " << (cert.shooting.existence ? "yes" : "no")
            << ", uniqueness: " << (cert.shooting.uniqueness ? "yes" : "no")
            << " (orientation " << cert.shooting.orientation << ")\n";
  std::cout << "overall:      " << (cert.overall ? "VERIFIED" : "NOT VERIFIED") << " in "
            << cert.wall_time_seconds << " s\n";

  if (cert.overall) return kExitVerified;
  bool left_def = cert.shooting.h_left.lo() > 0.0 || cert.shooting.h_left.hi() < 0.0;
  bool right_def = cert.shooting.h_right.lo() > 0.0 || cert.shooting.h_right.hi() < 0.0;
  if (left_def && right_def && !cert.shooting.existence) return kExitFailed;
  return kExitUndetermined;
}

int cmd_eigen(const CommonOpts& o) {
  ProofConfig cfg = load(o);
  FieldPtr base = std::make_shared<Lorenz84Field>(cfg.model.a, cfg.model.b,
                                                  cfg.model.F, cfg.model.G);
  FieldPtr f = cfg.model.reversed_time ? reverse_time(base) : base;
  auto fn = [&](const IntervalVector& x) { return f->evaluate(x); };
  auto jc = [&](const IntervalVector& x) { return f->state_jacobian(x); };
  VecD x0 = seed::newton([&](const VecD& p) { return f->evaluate_d(p); },
                         [&](const VecD& p) { return f->jacobian_d(p); },
                         cfg.model.chart.q0);
  NewtonResult nr = interval_newton_inflate(fn, jc, x0, 1e-10);
  if (!nr.verified) {
    std::cerr << "eigen: fixed point not verified: " << nr.reason << "\n";
    return kExitUndetermined;
  }
  IntervalMatrix a = f->state_jacobian(nr.enclosure);
  auto pairs = seed::eig_small(a.mid());
  int code = kExitVerified;
  for (const auto& p : pairs) {
    if (std::fabs(p.lambda.imag()) < 1e-9) {
      VecD v(3);
      for (int i = 0; i < 3; ++i) v[static_cast<size_t>(i)] = p.vec[static_cast<size_t>(i)].real();
      EigenEnclosure e = enclose_real_eigenpair(a, p.lambda.real(), v);
      if (e.verified)
        std::cout << "real eigenvalue in " << e.lambda_re.to_string() << "\n";
      else {
        std::cout << "real eigenvalue: not verified (" << e.reason << ")\n";
        code = kExitUndetermined;
      }
    } else if (p.lambda.imag() > 0) {
      EigenEnclosure e = enclose_complex_eigenpair(a, p.lambda, p.vec);
      if (e.verified)
        std::cout << "complex pair Re in " << e.lambda_re.to_string() << ", Im in "
                  << e.lambda_im.to_string() << " (and conjugate)\n";
      else {
        std::cout << "complex pair: not verified (" << e.reason << ")\n";
        code = kExitUndetermined;
      }
    }
  }
  return code;
}

int cmd_manifold(const CommonOpts& o) {
  ProofConfig cfg = load(o);
  // run the pipeline through the cone stage by truncating at shooting: use
  // the full pipeline but tolerate only shooting-stage failures
  try {
    PipelineArtifacts art = run_pipeline(cfg, logger(o));
    const ProofCertificate& c = art.certificate;
    std::cout << "unstable: isolating " << to_string(c.unstable.isolating) << ", rate "
              << (c.unstable.rate.rate_ok ? "ok" : "failed") << ", cone "
              << (c.unstable.cone.ok ? "ok" : "failed") << "\n";
    std::cout << "  mu1 " << c.unstable.rate.mu1.to_string() << " mu2 "
              << c.unstable.rate.mu2.to_string() << " xi " << c.unstable.rate.xi.to_string()
              << "\n";
    std::cout << "stable:   isolating " << to_string(c.stable.isolating) << ", rate "
              << (c.stable.rate.rate_ok ? "ok" : "failed") << ", cone "
              << (c.stable.cone.ok ? "ok" : "failed") << "\n";
    std::cout << "  mu1 " << c.stable.rate.mu1.to_string() << " mu2 "
              << c.stable.rate.mu2.to_string() << " xi " << c.stable.rate.xi.to_string()
              << "\n";
    return kExitVerified;
  } catch (const StageFailure& e) {
    if (e.stage == "shooting") {
      std::cerr << "manifold certificates ok; shooting not attempted here\n";
      return kExitVerified;
    }
    std::cerr << e.what() << "\n";
    return verdict_exit(e.verdict);
  }
}

int cmd_recheck(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return kExitUsage;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  RecheckReport rep = recheck_certificate_text(ss.str());
  if (rep.ok) {
    std::cout << "recheck: all verdicts re-derived, digests match\n";
    return kExitVerified;
  }
  for (const auto& f : rep.failures) std::cout << "recheck FAILED: " << f << "\n";
  return kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"validated homoclinic-orbit prover"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string cert_path;

  auto add_common = [&](CLI::App* sub, bool needs_config = true) {
    if (needs_config)
      sub->add_option("--config", o.config_path, "proof configuration file")->required();
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--subdivision", o.subdivision, "rate/cone subdivision exponent k");
    sub->add_flag("--export-figures", o.export_figures, "write figure CSV data");
    sub->add_flag("--verbose", o.verbose, "stage-by-stage progress");
  };

  CLI::App* fp = app.add_subcommand("fixed-point", "verify the fixed-point enclosure");
  add_common(fp);
  CLI::App* ei = app.add_subcommand("eigen", "verify eigenvalue enclosures");
  add_common(ei);
  CLI::App* mf = app.add_subcommand("manifold", "certify manifold enclosures");
  add_common(mf);
  CLI::App* pv = app.add_subcommand("prove", "run the full proof pipeline");
  add_common(pv);
  CLI::App* ex = app.add_subcommand("export", "run the pipeline and export figure data");
  add_common(ex);
  CLI::App* rc = app.add_subcommand("recheck", "re-derive verdicts from a certificate");
  rc->add_option("certificate", cert_path, "path to proof.cert")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (fp->parsed()) return cmd_fixed_point(o);
    if (ei->parsed()) return cmd_eigen(o);
    if (mf->parsed()) return cmd_manifold(o);
    if (pv->parsed()) return run_pipeline_cmd(o, /*write_cert=*/true, /*figures_only=*/false);
    if (ex->parsed()) return run_pipeline_cmd(o, /*write_cert=*/false, /*figures_only=*/true);
    if (rc->parsed()) return cmd_recheck(cert_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUndetermined;
  }
  return kExitUsage;
}
