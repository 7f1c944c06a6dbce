#include "homoclinic/pipeline.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "homoclinic/lorenz84.hpp"
#include "homoclinic/seed.hpp"

namespace homoclinic {

namespace {

void say(const StageLogger& log, const std::string& msg) {
  if (log) log(msg);
}

NewtonResult fixed_point_newton(const VectorField& f, const VecD& guess, double r0) {
  auto fn = [&](const IntervalVector& x) { return f.evaluate(x); };
  auto jc = [&](const IntervalVector& x) { return f.state_jacobian(x); };
  VecD x0 = seed::newton([&](const VecD& p) { return f.evaluate_d(p); },
                         [&](const VecD& p) { return f.jacobian_d(p); }, guess);
  return interval_newton_inflate(fn, jc, x0, r0);
}

}  // namespace

int thread_budget() {
  if (const char* env = std::getenv("HOMOCLINIC_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 3u));
}

PipelineArtifacts run_pipeline(const ProofConfig& cfg, const StageLogger& log) {
  auto t_start = std::chrono::steady_clock::now();
  PipelineArtifacts art;
  ProofCertificate& cert = art.certificate;
  cert.tool_version = kToolVersion;
  cert.config_hash = cfg.config_hash;
  cert.config_canonical = cfg.canonical;

  FieldPtr base = std::make_shared<Lorenz84Field>(cfg.model.a, cfg.model.b,
                                                  cfg.model.F, cfg.model.G);
  FieldPtr proof_field = cfg.model.reversed_time ? reverse_time(base) : base;
  FieldPtr local = to_local_field(proof_field, cfg.model.chart);
  art.local_field = local;

  // Step 1a: fixed-point family enclosure, world coordinates.
  {
    NewtonResult world = fixed_point_newton(*proof_field, cfg.model.chart.q0, 1e-10);
    if (!world.verified)
      throw StageFailure("fixed_point", "world-coordinates Newton failed: " + world.reason);
    cert.fixed_point.verified = true;
    cert.fixed_point.enclosure = world.enclosure;
    cert.fixed_point.image_of_operator = world.image_of_operator;
    // reconstruct the domain used: the hull was the inflate result; store the
    // image's hull with the enclosure's box (domain = enclosure's superset)
    cert.fixed_point.domain = IntervalVector::hull(world.enclosure, world.image_of_operator);
    NewtonResult loc = fixed_point_newton(*local, VecD{0.0, 0.0, 0.0}, 1e-10);
    if (!loc.verified)
      throw StageFailure("fixed_point", "chart-coordinates Newton failed: " + loc.reason);
    cert.fixed_point.local_enclosure = loc.enclosure;
    cert.fixed_point.local_image = loc.image_of_operator;
    cert.fixed_point.local_domain =
        IntervalVector::hull(loc.enclosure, loc.image_of_operator);
    say(log, "fixed_point: verified, world box " + world.enclosure[0].to_string() + " x " +
                 world.enclosure[1].to_string() + " x " + world.enclosure[2].to_string());
  }

  // Step 1b: eigenvalue enclosures and hyperbolicity.
  {
    IntervalMatrix a = proof_field->state_jacobian(cert.fixed_point.enclosure);
    auto pairs = seed::eig_small(a.mid());
    const seed::EigPair* real_pair = nullptr;
    const seed::EigPair* cplx_pair = nullptr;
    for (const auto& p : pairs) {
      if (std::fabs(p.lambda.imag()) < 1e-9) {
        if (!real_pair) real_pair = &p;
      } else if (p.lambda.imag() > 0) {
        cplx_pair = &p;
      }
    }
    if (!real_pair || !cplx_pair)
      throw StageFailure("eigen", "expected one real eigenvalue and one complex pair");
    VecD v1(3);
    for (int i = 0; i < 3; ++i) v1[static_cast<size_t>(i)] = real_pair->vec[static_cast<size_t>(i)].real();
    EigenEnclosure e1 = enclose_real_eigenpair(a, real_pair->lambda.real(), v1);
    if (!e1.verified) throw StageFailure("eigen", "real eigenpair: " + e1.reason);
    EigenEnclosure e2 = enclose_complex_eigenpair(a, cplx_pair->lambda, cplx_pair->vec);
    if (!e2.verified) throw StageFailure("eigen", "complex eigenpair: " + e2.reason);
    cert.eigen.verified = true;
    cert.eigen.lambda1 = e1.lambda_re;
    cert.eigen.lambda23_re = e2.lambda_re;
    cert.eigen.lambda23_im = e2.lambda_im;
    cert.eigen.vec1 = e1.vector_re;
    cert.eigen.vec2_re = e2.vector_re;
    cert.eigen.vec2_im = e2.vector_im;
    cert.eigen.hyperbolic = e1.lambda_re.lo() > 0.0 && e2.lambda_re.hi() < 0.0 &&
                            e2.lambda_im.lo() > 0.0;
    cert.eigen.saddle = saddle_quantity(e1.lambda_re, e2.lambda_re);
    SignVerdict sv = sign_of(cert.eigen.saddle);
    cert.eigen.saddle_sign = sv == SignVerdict::negative
                                 ? "negative"
                                 : (sv == SignVerdict::positive ? "positive" : "undetermined");
    if (!cert.eigen.hyperbolic)
      throw StageFailure("eigen", "hyperbolicity not verified");
    say(log, "eigen: lambda1 in " + cert.eigen.lambda1.to_string() + ", Re lambda2 in " +
                 cert.eigen.lambda23_re.to_string() + ", Im lambda2 in " +
                 cert.eigen.lambda23_im.to_string());
    say(log, "eigen: saddle quantity in " + cert.eigen.saddle.to_string() + " (" +
                 cert.eigen.saddle_sign + ")");
  }

  const int k = cfg.verification.subdivision;

  // Step 2: unstable-manifold certification.
  {
    BlockStage& st = cert.unstable;
    st.block = SplitBlock{cfg.proof.R, cfg.proof.unstable_codomain_radius, 1, 2,
                          cfg.model.G};
    IsolatingWitness iso =
        check_isolating_block(*local, st.block, ManifoldSide::unstable,
                              cfg.verification.max_face_depth,
                              cfg.verification.face_max_boxes);
    st.isolating = iso.verdict;
    if (iso.verdict != Verdict::verified)
      throw StageFailure("unstable_isolating", to_string(iso.verdict) + ": " + iso.detail,
                         iso.verdict);
    st.rate = check_rate_conditions(*local, st.block, ManifoldSide::unstable,
                                    cfg.proof.L_u, k);
    st.rate.isolating = true;
    if (!st.rate.rate_ok)
      throw StageFailure("unstable_rate",
                         "mu1=" + st.rate.mu1.to_string() + " mu2=" + st.rate.mu2.to_string() +
                             " xi=" + st.rate.xi.to_string());
    say(log, "unstable rate: mu1 " + st.rate.mu1.to_string() + ", mu2 " +
                 st.rate.mu2.to_string() + ", xi " + st.rate.xi.to_string());
  }

  // Step 3: stable-manifold certification on the reversed field.
  FieldPtr local_rev = reverse_time(local);
  {
    BlockStage& st = cert.stable;
    st.block = SplitBlock{cfg.proof.stable_codomain_radius, cfg.proof.R, 1, 2,
                          cfg.model.G};
    IsolatingWitness iso =
        check_isolating_block(*local_rev, st.block, ManifoldSide::stable,
                              cfg.verification.max_face_depth,
                              cfg.verification.face_max_boxes);
    st.isolating = iso.verdict;
    if (iso.verdict != Verdict::verified)
      throw StageFailure("stable_isolating", to_string(iso.verdict) + ": " + iso.detail,
                         iso.verdict);
    st.rate = check_rate_conditions(*local_rev, st.block, ManifoldSide::stable,
                                    cfg.proof.L_s, k);
    st.rate.isolating = true;
    if (!st.rate.rate_ok)
      throw StageFailure("stable_rate",
                         "mu1=" + st.rate.mu1.to_string() + " mu2=" + st.rate.mu2.to_string() +
                             " xi=" + st.rate.xi.to_string());
    say(log, "stable rate: mu1 " + st.rate.mu1.to_string() + ", mu2 " +
                 st.rate.mu2.to_string() + ", xi " + st.rate.xi.to_string());
  }

  // Step 4: cone certification, both directions.
  {
    FieldPtr ext_u = extend_with_parameter(local, cfg.proof.theta_scale_unstable);
    Interval tn_u = (cfg.model.G - Interval(cfg.model.G.mid())) /
                    Interval(cfg.proof.theta_scale_unstable);
    cert.unstable.cone =
        check_cone_conditions(*ext_u, cert.unstable.block, ManifoldSide::unstable,
                              cfg.proof.M_u, cfg.proof.theta_scale_unstable, tn_u, k);
    if (!cert.unstable.cone.ok)
      throw StageFailure("unstable_cone", "mu(M)=" + cert.unstable.cone.mu_M.to_string() +
                                              " xi(M)=" + cert.unstable.cone.xi_M.to_string());
    FieldPtr ext_s = extend_with_parameter(local_rev, cfg.proof.theta_scale_stable);
    Interval tn_s = (cfg.model.G - Interval(cfg.model.G.mid())) /
                    Interval(cfg.proof.theta_scale_stable);
    cert.stable.cone =
        check_cone_conditions(*ext_s, cert.stable.block, ManifoldSide::stable,
                              cfg.proof.M_s, cfg.proof.theta_scale_stable, tn_s, k);
    if (!cert.stable.cone.ok)
      throw StageFailure("stable_cone", "mu(M)=" + cert.stable.cone.mu_M.to_string() +
                                            " xi(M)=" + cert.stable.cone.xi_M.to_string());
    say(log, "cones: unstable mu(M) " + cert.unstable.cone.mu_M.to_string() +
                 ", stable mu(M) " + cert.stable.cone.mu_M.to_string());
  }

  // Step 5: shooting.
  {
    art.unstable = ManifoldEnclosure{ManifoldSide::unstable,
                                     cert.fixed_point.local_enclosure,
                                     cfg.proof.L_u,
                                     cert.unstable.cone.slope_bound,
                                     cfg.proof.theta_scale_unstable,
                                     cert.unstable.block,
                                     cfg.proof.launch_branch};
    art.stable = ManifoldEnclosure{ManifoldSide::stable,
                                   cert.fixed_point.local_enclosure,
                                   cfg.proof.L_s,
                                   cert.stable.cone.slope_bound,
                                   cfg.proof.theta_scale_stable,
                                   cert.stable.block,
                                   1};
    ShootingSetup setup{local, art.unstable, art.stable, cfg.proof.T, cfg.integrator,
                        thread_budget()};
    ShootingOutputs so;
    try {
      so = run_shooting(setup);
    } catch (const IntegrationError& e) {
      throw StageFailure("shooting", e.what());
    } catch (const std::domain_error& e) {
      throw StageFailure("shooting", e.what());
    }
    cert.shooting = so.result;
    art.run_left = std::move(so.left);
    art.run_right = std::move(so.right);
    art.run_family = std::move(so.family);
    say(log, "shooting: h(theta_l) in " + cert.shooting.h_left.to_string());
    say(log, "shooting: h(theta_r) in " + cert.shooting.h_right.to_string());
    say(log, "shooting: h'(theta) in " + cert.shooting.h_prime.to_string() +
                 ", orientation " + cert.shooting.orientation);
  }

  cert.overall = cert.derive_overall();
  auto t_end = std::chrono::steady_clock::now();
  cert.wall_time_seconds = std::chrono::duration<double>(t_end - t_start).count();
  say(log, std::string("overall verdict: ") + (cert.overall ? "verified" : "NOT verified"));
  return art;
}

namespace {

std::string iv_csv(const Interval& v) {
  std::array<char, 64> b1{}, b2{};
  auto r1 = std::to_chars(b1.data(), b1.data() + b1.size(), v.lo());
  auto r2 = std::to_chars(b2.data(), b2.data() + b2.size(), v.hi());
  return std::string(b1.data(), r1.ptr) + "," + std::string(b2.data(), r2.ptr);
}

void write_tube(const std::string& path, const FlowEnclosure& run) {
  std::ofstream out(path);
  out << "t_lo,t_hi";
  int n = run.tube.empty() ? 0 : run.tube.front().box.dim();
  for (int i = 0; i < n; ++i) out << ",c" << i << "_lo,c" << i << "_hi";
  out << "\n";
  for (const auto& seg : run.tube) {
    out << seg.t_lo << "," << seg.t_hi;
    for (int i = 0; i < n; ++i) out << "," << iv_csv(seg.box[i]);
    out << "\n";
  }
}

}  // namespace

std::vector<std::string> export_figures(const PipelineArtifacts& art,
                                        const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  if (!art.run_left || !art.run_right || !art.run_family) return written;
  fs::create_directories(out_dir);

  const ProofCertificate& cert = art.certificate;
  const Interval theta = cert.shooting.theta_l;
  const Interval theta_r = cert.shooting.theta_r;

  // Unstable manifold bounds: x vs y1 enclosure, at both parameter endpoints.
  {
    std::string path = out_dir + "/wu_bounds.csv";
    std::ofstream out(path);
    out << "x,y1_lo_Gl,y1_hi_Gl,y1_lo_Gr,y1_hi_Gr\n";
    const int samples = 200;
    double R = art.unstable.block.x_radius;
    for (int i = 0; i <= samples; ++i) {
      double x = -R + 2.0 * R * i / samples;
      IntervalVector arg{Interval(x)};
      IntervalVector wl = eval_graph(art.unstable, arg, theta);
      IntervalVector wr = eval_graph(art.unstable, arg, theta_r);
      out << x << "," << iv_csv(wl[0]) << "," << iv_csv(wr[0]) << "\n";
    }
    written.push_back(path);
  }
  // Stable manifold bounds: y1 vs x enclosure over the y-ball section.
  {
    std::string path = out_dir + "/ws_bounds.csv";
    std::ofstream out(path);
    out << "y1,x_lo,x_hi\n";
    const int samples = 200;
    double R = art.stable.block.y_radius;
    for (int i = 0; i <= samples; ++i) {
      double y1 = -R + 2.0 * R * i / samples;
      double cap = sqrt_up(std::max(0.0, mul_down(R, R) - mul_up(y1, y1)));
      IntervalVector arg{Interval(y1), Interval::ball(cap)};
      IntervalVector w = eval_graph(art.stable, arg, Interval(theta.lo(), theta_r.hi()));
      out << y1 << "," << iv_csv(w[0]) << "\n";
    }
    written.push_back(path);
  }
  // The two flow-image points with box sizes.
  {
    std::string path = out_dir + "/phi_T_points.csv";
    std::ofstream out(path);
    out << "which,x_lo,x_hi,y1_lo,y1_hi,y2_lo,y2_hi,max_width\n";
    auto row = [&](const char* name, const IntervalVector& p) {
      out << name;
      for (int i = 0; i < p.dim(); ++i) out << "," << iv_csv(p[i]);
      out << "," << p.max_width() << "\n";
    };
    row("theta_l", art.run_left->landing);
    row("theta_r", art.run_right->landing);
    written.push_back(path);
  }
  // Trajectory tubes.
  {
    std::string p1 = out_dir + "/tube_theta_l.csv";
    write_tube(p1, art.run_left->run);
    written.push_back(p1);
    std::string p2 = out_dir + "/tube_theta_r.csv";
    write_tube(p2, art.run_right->run);
    written.push_back(p2);
    std::string p3 = out_dir + "/tube_family.csv";
    write_tube(p3, art.run_family->run);
    written.push_back(p3);
  }
  return written;
}

}  // namespace homoclinic
