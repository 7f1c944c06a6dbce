#pragma once

#include <string>

#include "homoclinic/integrator.hpp"
#include "homoclinic/vector_field.hpp"

namespace homoclinic {

/// Three-valued verification outcome: interval failure never proves the
/// negation, so "undetermined" is distinct from "failed".
enum class Verdict { verified, failed, undetermined };

std::string to_string(Verdict v);

/// The product block D in chart coordinates: the leading u coordinates form
/// the box [-x_radius, x_radius]^u, the trailing s coordinates the Euclidean
/// ball of radius y_radius. For the unstable-manifold stage the x factor is
/// the graph domain; for the stable stage the roles flip. y_radius may be
/// chosen smaller than x_radius: the graph codomain bound only has to
/// contain the manifold, and a thin codomain factor sharpens the Jacobian
/// sup bounds the rate conditions need.
struct SplitBlock {
  double x_radius = 0.0;
  double y_radius = 0.0;
  int u = 1;
  int s = 2;
  Interval theta;  // raw parameter range

  int dim() const { return u + s; }
  /// Bounding box of D (the y ball replaced by its bounding box).
  IntervalVector bounding_box() const;
};

/// Which invariant manifold a certificate talks about, relative to the
/// proof-oriented field. The stable stage runs the same machinery on the
/// time-reversed field, where the trailing (y) coordinates are expanding.
enum class ManifoldSide { unstable, stable };

struct IsolatingWitness {
  Verdict verdict = Verdict::undetermined;
  long boxes_checked = 0;
  int max_depth_used = 0;
  std::string detail;
};

/// Certify that every boundary face of D is a strict exit face in the
/// expanding factor and a strict entry face in the contracting factor, by
/// interval evaluation with adaptive face subdivision.
IsolatingWitness check_isolating_block(const VectorField& f, const SplitBlock& blk,
                                       ManifoldSide side, int max_depth = 24,
                                       long max_boxes = 200000);

struct RateCertificate {
  double L = 0.0;
  Interval mu1, mu2, xi;
  bool isolating = false;  // filled by the pipeline from the witness
  bool rate_ok = false;
  Verdict verdict = Verdict::undetermined;
  Interval contraction_C;  // 2R(1 + 1/L)

  /// Pure re-derivation of rate_ok from the stored intervals.
  bool recheck() const {
    return rate_ok == (mu1.hi() < 0.0 && xi.lo() > 0.0 && mu2.hi() < xi.lo());
  }
};

/// Interval bounds for mu1, mu2, xi over D (uniform 2^k subdivision per
/// axis) and the rate-condition verdict for the Lipschitz candidate L.
RateCertificate check_rate_conditions(const VectorField& f, const SplitBlock& blk,
                                      ManifoldSide side, double L,
                                      int subdivision_k = 0);

struct ConeCertificate {
  double M = 0.0;
  Interval mu_M, xi_M;
  double slope_bound = 0.0;  // = 1/M, in normalized parameter units
  double theta_scale = 1.0;  // d(raw)/d(normalized)
  bool ok = false;
  Verdict verdict = Verdict::undetermined;

  bool recheck() const {
    return ok == (mu_M.hi() < 0.0 && xi_M.lo() > mu_M.hi());
  }
};

/// Cone-condition check on the parameter-extended field (last coordinate is
/// the normalized parameter). On success the certificate asserts
/// ||dw/dtheta~|| <= 1/M over the block.
ConeCertificate check_cone_conditions(const VectorField& f_extended,
                                      const SplitBlock& blk, ManifoldSide side,
                                      double M, double theta_scale,
                                      const Interval& theta_norm,
                                      int subdivision_k = 0);

/// Certified Lipschitz graph enclosure of a local invariant manifold,
/// anchored at the fixed-point family enclosure.
struct ManifoldEnclosure {
  ManifoldSide which = ManifoldSide::unstable;
  IntervalVector fixed_point;  // family enclosure in chart coordinates
  double L = 0.0;
  double slope_bound = 0.0;    // 1/M (normalized parameter units); 0 if no cone cert
  double theta_scale = 1.0;
  SplitBlock block;
  int launch_branch = 1;  // which end of the 1-D unstable graph to shoot from
};

/// Rigorous enclosure of the graph value w(arg, theta) for arg in the domain
/// factor and theta inside the certified parameter range.
IntervalVector eval_graph(const ManifoldEnclosure& m, const IntervalVector& arg,
                          const Interval& theta);

/// The launch point (R, w^u(R, theta)) of the shooting argument; unstable
/// manifolds with a one-dimensional domain only.
IntervalVector exit_point(const ManifoldEnclosure& m, const Interval& theta);

}  // namespace homoclinic
