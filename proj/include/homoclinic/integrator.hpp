#pragma once

#include <stdexcept>
#include <vector>

#include "homoclinic/vector_field.hpp"

namespace homoclinic {

struct IntegratorConfig {
  int order = 16;                  // Taylor order, >= 2
  double h_init = 0.05;            // largest step
  double h_min = 1e-8;             // below this a failing step aborts
  double tol = 1e-12;              // per-step remainder width target
  long max_steps = 200000;
  bool qr_wrapping = true;         // wrapping control: qr | none
  double blowup_threshold = 100.0; // abort when enclosure width passes this
  int frozen_tail = 0;             // trailing zero-dynamics coords kept out of QR

  void validate() const {
    if (order < 2) throw std::invalid_argument("IntegratorConfig: order >= 2 required");
    if (!(h_min > 0) || !(h_init >= h_min))
      throw std::invalid_argument("IntegratorConfig: need 0 < h_min <= h_init");
    if (!(tol > 0) || !(blowup_threshold > 0) || max_steps <= 0)
      throw std::invalid_argument("IntegratorConfig: positive tolerances required");
  }
};

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enclosure of the trajectory tube over one accepted step.
struct TubeSegment {
  double t_lo, t_hi;
  IntervalVector box;
};

/// Validated image of a box under the time-T flow, with the derivative of
/// the flow map with respect to the initial condition (and, for fields
/// extended by the parameter, the parameter) over the box.
struct FlowEnclosure {
  IntervalVector image;
  IntervalMatrix variational;
  double time = 0.0;
  long steps_taken = 0;
  double max_step_width = 0.0;
  std::vector<TubeSegment> tube;
};

/// Rough enclosure Z of the solution segment: box + [0,h] f(Z) subset Z.
/// Throws IntegrationError if no enclosure is found.
IntervalVector a_priori_enclosure(const VectorField& f, const IntervalVector& box,
                                  double h);

/// Lohner doubleton representation: the set is
///   m + Cq (Cw r0) + Q r,
/// where r0 is the initial box offset (fixed), Cq Cw the QR-factored
/// accumulated one-step derivatives transporting it, and Q r the QR-factored
/// collection of local integration errors. The accumulated flow derivative
/// over the tube is enclosed by Vq Vw.
struct LohnerState {
  VecD m;
  IntervalVector r0;
  MatD Cq;
  IntervalMatrix Cw;
  MatD Q;
  IntervalVector r;
  MatD Vq;
  IntervalMatrix Vw;
  double t = 0.0;

  static LohnerState from_box(const IntervalVector& box);
  IntervalVector hull() const;
  IntervalMatrix variational() const;
};

/// One validated Taylor step of size h. Returns false (state untouched) when
/// the a-priori enclosure fails or the remainder exceeds cfg.tol and h may
/// still shrink; throws only on structural errors.
bool lohner_step(const VectorField& f, LohnerState& st, double h,
                 const IntegratorConfig& cfg, TubeSegment* tube_out,
                 bool enforce_tol = true);

/// Validated flow to exactly time T (T > 0; integrate a reversed field for
/// backward time).
FlowEnclosure flow(const VectorField& f, const IntervalVector& box, double T,
                   const IntegratorConfig& cfg);

/// True only if the final image enclosure is contained in the region.
bool monitor_stays_in(const FlowEnclosure& run, const IntervalVector& region);

}  // namespace homoclinic
