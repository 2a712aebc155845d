#pragma once

// Piecewise-linear dead-zone + backlash hysteresis model.
//
// The model is eight linear branches over knob angle x (input) producing tip
// angle y (output). Four engaged lines share slope omega:
//
//   L4: y = omega*(x - d_pos)     + h_pos   ascending, anchored at d_pos
//   L2: y = omega*(x - d_hat_pos) + h_pos   ascending, anchored at d_hat_pos
//   L6: y = omega*(x - d_hat_neg) + h_neg   descending, anchored at d_hat_neg
//   L8: y = omega*(x - d_neg)     + h_neg   descending, anchored at d_neg
//
// L3/L7 are flats at the dead-zone heights h_pos/h_neg, and L1/L5 pin the
// loop ends at the reference inputs x_ref_neg/x_ref_pos. The derived anchors
//
//   d_hat_pos = (h_pos - h_neg)/omega + d_neg + b_neg
//   d_hat_neg = (h_neg - h_pos)/omega + d_pos - b_pos
//
// make the lines pair up: a reversal from L4 stays flat for exactly b_pos of
// input travel before landing on L6, and a reversal from L8 stays flat for
// exactly b_neg before landing on L2 (and vice versa). The state machine
// below tracks which anchor the next engagement uses per direction; every
// transition happens at an equal-height point, so the output is continuous
// and omega-Lipschitz in x for any admissible parameter set. Velocity enters
// only through the sign of the input increment, which makes the response
// rate-independent. Zero increment holds the current branch.

#include <cmath>
#include <limits>

#include "tdcm/common.hpp"

namespace tdcm {

struct HysteresisParams {
  double d_pos = 0.0;      // dead-zone boundaries [rad], d_neg < d_pos
  double d_neg = 0.0;
  double b_pos = 0.0;      // backlash widths [rad], >= 0
  double b_neg = 0.0;
  double omega = 1.45;     // engaged-branch slope
  double h_pos = 0.0;      // dead-zone heights [rad], h_neg <= h_pos
  double h_neg = 0.0;
  double d_hat_pos = 0.0;  // opposite-side anchors, derived
  double d_hat_neg = 0.0;
  double x_ref_pos = 0.0;  // reference points pinning the loop ends
  double x_ref_neg = 0.0;
  double y_ref_pos = 0.0;
  double y_ref_neg = 0.0;

  void validate() const {
    if (!(omega > 0.0)) throw domain_error("hysteresis: omega must be > 0");
    if (!(d_neg < d_pos)) throw domain_error("hysteresis: d_neg must be < d_pos");
    if (b_pos < 0.0 || b_neg < 0.0)
      throw domain_error("hysteresis: backlash must be >= 0");
    if (!(h_neg <= h_pos)) throw domain_error("hysteresis: h_neg must be <= h_pos");
  }

  bool operator==(const HysteresisParams&) const = default;
};

inline double hat_pos_anchor(double h_pos, double h_neg, double omega,
                             double d_neg, double b_neg) {
  return (h_pos - h_neg) / omega + d_neg + b_neg;
}
inline double hat_neg_anchor(double h_pos, double h_neg, double omega,
                             double d_pos, double b_pos) {
  return (h_neg - h_pos) / omega + d_pos - b_pos;
}

inline HysteresisParams derive_params(double d_pos, double d_neg, double b_pos,
                                      double b_neg, double omega, double h_pos,
                                      double h_neg,
                                      double x_ref_pos = deg2rad(40.0),
                                      double x_ref_neg = deg2rad(-40.0)) {
  HysteresisParams p;
  p.d_pos = d_pos;
  p.d_neg = d_neg;
  p.b_pos = b_pos;
  p.b_neg = b_neg;
  p.omega = omega;
  p.h_pos = h_pos;
  p.h_neg = h_neg;
  p.d_hat_pos = hat_pos_anchor(h_pos, h_neg, omega, d_neg, b_neg);
  p.d_hat_neg = hat_neg_anchor(h_pos, h_neg, omega, d_pos, b_pos);
  p.x_ref_pos = x_ref_pos;
  p.x_ref_neg = x_ref_neg;
  p.y_ref_pos = omega * (x_ref_pos - d_pos) + h_pos;
  p.y_ref_neg = omega * (x_ref_neg - d_neg) + h_neg;
  p.validate();
  return p;
}

// Translates the model along the input axis; output-axis quantities are
// untouched. The hat anchors are re-derived from the shifted primitives so
// the anchor identities stay exact in floating point.
inline HysteresisParams shift_params(const HysteresisParams& p, double offset) {
  HysteresisParams s = p;
  s.d_pos = p.d_pos + offset;
  s.d_neg = p.d_neg + offset;
  s.x_ref_pos = p.x_ref_pos + offset;
  s.x_ref_neg = p.x_ref_neg + offset;
  s.d_hat_pos = hat_pos_anchor(s.h_pos, s.h_neg, s.omega, s.d_neg, s.b_neg);
  s.d_hat_neg = hat_neg_anchor(s.h_pos, s.h_neg, s.omega, s.d_pos, s.b_pos);
  return s;
}

enum class Branch { l1, l2, l3, l4, l5, l6, l7, l8 };

inline const char* branch_name(Branch b) {
  switch (b) {
    case Branch::l1: return "L1";
    case Branch::l2: return "L2";
    case Branch::l3: return "L3";
    case Branch::l4: return "L4";
    case Branch::l5: return "L5";
    case Branch::l6: return "L6";
    case Branch::l7: return "L7";
    case Branch::l8: return "L8";
  }
  return "?";
}

struct HysteresisState {
  double x_prev = 0.0;
  double y_prev = 0.0;
  int v_prev = 0;         // sign of the previous input increment
  bool engaged = false;   // on a sloped line (vs holding flat)
  bool ascending = false; // direction of the engaged line
  bool asc_hat = false;   // next/current ascending anchor is d_hat_pos
  bool desc_hat = false;  // next/current descending anchor is d_hat_neg
  double hold_y = 0.0;    // output held while disengaged
};

// Power-on state: slack in the dead zone, output held at y0, first
// engagements at the measured boundaries d_pos / d_neg.
inline HysteresisState initial_state(double y0 = 0.0, double x0 = 0.0) {
  HysteresisState s;
  s.x_prev = x0;
  s.y_prev = y0;
  s.hold_y = y0;
  return s;
}

// Branch label for the current state (introspection / trace export only).
inline Branch active_branch(const HysteresisState& s,
                            const HysteresisParams& p) {
  if (s.engaged) {
    if (s.ascending) {
      if (!s.asc_hat) return s.x_prev >= p.x_ref_pos ? Branch::l5 : Branch::l4;
      return Branch::l2;
    }
    if (!s.desc_hat) return s.x_prev <= p.x_ref_neg ? Branch::l1 : Branch::l8;
    return Branch::l6;
  }
  if (s.hold_y >= p.y_ref_pos) return Branch::l5;
  if (s.hold_y <= p.y_ref_neg) return Branch::l1;
  return s.hold_y >= 0.5 * (p.h_pos + p.h_neg) ? Branch::l3 : Branch::l7;
}

struct StepResult {
  double y = 0.0;
  HysteresisState state;
};

// Advances the model to input x_t. Large increments are processed piecewise
// along the branch sequence, so one call lands exactly where a fine-grained
// monotone traversal of the same interval would.
inline StepResult step(const HysteresisState& state,
                       const HysteresisParams& params, double x_t,
                       double dt = 1.0) {
  params.validate();
  if (!(dt > 0.0)) throw domain_error("hysteresis step: dt must be > 0");

  HysteresisState s = state;
  const double dx = x_t - s.x_prev;
  if (dx == 0.0) {
    s.v_prev = 0;
    return StepResult{s.y_prev, s};
  }

  double x = s.x_prev;
  double y = s.y_prev;

  if (dx > 0.0) {
    if (s.engaged && !s.ascending) {  // reversal off a descending line
      s.engaged = false;
      s.hold_y = y;
    }
    while (x < x_t) {
      if (!s.engaged) {
        const double anchor = s.asc_hat ? params.d_hat_pos : params.d_pos;
        const double x_e = (s.hold_y - params.h_pos) / params.omega + anchor;
        if (x_e < x || x_t < x_e) {
          // line not yet caught up (or never will be): stay flat
          y = s.hold_y;
          x = x_t;
          break;
        }
        x = x_e;
        y = s.hold_y;
        s.engaged = true;
        s.ascending = true;
        // engaging fixes the descending partner: L4 pairs with L6 (b_pos),
        // L2 pairs with L8 (b_neg)
        s.desc_hat = !s.asc_hat;
      } else if (s.asc_hat) {
        // L2 tops out at h_pos, then the dead-zone flat runs to d_pos.
        // Entered above the cap (reversal high on the loop) it just extends.
        if (x > params.d_hat_pos || x_t <= params.d_hat_pos) {
          y = params.omega * (x_t - params.d_hat_pos) + params.h_pos;
          x = x_t;
          break;
        }
        x = params.d_hat_pos;
        y = params.h_pos;
        s.engaged = false;
        s.hold_y = params.h_pos;
        s.asc_hat = false;
      } else {
        y = params.omega * (x_t - params.d_pos) + params.h_pos;
        x = x_t;
        break;
      }
    }
    s.v_prev = 1;
  } else {
    if (s.engaged && s.ascending) {
      s.engaged = false;
      s.hold_y = y;
    }
    while (x > x_t) {
      if (!s.engaged) {
        const double anchor = s.desc_hat ? params.d_hat_neg : params.d_neg;
        const double x_e = (s.hold_y - params.h_neg) / params.omega + anchor;
        if (x_e > x || x_t > x_e) {
          y = s.hold_y;
          x = x_t;
          break;
        }
        x = x_e;
        y = s.hold_y;
        s.engaged = true;
        s.ascending = false;
        s.asc_hat = !s.desc_hat;
      } else if (s.desc_hat) {
        // L6 bottoms out at h_neg, then the dead-zone flat runs to d_neg
        if (x < params.d_hat_neg || x_t >= params.d_hat_neg) {
          y = params.omega * (x_t - params.d_hat_neg) + params.h_neg;
          x = x_t;
          break;
        }
        x = params.d_hat_neg;
        y = params.h_neg;
        s.engaged = false;
        s.hold_y = params.h_neg;
        s.desc_hat = false;
      } else {
        y = params.omega * (x_t - params.d_neg) + params.h_neg;
        x = x_t;
        break;
      }
    }
    s.v_prev = -1;
  }

  s.x_prev = x_t;
  s.y_prev = y;
  return StepResult{y, s};
}

struct InverseResult {
  double x_command = 0.0;
  bool saturated = false;
};

// Feed-forward inverse: the knob angle that makes the model output
// y_desired when moved in the given direction from the given state. Uses
// the engagement anchor the state machine would use, so on a matched model
// step(inverse(y)) returns y exactly once engaged. Commands are clamped to
// +/- x_limit and flagged when clamping changes them.
inline InverseResult inverse(const HysteresisParams& params,
                             const HysteresisState& state, double y_desired,
                             int direction,
                             double x_limit =
                                 std::numeric_limits<double>::infinity()) {
  params.validate();
  if (!(x_limit > 0.0)) throw domain_error("hysteresis inverse: x_limit must be > 0");
  double x;
  if (direction > 0) {
    const double anchor = state.asc_hat ? params.d_hat_pos : params.d_pos;
    x = (y_desired - params.h_pos) / params.omega + anchor;
  } else if (direction < 0) {
    const double anchor = state.desc_hat ? params.d_hat_neg : params.d_neg;
    x = (y_desired - params.h_neg) / params.omega + anchor;
  } else {
    return InverseResult{state.x_prev, false};
  }
  if (x > x_limit) return InverseResult{x_limit, true};
  if (x < -x_limit) return InverseResult{-x_limit, true};
  return InverseResult{x, false};
}

}  // namespace tdcm
