#pragma once

// Proximal shaft geometry: per-segment tendon length changes and the knob
// angle consumed by shaft curvature before any bending-section deflection.
//
// Conventions: lengths in mm, angles in radians. theta is the roll angle of
// a segment's bending plane measured from the anterior axis in the catheter
// body frame (positive right-handed about the heading axis). A segment with
// alpha == 0 is straight and its r is ignored.

#include <cmath>
#include <vector>

#include "tdcm/common.hpp"

namespace tdcm {

struct ShaftSegment {
  double r = 0.0;           // curvature radius [mm]
  double alpha = 0.0;       // curvature angle [rad], >= 0
  double theta = 0.0;       // roll from anterior axis [rad]
  double arc_length = 0.0;  // centerline length [mm]

  static ShaftSegment straight(double length_mm) {
    return ShaftSegment{0.0, 0.0, 0.0, length_mm};
  }
  static ShaftSegment curved(double r_mm, double alpha_rad, double theta_rad) {
    return ShaftSegment{r_mm, alpha_rad, theta_rad, r_mm * alpha_rad};
  }

  void validate() const {
    if (alpha < 0.0) throw domain_error("shaft segment: alpha must be >= 0");
    if (!(arc_length > 0.0))
      throw domain_error("shaft segment: arc_length must be > 0");
    if (alpha > 0.0 && std::abs(arc_length - r * alpha) >= 1e-9)
      throw domain_error("shaft segment: arc_length must equal r*alpha");
  }

  bool operator==(const ShaftSegment&) const = default;
};

struct ShaftShape {
  std::vector<ShaftSegment> segments;
  double beta_catheter = 1.5;  // tendon offset from backbone center [mm]
  double beta_knob = 12.0;     // knob radius [mm]

  void validate() const {
    if (segments.empty()) throw domain_error("shaft shape: needs >= 1 segment");
    if (!(beta_catheter > 0.0))
      throw domain_error("shaft shape: beta_catheter must be > 0");
    if (!(beta_knob > 0.0))
      throw domain_error("shaft shape: beta_knob must be > 0");
    for (const auto& s : segments) s.validate();
  }

  double total_length() const {
    double sum = 0.0;
    for (const auto& s : segments) sum += s.arc_length;
    return sum;
  }

  bool operator==(const ShaftShape&) const = default;
};

// Per-tendon lengths over one segment or the whole shaft [mm].
struct TendonLengths {
  double anterior = 0.0;
  double posterior = 0.0;
  double right = 0.0;
  double left = 0.0;
};

// Pulled-length deltas [mm]; antagonistic pairs are exact negations.
struct TendonDeltas {
  double dA = 0.0;
  double dP = 0.0;
  double dR = 0.0;
  double dL = 0.0;
};

// Knob angle consumed by the shaft shape [rad] per degree of freedom.
struct KnobOffset {
  double phi1 = 0.0;  // anterior-posterior knob
  double phi2 = 0.0;  // right-left knob
};

inline TendonLengths segment_tendon_lengths(const ShaftSegment& seg,
                                            double beta_catheter) {
  seg.validate();
  if (!(beta_catheter > 0.0))
    throw domain_error("segment_tendon_lengths: beta_catheter must be > 0");
  const double pull = seg.alpha * beta_catheter;
  const double c = std::cos(seg.theta);
  const double s = std::sin(seg.theta);
  return TendonLengths{seg.arc_length - pull * c, seg.arc_length + pull * c,
                       seg.arc_length - pull * s, seg.arc_length + pull * s};
}

inline TendonLengths total_tendon_lengths(const ShaftShape& shape) {
  shape.validate();
  TendonLengths total;
  for (const auto& seg : shape.segments) {
    const TendonLengths l = segment_tendon_lengths(seg, shape.beta_catheter);
    total.anterior += l.anterior;
    total.posterior += l.posterior;
    total.right += l.right;
    total.left += l.left;
  }
  return total;
}

inline TendonDeltas total_deltas(const ShaftShape& shape) {
  shape.validate();
  double a = 0.0;
  double r = 0.0;
  for (const auto& seg : shape.segments) {
    a += seg.alpha * shape.beta_catheter * std::cos(seg.theta);
    r += seg.alpha * shape.beta_catheter * std::sin(seg.theta);
  }
  // dP/dL are exact negations so the antagonistic identity holds bitwise.
  return TendonDeltas{a, -a, r, -r};
}

inline KnobOffset knob_offset(const ShaftShape& shape) {
  if (!(shape.beta_knob > 0.0))
    throw domain_error("knob_offset: beta_knob must be > 0");
  const TendonDeltas d = total_deltas(shape);
  return KnobOffset{d.dA / shape.beta_knob, d.dR / shape.beta_knob};
}

}  // namespace tdcm
