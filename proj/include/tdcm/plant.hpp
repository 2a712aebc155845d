#pragma once

// Simulated catheter plant. Each knob axis runs the ground-truth hysteresis
// model translated along the input axis by the knob offset of the mounted
// shaft shape, and produces a synthetic motor-current signal whose only
// interior minimum is the dead-zone plateau: flat (baseline) strictly inside
// the shifted dead zone, smoothly and strictly increasing with distance past
// either boundary. Optional per-axis walls add a much steeper current ramp
// past the contact position.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "tdcm/common.hpp"
#include "tdcm/geometry.hpp"
#include "tdcm/hysteresis.hpp"

namespace tdcm {

enum class Axis { ap, lr };

inline const char* axis_name(Axis a) { return a == Axis::ap ? "ap" : "lr"; }

// C1-smooth hinge: ~0 for s << 0, ~s for s >> 0, transition width ~1/k.
inline double softplus(double s, double k) {
  const double t = k * s;
  if (t > 30.0) return s + std::log1p(std::exp(-t)) / k;
  if (t < -30.0) return std::exp(t) / k;
  return std::log1p(std::exp(t)) / k;
}

struct CurrentModel {
  double baseline = 0.1;        // plateau level [A]
  double gain = 50.0;           // ramp curvature [A/rad^2]
  double softplus_k = 573.0;    // hinge sharpness (~0.1 deg transition)
  double wall_gain_factor = 100.0;  // wall ramp curvature, relative to gain

  void validate() const {
    if (!(gain > 0.0)) throw domain_error("current model: gain must be > 0");
    if (!(softplus_k > 0.0))
      throw domain_error("current model: softplus_k must be > 0");
  }

  bool operator==(const CurrentModel&) const = default;
};

struct WallLimits {
  std::optional<double> lo;  // contact position below [rad]
  std::optional<double> hi;  // contact position above [rad]
  bool operator==(const WallLimits&) const = default;
};

struct PlantConfig {
  HysteresisParams true_params_ap;
  HysteresisParams true_params_lr;
  ShaftShape shape;
  CurrentModel current;
  double noise_std = 0.0005;    // additive Gaussian on the current [A]
  double sample_rate_hz = 100.0;
  WallLimits wall_ap;
  WallLimits wall_lr;
  std::uint64_t seed = 1;

  void validate() const {
    true_params_ap.validate();
    true_params_lr.validate();
    shape.validate();
    current.validate();
    if (!(sample_rate_hz > 0.0))
      throw domain_error("plant: sample_rate must be > 0");
    if (noise_std < 0.0) throw domain_error("plant: noise_std must be >= 0");
  }
};

struct PlantOutput {
  double y_true = 0.0;   // tip angle [rad]
  double current = 0.0;  // motor current [A]
  Branch branch = Branch::l3;
};

class Plant {
public:
  explicit Plant(PlantConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
    cfg_.validate();
    const KnobOffset off = knob_offset(cfg_.shape);
    shifted_ap_ = shift_params(cfg_.true_params_ap, off.phi1);
    shifted_lr_ = shift_params(cfg_.true_params_lr, off.phi2);
    state_ap_ = initial_state();
    state_lr_ = initial_state();
  }

  const PlantConfig& config() const { return cfg_; }
  double dt() const { return 1.0 / cfg_.sample_rate_hz; }
  const HysteresisParams& shifted_params(Axis a) const {
    return a == Axis::ap ? shifted_ap_ : shifted_lr_;
  }

  // Advances one axis by one sample tick at the commanded knob angle.
  PlantOutput step(Axis axis, double q_command) {
    auto& st = axis == Axis::ap ? state_ap_ : state_lr_;
    const auto& p = axis == Axis::ap ? shifted_ap_ : shifted_lr_;
    const auto& wall = axis == Axis::ap ? cfg_.wall_ap : cfg_.wall_lr;

    const StepResult r = tdcm::step(st, p, q_command, dt());
    st = r.state;

    double c = cfg_.current.baseline + ramp(q_command, p, cfg_.current);
    if (wall.hi) c += wall_ramp(q_command - *wall.hi, cfg_.current);
    if (wall.lo) c += wall_ramp(*wall.lo - q_command, cfg_.current);
    if (cfg_.noise_std > 0.0) c += cfg_.noise_std * gauss_(rng_);

    return PlantOutput{r.y, c, active_branch(st, p)};
  }

  void reset_motion_state() {
    state_ap_ = initial_state();
    state_lr_ = initial_state();
  }

private:
  static double ramp(double q, const HysteresisParams& p,
                     const CurrentModel& m) {
    // signed distance past the nearer shifted dead-zone boundary
    const double s = std::max(q - p.d_pos, p.d_neg - q);
    const double v = softplus(s, m.softplus_k);
    return m.gain * v * v;
  }

  static double wall_ramp(double s, const CurrentModel& m) {
    const double v = softplus(s, 4.0 * m.softplus_k);
    return m.wall_gain_factor * m.gain * v * v;
  }

  PlantConfig cfg_;
  HysteresisParams shifted_ap_;
  HysteresisParams shifted_lr_;
  HysteresisState state_ap_;
  HysteresisState state_lr_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

struct TraceSample {
  double t = 0.0;
  Axis axis = Axis::ap;
  double q_desired = 0.0;    // [rad]
  double q_commanded = 0.0;  // [rad]
  double y_true = 0.0;       // [rad]
  double current = 0.0;      // [A]
  Branch branch = Branch::l3;
};

using Trace = std::vector<TraceSample>;

}  // namespace tdcm
