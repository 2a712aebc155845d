#pragma once

// Signal conditioning: causal low-pass Butterworth (bilinear transform of
// the analog prototype, biquad cascade) and a windowed finite-difference
// gradient estimator dC/dq.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "tdcm/common.hpp"

namespace tdcm {

struct FilterSpec {
  int order = 3;
  double cutoff_hz = 20.0;
  double sample_rate_hz = 100.0;

  void validate() const {
    if (order < 1) throw config_error("filter: order must be >= 1");
    if (!(sample_rate_hz > 0.0))
      throw config_error("filter: sample rate must be > 0");
    if (!(cutoff_hz > 0.0) || cutoff_hz >= 0.5 * sample_rate_hz)
      throw config_error("filter: cutoff must lie in (0, Nyquist)");
  }

  bool operator==(const FilterSpec&) const = default;
};

// Direct form II transposed second-order section. First-order sections use
// b2 = a2 = 0.
struct Biquad {
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

class ButterworthFilter {
public:
  explicit ButterworthFilter(FilterSpec spec) : spec_(spec) {
    spec.validate();
    const int n = spec.order;
    const double w = std::tan(kPi * spec.cutoff_hz / spec.sample_rate_hz);
    // conjugate pole pairs of the analog prototype, prewarped
    for (int k = 0; k < n / 2; ++k) {
      const double a = 2.0 * w * std::sin(kPi * (2.0 * k + 1.0) / (2.0 * n));
      const double b = w * w;
      const double n0 = 1.0 + a + b;
      Biquad s;
      s.b0 = b / n0;
      s.b1 = 2.0 * b / n0;
      s.b2 = b / n0;
      s.a1 = (2.0 * b - 2.0) / n0;
      s.a2 = (1.0 - a + b) / n0;
      sections_.push_back(s);
    }
    if (n % 2 == 1) {  // real pole
      Biquad s;
      s.b0 = w / (1.0 + w);
      s.b1 = s.b0;
      s.a1 = (w - 1.0) / (1.0 + w);
      sections_.push_back(s);
    }
    for (const auto& s : sections_) {
      if (!(std::abs(s.a2) < 1.0 && std::abs(s.a1) < 1.0 + s.a2))
        throw config_error("filter: unstable recursion pole");
    }
    state_.assign(sections_.size(), {0.0, 0.0});
  }

  const std::vector<Biquad>& sections() const { return sections_; }
  const FilterSpec& spec() const { return spec_; }

  // Warm start: the first sample is treated as the signal's past, so a
  // constant input passes through unchanged from the first call.
  double operator()(double x) {
    if (!warm_) {
      for (std::size_t i = 0; i < sections_.size(); ++i) {
        const Biquad& s = sections_[i];
        state_[i][0] = (1.0 - s.b0) * x;
        state_[i][1] = (1.0 - s.b0 - s.b1 + s.a1) * x;
      }
      warm_ = true;
    }
    double v = x;
    for (std::size_t i = 0; i < sections_.size(); ++i) {
      const Biquad& s = sections_[i];
      const double out = s.b0 * v + state_[i][0];
      state_[i][0] = s.b1 * v - s.a1 * out + state_[i][1];
      state_[i][1] = s.b2 * v - s.a2 * out;
      v = out;
    }
    return v;
  }

  void reset() {
    warm_ = false;
    state_.assign(sections_.size(), {0.0, 0.0});
  }

private:
  FilterSpec spec_;
  std::vector<Biquad> sections_;
  std::vector<std::array<double, 2>> state_;
  bool warm_ = false;
};

inline std::vector<double> butterworth_filter(const FilterSpec& spec,
                                              std::span<const double> signal) {
  if (signal.empty()) throw domain_error("filter: signal must be non-empty");
  ButterworthFilter f(spec);
  std::vector<double> out;
  out.reserve(signal.size());
  for (double x : signal) out.push_back(f(x));
  return out;
}

struct GradientSeries {
  std::vector<double> value;     // dC/dq per sample
  std::vector<std::uint8_t> carried;  // 1 where the window dq collapsed
};

// Windowed finite difference dC/dq. Sample i uses the window ending at i
// (length `window`, shorter near the start). Windows whose input travel is
// below 1e-9 rad reuse the last valid slope and are flagged.
inline GradientSeries gradient(std::span<const double> q,
                               std::span<const double> c, int window = 5) {
  if (q.size() != c.size() || q.size() < 2)
    throw domain_error("gradient: series must have equal length >= 2");
  if (window < 2) throw domain_error("gradient: window must be >= 2");
  GradientSeries g;
  g.value.resize(q.size(), 0.0);
  g.carried.assign(q.size(), 0);
  double last = 0.0;
  bool have_last = false;
  for (std::size_t i = 1; i < q.size(); ++i) {
    const std::size_t j = i + 1 >= static_cast<std::size_t>(window)
                              ? i + 1 - static_cast<std::size_t>(window)
                              : 0;
    const double dq = q[i] - q[j];
    if (std::abs(dq) < 1e-9) {
      g.value[i] = last;
      g.carried[i] = 1;
    } else {
      g.value[i] = (c[i] - c[j]) / dq;
      last = g.value[i];
      have_last = true;
    }
  }
  g.value[0] = have_last ? g.value[1] : 0.0;
  g.carried[0] = 1;
  return g;
}

}  // namespace tdcm
