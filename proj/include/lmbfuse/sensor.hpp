#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lmbfuse/random.hpp"
#include "lmbfuse/rfs.hpp"

namespace lmbfuse {

/// Bearing/range measurement. Bearings are measured from the +y axis,
/// clockwise toward +x, in (-pi, pi].
struct Measurement {
  double bearing = 0.0;
  double range = 0.0;
};

/// Bearing-range sensor with a Rayleigh-fading detection profile whose
/// angular response follows a Butterworth characteristic: close to 1 inside
/// the field of view, exp(-threshold) outside, with the 3 dB point exactly
/// at the FoV edge.
struct SensorModel {
  double x = 0.0;
  double y = 0.0;
  double boresight = 0.0;        // rad, from +y axis
  double fov_half_width = std::numbers::pi / 6.0;  // W, rad
  int filter_order = 40;         // H
  double detection_threshold = 4.6;   // Gamma_th
  double detection_gain = 4.6e4;      // c0
  double bearing_var = 2.0 * std::numbers::pi / 180.0;  // rad^2
  double range_var = 10.0;       // m^2
  double clutter_rate = 5.0;     // expected clutter count per scan
  double max_range = 2000.0;     // clutter/observation window upper bound, m
};

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

/// Bearing of (px, py) as seen from the sensor: full-quadrant angle of the
/// offset, measured from the +y axis.
inline double bearing_from(const SensorModel& s, double px, double py) {
  return std::atan2(px - s.x, py - s.y);
}

inline double range_from(const SensorModel& s, double px, double py) {
  return std::hypot(px - s.x, py - s.y);
}

/// Absolute angular offset between the sensor-to-target direction and the
/// sensor boresight, in [0, pi].
inline double boresight_offset(const SensorModel& s, double px, double py) {
  return std::abs(wrap_angle(bearing_from(s, px, py) - s.boresight));
}

/// Butterworth-style angular response: f2(0) = 1, f2(W) = 1/2 exactly.
inline double angular_response(const SensorModel& s, double offset) {
  const double ratio = offset / s.fov_half_width;
  return 1.0 / (1.0 + std::pow(ratio, 2.0 * s.filter_order));
}

/// Detection probability exp(-Gamma_th / (1 + c0 * f1(r) * f2(psi))) with
/// f1(r) = 1/r. Always inside (exp(-Gamma_th), 1).
inline double detection_probability(const SensorModel& s, const KinematicState& state) {
  const double r = range_from(s, state.px, state.py);
  const double psi = boresight_offset(s, state.px, state.py);
  const double f1 = r > 0.0 ? 1.0 / r : std::numeric_limits<double>::infinity();
  const double f2 = angular_response(s, psi);
  const double denom = 1.0 + s.detection_gain * f1 * f2;
  return std::exp(-s.detection_threshold / denom);
}

/// Noise-free measurement mean [bearing; range].
inline Measurement predict_measurement(const SensorModel& s, const KinematicState& state) {
  return {bearing_from(s, state.px, state.py), range_from(s, state.px, state.py)};
}

/// Gaussian single-target likelihood g(z | x) with diagonal noise covariance
/// and the bearing residual wrapped into (-pi, pi].
inline double likelihood(const SensorModel& s, const Measurement& z,
                         const KinematicState& state) {
  const Measurement mu = predict_measurement(s, state);
  const double db = wrap_angle(z.bearing - mu.bearing);
  const double dr = z.range - mu.range;
  const double q = db * db / s.bearing_var + dr * dr / s.range_var;
  const double norm = 2.0 * std::numbers::pi * std::sqrt(s.bearing_var * s.range_var);
  return std::exp(-0.5 * q) / norm;
}

/// Peak value of the measurement likelihood (zero residual).
inline double likelihood_peak(const SensorModel& s) {
  return 1.0 / (2.0 * std::numbers::pi * std::sqrt(s.bearing_var * s.range_var));
}

/// Clutter spatial intensity kappa(z): Poisson rate times a uniform density
/// over the bearing window (-pi, pi] x range window [0, max_range].
inline double clutter_intensity(const SensorModel& s) {
  return s.clutter_rate / (2.0 * std::numbers::pi * s.max_range);
}

/// Draws one noisy bearing/range measurement of `state`.
inline Measurement measure(const SensorModel& s, const KinematicState& state,
                           RandomStream& rng) {
  const Measurement mu = predict_measurement(s, state);
  return {wrap_angle(mu.bearing + rng.gaussian(0.0, std::sqrt(s.bearing_var))),
          mu.range + rng.gaussian(0.0, std::sqrt(s.range_var))};
}

/// One scan for every sensor: each true target detected independently with
/// its detection probability, plus Poisson clutter uniform over the
/// bearing-range window. Measurement order carries no origin information.
inline std::vector<std::vector<Measurement>> scan(
    const std::vector<SensorModel>& sensors, const std::vector<KinematicState>& truth,
    RandomStream& rng) {
  std::vector<std::vector<Measurement>> out;
  out.reserve(sensors.size());
  for (const SensorModel& s : sensors) {
    std::vector<Measurement> z;
    for (const KinematicState& x : truth) {
      if (rng.uniform() < detection_probability(s, x)) z.push_back(measure(s, x, rng));
    }
    const int clutter = rng.poisson(s.clutter_rate);
    for (int i = 0; i < clutter; ++i) {
      z.push_back({rng.uniform(-std::numbers::pi, std::numbers::pi),
                   rng.uniform(0.0, s.max_range)});
    }
    std::shuffle(z.begin(), z.end(), rng.engine());
    out.push_back(std::move(z));
  }
  return out;
}

/// Scripted target: born at `birth_time`, gone from `death_time` onwards.
struct TruthTarget {
  TrackLabel label;
  int birth_time = 0;
  int death_time = 0;
  KinematicState initial;
};

struct MotionModel;  // filter.hpp

/// Birth/death script with per-target initial states. The motion model used
/// to roll trajectories forward is supplied at simulation time so the truth
/// generator and the filter can assume different noise levels.
struct GroundTruthScript {
  std::vector<TruthTarget> targets;
};

}  // namespace lmbfuse
