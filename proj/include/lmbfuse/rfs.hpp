#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmbfuse/random.hpp"

namespace lmbfuse {

/// Thrown when a particle cloud has lost all of its likelihood mass.
struct AllZeroWeights : std::runtime_error {
  AllZeroWeights() : std::runtime_error("all particle weights are zero") {}
};

/// Thrown when a label would be duplicated inside one LMB density.
struct LabelCollision : std::runtime_error {
  explicit LabelCollision(const std::string& what) : std::runtime_error(what) {}
};

/// Track label (k_B, i_B): birth time plus an index distinguishing tracks
/// born at the same step. Lexicographic order makes label sets canonical.
struct TrackLabel {
  int birth_time = 0;
  int birth_index = 0;

  friend auto operator<=>(const TrackLabel&, const TrackLabel&) = default;
};

inline std::string to_string(const TrackLabel& label) {
  return "(" + std::to_string(label.birth_time) + "," +
         std::to_string(label.birth_index) + ")";
}

/// Planar position/velocity state [px, vx, py, vy].
struct KinematicState {
  double px = 0.0;
  double vx = 0.0;
  double py = 0.0;
  double vy = 0.0;

  Eigen::Vector4d vec() const { return {px, vx, py, vy}; }

  static KinematicState from_vec(const Eigen::Vector4d& v) {
    return {v[0], v[1], v[2], v[3]};
  }

  bool is_finite() const {
    return std::isfinite(px) && std::isfinite(vx) && std::isfinite(py) &&
           std::isfinite(vy);
  }

  friend bool operator==(const KinematicState&, const KinematicState&) = default;
};

struct Particle {
  double weight = 0.0;
  KinematicState state;
};

/// Weighted particle approximation of a single-object density.
struct ParticleCloud {
  std::vector<Particle> particles;

  std::size_t size() const { return particles.size(); }
  bool empty() const { return particles.empty(); }

  double weight_sum() const {
    double s = 0.0;
    for (const Particle& p : particles) s += p.weight;
    return s;
  }

  /// Weighted mean state; assumes normalized weights.
  KinematicState weighted_mean() const {
    Eigen::Vector4d m = Eigen::Vector4d::Zero();
    for (const Particle& p : particles) m += p.weight * p.state.vec();
    return KinematicState::from_vec(m);
  }
};

/// One possible object: exists with probability `existence`, distributed as
/// `cloud` conditional on existence.
struct BernoulliComponent {
  TrackLabel label;
  double existence = 0.0;
  ParticleCloud cloud;
};

/// Collection of Bernoulli components with pairwise-distinct labels, kept
/// sorted by label.
class LmbDensity {
 public:
  LmbDensity() = default;

  void insert(BernoulliComponent component) {
    auto it = lower_bound(component.label);
    if (it != components_.end() && it->label == component.label) {
      throw LabelCollision("duplicate label " + to_string(component.label));
    }
    components_.insert(it, std::move(component));
  }

  const BernoulliComponent* find(const TrackLabel& label) const {
    auto it = lower_bound(label);
    if (it == components_.end() || it->label != label) return nullptr;
    return &*it;
  }

  BernoulliComponent* find(const TrackLabel& label) {
    return const_cast<BernoulliComponent*>(
        static_cast<const LmbDensity*>(this)->find(label));
  }

  std::vector<TrackLabel> labels() const {
    std::vector<TrackLabel> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.label);
    return out;
  }

  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }

  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }
  auto begin() { return components_.begin(); }
  auto end() { return components_.end(); }

  const std::vector<BernoulliComponent>& components() const { return components_; }

 private:
  std::vector<BernoulliComponent>::iterator lower_bound(const TrackLabel& label) {
    return std::lower_bound(
        components_.begin(), components_.end(), label,
        [](const BernoulliComponent& c, const TrackLabel& l) { return c.label < l; });
  }

  std::vector<BernoulliComponent>::const_iterator lower_bound(const TrackLabel& label) const {
    return std::lower_bound(
        components_.begin(), components_.end(), label,
        [](const BernoulliComponent& c, const TrackLabel& l) { return c.label < l; });
  }

  std::vector<BernoulliComponent> components_;
};

/// Divides weights by their sum, preserving particle order.
inline ParticleCloud normalize_weights(ParticleCloud cloud) {
  double sum = 0.0;
  for (const Particle& p : cloud.particles) {
    if (p.weight < 0.0 || !std::isfinite(p.weight)) {
      throw std::invalid_argument("particle weight must be finite and >= 0");
    }
    sum += p.weight;
  }
  if (sum <= 0.0) throw AllZeroWeights();
  for (Particle& p : cloud.particles) p.weight /= sum;
  return cloud;
}

/// 1 / sum of squared weights; equals J for uniform weights and 1 when a
/// single particle carries all the mass. Expects normalized weights.
inline double effective_sample_size(const ParticleCloud& cloud) {
  double sq = 0.0;
  for (const Particle& p : cloud.particles) sq += p.weight * p.weight;
  if (sq <= 0.0) throw AllZeroWeights();
  return 1.0 / sq;
}

/// Systematic resampling: a single uniform offset and a fixed comb over the
/// cumulative weights. Output has `target_count` particles with exactly
/// uniform weights. Expects normalized weights.
inline ParticleCloud resample(const ParticleCloud& cloud, std::size_t target_count,
                              RandomStream& rng) {
  if (target_count < 1) throw std::invalid_argument("target_count must be >= 1");
  if (cloud.empty()) throw std::invalid_argument("cannot resample an empty cloud");
  const double total = cloud.weight_sum();
  if (total <= 0.0) throw AllZeroWeights();

  ParticleCloud out;
  out.particles.reserve(target_count);
  const double step = 1.0 / static_cast<double>(target_count);
  const double offset = rng.uniform() * step;
  const double uniform_weight = step;

  double cumulative = cloud.particles[0].weight / total;
  std::size_t source = 0;
  for (std::size_t k = 0; k < target_count; ++k) {
    const double point = offset + static_cast<double>(k) * step;
    while (point > cumulative && source + 1 < cloud.size()) {
      ++source;
      cumulative += cloud.particles[source].weight / total;
    }
    out.particles.push_back({uniform_weight, cloud.particles[source].state});
  }
  return out;
}

}  // namespace lmbfuse
