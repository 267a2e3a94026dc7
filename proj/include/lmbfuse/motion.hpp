#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lmbfuse/random.hpp"
#include "lmbfuse/rfs.hpp"

namespace lmbfuse {

/// Linear-Gaussian motion model x_k = F x_{k-1} + w, w ~ N(0, Q), with a
/// state-independent survival probability.
struct MotionModel {
  Eigen::Matrix4d transition = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d process_noise = Eigen::Matrix4d::Zero();
  double survival_probability = 0.99;
  double sampling_interval = 1.0;
  // Cached square root of Q (L with L L^T = Q), used for sampling.
  Eigen::Matrix4d noise_transform = Eigen::Matrix4d::Zero();
};

namespace detail {

/// Symmetric PSD square root with small negative eigenvalues clamped to 0.
inline Eigen::Matrix4d psd_sqrt(const Eigen::Matrix4d& q) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(q);
  Eigen::Vector4d lam = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (lam[i] < -1e-9) throw std::invalid_argument("process noise is not PSD");
    lam[i] = std::sqrt(std::max(lam[i], 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace detail

inline MotionModel make_motion_model(const Eigen::Matrix4d& transition,
                                     const Eigen::Matrix4d& process_noise,
                                     double survival_probability,
                                     double sampling_interval) {
  if (!(survival_probability > 0.0) || survival_probability > 1.0) {
    throw std::invalid_argument("survival probability must be in (0, 1]");
  }
  if ((process_noise - process_noise.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("process noise must be symmetric");
  }
  MotionModel m;
  m.transition = transition;
  m.process_noise = process_noise;
  m.survival_probability = survival_probability;
  m.sampling_interval = sampling_interval;
  m.noise_transform = detail::psd_sqrt(process_noise);
  return m;
}

/// Nearly-constant-velocity model with the discretized white-noise
/// acceleration covariance block [T^3/3, T^2/2; T^2/2, T] scaled by
/// sigma_w^2 on each axis.
inline MotionModel make_ncv_model(double sigma_w, double T, double survival_probability) {
  Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
  F(0, 1) = T;
  F(2, 3) = T;
  Eigen::Matrix4d Q = Eigen::Matrix4d::Zero();
  const double s2 = sigma_w * sigma_w;
  const double t3 = T * T * T / 3.0, t2 = T * T / 2.0;
  Q(0, 0) = Q(2, 2) = s2 * t3;
  Q(0, 1) = Q(1, 0) = Q(2, 3) = Q(3, 2) = s2 * t2;
  Q(1, 1) = Q(3, 3) = s2 * T;
  return make_motion_model(F, Q, survival_probability, T);
}

/// NCV variant using the legacy per-axis noise block [0.1, 0.001; 0.1, 0.001]
/// (not symmetric, hence not a covariance); it is symmetrized and projected
/// onto the PSD cone before use.
inline MotionModel make_ncv_model_legacy_noise(double sigma_w, double T,
                                               double survival_probability) {
  Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
  F(0, 1) = T;
  F(2, 3) = T;
  Eigen::Matrix2d B;
  B << 0.1, 0.001, 0.1, 0.001;
  Eigen::Matrix2d sym = 0.5 * (B + B.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(sym);
  Eigen::Vector2d lam = es.eigenvalues().cwiseMax(1e-9);
  Eigen::Matrix2d psd = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  Eigen::Matrix4d Q = Eigen::Matrix4d::Zero();
  Q.block<2, 2>(0, 0) = psd;
  Q.block<2, 2>(2, 2) = psd;
  Q *= sigma_w * sigma_w;
  return make_motion_model(F, Q, survival_probability, T);
}

/// One noisy motion step: draws from N(F x, Q).
inline KinematicState motion_step(const MotionModel& m, const KinematicState& x,
                                  RandomStream& rng) {
  Eigen::Vector4d noise{rng.gaussian(0.0, 1.0), rng.gaussian(0.0, 1.0),
                        rng.gaussian(0.0, 1.0), rng.gaussian(0.0, 1.0)};
  return KinematicState::from_vec(m.transition * x.vec() + m.noise_transform * noise);
}

/// Noise-free motion step F x.
inline KinematicState motion_mean_step(const MotionModel& m, const KinematicState& x) {
  return KinematicState::from_vec(m.transition * x.vec());
}

}  // namespace lmbfuse
