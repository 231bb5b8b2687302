#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sphcoord/complex.hpp"

namespace sphcoord {

/// Generated point cloud with ground truth in matching row order.
struct Dataset {
  PointCloud cloud;
  /// One row per point; columns named by truth_columns.
  Eigen::MatrixXd truth;
  std::vector<std::string> truth_columns;
  /// Component label per point; empty when the generator has none.
  std::vector<int> labels;

  [[nodiscard]] bool spherical_truth() const { return truth.cols() == 2; }
};

enum class SphereSampling { kFibonacci, kUniform };

/// n points at angles 2 pi i / n on the unit circle plus Gaussian noise.
Dataset gen_circle(std::size_t n, double noise_sigma, std::uint64_t seed);

/// (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t) at n equal parameter steps.
Dataset gen_trefoil(std::size_t n);

/// Ellipse (a cos t, b sin t) sampled with density proportional to its
/// curvature, embedded in R^ambient_dim by a random matrix with orthonormal
/// columns, plus ambient Gaussian noise. Truth is t.
Dataset gen_curvature_ellipse(std::size_t n, double a, double b, std::size_t ambient_dim, double noise_sigma,
                              std::uint64_t seed);

/// Points on S^2, optionally embedded isometrically in R^ambient_dim
/// (ambient_dim > 3) before noise is added. Truth is (azimuth, elevation).
Dataset gen_sphere(std::size_t n, double noise_sigma, SphereSampling method, std::size_t ambient_dim,
                   std::uint64_t seed);

/// Area-uniform samples of the ellipsoid with the given semi-axes. Truth is
/// the direction (azimuth, elevation) of the unit-sphere preimage.
Dataset gen_ellipsoid(std::size_t n, const Eigen::Vector3d& semi_axes, std::uint64_t seed);

/// Two unit spheres with centres 4 apart (disjoint) or 2 apart (wedge,
/// touching at one point). Labels 0 and 1; truth relative to each centre.
Dataset gen_two_spheres(std::size_t n_each, bool wedge, std::uint64_t seed);

/// A unit circle plus a small circle of radius `small_radius` centred on its
/// circumference. Truth is the angle about the origin.
Dataset gen_two_circles(std::size_t n_large, std::size_t n_small, double small_radius, double noise_sigma,
                        std::uint64_t seed);

/// Sensors on a Fibonacci lattice read exp(-geodesic distance) + noise along
/// random walks on S^2. Each sensor is one data point whose features are its
/// readings over all walk steps. Truth is the sensor's (azimuth, elevation).
Dataset gen_sensor_walk(std::size_t n_sensors, std::size_t n_walks, std::size_t walk_len, double step,
                        double sigma, std::uint64_t seed);

/// Random ambient_dim x k matrix with orthonormal columns.
Eigen::MatrixXd random_orthonormal_columns(std::size_t ambient_dim, std::size_t k, std::uint64_t seed);

/// Fibonacci lattice on S^2.
std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n);

}  // namespace sphcoord
