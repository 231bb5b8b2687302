#include "sphcoord/synth.hpp"

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "sphcoord/errors.hpp"
#include "sphcoord/geometry.hpp"

namespace sphcoord {

namespace {

void add_noise(Eigen::MatrixXd& x, double sigma, std::mt19937_64& rng) {
  if (sigma < 0) throw InputError("noise sigma must be >= 0");
  if (sigma == 0) return;
  std::normal_distribution<double> noise(0.0, sigma);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) += noise(rng);
  }
}

Eigen::Vector3d uniform_on_sphere(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Eigen::Vector3d v(g(rng), g(rng), g(rng));
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

Eigen::MatrixXd spherical_truth(const std::vector<Eigen::Vector3d>& ps) {
  Eigen::MatrixXd t(static_cast<Eigen::Index>(ps.size()), 2);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto [az, el] = to_spherical(ps[i]);
    t(static_cast<Eigen::Index>(i), 0) = az;
    t(static_cast<Eigen::Index>(i), 1) = el;
  }
  return t;
}

}  // namespace

Eigen::MatrixXd random_orthonormal_columns(std::size_t ambient_dim, std::size_t k, std::uint64_t seed) {
  if (ambient_dim < k) throw InputError("ambient dimension must be at least " + std::to_string(k));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(ambient_dim), static_cast<Eigen::Index>(k));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = g(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Eigen::Vector3d> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

Dataset gen_circle(std::size_t n, double noise_sigma, std::uint64_t seed) {
  if (n < 3) throw InputError("circle needs n >= 3");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 2);
  Eigen::MatrixXd t(static_cast<Eigen::Index>(n), 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    x.row(static_cast<Eigen::Index>(i)) << std::cos(a), std::sin(a);
    t(static_cast<Eigen::Index>(i), 0) = a;
  }
  add_noise(x, noise_sigma, rng);
  return {PointCloud(std::move(x)), std::move(t), {"angle"}, {}};
}

Dataset gen_trefoil(std::size_t n) {
  if (n < 8) throw InputError("trefoil needs n >= 8");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 3);
  Eigen::MatrixXd t(static_cast<Eigen::Index>(n), 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    x.row(static_cast<Eigen::Index>(i)) << std::sin(s) + 2.0 * std::sin(2.0 * s),
        std::cos(s) - 2.0 * std::cos(2.0 * s), -std::sin(3.0 * s);
    t(static_cast<Eigen::Index>(i), 0) = s;
  }
  return {PointCloud(std::move(x)), std::move(t), {"angle"}, {}};
}

Dataset gen_curvature_ellipse(std::size_t n, double a, double b, std::size_t ambient_dim, double noise_sigma,
                              std::uint64_t seed) {
  if (!(a > 0) || !(b > 0)) throw InputError("ellipse semi-axes must be positive");
  if (ambient_dim < 2) throw InputError("ambient dimension must be >= 2");
  if (n < 3) throw InputError("ellipse needs n >= 3");
  constexpr std::size_t kBins = 10000;
  const double width = 2.0 * kPi / kBins;
  std::vector<double> cdf(kBins + 1, 0.0);
  for (std::size_t j = 0; j < kBins; ++j) {
    const double t = (static_cast<double>(j) + 0.5) * width;
    const double st = std::sin(t), ct = std::cos(t);
    const double kappa = a * b / std::pow(a * a * st * st + b * b * ct * ct, 1.5);
    cdf[j + 1] = cdf[j] + kappa * width;
  }
  const double total = cdf.back();
  // stratified quantiles u_i = (i + 1/2) / n through the piecewise linear CDF
  Eigen::MatrixXd t(static_cast<Eigen::Index>(n), 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = (static_cast<double>(i) + 0.5) / static_cast<double>(n) * total;
    while (j + 1 < kBins && cdf[j + 1] < target) ++j;
    const double frac = (target - cdf[j]) / (cdf[j + 1] - cdf[j]);
    t(static_cast<Eigen::Index>(i), 0) = (static_cast<double>(j) + frac) * width;
  }
  Eigen::MatrixXd plane(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < plane.rows(); ++i) plane.row(i) << a * std::cos(t(i, 0)), b * std::sin(t(i, 0));
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd q = random_orthonormal_columns(ambient_dim, 2, rng());
  Eigen::MatrixXd x = plane * q.transpose();
  add_noise(x, noise_sigma, rng);
  return {PointCloud(std::move(x)), std::move(t), {"angle"}, {}};
}

Dataset gen_sphere(std::size_t n, double noise_sigma, SphereSampling method, std::size_t ambient_dim,
                   std::uint64_t seed) {
  if (n < 4) throw InputError("sphere needs n >= 4");
  if (ambient_dim < 3) throw InputError("ambient dimension must be >= 3");
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Vector3d> ps;
  if (method == SphereSampling::kFibonacci) {
    ps = fibonacci_sphere(n);
  } else {
    for (std::size_t i = 0; i < n; ++i) ps.push_back(uniform_on_sphere(rng));
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) x.row(static_cast<Eigen::Index>(i)) = ps[i].transpose();
  if (ambient_dim > 3) x = (x * random_orthonormal_columns(ambient_dim, 3, rng()).transpose()).eval();
  add_noise(x, noise_sigma, rng);
  return {PointCloud(std::move(x)), spherical_truth(ps), {"azimuth", "elevation"}, {}};
}

Dataset gen_ellipsoid(std::size_t n, const Eigen::Vector3d& semi_axes, std::uint64_t seed) {
  if (!(semi_axes.minCoeff() > 0)) throw InputError("ellipsoid semi-axes must be positive");
  if (n < 4) throw InputError("ellipsoid needs n >= 4");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = semi_axes.x(), b = semi_axes.y(), c = semi_axes.z();
  // area element of the map u -> diag(a, b, c) u relative to the sphere
  const Eigen::Vector3d w(b * c, a * c, a * b);
  const double w_max = w.maxCoeff();
  std::vector<Eigen::Vector3d> dirs;
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 3);
  while (dirs.size() < n) {
    const Eigen::Vector3d u = uniform_on_sphere(rng);
    const double density = w.cwiseProduct(u).norm();
    if (unit(rng) * w_max > density) continue;
    x.row(static_cast<Eigen::Index>(dirs.size())) = semi_axes.cwiseProduct(u).transpose();
    dirs.push_back(u);
  }
  return {PointCloud(std::move(x)), spherical_truth(dirs), {"azimuth", "elevation"}, {}};
}

Dataset gen_two_spheres(std::size_t n_each, bool wedge, std::uint64_t seed) {
  if (n_each < 4) throw InputError("each sphere needs n >= 4");
  std::mt19937_64 rng(seed);
  const Eigen::Vector3d offset(wedge ? 2.0 : 4.0, 0.0, 0.0);
  std::vector<Eigen::Vector3d> dirs;
  Eigen::MatrixXd x(static_cast<Eigen::Index>(2 * n_each), 3);
  std::vector<int> labels;
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < n_each; ++i) {
      const Eigen::Vector3d u = uniform_on_sphere(rng);
      x.row(static_cast<Eigen::Index>(dirs.size())) = (u + (s == 1 ? offset : Eigen::Vector3d::Zero())).transpose();
      dirs.push_back(u);
      labels.push_back(s);
    }
  }
  return {PointCloud(std::move(x)), spherical_truth(dirs), {"azimuth", "elevation"}, std::move(labels)};
}

Dataset gen_two_circles(std::size_t n_large, std::size_t n_small, double small_radius, double noise_sigma,
                        std::uint64_t seed) {
  if (n_large < 3 || n_small < 3) throw InputError("each circle needs n >= 3");
  if (!(small_radius > 0)) throw InputError("small radius must be positive");
  std::mt19937_64 rng(seed);
  const std::size_t n = n_large + n_small;
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 2);
  std::vector<int> labels;
  for (std::size_t i = 0; i < n_large; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_large);
    x.row(static_cast<Eigen::Index>(i)) << std::cos(a), std::sin(a);
    labels.push_back(0);
  }
  for (std::size_t i = 0; i < n_small; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_small);
    x.row(static_cast<Eigen::Index>(n_large + i)) << 1.0 + small_radius * std::cos(a), small_radius * std::sin(a);
    labels.push_back(1);
  }
  add_noise(x, noise_sigma, rng);
  Eigen::MatrixXd t(static_cast<Eigen::Index>(n), 1);
  for (Eigen::Index i = 0; i < t.rows(); ++i) t(i, 0) = wrap_two_pi(std::atan2(x(i, 1), x(i, 0)));
  return {PointCloud(std::move(x)), std::move(t), {"angle"}, std::move(labels)};
}

Dataset gen_sensor_walk(std::size_t n_sensors, std::size_t n_walks, std::size_t walk_len, double step,
                        double sigma, std::uint64_t seed) {
  if (n_sensors < 4 || n_walks < 1 || walk_len < 1) throw InputError("sensor walk needs sensors >= 4 and walks");
  if (!(step > 0)) throw InputError("walk step must be positive");
  if (sigma < 0) throw InputError("noise sigma must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::vector<Eigen::Vector3d> sensors = fibonacci_sphere(n_sensors);
  std::vector<Eigen::Vector3d> walk;
  for (std::size_t w = 0; w < n_walks; ++w) {
    Eigen::Vector3d x = uniform_on_sphere(rng);
    for (std::size_t s = 0; s < walk_len; ++s) {
      Eigen::Vector3d dir;
      do {
        dir = tangent_project(x, Eigen::Vector3d(g(rng), g(rng), g(rng)));
      } while (dir.norm() < 1e-12);
      dir.normalize();
      x = (std::cos(step) * x + std::sin(step) * dir).normalized();
      walk.push_back(x);
    }
  }
  Eigen::MatrixXd data(static_cast<Eigen::Index>(n_sensors), static_cast<Eigen::Index>(walk.size()));
  for (std::size_t j = 0; j < n_sensors; ++j) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      data(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          std::exp(-geodesic_distance(walk[i], sensors[j]));
    }
  }
  add_noise(data, sigma, rng);
  return {PointCloud(std::move(data)), spherical_truth(sensors), {"azimuth", "elevation"}, {}};
}

}  // namespace sphcoord
