#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sphcoord/energy.hpp"
#include "sphcoord/mapping.hpp"

namespace sphcoord {

struct OptimizerConfig {
  double delta_g = 0.05;
  /// Centering step: p <- normalize(p - delta_m * mean of all positions).
  double delta_m = 1.5;
  /// Centering steps per iteration; repeats stop once the centre of mass is
  /// within tol_center or a step fails to bring it closer.
  std::size_t centering_passes = 8;
  std::size_t warmup = 50;
  std::size_t max_iters = 5000;
  double tol_energy = 1e-6;
  double tol_center = 1e-3;
  /// Euclidean displacement cap per iteration; must stay below 2 so that no
  /// point is ever sent to its antipode in one step.
  double max_step = 1.0;
  std::size_t energy_window = 10;
  std::size_t max_halvings = 30;
  unsigned threads = 1;

  void validate() const;
};

struct RunReport {
  std::size_t iterations = 0;
  /// Energy before the first iteration followed by the energy after each one.
  std::vector<double> energy_trace;
  double final_center_norm = 0.0;
  double max_displacement = 0.0;
  bool converged = false;
};

template <typename State>
struct MinimizeResult {
  State state;
  RunReport report;
};

/// Called after every iteration with the current state.
using SphericalObserver = std::function<void(const SphericalMapState&)>;

/// Alternating scheme: a tangent gradient step on every vertex with step
/// halving, then (after the warmup) up to centering_passes approximate
/// Mobius mass-centering steps. Stops when the relative energy change over the window drops below
/// tol_energy and the centre of mass is within tol_center of the origin.
/// Throws NumericalError on non-finite values or when no step satisfies the
/// displacement guard.
MinimizeResult<SphericalMapState> minimize_spherical(SphericalMapState m, const EnergyConfig& e,
                                                     const OptimizerConfig& o,
                                                     const SphericalObserver& observer = {});

/// First-order descent on the angles with winding bookkeeping; no centering.
MinimizeResult<CircularMapState> minimize_circular(CircularMapState m, const EnergyConfig& e,
                                                   const OptimizerConfig& o);

/// Least-squares solution of min |alpha - d theta| on each connected
/// component (one vertex pinned per component), returned as a circular map
/// whose signed edge arcs equal 2 pi (alpha - d h).
CircularMapState harmonic_representative_1d(const Cochain& alpha, const FilteredComplex& c);

/// True iff every point moved strictly less than max_step (and less than 2).
bool check_homotopy_guard(const std::vector<SpherePoint>& before, const std::vector<SpherePoint>& after,
                          double max_step);

/// Mean of the vertex positions.
Eigen::Vector3d center_of_mass(const SphericalMapState& m);

}  // namespace sphcoord
