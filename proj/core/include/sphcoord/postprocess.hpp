#pragma once

#include "sphcoord/energy.hpp"
#include "sphcoord/mapping.hpp"
#include "sphcoord/optimizer.hpp"

namespace sphcoord {

/// Drops every triangle whose image area is below `threshold`, then every
/// vertex that thereby lost all of its triangles (with the edges touching
/// it). Throws TopologyError("no significant simplices remain") if no
/// triangle survives.
SphericalMapState prune(const SphericalMapState& m, double threshold);

/// prune followed by minimize_spherical from the current positions.
MinimizeResult<SphericalMapState> prune_and_rerun(const SphericalMapState& m, const EnergyConfig& e,
                                                  const OptimizerConfig& o, double threshold = 1e-2);

struct RecoveryMetrics {
  double rms_geodesic = 0.0;
  double max_geodesic = 0.0;
  /// The final coordinates after the optimal rigid alignment onto the truth.
  CoordinateTable aligned;
  bool reflected = false;
};

/// Aligns `final` onto `truth` (rows correspond) and reports geodesic errors.
/// Spherical tables use Procrustes; circular tables use the best rotation for
/// each of the two orientations. Throws InputError on shape mismatch.
RecoveryMetrics evaluate_recovery(const CoordinateTable& final, const CoordinateTable& truth);

}  // namespace sphcoord
