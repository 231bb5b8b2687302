#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sphcoord/cohomology.hpp"
#include "sphcoord/complex.hpp"
#include "sphcoord/energy.hpp"
#include "sphcoord/mapping.hpp"
#include "sphcoord/optimizer.hpp"

namespace sphcoord {

struct PipelineOptions {
  int dim = 2;
  std::uint32_t prime = 47;
  /// Defaults to the enclosing radius of the distance matrix.
  std::optional<double> max_scale;
  /// Defaults to dim + 1.
  std::optional<int> max_dim;
  BarSelection selection;
  /// Defaults to default_epsilon(bar, scale_limit, epsilon_fraction).
  std::optional<double> epsilon;
  double epsilon_fraction = 0.5;
  EnergyConfig energy;
  /// Replaces energy.rest by an equal share of the total: 4 pi / #triangles
  /// or 2 pi / #edges of the complex at epsilon.
  bool rest_auto = false;
  OptimizerConfig optimizer;
  SpherePoint basepoint{1, 0, 0};
  double base_angle = 0.0;
  /// 1D only: start from the least-squares harmonic representative instead
  /// of the canonical lift.
  bool harmonic_start = false;
};

struct PipelineResult {
  Barcode barcode;
  Bar bar;
  double epsilon = 0.0;
  Cochain alpha_p;
  Cochain alpha;
  EnergyConfig energy;
  std::optional<SphericalMapState> sphere;
  std::optional<CircularMapState> circle;
  RunReport report;
  CoordinateTable coordinates;
  /// Set when the 2-skeleton at epsilon is a closed orientable surface.
  std::optional<std::int64_t> pairing;
  std::optional<double> initial_degree;
  std::optional<double> final_degree;
};

/// Vietoris-Rips complex for a pipeline in the given dimension.
FilteredComplex pipeline_complex(const DistanceMatrix& d, const PipelineOptions& options);

/// Everything after the barcode: select, restrict, lift, map and minimize.
PipelineResult run_from_barcode(const FilteredComplex& c, const Barcode& barcode, const PipelineOptions& options,
                                const SphericalObserver& observer = {});

/// pipeline_complex, compute_barcode and run_from_barcode.
PipelineResult run_pipeline(const DistanceMatrix& d, const PipelineOptions& options,
                            const SphericalObserver& observer = {});

/// Equal-share rest value for a complex (2D: per triangle, 1D: per edge).
double auto_rest(const FilteredComplex& c, int dim);

}  // namespace sphcoord
