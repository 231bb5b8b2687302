#include "sphcoord/pipeline.hpp"

#include "sphcoord/errors.hpp"

namespace sphcoord {

FilteredComplex pipeline_complex(const DistanceMatrix& d, const PipelineOptions& options) {
  if (options.dim != 1 && options.dim != 2) throw InputError("pipeline dimension must be 1 or 2");
  const int max_dim = options.max_dim.value_or(options.dim + 1);
  if (max_dim < options.dim + 1 || max_dim > 3) {
    throw InputError("max_dim must lie between dim + 1 and 3");
  }
  double scale = options.max_scale.value_or(d.enclosing_radius());
  if (!(scale > 0.0)) throw InputError("max_scale must be positive");
  return build_vr(d, max_dim, scale);
}

double auto_rest(const FilteredComplex& c, int dim) {
  const std::size_t count = c.count(dim);
  if (count == 0) throw TopologyError("no " + std::to_string(dim) + "-simplices to share the rest value");
  return (dim == 2 ? kFourPi : 2.0 * kPi) / static_cast<double>(count);
}

PipelineResult run_from_barcode(const FilteredComplex& c, const Barcode& barcode, const PipelineOptions& options,
                                const SphericalObserver& observer) {
  PipelineResult r;
  r.barcode = barcode;
  r.bar = select_bar(barcode, options.selection);
  r.epsilon = options.epsilon.value_or(default_epsilon(r.bar, barcode.scale_limit, options.epsilon_fraction));
  r.alpha_p = cocycle_at(r.bar, c, r.epsilon);
  const FilteredComplex sub = restrict(c, r.epsilon);
  r.alpha = lift_to_integers(r.alpha_p, sub);
  r.energy = options.energy;
  if (options.rest_auto) {
    r.energy.kind = EnergyConfig::Kind::kSpring;
    r.energy.rest = auto_rest(sub, options.dim);
  }

  if (options.dim == 2) {
    SphericalMapState m = initial_spherical_map(r.alpha, sub, options.basepoint);
    if (const auto cycle = fundamental_cycle(m.complex)) {
      r.pairing = evaluate(r.alpha, *cycle);
      r.initial_degree = map_degree(m, *cycle);
    }
    auto run = minimize_spherical(std::move(m), r.energy, options.optimizer, observer);
    if (const auto cycle = fundamental_cycle(run.state.complex)) r.final_degree = map_degree(run.state, *cycle);
    r.report = std::move(run.report);
    r.coordinates = extract_coordinates(run.state);
    r.sphere = std::move(run.state);
  } else {
    CircularMapState m = options.harmonic_start ? harmonic_representative_1d(r.alpha, sub)
                                                : initial_circular_map(r.alpha, sub, options.base_angle);
    auto run = minimize_circular(std::move(m), r.energy, options.optimizer);
    r.report = std::move(run.report);
    r.coordinates = extract_coordinates(run.state);
    r.circle = std::move(run.state);
  }
  return r;
}

PipelineResult run_pipeline(const DistanceMatrix& d, const PipelineOptions& options,
                            const SphericalObserver& observer) {
  const FilteredComplex c = pipeline_complex(d, options);
  return run_from_barcode(c, compute_barcode(c, options.dim, options.prime), options, observer);
}

}  // namespace sphcoord
