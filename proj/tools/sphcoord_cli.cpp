// Command-line driver: synth, barcode, map, prune, eval.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sphcoord/cohomology.hpp"
#include "sphcoord/complex.hpp"
#include "sphcoord/errors.hpp"
#include "sphcoord/io.hpp"
#include "sphcoord/pipeline.hpp"
#include "sphcoord/postprocess.hpp"
#include "sphcoord/synth.hpp"

using namespace sphcoord;

namespace {

enum Exit { kOk = 0, kUsage = 2, kTopology = 3, kNumerical = 4 };

unsigned default_threads() {
  if (const char* env = std::getenv("SPHCOORD_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

struct InputFlags {
  std::string points;
  std::string distances;
  std::string complex;

  void add(CLI::App* cmd) {
    auto* a = cmd->add_option("-i,--input", points, "point cloud CSV (one point per row)");
    auto* b = cmd->add_option("--distance", distances, "distance matrix CSV");
    auto* c = cmd->add_option("--complex", complex, "complex description JSON");
    a->excludes(b)->excludes(c);
    b->excludes(c);
  }

  [[nodiscard]] bool is_complex() const { return !complex.empty(); }

  [[nodiscard]] DistanceMatrix distance() const {
    if (!points.empty()) return DistanceMatrix::euclidean(read_point_cloud(points));
    if (!distances.empty()) return read_distance_matrix(distances);
    throw InputError("no input: give --input, --distance or --complex");
  }
};

struct EnergyFlags {
  std::string kind = "harmonic";
  double k = 1.0;
  std::string rest = "0";

  void add(CLI::App* cmd) {
    cmd->add_option("--energy", kind, "harmonic or spring")->check(CLI::IsMember({"harmonic", "spring"}));
    cmd->add_option("--k", k, "spring constant");
    cmd->add_option("--rest", rest, "rest area/length, or 'auto' for an equal share");
  }

  [[nodiscard]] bool rest_auto() const { return rest == "auto"; }

  [[nodiscard]] EnergyConfig config() const {
    EnergyConfig e;
    if (kind == "spring" || rest_auto()) {
      e.kind = EnergyConfig::Kind::kSpring;
      e.k = k;
      if (!rest_auto()) {
        try {
          e.rest = std::stod(rest);
        } catch (const std::exception&) {
          throw InputError("--rest must be a number or 'auto'");
        }
      }
    }
    return e;
  }
};

void add_optimizer_flags(CLI::App* cmd, OptimizerConfig& o) {
  cmd->add_option("--delta-g", o.delta_g, "gradient step size");
  cmd->add_option("--delta-m", o.delta_m, "centering step size");
  cmd->add_option("--centering-passes", o.centering_passes, "centering steps per iteration");
  cmd->add_option("--warmup", o.warmup, "iterations before centering starts");
  cmd->add_option("--max-iters", o.max_iters, "iteration limit");
  cmd->add_option("--tol-energy", o.tol_energy, "relative energy change over the window");
  cmd->add_option("--tol-center", o.tol_center, "centre of mass tolerance");
  cmd->add_option("--max-step", o.max_step, "per-iteration displacement cap (< 2)");
  cmd->add_option("--threads", o.threads, "worker threads (default $SPHCOORD_THREADS or 1)");
}

void write_map_outputs(const std::string& prefix, const CoordinateTable& coords, const RunReport& report,
                       const PipelineResult* pipeline) {
  write_coordinates_csv(prefix + "_coords.csv", coords);
  write_run_report_json(prefix + "_report.json", report, pipeline);
  write_trace_csv(prefix + "_trace.csv", report.energy_trace);
}

int finish(const RunReport& report) {
  std::cout << "iterations " << report.iterations << ", final energy "
            << format_number(report.energy_trace.empty() ? 0.0 : report.energy_trace.back())
            << (report.converged ? ", converged\n" : ", NOT converged\n");
  return report.converged ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular and spherical coordinates from persistent cohomology"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  std::string generator, synth_out;
  std::size_t n = 0, n_small = 20, ambient = 3, sensors = 64, walks = 25, walk_len = 25;
  double sigma = 0.0, a_axis = 2.0, b_axis = 1.0, small_radius = 0.3, step = 0.1;
  std::uint64_t seed = 0;
  std::string method = "fibonacci", mode = "disjoint";
  std::vector<double> axes{2.0, 1.0, 1.0};
  synth->add_option("generator", generator, "circle, trefoil, ellipse, sphere, ellipsoid, two_spheres, two_circles, sensors")
      ->required()
      ->check(CLI::IsMember(
          {"circle", "trefoil", "ellipse", "sphere", "ellipsoid", "two_spheres", "two_circles", "sensors"}));
  synth->add_option("-n", n, "number of points (per sphere for two_spheres)");
  synth->add_option("--sigma", sigma, "Gaussian noise standard deviation");
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--a", a_axis, "ellipse semi-axis along x");
  synth->add_option("--b", b_axis, "ellipse semi-axis along y");
  synth->add_option("--ambient", ambient, "ambient dimension (ellipse, sphere)");
  synth->add_option("--method", method, "sphere sampling")->check(CLI::IsMember({"fibonacci", "uniform"}));
  synth->add_option("--axes", axes, "ellipsoid semi-axes")->expected(3)->delimiter(',');
  synth->add_option("--mode", mode, "two_spheres layout")->check(CLI::IsMember({"disjoint", "wedge"}));
  synth->add_option("--n-small", n_small, "points on the small circle (two_circles)");
  synth->add_option("--small-radius", small_radius, "small circle radius (two_circles)");
  synth->add_option("--sensors", sensors, "number of sensors");
  synth->add_option("--walks", walks, "number of random walks");
  synth->add_option("--walk-len", walk_len, "steps per walk");
  synth->add_option("--step", step, "geodesic walk step");
  synth->add_option("-o,--out", synth_out, "output prefix")->required();

  // barcode
  auto* barcode = app.add_subcommand("barcode", "persistence barcode with representative cocycles");
  InputFlags bc_in;
  bc_in.add(barcode);
  int bc_dim = 2;
  std::uint32_t bc_prime = 47;
  std::optional<double> bc_scale;
  std::optional<int> bc_max_dim;
  std::string bc_out;
  barcode->add_option("--dim", bc_dim, "cohomological dimension")->check(CLI::Range(0, 2));
  barcode->add_option("-p,--prime", bc_prime, "coefficient prime");
  barcode->add_option("--max-scale", bc_scale, "largest Rips scale (default: enclosing radius)");
  barcode->add_option("--max-dim", bc_max_dim, "largest simplex dimension (default: dim + 1)");
  barcode->add_option("-o,--out", bc_out, "output prefix")->required();

  // map
  auto* map = app.add_subcommand("map", "run the full coordinate pipeline");
  InputFlags map_in;
  map_in.add(map);
  PipelineOptions opts;
  opts.optimizer.threads = default_threads();
  EnergyFlags map_energy;
  std::string bar_text = "longest", init = "canonical", map_out;
  std::optional<double> epsilon;
  std::vector<double> basepoint;
  map->add_option("--dim", opts.dim, "1 (circle) or 2 (sphere)")->check(CLI::IsMember({1, 2}));
  map->add_option("-p,--prime", opts.prime, "coefficient prime");
  map->add_option("--max-scale", opts.max_scale, "largest Rips scale (default: enclosing radius)");
  map->add_option("--max-dim", opts.max_dim, "largest simplex dimension (default: dim + 1)");
  map->add_option("--bar", bar_text, "longest, shortest, index:K or BIRTH,DEATH");
  map->add_option("--epsilon", epsilon, "parameter inside the bar (default: midpoint)");
  map->add_option("--epsilon-frac", opts.epsilon_fraction, "relative position of the default epsilon in the bar")
      ->check(CLI::Range(0.0, 1.0));
  map->add_option("--basepoint", basepoint, "basepoint x,y,z of the initial map")->expected(3)->delimiter(',');
  map->add_option("--init", init, "1D start: canonical lift or harmonic representative")
      ->check(CLI::IsMember({"canonical", "harmonic"}));
  map_energy.add(map);
  add_optimizer_flags(map, opts.optimizer);
  map->add_option("-o,--out", map_out, "output prefix")->required();

  // prune
  auto* prune_cmd = app.add_subcommand("prune", "drop small triangles and minimize again");
  std::string state_path, prune_out;
  double threshold = 1e-2;
  OptimizerConfig prune_opt;
  prune_opt.threads = default_threads();
  EnergyFlags prune_energy;
  prune_cmd->add_option("--state", state_path, "map state written by 'map'")->required();
  prune_cmd->add_option("--threshold", threshold, "area threshold");
  prune_energy.add(prune_cmd);
  add_optimizer_flags(prune_cmd, prune_opt);
  prune_cmd->add_option("-o,--out", prune_out, "output prefix")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "compare coordinates with ground truth");
  std::string coords_path, truth_path, kind, eval_out;
  eval->add_option("--coords", coords_path, "coordinates CSV")->required();
  eval->add_option("--truth", truth_path, "truth CSV")->required();
  eval->add_option("--kind", kind, "sphere or circle (default: from the columns)")
      ->check(CLI::IsMember({"sphere", "circle"}));
  eval->add_option("-o,--out", eval_out, "metrics JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) {
      Dataset d;
      auto count = [&](std::size_t fallback) { return n ? n : fallback; };
      if (generator == "circle") d = gen_circle(count(40), sigma, seed);
      else if (generator == "trefoil") d = gen_trefoil(count(64));
      else if (generator == "ellipse") d = gen_curvature_ellipse(count(60), a_axis, b_axis, ambient, sigma, seed);
      else if (generator == "sphere")
        d = gen_sphere(count(100), sigma, method == "fibonacci" ? SphereSampling::kFibonacci : SphereSampling::kUniform,
                       ambient, seed);
      else if (generator == "ellipsoid") d = gen_ellipsoid(count(100), Eigen::Vector3d(axes[0], axes[1], axes[2]), seed);
      else if (generator == "two_spheres") d = gen_two_spheres(count(60), mode == "wedge", seed);
      else if (generator == "two_circles") d = gen_two_circles(count(40), n_small, small_radius, sigma, seed);
      else d = gen_sensor_walk(sensors, walks, walk_len, step, sigma, seed);
      write_dataset(synth_out, d);
      std::cout << "wrote " << d.cloud.size() << " points to " << synth_out << ".csv\n";
      return kOk;
    }

    if (*barcode) {
      FilteredComplex c;
      if (bc_in.is_complex()) {
        c = read_complex_json(bc_in.complex);
      } else {
        const DistanceMatrix d = bc_in.distance();
        const double scale = bc_scale.value_or(d.enclosing_radius());
        if (!(scale > 0)) throw InputError("max_scale must be positive");
        c = build_vr(d, std::clamp(bc_max_dim.value_or(bc_dim + 1), 1, 3), scale);
      }
      const Barcode b = compute_barcode(c, bc_dim, bc_prime);
      write_barcode_csv(bc_out + "_barcode.csv", {b});
      write_cocycles_json(bc_out + "_cocycles.json", {b});
      std::cout << b.bars.size() << " bars in dimension " << bc_dim << '\n';
      return kOk;
    }

    if (*map) {
      opts.selection = BarSelection::parse(bar_text);
      opts.epsilon = epsilon;
      opts.energy = map_energy.config();
      opts.rest_auto = map_energy.rest_auto();
      opts.harmonic_start = init == "harmonic";
      if (!basepoint.empty()) opts.basepoint = normalized(Eigen::Vector3d(basepoint[0], basepoint[1], basepoint[2]));
      PipelineResult r;
      if (map_in.is_complex()) {
        const FilteredComplex c = read_complex_json(map_in.complex);
        r = run_from_barcode(c, compute_barcode(c, opts.dim, opts.prime), opts);
      } else {
        r = run_pipeline(map_in.distance(), opts);
      }
      write_map_outputs(map_out, r.coordinates, r.report, &r);
      if (r.sphere) write_state_json(map_out + "_state.json", *r.sphere, r.energy);
      return finish(r.report);
    }

    if (*prune_cmd) {
      EnergyConfig e;
      const SphericalMapState m = read_state_json(state_path, &e);
      if (prune_cmd->count("--energy") || prune_cmd->count("--k") || prune_cmd->count("--rest")) {
        e = prune_energy.config();
      }
      SphericalMapState pruned = prune(m, threshold);
      if (prune_energy.rest_auto()) e.rest = auto_rest(pruned.complex, 2);
      auto run = minimize_spherical(std::move(pruned), e, prune_opt);
      write_map_outputs(prune_out, extract_coordinates(run.state), run.report, nullptr);
      write_state_json(prune_out + "_state.json", run.state, e);
      std::cout << "kept " << run.state.triangles.size() << " of " << m.triangles.size() << " triangles\n";
      return finish(run.report);
    }

    if (*eval) {
      const CoordinateTable coords = read_coordinates_csv(coords_path);
      const CoordinateTable truth_all = read_coordinates_csv(truth_path);
      if (!kind.empty() && (kind == "sphere") != coords.spherical()) {
        throw InputError("--kind " + kind + " does not match the columns of " + coords_path);
      }
      std::map<Vertex, Eigen::Index> row_of;
      for (std::size_t i = 0; i < truth_all.ids.size(); ++i) row_of[truth_all.ids[i]] = static_cast<Eigen::Index>(i);
      CoordinateTable truth;
      truth.ids = coords.ids;
      truth.values.resize(coords.values.rows(), truth_all.values.cols());
      for (std::size_t i = 0; i < coords.ids.size(); ++i) {
        auto it = row_of.find(coords.ids[i]);
        if (it == row_of.end()) throw InputError("vertex " + std::to_string(coords.ids[i]) + " missing from truth");
        truth.values.row(static_cast<Eigen::Index>(i)) = truth_all.values.row(it->second);
      }
      const RecoveryMetrics m = evaluate_recovery(coords, truth);
      std::string stem = eval_out;
      if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json") stem.resize(stem.size() - 5);
      const std::string aligned = stem + "_aligned.csv";
      write_coordinates_csv(aligned, m.aligned);
      write_metrics_json(eval_out, m, aligned);
      std::cout << "rms " << format_number(m.rms_geodesic) << ", max " << format_number(m.max_geodesic) << '\n';
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const TopologyError& e) {
    std::cerr << "topology error: " << e.what() << '\n';
    return kTopology;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
