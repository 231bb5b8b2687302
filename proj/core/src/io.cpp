#include "sphcoord/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sphcoord/errors.hpp"

namespace sphcoord {

using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

/// Rounds to 12 significant digits.
double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

json number12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return round12(v);
}

double parse_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw InputError("expected a number, got " + j.dump());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool parse_cell(std::string cell, double& out) {
  while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.back()))) cell.pop_back();
  std::size_t start = 0;
  while (start < cell.size() && std::isspace(static_cast<unsigned char>(cell[start]))) ++start;
  cell = cell.substr(start);
  if (cell.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(cell, &used);
    return used == cell.size();
  } catch (const std::exception&) {
    return false;
  }
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(const std::string& path) {
  std::ifstream in = open_in(path);
  Table t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto cells = split(line, ',');
    std::vector<double> row(cells.size());
    bool ok = true;
    for (std::size_t i = 0; i < cells.size() && ok; ++i) ok = parse_cell(cells[i], row[i]);
    if (!ok) {
      if (t.rows.empty() && t.header.empty()) {
        t.header = cells;
        continue;
      }
      throw InputError(path + ":" + std::to_string(line_no) + ": non-numeric value");
    }
    if (!t.rows.empty() && row.size() != t.rows.front().size()) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(t.rows.front().size()) + " columns");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Eigen::MatrixXd to_matrix(const Table& t, const std::string& path) {
  if (t.rows.empty()) throw InputError("'" + path + "' contains no data rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(t.rows.front().size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.rows[i][j];
    }
  }
  return m;
}

std::string simplex_key(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d read_vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("expected a 3-vector, got " + j.dump());
  return {parse_double(j[0]), parse_double(j[1]), parse_double(j[2])};
}

/// Points written by write_state_json come back bit for bit; others are projected.
SpherePoint read_sphere_point(const json& j) {
  const Eigen::Vector3d v = read_vec3(j);
  return std::abs(v.norm() - 1.0) < 1e-12 ? SpherePoint(v) : normalized(v);
}

json energy_json(const EnergyConfig& e) {
  return {{"kind", e.kind == EnergyConfig::Kind::kHarmonic ? "harmonic" : "spring"},
          {"k", number12(e.k)},
          {"rest", number12(e.rest)}};
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) { return to_matrix(read_table(path), path); }

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_number(m(i, j));
    out << '\n';
  }
}

PointCloud read_point_cloud(const std::string& path) { return PointCloud(read_matrix_csv(path)); }

DistanceMatrix read_distance_matrix(const std::string& path) { return DistanceMatrix(read_matrix_csv(path)); }

FilteredComplex read_complex_json(const std::string& path) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_array()) throw InputError("complex description must be a JSON list");
  std::vector<FilteredSimplex> list;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("vertices") || !item.contains("value")) {
      throw InputError("complex entries need 'vertices' and 'value'");
    }
    std::vector<Vertex> vs;
    try {
      vs = item.at("vertices").get<std::vector<Vertex>>();
    } catch (const json::exception&) {
      throw InputError("'vertices' must be a list of integers, got " + item.at("vertices").dump());
    }
    list.push_back({Simplex(std::span<const Vertex>(vs)), parse_double(item.at("value"))});
  }
  return load_complex(std::move(list));
}

void write_barcode_csv(const std::string& path, const std::vector<Barcode>& barcodes) {
  std::ofstream out = open_out(path);
  out << "dimension,birth,death\n";
  for (const auto& bc : barcodes) {
    for (const auto& b : bc.bars) out << b.dimension << ',' << format_number(b.birth) << ',' << format_number(b.death) << '\n';
  }
}

void write_cocycles_json(const std::string& path, const std::vector<Barcode>& barcodes) {
  json arr = json::array();
  for (const auto& bc : barcodes) {
    for (std::size_t i = 0; i < bc.bars.size(); ++i) {
      const Bar& b = bc.bars[i];
      json coeffs = json::object();
      for (const auto& [s, v] : b.representative.coefficients()) coeffs[simplex_key(s)] = v;
      arr.push_back({{"dimension", b.dimension},
                     {"index", i},
                     {"birth", number12(b.birth)},
                     {"death", number12(b.death)},
                     {"prime", bc.prime},
                     {"cocycle", std::move(coeffs)}});
    }
  }
  std::ofstream out = open_out(path);
  out << arr.dump(1) << '\n';
}

void write_coordinates_csv(const std::string& path, const CoordinateTable& t) {
  std::ofstream out = open_out(path);
  out << (t.spherical() ? "vertex_id,azimuth,elevation\n" : "vertex_id,angle\n");
  for (Eigen::Index i = 0; i < t.values.rows(); ++i) {
    out << t.ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < t.values.cols(); ++j) out << ',' << format_number(t.values(i, j));
    out << '\n';
  }
}

CoordinateTable read_coordinates_csv(const std::string& path) {
  const Table t = read_table(path);
  const Eigen::MatrixXd m = to_matrix(t, path);
  if (m.cols() != 2 && m.cols() != 3) {
    throw InputError("'" + path + "' must have columns vertex_id,angle or vertex_id,azimuth,elevation");
  }
  CoordinateTable out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double id = m(i, 0);
    if (id < 0 || id != std::floor(id)) throw InputError("'" + path + "': vertex ids must be non-negative integers");
    out.ids.push_back(static_cast<Vertex>(id));
  }
  out.values = m.rightCols(m.cols() - 1);
  return out;
}

void write_dataset(const std::string& prefix, const Dataset& d) {
  write_matrix_csv(prefix + ".csv", d.cloud.points());
  CoordinateTable truth;
  for (Eigen::Index i = 0; i < d.truth.rows(); ++i) truth.ids.push_back(static_cast<Vertex>(i));
  truth.values = d.truth;
  write_coordinates_csv(prefix + "_truth.csv", truth);
  if (!d.labels.empty()) {
    std::ofstream out = open_out(prefix + "_labels.csv");
    out << "vertex_id,label\n";
    for (std::size_t i = 0; i < d.labels.size(); ++i) out << i << ',' << d.labels[i] << '\n';
  }
}

std::vector<int> read_labels_csv(const std::string& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.cols() != 2) throw InputError("'" + path + "' must have columns vertex_id,label");
  std::vector<int> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto id = static_cast<std::size_t>(m(i, 0));
    if (id >= out.size()) throw InputError("'" + path + "': vertex id out of range");
    out[id] = static_cast<int>(m(i, 1));
  }
  return out;
}

void write_trace_csv(const std::string& path, const std::vector<double>& trace) {
  std::ofstream out = open_out(path);
  out << "iteration,energy\n";
  for (std::size_t i = 0; i < trace.size(); ++i) out << i << ',' << format_number(trace[i]) << '\n';
}

void write_run_report_json(const std::string& path, const RunReport& report, const PipelineResult* pipeline) {
  json j;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  j["final_center_norm"] = number12(report.final_center_norm);
  j["max_displacement"] = number12(report.max_displacement);
  if (!report.energy_trace.empty()) {
    j["initial_energy"] = number12(report.energy_trace.front());
    j["final_energy"] = number12(report.energy_trace.back());
  }
  if (pipeline) {
    const PipelineResult& p = *pipeline;
    j["dimension"] = p.barcode.dimension;
    j["prime"] = p.barcode.prime;
    j["bar"] = {{"birth", number12(p.bar.birth)}, {"death", number12(p.bar.death)}};
    j["epsilon"] = number12(p.epsilon);
    j["energy"] = energy_json(p.energy);
    j["vertices"] = p.coordinates.ids.size();
    if (p.sphere) j["triangles"] = p.sphere->triangles.size();
    if (p.circle) j["edges"] = p.circle->edges.size();
    if (p.pairing) j["pairing"] = *p.pairing;
    if (p.initial_degree) j["initial_degree"] = number12(*p.initial_degree);
    if (p.final_degree) j["final_degree"] = number12(*p.final_degree);
  }
  std::ofstream out = open_out(path);
  out << j.dump(1) << '\n';
}

void write_state_json(const std::string& path, const SphericalMapState& m, const EnergyConfig& e) {
  json simplices = json::array();
  for (const auto& fs : m.complex.simplices()) {
    std::vector<Vertex> vs(fs.simplex.vertices().begin(), fs.simplex.vertices().end());
    simplices.push_back({{"vertices", vs}, {"value", fs.value}});
  }
  json positions = json::array();
  for (const auto& p : m.positions) positions.push_back(vec3(p));
  json tris = json::array();
  for (const auto& t : m.triangles) {
    std::vector<Vertex> vs(t.simplex.vertices().begin(), t.simplex.vertices().end());
    tris.push_back({{"vertices", vs},
                    {"barycenter", vec3(t.barycenter)},
                    {"orientation", t.orientation},
                    {"winding", t.winding}});
  }
  json j = {{"scale_limit", m.complex.scale_limit()},
            {"simplices", std::move(simplices)},
            {"vertex_ids", m.vertex_ids},
            {"positions", std::move(positions)},
            {"triangles", std::move(tris)},
            {"basepoint", vec3(m.basepoint)},
            {"iteration", m.iteration},
            {"energy", {{"kind", e.kind == EnergyConfig::Kind::kHarmonic ? "harmonic" : "spring"},
                        {"k", e.k},
                        {"rest", e.rest}}}};
  std::ofstream out = open_out(path);
  out << j.dump() << '\n';
}

SphericalMapState read_state_json(const std::string& path, EnergyConfig* energy) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
    SphericalMapState m;
    std::vector<FilteredSimplex> list;
    for (const auto& item : j.at("simplices")) {
      const auto vs = item.at("vertices").get<std::vector<Vertex>>();
      list.push_back({Simplex(std::span<const Vertex>(vs)), parse_double(item.at("value"))});
    }
    m.complex = FilteredComplex(std::move(list), parse_double(j.at("scale_limit")));
    m.vertex_ids = j.at("vertex_ids").get<std::vector<Vertex>>();
    if (m.vertex_ids != m.complex.vertices()) throw InputError("state vertex ids do not match its complex");
    for (const auto& p : j.at("positions")) m.positions.push_back(read_sphere_point(p));
    if (m.positions.size() != m.vertex_ids.size()) throw InputError("state has the wrong number of positions");
    for (const auto& item : j.at("triangles")) {
      TriangleState t;
      const auto vs = item.at("vertices").get<std::vector<Vertex>>();
      t.simplex = Simplex(std::span<const Vertex>(vs));
      if (t.simplex.dim() != 2 || !m.complex.contains(t.simplex)) throw InputError("state triangle not in its complex");
      for (std::size_t k = 0; k < 3; ++k) t.corners[k] = m.local_index(t.simplex[k]);
      t.barycenter = read_sphere_point(item.at("barycenter"));
      t.orientation = item.at("orientation").get<int>() >= 0 ? 1 : -1;
      t.winding = item.at("winding").get<int>();
      m.triangles.push_back(t);
    }
    if (m.triangles.size() != m.complex.count(2)) throw InputError("state is missing triangle records");
    m.basepoint = read_sphere_point(j.at("basepoint"));
    m.iteration = j.at("iteration").get<std::size_t>();
    if (energy) {
      const json& e = j.at("energy");
      energy->kind = e.at("kind").get<std::string>() == "harmonic" ? EnergyConfig::Kind::kHarmonic
                                                                    : EnergyConfig::Kind::kSpring;
      energy->k = parse_double(e.at("k"));
      energy->rest = parse_double(e.at("rest"));
    }
    return m;
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not a valid map state: " + e.what());
  }
}

void write_metrics_json(const std::string& path, const RecoveryMetrics& metrics, const std::string& aligned_path) {
  const json j = {{"rms_geodesic", number12(metrics.rms_geodesic)},
                  {"max_geodesic", number12(metrics.max_geodesic)},
                  {"reflected", metrics.reflected},
                  {"aligned", aligned_path}};
  std::ofstream out = open_out(path);
  out << j.dump(1) << '\n';
}

}  // namespace sphcoord
