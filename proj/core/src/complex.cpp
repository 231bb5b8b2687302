#include "sphcoord/complex.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>

#include "sphcoord/errors.hpp"

namespace sphcoord {

PointCloud::PointCloud(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw InputError("point cloud needs at least one point of dimension >= 1");
  }
  if (!points_.allFinite()) throw InputError("point cloud contains non-finite coordinates");
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw InputError("distance matrix must be square");
  if (entries_.rows() < 1) throw InputError("distance matrix is empty");
  const Eigen::Index n = entries_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (entries_(i, i) != 0.0) throw InputError("distance matrix must have a zero diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = entries_(i, j);
      if (!std::isfinite(v) || v < 0.0) throw InputError("distance matrix entries must be finite and >= 0");
      if (std::abs(v - entries_(j, i)) > 1e-12 * std::max(1.0, std::abs(v))) {
        throw InputError("distance matrix must be symmetric");
      }
    }
  }
  // exact symmetrization
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
}

DistanceMatrix DistanceMatrix::euclidean(const PointCloud& cloud) {
  const auto& p = cloud.points();
  const Eigen::Index n = p.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (p.row(i) - p.row(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(d));
}

double DistanceMatrix::enclosing_radius() const {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    best = std::min(best, entries_.row(i).maxCoeff());
  }
  return best;
}

// ---------------------------------------------------------------------------

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::span<const Vertex>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const Vertex> vertices) {
  if (vertices.empty() || vertices.size() > 4) {
    throw InputError("a simplex has between 1 and 4 vertices");
  }
  size_ = static_cast<std::uint8_t>(vertices.size());
  std::copy(vertices.begin(), vertices.end(), vertices_.begin());
  std::sort(vertices_.begin(), vertices_.begin() + size_);
  for (std::size_t i = 0; i < size_; ++i) {
    if (vertices_[i] < 0) throw InputError("vertex ids must be non-negative");
    if (i > 0 && vertices_[i] == vertices_[i - 1]) throw InputError("repeated vertex in simplex");
  }
}

bool Simplex::contains(Vertex v) const {
  return std::find(vertices_.begin(), vertices_.begin() + size_, v) != vertices_.begin() + size_;
}

Simplex Simplex::facet(std::size_t i) const {
  std::array<Vertex, 3> out{};
  std::size_t k = 0;
  for (std::size_t j = 0; j < size_; ++j) {
    if (j != i) out[k++] = vertices_[j];
  }
  return Simplex(std::span<const Vertex>(out.data(), k));
}

std::string Simplex::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) os << ',';
    os << vertices_[i];
  }
  os << ']';
  return os.str();
}

bool operator<(const Simplex& a, const Simplex& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  return std::lexicographical_compare(a.vertices_.begin(), a.vertices_.begin() + a.size_,
                                      b.vertices_.begin(), b.vertices_.begin() + b.size_);
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = s.size();
  for (Vertex v : s.vertices()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------

namespace {

bool filtration_less(const FilteredSimplex& a, const FilteredSimplex& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.simplex < b.simplex;  // dimension first, then lexicographic
}

}  // namespace

FilteredComplex::FilteredComplex(std::vector<FilteredSimplex> simplices,
                                 std::optional<double> scale_limit)
    : simplices_(std::move(simplices)) {
  for (const auto& s : simplices_) {
    if (!std::isfinite(s.value)) throw InputError("filtration values must be finite");
  }
  std::sort(simplices_.begin(), simplices_.end(), filtration_less);
  index();
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& s = simplices_[i];
    if (s.simplex.dim() == 0) continue;
    for (std::size_t f = 0; f < s.simplex.size(); ++f) {
      const Simplex face = s.simplex.facet(f);
      auto it = lookup_.find(face);
      if (it == lookup_.end()) {
        throw InputError("complex is not closed: face " + face.to_string() + " of " +
                         s.simplex.to_string() + " is missing");
      }
      if (simplices_[it->second].value > s.value) {
        throw InputError("face " + face.to_string() + " enters after its coface " +
                         s.simplex.to_string());
      }
    }
  }
  scale_limit_ = scale_limit.value_or(max_value());
  if (scale_limit_ < max_value()) scale_limit_ = max_value();
}

void FilteredComplex::index() {
  for (auto& v : by_dim_) v.clear();
  lookup_.clear();
  lookup_.reserve(simplices_.size());
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& s = simplices_[i].simplex;
    by_dim_[static_cast<std::size_t>(s.dim())].push_back(i);
    if (!lookup_.emplace(s, i).second) {
      throw InputError("duplicate simplex " + s.to_string());
    }
  }
  // cofacet lists in CSR layout, filled in filtration order
  std::vector<std::size_t> counts(simplices_.size() + 1, 0);
  for (const auto& fs : simplices_) {
    if (fs.simplex.dim() == 0) continue;
    for (std::size_t f = 0; f < fs.simplex.size(); ++f) {
      auto it = lookup_.find(fs.simplex.facet(f));
      if (it != lookup_.end()) ++counts[it->second + 1];
    }
  }
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  cofacet_offsets_ = counts;
  cofacet_data_.assign(counts.back(), 0);
  std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& s = simplices_[i].simplex;
    if (s.dim() == 0) continue;
    for (std::size_t f = 0; f < s.size(); ++f) {
      auto it = lookup_.find(s.facet(f));
      if (it != lookup_.end()) cofacet_data_[fill[it->second]++] = i;
    }
  }
}

const std::vector<std::size_t>& FilteredComplex::indices(int dim) const {
  static const std::vector<std::size_t> kEmpty;
  if (dim < 0 || dim > Simplex::kMaxDim) return kEmpty;
  return by_dim_[static_cast<std::size_t>(dim)];
}

int FilteredComplex::max_dim() const {
  for (int d = Simplex::kMaxDim; d >= 0; --d) {
    if (!by_dim_[static_cast<std::size_t>(d)].empty()) return d;
  }
  return -1;
}

std::optional<std::size_t> FilteredComplex::find(const Simplex& s) const {
  auto it = lookup_.find(s);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> FilteredComplex::cofacets(std::size_t i) const {
  return {cofacet_data_.data() + cofacet_offsets_[i], cofacet_offsets_[i + 1] - cofacet_offsets_[i]};
}

std::vector<Vertex> FilteredComplex::vertices() const {
  std::vector<Vertex> out;
  out.reserve(by_dim_[0].size());
  for (std::size_t i : by_dim_[0]) out.push_back(simplices_[i].simplex[0]);
  std::sort(out.begin(), out.end());
  return out;
}

double FilteredComplex::max_value() const {
  return simplices_.empty() ? 0.0 : simplices_.back().value;
}

// ---------------------------------------------------------------------------

FilteredComplex build_vr(const DistanceMatrix& d, int max_dim, double max_scale) {
  if (max_dim < 1 || max_dim > Simplex::kMaxDim) throw InputError("max_dim must be 1, 2 or 3");
  if (!(max_scale > 0.0)) throw InputError("max_scale must be positive");
  const auto n = static_cast<Vertex>(d.size());

  std::vector<FilteredSimplex> out;
  for (Vertex i = 0; i < n; ++i) out.push_back({Simplex{i}, 0.0});

  // forward neighbours (higher index) within scale, sorted
  std::vector<std::vector<Vertex>> up(static_cast<std::size_t>(n));
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (v <= max_scale) {
        up[static_cast<std::size_t>(i)].push_back(j);
        out.push_back({Simplex{i, j}, v});
      }
    }
  }
  auto dist = [&](Vertex a, Vertex b) {
    return d(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  };
  auto intersect = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  };

  if (max_dim >= 2) {
    for (Vertex i = 0; i < n; ++i) {
      const auto& ni = up[static_cast<std::size_t>(i)];
      for (Vertex j : ni) {
        const auto common = intersect(ni, up[static_cast<std::size_t>(j)]);
        for (Vertex k : common) {
          const double v = std::max({dist(i, j), dist(i, k), dist(j, k)});
          out.push_back({Simplex{i, j, k}, v});
          if (max_dim >= 3) {
            for (Vertex l : intersect(common, up[static_cast<std::size_t>(k)])) {
              const double w = std::max({v, dist(i, l), dist(j, l), dist(k, l)});
              out.push_back({Simplex{i, j, k, l}, w});
            }
          }
        }
      }
    }
  }
  return FilteredComplex(std::move(out), max_scale);
}

FilteredComplex restrict(const FilteredComplex& c, double epsilon) {
  if (epsilon < 0.0) throw InputError("epsilon must be >= 0");
  std::vector<FilteredSimplex> kept;
  for (const auto& s : c.simplices()) {
    if (s.value <= epsilon) kept.push_back(s);
  }
  return FilteredComplex(std::move(kept), std::min(epsilon, c.scale_limit()));
}

FilteredComplex skeleton(const FilteredComplex& c, int dim) {
  std::vector<FilteredSimplex> kept;
  for (const auto& s : c.simplices()) {
    if (s.simplex.dim() <= dim) kept.push_back(s);
  }
  return FilteredComplex(std::move(kept), c.scale_limit());
}

FilteredComplex load_complex(std::vector<FilteredSimplex> listed) {
  std::map<Simplex, double> values;
  for (const auto& s : listed) {
    if (!std::isfinite(s.value)) throw InputError("filtration values must be finite");
    auto [it, inserted] = values.emplace(s.simplex, s.value);
    if (!inserted) {
      throw InputError("simplex " + s.simplex.to_string() + " listed twice");
    }
  }
  // listed faces must not exceed any listed coface
  for (const auto& s : listed) {
    const auto& verts = s.simplex.vertices();
    const std::size_t n = verts.size();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      std::array<Vertex, 4> sub{};
      std::size_t k = 0;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (1u << b)) sub[k++] = verts[b];
      }
      const Simplex face(std::span<const Vertex>(sub.data(), k));
      auto it = values.find(face);
      if (it != values.end() && it->second > s.value) {
        std::ostringstream os;
        os << "inconsistent filtration: face " << face.to_string() << " at " << it->second
           << " exceeds coface " << s.simplex.to_string() << " at " << s.value;
        throw InputError(os.str());
      }
    }
  }
  // closure, from high to low dimension
  for (int dim = Simplex::kMaxDim; dim >= 1; --dim) {
    std::vector<std::pair<Simplex, double>> current;
    for (const auto& [s, v] : values) {
      if (s.dim() == dim) current.emplace_back(s, v);
    }
    for (const auto& [s, v] : current) {
      for (std::size_t f = 0; f < s.size(); ++f) {
        const Simplex face = s.facet(f);
        auto it = values.find(face);
        if (it == values.end()) {
          values.emplace(face, v);
        } else if (it->second > v) {
          it->second = v;  // only reachable for auto-inserted faces
        }
      }
    }
  }
  std::vector<FilteredSimplex> out;
  out.reserve(values.size());
  for (const auto& [s, v] : values) out.push_back({s, v});
  return FilteredComplex(std::move(out));
}

}  // namespace sphcoord
