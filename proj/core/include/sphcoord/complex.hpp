#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace sphcoord {

using Vertex = std::int32_t;

/// Point cloud in R^d, one row per point.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(Eigen::MatrixXd points);

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(points_.cols()); }
  [[nodiscard]] const Eigen::MatrixXd& points() const { return points_; }
  [[nodiscard]] Eigen::VectorXd point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }

 private:
  Eigen::MatrixXd points_;
};

/// Symmetric dissimilarity matrix with zero diagonal. The triangle inequality
/// is not required.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Eigen::MatrixXd entries);

  static DistanceMatrix euclidean(const PointCloud& cloud);

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  [[nodiscard]] const Eigen::MatrixXd& entries() const { return entries_; }

  /// Smallest over all points of the largest distance to any other point.
  /// Above this scale the Rips complex is a cone and carries no homology.
  [[nodiscard]] double enclosing_radius() const;

 private:
  Eigen::MatrixXd entries_;
};

/// Sorted vertex tuple of length 1..4.
class Simplex {
 public:
  static constexpr int kMaxDim = 3;

  Simplex() = default;
  Simplex(std::initializer_list<Vertex> vertices);
  explicit Simplex(std::span<const Vertex> vertices);

  [[nodiscard]] int dim() const { return static_cast<int>(size_) - 1; }
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] Vertex operator[](std::size_t i) const { return vertices_[i]; }
  [[nodiscard]] std::span<const Vertex> vertices() const { return {vertices_.data(), size_}; }
  [[nodiscard]] bool contains(Vertex v) const;

  /// Face obtained by deleting the i-th vertex.
  [[nodiscard]] Simplex facet(std::size_t i) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return a.size_ == b.size_ && a.vertices_ == b.vertices_;
  }
  friend bool operator<(const Simplex& a, const Simplex& b);

 private:
  std::array<Vertex, 4> vertices_{-1, -1, -1, -1};
  std::uint8_t size_ = 0;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

struct FilteredSimplex {
  Simplex simplex;
  double value = 0.0;
};

/// Simplices of dimension <= 3 in filtration order, i.e. sorted by
/// (value, dimension, lexicographic vertex order). Closed under faces.
class FilteredComplex {
 public:
  FilteredComplex() = default;

  /// Takes an arbitrary list, sorts it and validates closure and monotonicity.
  /// `scale_limit` is the largest parameter the filtration was built for; it
  /// defaults to the largest filtration value.
  explicit FilteredComplex(std::vector<FilteredSimplex> simplices,
                           std::optional<double> scale_limit = std::nullopt);

  [[nodiscard]] std::size_t size() const { return simplices_.size(); }
  [[nodiscard]] const FilteredSimplex& operator[](std::size_t i) const { return simplices_[i]; }
  [[nodiscard]] const std::vector<FilteredSimplex>& simplices() const { return simplices_; }

  /// Filtration indices of all simplices of dimension `dim`, ascending.
  [[nodiscard]] const std::vector<std::size_t>& indices(int dim) const;
  [[nodiscard]] std::size_t count(int dim) const { return indices(dim).size(); }
  [[nodiscard]] int max_dim() const;

  [[nodiscard]] std::optional<std::size_t> find(const Simplex& s) const;
  [[nodiscard]] bool contains(const Simplex& s) const { return find(s).has_value(); }

  /// Filtration indices of the codimension-one cofaces of simplex i, ascending.
  [[nodiscard]] std::span<const std::size_t> cofacets(std::size_t i) const;

  /// Sorted vertex ids appearing as 0-simplices.
  [[nodiscard]] std::vector<Vertex> vertices() const;

  [[nodiscard]] double max_value() const;
  [[nodiscard]] double scale_limit() const { return scale_limit_; }

 private:
  void index();

  std::vector<FilteredSimplex> simplices_;
  std::array<std::vector<std::size_t>, 4> by_dim_;
  std::unordered_map<Simplex, std::size_t, SimplexHash> lookup_;
  std::vector<std::size_t> cofacet_offsets_;
  std::vector<std::size_t> cofacet_data_;
  double scale_limit_ = 0.0;
};

/// Filtered Vietoris-Rips complex: a simplex enters at the largest pairwise
/// distance among its vertices and is kept iff that value is <= max_scale.
FilteredComplex build_vr(const DistanceMatrix& d, int max_dim, double max_scale);

/// Subcomplex of simplices with filtration value <= epsilon.
FilteredComplex restrict(const FilteredComplex& c, double epsilon);

/// Subcomplex of simplices with dimension <= dim.
FilteredComplex skeleton(const FilteredComplex& c, int dim);

/// Builds a complex from an explicit simplex list. Missing faces are inserted
/// at the smallest value among their listed cofaces.
/// Throws InputError if a listed face has a larger value than a listed coface.
FilteredComplex load_complex(std::vector<FilteredSimplex> listed);

}  // namespace sphcoord
