#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphcoord/complex.hpp"

namespace sphcoord {

/// Coefficient assignment on the n-simplices of a complex, either over F_p
/// (prime() > 1) or over Z (prime() == 0). Omitted simplices carry 0.
class Cochain {
 public:
  Cochain() = default;
  Cochain(int degree, std::uint32_t prime);

  static Cochain integral(int degree) { return Cochain(degree, 0); }

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] std::uint32_t prime() const { return prime_; }
  [[nodiscard]] bool is_integral() const { return prime_ == 0; }

  [[nodiscard]] std::int64_t operator[](const Simplex& s) const;
  /// Stores value (reduced into [0, p) over F_p); zero erases the entry.
  void set(const Simplex& s, std::int64_t value);
  void add(const Simplex& s, std::int64_t value);

  [[nodiscard]] const std::map<Simplex, std::int64_t>& coefficients() const { return coeffs_; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] std::size_t support_size() const { return coeffs_.size(); }

  friend bool operator==(const Cochain&, const Cochain&) = default;

 private:
  [[nodiscard]] std::int64_t normalize(std::int64_t v) const;

  int degree_ = 0;
  std::uint32_t prime_ = 0;
  std::map<Simplex, std::int64_t> coeffs_;
};

bool is_prime(std::uint32_t p);

/// (d f)(v_0..v_{n+1}) = sum_i (-1)^i f(v_0..^v_i..v_{n+1}), evaluated on every
/// (degree+1)-simplex of c.
Cochain coboundary(const Cochain& f, const FilteredComplex& c);

/// True iff coboundary(f, c) vanishes.
bool is_cocycle(const Cochain& f, const FilteredComplex& c);

/// Evaluation of a cochain on a chain given as simplex -> integer weight.
std::int64_t evaluate(const Cochain& f, const std::map<Simplex, std::int64_t>& chain);

struct Bar {
  int dimension = 0;
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();
  /// Cocycle over F_p on the simplices entering at or after the birth simplex.
  Cochain representative;
  std::size_t birth_simplex = 0;
  std::optional<std::size_t> death_simplex;

  [[nodiscard]] bool essential() const { return !death_simplex.has_value(); }
  /// Death, or the filtration's scale limit for essential bars.
  [[nodiscard]] double effective_death(double scale_limit) const;
};

/// Persistence barcode in one dimension. Births and deaths use the homological
/// convention (a class is born when its cycle closes and dies when it is filled).
struct Barcode {
  int dimension = 0;
  std::uint32_t prime = 47;
  double scale_limit = 0.0;
  /// Sorted by persistence (longest first), ties by earlier birth.
  std::vector<Bar> bars;

  [[nodiscard]] double persistence(const Bar& b) const { return b.effective_death(scale_limit) - b.birth; }
  [[nodiscard]] std::size_t alive_at(double t) const;
};

/// Persistent cohomology of c in dimension `dim` over F_prime with one
/// representative cocycle per bar. Zero-length bars are dropped.
Barcode compute_barcode(const FilteredComplex& c, int dim, std::uint32_t prime = 47);

struct BarSelection {
  enum class Kind { kLongest, kShortest, kIndex, kInterval };
  Kind kind = Kind::kLongest;
  std::size_t index = 0;
  double birth = 0.0;
  double death = 0.0;

  /// Parses "longest", "shortest", "index:K" / "K", or "BIRTH,DEATH".
  static BarSelection parse(const std::string& text);
};

/// Throws TopologyError("no feature in dimension d") on an empty barcode.
const Bar& select_bar(const Barcode& barcode, const BarSelection& selection = {});

/// birth + fraction * (effective death - birth); the midpoint by default.
double default_epsilon(const Bar& bar, double scale_limit, double fraction = 0.5);

/// Representative restricted to the subcomplex X_epsilon of c, checked to be a
/// cocycle there.
Cochain cocycle_at(const Bar& bar, const FilteredComplex& c, double epsilon);

/// Replaces F_p coefficients by representatives in [-(p-1)/2, (p-1)/2] and
/// checks the integer cocycle condition on c. Throws TopologyError otherwise.
Cochain lift_to_integers(const Cochain& alpha_p, const FilteredComplex& c);

}  // namespace sphcoord
