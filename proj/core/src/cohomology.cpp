#include "sphcoord/cohomology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "sphcoord/errors.hpp"

namespace sphcoord {

namespace {

/// Arithmetic in F_p. Inverses come from a table for p < 2^16.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p_ < (1u << 16)) {
      inverse_.assign(p_, 0);
      inverse_[1] = 1;
      for (std::uint32_t a = 2; a < p_; ++a) {
        // inv(a) = -(p / a) * inv(p mod a)
        inverse_[a] = static_cast<std::uint32_t>(
            (p_ - (static_cast<std::uint64_t>(p_ / a) * inverse_[p_ % a]) % p_) % p_);
      }
    }
  }

  [[nodiscard]] std::uint32_t prime() const { return p_; }
  [[nodiscard]] std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % p_);
  }
  [[nodiscard]] std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  [[nodiscard]] std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  [[nodiscard]] std::uint32_t inv(std::uint32_t a) const {
    if (!inverse_.empty()) return inverse_[a];
    // extended Euclid for large primes
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      const std::int64_t q = r / nr;
      t = std::exchange(nt, t - q * nt);
      r = std::exchange(nr, r - q * nr);
    }
    return static_cast<std::uint32_t>(t < 0 ? t + p_ : t);
  }
  [[nodiscard]] std::uint32_t from_sign(int sign) const { return sign > 0 ? 1u : p_ - 1; }

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inverse_;
};

struct Entry {
  std::size_t row;
  std::uint32_t coeff;
};
using Column = std::vector<Entry>;

/// a += factor * b, both sorted by row.
void axpy(Column& a, const Column& b, std::uint32_t factor, const PrimeField& f, Column& scratch) {
  scratch.clear();
  scratch.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      scratch.push_back(a[i++]);
    } else if (i == a.size() || b[j].row < a[i].row) {
      scratch.push_back({b[j].row, f.mul(factor, b[j].coeff)});
      ++j;
    } else {
      const std::uint32_t c = f.add(a[i].coeff, f.mul(factor, b[j].coeff));
      if (c != 0) scratch.push_back({a[i].row, c});
      ++i;
      ++j;
    }
  }
  a.swap(scratch);
}

/// Coboundary column of simplex i: cofacets with sign (-1)^position of the
/// vertex that is not in simplex i.
Column coboundary_column(const FilteredComplex& c, std::size_t i, const PrimeField& f) {
  Column col;
  const Simplex& s = c[i].simplex;
  for (std::size_t j : c.cofacets(i)) {
    const Simplex& t = c[j].simplex;
    std::size_t pos = 0;
    while (pos < s.size() && t[pos] == s[pos]) ++pos;
    col.push_back({j, f.from_sign(pos % 2 == 0 ? 1 : -1)});
  }
  return col;
}

struct Reduction {
  std::unordered_map<std::size_t, std::size_t> column_of_pivot;  // pivot row -> column
  std::unordered_map<std::size_t, Column> reduced;               // R columns with a pivot
  std::unordered_map<std::size_t, Column> combination;           // V columns
  std::vector<std::size_t> zero_columns;                         // in processing order
};

/// Reduces the coboundary matrix restricted to `dim`-simplices, processing
/// columns in decreasing filtration order and using the earliest cofacet as
/// pivot. Columns listed in `cleared` are known to reduce to zero and skipped.
Reduction reduce(const FilteredComplex& c, int dim, const PrimeField& f,
                 const std::unordered_set<std::size_t>& cleared, bool track_combination) {
  Reduction red;
  Column scratch;
  const auto& order = c.indices(dim);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t col_index = *it;
    if (cleared.count(col_index)) continue;
    Column r = coboundary_column(c, col_index, f);
    Column v;
    if (track_combination) v.push_back({col_index, 1});
    while (!r.empty()) {
      auto owner = red.column_of_pivot.find(r.front().row);
      if (owner == red.column_of_pivot.end()) break;
      const Column& other = red.reduced.at(owner->second);
      const std::uint32_t factor = f.neg(f.mul(r.front().coeff, f.inv(other.front().coeff)));
      axpy(r, other, factor, f, scratch);
      if (track_combination) axpy(v, red.combination.at(owner->second), factor, f, scratch);
    }
    if (r.empty()) {
      red.zero_columns.push_back(col_index);
      if (track_combination) red.combination.emplace(col_index, std::move(v));
    } else {
      red.column_of_pivot.emplace(r.front().row, col_index);
      red.reduced.emplace(col_index, std::move(r));
      if (track_combination) red.combination.emplace(col_index, std::move(v));
    }
  }
  return red;
}

Cochain to_cochain(const Column& v, const FilteredComplex& c, int dim, std::uint32_t prime) {
  Cochain out(dim, prime);
  for (const auto& e : v) out.set(c[e.row].simplex, e.coeff);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Cochain::Cochain(int degree, std::uint32_t prime) : degree_(degree), prime_(prime) {
  if (degree < 0 || degree > Simplex::kMaxDim) throw InputError("cochain degree must be in [0, 3]");
  if (prime != 0 && !is_prime(prime)) throw InputError("coefficient modulus must be prime");
}

std::int64_t Cochain::normalize(std::int64_t v) const {
  if (prime_ == 0) return v;
  const auto p = static_cast<std::int64_t>(prime_);
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t Cochain::operator[](const Simplex& s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? 0 : it->second;
}

void Cochain::set(const Simplex& s, std::int64_t value) {
  if (s.dim() != degree_) throw InputError("simplex " + s.to_string() + " has the wrong degree for this cochain");
  value = normalize(value);
  if (value == 0) {
    coeffs_.erase(s);
  } else {
    coeffs_[s] = value;
  }
}

void Cochain::add(const Simplex& s, std::int64_t value) { set(s, (*this)[s] + value); }

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Cochain coboundary(const Cochain& f, const FilteredComplex& c) {
  if (f.degree() >= Simplex::kMaxDim) throw InputError("coboundary needs degree <= 2");
  Cochain out(f.degree() + 1, f.prime());
  for (std::size_t i : c.indices(f.degree() + 1)) {
    const Simplex& t = c[i].simplex;
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const std::int64_t v = f[t.facet(k)];
      sum += (k % 2 == 0) ? v : -v;
    }
    out.set(t, sum);
  }
  return out;
}

bool is_cocycle(const Cochain& f, const FilteredComplex& c) { return coboundary(f, c).is_zero(); }

std::int64_t evaluate(const Cochain& f, const std::map<Simplex, std::int64_t>& chain) {
  std::int64_t sum = 0;
  for (const auto& [s, w] : chain) sum += w * f[s];
  if (!f.is_integral()) {
    const auto p = static_cast<std::int64_t>(f.prime());
    sum %= p;
    if (sum < 0) sum += p;
  }
  return sum;
}

double Bar::effective_death(double scale_limit) const {
  return essential() ? std::max(scale_limit, birth) : death;
}

std::size_t Barcode::alive_at(double t) const {
  return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [t](const Bar& b) {
    return b.birth <= t && t < b.death;
  }));
}

Barcode compute_barcode(const FilteredComplex& c, int dim, std::uint32_t prime) {
  if (!is_prime(prime)) throw InputError("p = " + std::to_string(prime) + " is not prime");
  if (dim < 0 || dim > 2) throw InputError("barcode dimension must be 0, 1 or 2");
  const PrimeField field(prime);

  // clearing: pivots of the (dim-1) reduction reduce to zero here
  std::unordered_set<std::size_t> cleared;
  if (dim > 0) {
    const Reduction lower = reduce(c, dim - 1, field, {}, false);
    for (const auto& [row, col] : lower.column_of_pivot) cleared.insert(row);
  }
  const Reduction red = reduce(c, dim, field, cleared, true);

  Barcode out;
  out.dimension = dim;
  out.prime = prime;
  out.scale_limit = c.scale_limit();
  for (const auto& [row, col] : red.column_of_pivot) {
    const double birth = c[col].value;
    const double death = c[row].value;
    if (death <= birth) continue;
    Bar b;
    b.dimension = dim;
    b.birth = birth;
    b.death = death;
    b.birth_simplex = col;
    b.death_simplex = row;
    b.representative = to_cochain(red.combination.at(col), c, dim, prime);
    out.bars.push_back(std::move(b));
  }
  for (std::size_t col : red.zero_columns) {
    Bar b;
    b.dimension = dim;
    b.birth = c[col].value;
    b.birth_simplex = col;
    b.representative = to_cochain(red.combination.at(col), c, dim, prime);
    out.bars.push_back(std::move(b));
  }
  std::sort(out.bars.begin(), out.bars.end(), [&out](const Bar& a, const Bar& b) {
    const double pa = out.persistence(a), pb = out.persistence(b);
    if (pa != pb) return pa > pb;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.birth_simplex < b.birth_simplex;
  });
  return out;
}

BarSelection BarSelection::parse(const std::string& text) {
  BarSelection s;
  if (text == "longest") return s;
  if (text == "shortest") {
    s.kind = Kind::kShortest;
    return s;
  }
  std::string body = text;
  if (body.rfind("index:", 0) == 0) body = body.substr(6);
  if (auto comma = body.find(','); comma != std::string::npos) {
    s.kind = Kind::kInterval;
    try {
      s.birth = std::stod(body.substr(0, comma));
      const std::string d = body.substr(comma + 1);
      s.death = (d == "inf") ? std::numeric_limits<double>::infinity() : std::stod(d);
    } catch (const std::exception&) {
      throw InputError("cannot parse bar interval '" + text + "'");
    }
    return s;
  }
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
  if (ec != std::errc{} || ptr != body.data() + body.size()) {
    throw InputError("unknown bar selection '" + text + "'");
  }
  s.kind = Kind::kIndex;
  s.index = k;
  return s;
}

const Bar& select_bar(const Barcode& barcode, const BarSelection& selection) {
  if (barcode.bars.empty()) {
    throw TopologyError("no feature in dimension " + std::to_string(barcode.dimension));
  }
  switch (selection.kind) {
    case BarSelection::Kind::kLongest:
      return barcode.bars.front();
    case BarSelection::Kind::kShortest: {
      const Bar* best = &barcode.bars.front();
      for (const auto& b : barcode.bars) {
        const double pb = barcode.persistence(b), pbest = barcode.persistence(*best);
        if (pb < pbest || (pb == pbest && b.birth < best->birth)) best = &b;
      }
      return *best;
    }
    case BarSelection::Kind::kIndex:
      if (selection.index >= barcode.bars.size()) {
        throw TopologyError("bar index " + std::to_string(selection.index) + " out of range (" +
                            std::to_string(barcode.bars.size()) + " bars)");
      }
      return barcode.bars[selection.index];
    case BarSelection::Kind::kInterval: {
      const Bar* best = nullptr;
      double best_err = std::numeric_limits<double>::infinity();
      for (const auto& b : barcode.bars) {
        const double dd = (std::isinf(selection.death) && b.essential())
                              ? 0.0
                              : std::abs(b.effective_death(barcode.scale_limit) -
                                         (std::isinf(selection.death) ? barcode.scale_limit : selection.death));
        const double err = std::abs(b.birth - selection.birth) + dd;
        if (err < best_err) {
          best_err = err;
          best = &b;
        }
      }
      return *best;
    }
  }
  throw InputError("invalid bar selection");
}

double default_epsilon(const Bar& bar, double scale_limit, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw InputError("epsilon fraction must lie in [0, 1)");
  return bar.birth + fraction * (bar.effective_death(scale_limit) - bar.birth);
}

Cochain cocycle_at(const Bar& bar, const FilteredComplex& c, double epsilon) {
  if (epsilon < bar.birth || (!bar.essential() && epsilon >= bar.death)) {
    std::ostringstream os;
    os << "epsilon " << epsilon << " outside the bar lifetime [" << bar.birth << ", " << bar.death << ")";
    throw InputError(os.str());
  }
  const FilteredComplex sub = restrict(c, epsilon);
  Cochain out(bar.representative.degree(), bar.representative.prime());
  for (const auto& [s, v] : bar.representative.coefficients()) {
    if (sub.contains(s)) out.set(s, v);
  }
  if (!is_cocycle(out, sub)) {
    std::ostringstream os;
    os << "representative is not a cocycle at epsilon " << epsilon
       << "; recompute the barcode with a representative valid at this parameter";
    throw TopologyError(os.str());
  }
  return out;
}

Cochain lift_to_integers(const Cochain& alpha_p, const FilteredComplex& c) {
  if (alpha_p.is_integral()) throw InputError("cochain already has integer coefficients");
  const auto p = static_cast<std::int64_t>(alpha_p.prime());
  const std::int64_t half = (p - 1) / 2;
  Cochain out = Cochain::integral(alpha_p.degree());
  for (const auto& [s, v] : alpha_p.coefficients()) out.set(s, v > half ? v - p : v);
  if (!is_cocycle(out, c)) {
    throw TopologyError("lift failed; choose a different prime (p = " + std::to_string(p) + ")");
  }
  return out;
}

}  // namespace sphcoord
