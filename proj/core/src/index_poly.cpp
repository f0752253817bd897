#include "radsob/index_poly.hpp"

#include <cmath>
#include <sstream>

#include "radsob/errors.hpp"

namespace radsob {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_str();
}

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("multi-index needs dimension >= 1");
  for (int a : entries_) {
    if (a < 0) throw ConfigError("multi-index entries must be nonnegative");
  }
}

MultiIndex MultiIndex::zero(int dim) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0)); }

MultiIndex MultiIndex::unit(int dim, int i) {
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const noexcept {
  int n = 0;
  for (int a : entries_) n += a;
  return n;
}

mpz_class MultiIndex::factorial() const {
  mpz_class result = 1;
  for (int a : entries_) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(a));
    result *= f;
  }
  return result;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dim() != dim()) throw ConfigError("multi-index dimension mismatch");
  std::vector<int> e = entries_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.entries_[i];
  return MultiIndex(std::move(e));
}

std::optional<MultiIndex> MultiIndex::minus_unit(int i) const {
  if (entries_.at(static_cast<std::size_t>(i)) == 0) return std::nullopt;
  std::vector<int> e = entries_;
  --e[static_cast<std::size_t>(i)];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// DIndex

DIndex::DIndex(int dim, std::vector<int> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim_ < 1) throw ConfigError("d-index needs dimension >= 1");
  for (int i : entries_) {
    if (i < 1 || i > dim_) throw ConfigError("d-index entries must lie in {1,...,d}");
  }
}

MultiIndex DIndex::collapse() const {
  std::vector<int> counts(static_cast<std::size_t>(dim_), 0);
  for (int i : entries_) ++counts[static_cast<std::size_t>(i - 1)];
  return MultiIndex(std::move(counts));
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

void enumerate_rec(int pos, int remaining, std::vector<int>& current, std::vector<MultiIndex>& out) {
  const auto last = static_cast<int>(current.size()) - 1;
  if (pos == last) {
    current[static_cast<std::size_t>(pos)] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    current[static_cast<std::size_t>(pos)] = a;
    enumerate_rec(pos + 1, remaining - a, current, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi(int dim, int n) {
  if (dim < 1) throw ConfigError("enumerate_multi: dimension must be >= 1");
  if (n < 0) throw ConfigError("enumerate_multi: order must be >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> current(static_cast<std::size_t>(dim), 0);
  enumerate_rec(0, n, current, out);
  return out;
}

std::vector<MultiIndex> enumerate_multi_upto(int dim, int n) {
  std::vector<MultiIndex> out;
  for (int m = 0; m <= n; ++m) {
    auto level = enumerate_multi(dim, m);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

void for_each_dindex(int dim, int n, const std::function<void(const DIndex&)>& visit) {
  if (dim < 1 || n < 0) throw ConfigError("for_each_dindex: need dim >= 1 and n >= 0");
  std::vector<int> current(static_cast<std::size_t>(n), 1);
  while (true) {
    visit(DIndex(dim, current));
    int pos = n - 1;
    while (pos >= 0 && current[static_cast<std::size_t>(pos)] == dim) {
      current[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++current[static_cast<std::size_t>(pos)];
  }
}

std::vector<DIndex> enumerate_dindex(int dim, int n) {
  std::vector<DIndex> out;
  for_each_dindex(dim, n, [&](const DIndex& i) { out.push_back(i); });
  return out;
}

// ---------------------------------------------------------------------------
// MonomialPoly

MonomialPoly::MonomialPoly(int dim) : dim_(dim) {
  if (dim_ < 1) throw ConfigError("polynomial dimension must be >= 1");
}

MonomialPoly MonomialPoly::constant(int dim, const Rational& c) {
  MonomialPoly p(dim);
  p.add_term(MultiIndex::zero(dim), c);
  return p;
}

MonomialPoly MonomialPoly::monomial(const MultiIndex& alpha, const Rational& c) {
  MonomialPoly p(alpha.dim());
  p.add_term(alpha, c);
  return p;
}

MonomialPoly MonomialPoly::coordinate_product(const DIndex& index) {
  return monomial(index.collapse());
}

MonomialPoly MonomialPoly::squared_norm(int dim) {
  MonomialPoly p(dim);
  for (int i = 0; i < dim; ++i) {
    p.add_term(MultiIndex::unit(dim, i) + MultiIndex::unit(dim, i), 1);
  }
  return p;
}

void MonomialPoly::add_term(const MultiIndex& alpha, const Rational& value) {
  if (alpha.dim() != dim_) throw ConfigError("monomial dimension mismatch");
  // Callers may pass an unreduced p/q; GMP arithmetic needs canonical operands.
  Rational c = value;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MonomialPoly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> MonomialPoly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  const int deg = terms_.begin()->first.order();
  for (const auto& [alpha, c] : terms_) {
    if (alpha.order() != deg) return std::nullopt;
  }
  return deg;
}

MonomialPoly& MonomialPoly::operator+=(const MonomialPoly& other) {
  if (other.dim_ != dim_) throw ConfigError("polynomial dimension mismatch");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

MonomialPoly& MonomialPoly::operator-=(const MonomialPoly& other) {
  if (other.dim_ != dim_) throw ConfigError("polynomial dimension mismatch");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

MonomialPoly& MonomialPoly::operator*=(const Rational& value) {
  Rational c = value;
  c.canonicalize();
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coeff] : terms_) coeff *= c;
  return *this;
}

MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b) {
  if (a.dim_ != b.dim_) throw ConfigError("polynomial dimension mismatch");
  MonomialPoly out(a.dim_);
  for (const auto& [alpha, ca] : a.terms_) {
    for (const auto& [beta, cb] : b.terms_) out.add_term(alpha + beta, ca * cb);
  }
  return out;
}

bool MonomialPoly::operator==(const MonomialPoly& other) const {
  return dim_ == other.dim_ && terms_ == other.terms_;
}

double MonomialPoly::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw ConfigError("evaluation point dimension mismatch");
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double term = c.get_d();
    for (int i = 0; i < dim_; ++i) {
      for (int e = 0; e < alpha[i]; ++e) term *= x[static_cast<std::size_t>(i)];
    }
    sum += term;
  }
  return sum;
}

MonomialPoly pow(const MonomialPoly& base, int exponent) {
  if (exponent < 0) throw ConfigError("polynomial power must be >= 0");
  MonomialPoly result = MonomialPoly::constant(base.dim(), 1);
  for (int e = 0; e < exponent; ++e) result = result * base;
  return result;
}

MonomialPoly laplacian(const MonomialPoly& poly) {
  const int d = poly.dim();
  MonomialPoly out(d);
  for (const auto& [alpha, c] : poly.terms()) {
    for (int i = 0; i < d; ++i) {
      const int a = alpha[i];
      if (a < 2) continue;
      std::vector<int> e(alpha.entries().begin(), alpha.entries().end());
      e[static_cast<std::size_t>(i)] -= 2;
      out += MonomialPoly::monomial(MultiIndex(std::move(e)), c * Rational(a * (a - 1)));
    }
  }
  return out;
}

MonomialPoly laplacian_power(const MonomialPoly& poly, int j) {
  if (j < 0) throw ConfigError("laplacian power must be >= 0");
  MonomialPoly out = poly;
  for (int i = 0; i < j && !out.is_zero(); ++i) out = laplacian(out);
  return out;
}

MonomialPoly p_poly(const MultiIndex& alpha, int j) {
  const int n = alpha.order();
  if (j < 0 || 2 * j > n) throw ConfigError("p_poly: order j must satisfy 0 <= j <= floor(n/2)");
  mpz_class jfac;
  mpz_fac_ui(jfac.get_mpz_t(), static_cast<unsigned long>(j));
  mpz_class denom = jfac;
  denom <<= static_cast<mp_bitcnt_t>(j);
  Rational scale(mpz_class(1), denom);
  scale.canonicalize();
  return laplacian_power(MonomialPoly::monomial(alpha), j) * scale;
}

MonomialPoly p_poly(const DIndex& index, int j) { return p_poly(index.collapse(), j); }

MonomialPoly homogenize(const MonomialPoly& poly, int degree) {
  const int d = poly.dim();
  const MonomialPoly r2 = MonomialPoly::squared_norm(d);
  MonomialPoly out(d);
  for (const auto& [alpha, c] : poly.terms()) {
    const int gap = degree - alpha.order();
    if (gap < 0 || gap % 2 != 0) {
      throw ConfigError("homogenize: degree gap must be even and nonnegative");
    }
    out += MonomialPoly::monomial(alpha, c) * pow(r2, gap / 2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// NumericPoly

NumericPoly::NumericPoly(const MonomialPoly& poly) : dim_(poly.dim()) {
  coeffs_.reserve(poly.terms().size());
  exponents_.reserve(poly.terms().size() * static_cast<std::size_t>(dim_));
  for (const auto& [alpha, c] : poly.terms()) {
    coeffs_.push_back(c.get_d());
    for (int i = 0; i < dim_; ++i) {
      exponents_.push_back(alpha[i]);
      max_exponent_ = std::max(max_exponent_, alpha[i]);
    }
  }
}

double NumericPoly::abs_coefficient_sum() const noexcept {
  double s = 0.0;
  for (double c : coeffs_) s += std::abs(c);
  return s;
}

double NumericPoly::eval(std::span<const double> x) const {
  if (coeffs_.empty()) return 0.0;
  if (static_cast<int>(x.size()) != dim_) throw ConfigError("evaluation point dimension mismatch");
  // Power table: powers[i * (max+1) + e] = x_i^e.
  const int stride = max_exponent_ + 1;
  double table[16 * 32];
  std::vector<double> heap;
  double* powers = table;
  const auto needed = static_cast<std::size_t>(dim_ * stride);
  if (needed > sizeof(table) / sizeof(double)) {
    heap.resize(needed);
    powers = heap.data();
  }
  for (int i = 0; i < dim_; ++i) {
    double* row = powers + i * stride;
    row[0] = 1.0;
    for (int e = 1; e < stride; ++e) row[e] = row[e - 1] * x[static_cast<std::size_t>(i)];
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double term = coeffs_[t];
    const int* exps = exponents_.data() + t * static_cast<std::size_t>(dim_);
    for (int i = 0; i < dim_; ++i) term *= powers[i * stride + exps[i]];
    sum += term;
  }
  return sum;
}

}  // namespace radsob
