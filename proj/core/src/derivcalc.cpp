#include "radsob/derivcalc.hpp"

#include <cmath>
#include <limits>

#include "radsob/errors.hpp"

namespace radsob {

int RadialExpansion::max_order() const noexcept {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.order);
  return m;
}

RadialExpansion partial_expansion(const MultiIndex& alpha) {
  const int n = alpha.order();
  RadialExpansion e{alpha.dim(), {}};
  for (int j = (n + 1) / 2; j <= n; ++j) {
    MonomialPoly poly = p_poly(alpha, n - j);
    if (!poly.is_zero()) e.terms.push_back({j, std::move(poly)});
  }
  return e;
}

DerivativeTower::DerivativeTower(const Profile& f, int max_order) {
  if (max_order < 0) throw ConfigError("derivative tower order must be >= 0");
  if (!f.is_even()) throw ConfigError("derivative tower requires an even profile");
  // D^j f = 2^j (g^{(j)} o square), built incrementally on g = f~.
  SquaredProfile g = to_squared(f);
  levels_.reserve(static_cast<std::size_t>(max_order) + 1);
  for (int j = 0; j <= max_order; ++j) {
    levels_.push_back(std::ldexp(1.0, j) * from_squared(g));
    g = g.derivative();
  }
}

std::vector<double> DerivativeTower::values(double rho) const {
  std::vector<double> v;
  v.reserve(levels_.size());
  for (const auto& p : levels_) v.push_back(p(rho));
  return v;
}

double eval_expansion(const RadialExpansion& e, std::span<const double> x, std::span<const double> dvals) {
  double s = 0;
  for (const auto& t : e.terms) s += t.poly.eval(x) * dvals[static_cast<std::size_t>(t.order)];
  return s;
}

double partial_derivative(const RadialField& phi, const MultiIndex& alpha, std::span<const double> x) {
  if (alpha.dim() != phi.dim() || static_cast<int>(x.size()) != phi.dim()) {
    throw ConfigError("partial_derivative: dimension mismatch");
  }
  const RadialExpansion e = partial_expansion(alpha);
  const DerivativeTower tower(phi.profile(), alpha.order());
  return eval_expansion(e, x, tower.values(euclidean_norm(x)));
}

double profile_derivative_from_partials(const RadialField& phi, int j, std::span<const double> x) {
  if (static_cast<int>(x.size()) != phi.dim()) throw ConfigError("point dimension mismatch");
  const double r = euclidean_norm(x);
  if (r == 0) throw ConfigError("profile_derivative_from_partials requires x != 0");
  const RadialDerivatives rd(phi, j);
  mpz_class jfac;
  mpz_fac_ui(jfac.get_mpz_t(), static_cast<unsigned long>(j));
  double sum = 0;
  for (const auto& alpha : enumerate_multi(phi.dim(), j)) {
    const double weight = Rational(jfac, alpha.factorial()).get_d();
    sum += rd.partial(alpha, x) * weight * MonomialPoly::monomial(alpha).eval(x);
  }
  return sum / std::pow(r, j);
}

// ---------------------------------------------------------------------------
// exact linear algebra

namespace {

void check_square(const RationalMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) throw ConfigError("matrix must be square");
  }
}

std::uint64_t index_count(int dim, int order, std::uint64_t budget) {
  std::uint64_t count = 1;
  for (int i = 0; i < order; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(dim)) {
      throw BudgetExceeded(std::numeric_limits<std::uint64_t>::max(), budget);
    }
    count *= static_cast<std::uint64_t>(dim);
  }
  if (count > budget) throw BudgetExceeded(count, budget);
  return count;
}

void check_gram_args(int dim, int order) {
  if (dim < 2) throw ConfigError("Gram matrix requires d >= 2");
  if (order < 1) throw ConfigError("Gram matrix requires n >= 1");
}

/// p^j_alpha(e_d) for j = 0..floor(n/2): coefficient of x_d^{n-2j}.
std::vector<Rational> p_values_at_last_axis(const MultiIndex& alpha) {
  const int n = alpha.order();
  const int d = alpha.dim();
  std::vector<Rational> v;
  for (int j = 0; j <= n / 2; ++j) {
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    e.back() = n - 2 * j;
    v.push_back(p_poly(alpha, j).coefficient(MultiIndex(std::move(e))));
  }
  return v;
}

}  // namespace

RationalMatrix invert_exact(const RationalMatrix& m) {
  check_square(m);
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw ConfigError("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[row][k] -= f * a[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

std::vector<Rational> solve_exact(const RationalMatrix& m, std::span<const Rational> rhs) {
  if (rhs.size() != m.size()) throw ConfigError("right-hand side length mismatch");
  const RationalMatrix inv = invert_exact(m);
  std::vector<Rational> y(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) y[i] += inv[i][j] * rhs[j];
  }
  return y;
}

std::vector<Rational> leading_principal_minors(const RationalMatrix& m) {
  check_square(m);
  std::vector<Rational> minors;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    RationalMatrix a(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] = m[i][j];
    }
    Rational det = 1;
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t pivot = col;
      while (pivot < k && a[pivot][col] == 0) ++pivot;
      if (pivot == k) {
        det = 0;
        break;
      }
      if (pivot != col) {
        std::swap(a[pivot], a[col]);
        det = -det;
      }
      det *= a[col][col];
      for (std::size_t row = col + 1; row < k; ++row) {
        const Rational f = a[row][col] / a[col][col];
        for (std::size_t c = col; c < k; ++c) a[row][c] -= f * a[col][c];
      }
    }
    minors.push_back(det);
  }
  return minors;
}

// ---------------------------------------------------------------------------
// Gram matrix

GramMatrix::GramMatrix(int dim, int order, RationalMatrix entries)
    : dim_(dim), order_(order), entries_(std::move(entries)), inverse_(invert_exact(entries_)) {}

bool GramMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[i][j] != entries_[j][i]) return false;
    }
  }
  return true;
}

bool GramMatrix::is_positive_definite() const {
  if (!is_symmetric()) return false;
  for (const auto& m : leading_principal_minors(entries_)) {
    if (m <= 0) return false;
  }
  return true;
}

GramMatrix gram_matrix(int dim, int order, std::uint64_t budget) {
  check_gram_args(dim, order);
  index_count(dim, order, budget);
  const std::size_t size = static_cast<std::size_t>(order / 2) + 1;
  RationalMatrix g(size, std::vector<Rational>(size, Rational(0)));
  std::map<MultiIndex, std::vector<Rational>> cache;
  for_each_dindex(dim, order, [&](const DIndex& index) {
    const MultiIndex alpha = index.collapse();
    auto it = cache.find(alpha);
    if (it == cache.end()) it = cache.emplace(alpha, p_values_at_last_axis(alpha)).first;
    const auto& v = it->second;
    for (std::size_t i = 0; i < size; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < size; ++j) g[i][j] += v[i] * v[j];
    }
  });
  return GramMatrix(dim, order, std::move(g));
}

std::vector<std::vector<double>> gram_matrix_at(int dim, int order, std::span<const double> unit, std::uint64_t budget) {
  check_gram_args(dim, order);
  if (static_cast<int>(unit.size()) != dim) throw ConfigError("unit vector dimension mismatch");
  index_count(dim, order, budget);
  const std::size_t size = static_cast<std::size_t>(order / 2) + 1;
  std::vector<std::vector<double>> g(size, std::vector<double>(size, 0.0));
  std::map<MultiIndex, std::vector<double>> cache;
  for_each_dindex(dim, order, [&](const DIndex& index) {
    const MultiIndex alpha = index.collapse();
    auto it = cache.find(alpha);
    if (it == cache.end()) {
      std::vector<double> v;
      for (std::size_t j = 0; j < size; ++j) v.push_back(p_poly(alpha, static_cast<int>(j)).eval(unit));
      it = cache.emplace(alpha, std::move(v)).first;
    }
    const auto& v = it->second;
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) g[i][j] += v[i] * v[j];
    }
  });
  return g;
}

std::vector<Rational> solve_linear_system(const GramMatrix& gram, std::span<const Rational> lhs) {
  if (static_cast<int>(lhs.size()) != gram.size()) throw ConfigError("lhs must have floor(n/2)+1 entries");
  if (!gram.is_positive_definite()) throw ConfigError("Gram matrix is not positive definite");
  std::vector<Rational> y(lhs.size(), Rational(0));
  const auto& inv = gram.inverse();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    for (std::size_t j = 0; j < lhs.size(); ++j) y[i] += inv[i][j] * lhs[j];
  }
  return y;
}

std::vector<Rational> solve_linear_system(int dim, int order, std::span<const Rational> lhs) {
  return solve_linear_system(gram_matrix(dim, order), lhs);
}

// ---------------------------------------------------------------------------
// recovery

RecoveryCoeffs::RecoveryCoeffs(int dim, int order, std::map<MultiIndex, MonomialPoly> coeffs)
    : dim_(dim), order_(order), coeffs_(std::move(coeffs)) {}

RecoveryCoeffs recovery_coeffs(int dim, int order, std::uint64_t budget) {
  const GramMatrix gram = gram_matrix(dim, order, budget);
  const auto& inv0 = gram.inverse()[0];
  std::map<MultiIndex, mpz_class> multiplicity;
  for_each_dindex(dim, order, [&](const DIndex& index) { ++multiplicity[index.collapse()]; });

  const MonomialPoly r2 = MonomialPoly::squared_norm(dim);
  std::map<MultiIndex, MonomialPoly> coeffs;
  for (const auto& [alpha, count] : multiplicity) {
    MonomialPoly q(dim);
    MonomialPoly r2j = MonomialPoly::constant(dim, 1);
    for (int j = 0; j <= order / 2; ++j) {
      if (inv0[static_cast<std::size_t>(j)] != 0) q += p_poly(alpha, j) * r2j * inv0[static_cast<std::size_t>(j)];
      r2j = r2j * r2;
    }
    coeffs.emplace(alpha, q * Rational(count));
  }
  return RecoveryCoeffs(dim, order, std::move(coeffs));
}

double recover_Dn(const RadialField& phi, const RecoveryCoeffs& q, std::span<const double> x) {
  if (q.dim() != phi.dim() || static_cast<int>(x.size()) != phi.dim()) {
    throw ConfigError("recover_Dn: dimension mismatch");
  }
  const double r = euclidean_norm(x);
  if (r == 0) throw ConfigError("recover_Dn requires x != 0");
  std::vector<double> w(x.begin(), x.end());
  for (auto& wi : w) wi /= r;
  const RadialDerivatives rd(phi, q.order());
  double sum = 0;
  for (const auto& [alpha, poly] : q.coeffs()) sum += poly.eval(w) * rd.partial(alpha, x);
  return sum;
}

double recover_Dn(const RadialField& phi, int order, std::span<const double> x) {
  if (order < 1) throw ConfigError("recover_Dn requires n >= 1");
  return recover_Dn(phi, recovery_coeffs(phi.dim(), order), x);
}

// ---------------------------------------------------------------------------

RadialDerivatives::RadialDerivatives(const RadialField& phi, int max_order)
    : dim_(phi.dim()), tower_(phi.profile(), max_order) {
  for (const auto& alpha : enumerate_multi_upto(dim_, max_order)) {
    expansions_.emplace(alpha, partial_expansion(alpha));
  }
}

double RadialDerivatives::partial(const MultiIndex& alpha, std::span<const double> x) const {
  if (alpha.order() > tower_.max_order()) throw ConfigError("derivative order exceeds precomputed tower");
  const auto& e = expansions_.at(alpha);
  const double rho = euclidean_norm(x);
  double s = 0;
  for (const auto& t : e.terms) s += t.poly.eval(x) * tower_[t.order](rho);
  return s;
}

}  // namespace radsob
