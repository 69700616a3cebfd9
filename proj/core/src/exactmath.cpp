#include "toricdegen/exactmath.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace toricdegen {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw MathError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      r = Rational(Integer(text));
    } else {
      r = make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    }
  } catch (const std::invalid_argument&) {
    throw MathError("not a rational number: '" + text + "'");
  }
  return r;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer floor_of(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer gcd_of(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& v : values) g = gcd(g, v);
  return g;
}

IntVector zero_int_vector(std::size_t n) { return IntVector(n, Integer(0)); }
RatVector zero_rat_vector(std::size_t n) { return RatVector(n, Rational(0)); }

IntVector unit_int_vector(std::size_t n, std::size_t i) {
  IntVector v = zero_int_vector(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw MathError("dimension mismatch");
}

}  // namespace

Integer dot(const IntVector& a, const IntVector& b) {
  require_same_size(a.size(), b.size());
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVector& a, const RatVector& b) {
  require_same_size(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const RatVector& b) {
  require_same_size(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

Rational dot(const RatVector& a, const IntVector& b) { return dot(b, a); }

IntVector add(const IntVector& a, const IntVector& b) {
  require_same_size(a.size(), b.size());
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  require_same_size(a.size(), b.size());
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVector scale(const IntVector& v, const Integer& k) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * k;
  return r;
}

IntVector negate(const IntVector& v) { return scale(v, Integer(-1)); }

RatVector add(const RatVector& a, const RatVector& b) {
  require_same_size(a.size(), b.size());
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector sub(const RatVector& a, const RatVector& b) {
  require_same_size(a.size(), b.size());
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector scale(const RatVector& v, const Rational& k) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * k;
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(to_rational(row));
  return r;
}

bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

std::optional<IntVector> to_integer(const RatVector& v) {
  if (!is_integral(v)) return std::nullopt;
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_num();
  return r;
}

IntVector primitive(const IntVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) throw MathError("primitive vector of the zero vector");
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

IntVector primitive_integer_direction(const RatVector& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * Rational(den);
    r[i] = scaled.get_num();
  }
  return primitive(r);
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const RatVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
  os << ')';
  return os.str();
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), IntVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

RatMatrix transpose(const RatMatrix& m) {
  if (m.empty()) return {};
  RatMatrix t(m[0].size(), RatVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix r(a.size(), zero_int_vector(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    require_same_size(a[i].size(), inner);
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
  }
  return r;
}

IntVector multiply(const IntMatrix& a, const IntVector& v) {
  IntVector r;
  r.reserve(a.size());
  for (const auto& row : a) r.push_back(dot(row, v));
  return r;
}

RatVector multiply(const IntMatrix& a, const RatVector& v) {
  RatVector r;
  r.reserve(a.size());
  for (const auto& row : a) r.push_back(dot(row, v));
  return r;
}

RatVector multiply(const RatMatrix& a, const RatVector& v) {
  RatVector r;
  r.reserve(a.size());
  for (const auto& row : a) r.push_back(dot(row, v));
  return r;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, zero_int_vector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Integer determinant(const IntMatrix& input) {
  const std::size_t n = input.size();
  for (const auto& row : input) require_same_size(row.size(), n);
  if (n == 0) return 1;
  IntMatrix m = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> reduce_rows(RatMatrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j < columns; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational factor = m[i][col];
      for (std::size_t j = col; j < columns; ++j) m[i][j] -= factor * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RatMatrix& input) {
  const std::size_t n = input.size();
  for (const auto& row : input) require_same_size(row.size(), n);
  RatMatrix m = input;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = k;
    while (sel < n && m[sel][k] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != k) {
      std::swap(m[k], m[sel]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rational factor = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return det;
}

std::size_t rank(const RatMatrix& input) {
  if (input.empty()) return 0;
  RatMatrix m = input;
  return reduce_rows(m, m[0].size()).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

namespace {

// Integer row reduction to echelon form over the first `pivot_columns`
// columns, carrying the remaining columns along (used for kernels).
std::size_t integer_echelon(IntMatrix& m, std::size_t pivot_columns) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_columns && row < m.size(); ++col) {
    // Euclid on column `col` among rows >= row until one nonzero remains.
    while (true) {
      std::size_t best = m.size();
      for (std::size_t i = row; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        if (best == m.size() || abs(m[i][col]) < abs(m[best][col])) best = i;
      }
      if (best == m.size()) break;
      std::swap(m[row], m[best]);
      bool done = true;
      for (std::size_t i = row + 1; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
        for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= q * m[row][j];
        if (m[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[row][col] == 0) continue;
    if (m[row][col] < 0)
      for (auto& x : m[row]) x = -x;
    for (std::size_t i = 0; i < row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= q * m[row][j];
    }
    ++row;
  }
  return row;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& rows) {
  HermiteForm out;
  if (rows.empty()) return out;
  const std::size_t n = rows[0].size();
  for (const auto& r : rows) require_same_size(r.size(), n);
  IntMatrix m = rows;
  out.rank = integer_echelon(m, n);
  m.resize(out.rank);
  out.basis = std::move(m);
  return out;
}

bool is_unimodular_basis(const IntMatrix& vectors) {
  const std::size_t n = vectors.empty() ? 0 : vectors[0].size();
  if (vectors.size() != n) throw MathError("not a candidate basis");
  for (const auto& v : vectors)
    if (v.size() != n) throw MathError("not a candidate basis");
  Integer d = determinant(vectors);
  return d == 1 || d == -1;
}

Integer maximal_minors_gcd(const IntMatrix& rows) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  const std::size_t n = rows[0].size();
  if (k > n) return 0;
  Integer g = 0;
  for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
    IntMatrix minor(k, IntVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = rows[i][cols[j]];
    g = gcd(g, determinant(minor));
    return g != 1;
  });
  return g;
}

bool is_saturated_basis(const IntMatrix& rows) { return maximal_minors_gcd(rows) == 1; }

IntMatrix integer_kernel(const IntMatrix& a, std::size_t columns) {
  for (const auto& row : a) require_same_size(row.size(), columns);
  // Row-reduce [A^T | I]; rows whose A^T part vanishes span the kernel.
  const std::size_t k = a.size();
  IntMatrix aug(columns, zero_int_vector(k + columns));
  for (std::size_t i = 0; i < columns; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = a[j][i];
    aug[i][k + i] = 1;
  }
  std::size_t r = integer_echelon(aug, k);
  IntMatrix kernel;
  for (std::size_t i = r; i < columns; ++i)
    kernel.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(k), aug[i].end());
  if (kernel.empty()) return kernel;
  return hermite_normal_form(kernel).basis;
}

RatMatrix rational_kernel(const RatMatrix& a, std::size_t columns) {
  for (const auto& row : a) require_same_size(row.size(), columns);
  RatMatrix m = a;
  auto pivots = reduce_rows(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix kernel;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    RatVector v = zero_rat_vector(columns);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b) {
  require_same_size(a.size(), b.size());
  if (a.empty()) return std::nullopt;
  const std::size_t n = a[0].size();
  RatMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    require_same_size(aug[i].size(), n);
    aug[i].push_back(b[i]);
  }
  auto pivots = reduce_rows(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  if (pivots.size() != n) return std::nullopt;
  RatVector x(n);
  for (std::size_t r = 0; r < n; ++r) x[pivots[r]] = aug[r][n];
  return x;
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    require_same_size(aug[i].size(), n);
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rational(1) : Rational(0));
  }
  auto pivots = reduce_rows(aug, 2 * n);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw MathError("singular matrix");
  RatMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i)
    inv[i].assign(aug[i].begin() + static_cast<std::ptrdiff_t>(n), aug[i].end());
  return inv;
}

bool in_lattice(const HermiteForm& hnf, const IntVector& x) {
  IntVector r = x;
  for (const auto& row : hnf.basis) {
    std::size_t pivot = 0;
    while (pivot < row.size() && row[pivot] == 0) ++pivot;
    if (pivot == row.size()) continue;
    if (r[pivot] == 0) continue;
    if (r[pivot] % row[pivot] != 0) return false;
    Integer q = r[pivot] / row[pivot];
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= q * row[j];
  }
  return is_zero(r);
}

// ---------------------------------------------------------------------------

AffineFunction AffineFunction::zero(std::size_t n) { return {zero_rat_vector(n), Rational(0)}; }

Rational AffineFunction::operator()(const RatVector& x) const { return dot(linear, x) + constant; }

Rational AffineFunction::operator()(const IntVector& x) const { return dot(x, linear) + constant; }

Rational AffineFunction::slope(const IntVector& direction) const { return dot(direction, linear); }

bool AffineFunction::is_zero() const { return toricdegen::is_zero(linear) && constant == 0; }

AffineFunction operator+(const AffineFunction& a, const AffineFunction& b) {
  return {add(a.linear, b.linear), a.constant + b.constant};
}

AffineFunction operator-(const AffineFunction& a, const AffineFunction& b) {
  return {sub(a.linear, b.linear), a.constant - b.constant};
}

AffineFunction operator-(const AffineFunction& a) { return {scale(a.linear, Rational(-1)), -a.constant}; }

AffineFunction operator*(const Rational& k, const AffineFunction& f) {
  return {scale(f.linear, k), k * f.constant};
}

bool operator==(const AffineFunction& a, const AffineFunction& b) {
  return a.linear == b.linear && a.constant == b.constant;
}

std::string to_string(const AffineFunction& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < f.linear.size(); ++i) {
    if (f.linear[i] == 0) continue;
    const Rational& c = f.linear[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational mag = abs(c);
    if (mag != 1) os << to_string(mag) << "*";
    os << "x" << (i + 1);
    first = false;
  }
  if (first) {
    os << to_string(f.constant);
  } else if (f.constant != 0) {
    os << (f.constant < 0 ? " - " : " + ") << to_string(Rational(abs(f.constant)));
  }
  return os.str();
}

}  // namespace toricdegen
