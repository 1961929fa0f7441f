#include "q2cert/rational.hpp"

#include <stdexcept>

namespace q2cert {

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  }
  const auto dot = text.find_first_of(".eE");
  if (dot == std::string::npos) return Rational(Integer(text));
  // Finite decimal with optional exponent.
  std::string mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    exponent = std::stol(text.substr(e + 1));
  }
  std::string digits;
  long frac = 0;
  bool after = false;
  for (char c : mantissa) {
    if (c == '.') {
      after = true;
    } else {
      digits += c;
      if (after && c >= '0' && c <= '9') ++frac;
    }
  }
  Integer num(digits);
  Integer scale = 1;
  long shift = exponent - frac;
  for (long i = 0; i < (shift < 0 ? -shift : shift); ++i) scale *= 10;
  return shift < 0 ? Rational(num, scale) : Rational(num * scale);
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_integers(const std::vector<std::vector<long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  RationalMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).convert_to<double>();
  return m;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  }
  return c;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& a) {
  RationalMatrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

void trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Polynomial& p) {
  Polynomial q = p;
  trim(q);
  return static_cast<int>(q.size()) - 1;
}

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

namespace {

/// Quotient and remainder of a / b.
std::pair<Polynomial, Polynomial> divmod(Polynomial a, Polynomial b) {
  trim(a);
  trim(b);
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  if (a.size() < b.size()) return {{}, a};
  Polynomial q(a.size() - b.size() + 1);
  const Rational lead = b.back();
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    const Rational c = a[i] / lead;
    const int shift = i - static_cast<int>(b.size()) + 1;
    q[shift] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

Polynomial monic(Polynomial p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

}  // namespace

Polynomial poly_gcd(Polynomial a, Polynomial b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Polynomial poly_div_exact(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw std::domain_error("polynomial division is not exact");
  return q;
}

Rational evaluate(const Polynomial& p, const Rational& x) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

Rational determinant(const RationalMatrix& a) {
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  // Clear denominators row by row, then run Bareiss over the integers.
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (int i = 0; i < n; ++i) {
    Integer l = 1;
    for (int j = 0; j < n; ++j) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(a(i, j))));
    scale *= l;
    for (int j = 0; j < n; ++j) {
      m[i][j] = boost::multiprecision::numerator(a(i, j)) * (l / boost::multiprecision::denominator(a(i, j)));
    }
  }
  int sign = 1;
  Integer prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return Rational(m[n - 1][n - 1] * sign, scale);
}

Polynomial characteristic_polynomial(const RationalMatrix& a) {
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  // Newton interpolation through x = 0..n.
  std::vector<Rational> xs(n + 1), coef(n + 1);
  for (int t = 0; t <= n; ++t) {
    RationalMatrix m = Rational(-1) * a;
    for (int i = 0; i < n; ++i) m(i, i) += t;
    xs[t] = t;
    coef[t] = determinant(m);
  }
  for (int level = 1; level <= n; ++level) {
    for (int i = n; i >= level; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);
  }
  Polynomial p{coef[n]};
  for (int i = n - 1; i >= 0; --i) {
    // p = p * (x - xs[i]) + coef[i]
    Polynomial next(p.size() + 1);
    for (std::size_t j = 0; j < p.size(); ++j) {
      next[j + 1] += p[j];
      next[j] -= p[j] * xs[i];
    }
    next[0] += coef[i];
    p = std::move(next);
  }
  trim(p);
  return p;
}

std::vector<SquareFreeFactor> square_free_decomposition(const Polynomial& p) {
  Polynomial f = monic(p);
  std::vector<SquareFreeFactor> out;
  if (degree(f) < 1) return out;
  Polynomial a = poly_gcd(f, derivative(f));
  Polynomial b = poly_div_exact(f, a);
  Polynomial c = poly_div_exact(derivative(f), a);
  Polynomial d = c;
  {
    Polynomial db = derivative(b);
    d.resize(std::max(c.size(), db.size()));
    for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
    trim(d);
  }
  int i = 1;
  while (degree(b) > 0) {
    Polynomial g = poly_gcd(b, d);
    if (degree(g) > 0) out.push_back({g, i});
    b = poly_div_exact(b, g);
    c = poly_div_exact(d, g);
    Polynomial db = derivative(b);
    d = c;
    d.resize(std::max(c.size(), db.size()));
    for (std::size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
    trim(d);
    ++i;
  }
  return out;
}

int rank(RationalMatrix a) {
  int r = 0;
  const int rows = a.rows(), cols = a.cols();
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (int j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    }
    for (int i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

bool rational_sqrt(const Rational& r, Rational* root) {
  if (r < 0) return false;
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  const Integer sn = boost::multiprecision::sqrt(num);
  const Integer sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return false;
  if (root) *root = Rational(sn, sd);
  return true;
}

}  // namespace q2cert
