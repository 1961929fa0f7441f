#ifndef Q2CERT_RATIONAL_HPP
#define Q2CERT_RATIONAL_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace q2cert {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// "p/q" (or "p" when q = 1).
std::string to_string(const Rational& r);
/// Accepts "p/q", "p", or a finite decimal such as "-0.125".
Rational parse_rational(const std::string& text);

/// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  static RationalMatrix identity(int n);
  static RationalMatrix from_integers(const std::vector<std::vector<long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  RationalMatrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;
  Eigen::MatrixXd to_double() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Coefficients from the constant term upwards; no trailing zeros.
using Polynomial = std::vector<Rational>;

void trim(Polynomial& p);
int degree(const Polynomial& p);  // -1 for the zero polynomial
Polynomial derivative(const Polynomial& p);
Polynomial poly_gcd(Polynomial a, Polynomial b);  // monic
/// Exact quotient; throws std::domain_error when the division leaves a remainder.
Polynomial poly_div_exact(const Polynomial& a, const Polynomial& b);
Rational evaluate(const Polynomial& p, const Rational& x);

/// Fraction-free (Bareiss) determinant.
Rational determinant(const RationalMatrix& a);
/// det(xI - A), from determinants at n+1 integer points.
Polynomial characteristic_polynomial(const RationalMatrix& a);

struct SquareFreeFactor {
  Polynomial factor;  // monic, square-free
  int multiplicity;
};
/// Yun's algorithm: p = prod factor_i^multiplicity_i, factors pairwise coprime.
std::vector<SquareFreeFactor> square_free_decomposition(const Polynomial& p);

int rank(RationalMatrix a);

/// Exact square root of a non-negative rational when it is a perfect square.
bool rational_sqrt(const Rational& r, Rational* root);

}  // namespace q2cert

#endif
