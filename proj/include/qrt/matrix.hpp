#pragma once

#include <optional>
#include <vector>

#include "qrt/scalar.hpp"

namespace qrt {

// Dense matrix over one exact field, row-major.
struct Matrix {
  int rows = 0;
  int cols = 0;
  FieldSpec field;
  std::vector<Scalar> entries;

  Matrix() = default;
  Matrix(const FieldSpec& f, int r, int c)
      : rows(r), cols(c), field(f), entries(std::size_t(r) * c, Scalar::zero(f)) {}

  static Matrix identity(const FieldSpec& f, int n);

  Scalar& at(int r, int c) { return entries[std::size_t(r) * cols + c]; }
  const Scalar& at(int r, int c) const { return entries[std::size_t(r) * cols + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  Matrix column(int c) const;
  // Columns of `o` appended on the right.
  Matrix hstack(const Matrix& o) const;
};

struct RrefResult {
  Matrix m;
  std::vector<int> pivots;  // pivot column per pivot row
  int rank = 0;
};

RrefResult rref(const Matrix& m);
int rank(const Matrix& m);

// Columns form the canonical kernel basis: each free column in increasing
// order contributes one vector with a unit at that coordinate.
Matrix kernel_basis(const Matrix& m);

// Exact determinant: fraction-free Bareiss on the denominator-cleared integer
// matrix over Q, ordinary elimination over F_p.
Scalar det(const Matrix& m);

// Solves A X = B columnwise; empty when inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& m);  // throws usage_error when singular
bool is_invertible(const Matrix& m);

// Univariate polynomial, coefficients lowest degree first, no trailing zeros.
struct Poly {
  FieldSpec field;
  std::vector<Scalar> coeffs;

  explicit Poly(const FieldSpec& f) : field(f) {}
  Poly(const FieldSpec& f, std::vector<Scalar> c) : field(f), coeffs(std::move(c)) {
    normalize();
  }

  void normalize();
  int degree() const { return int(coeffs.size()) - 1; }  // -1 for the zero poly
  bool is_zero() const { return coeffs.empty(); }
  Scalar coeff(int k) const;
  Scalar eval(const Scalar& t) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const;
};

// Exact quotient; throws invariant_error when the division leaves a remainder.
Poly divexact(const Poly& num, const Poly& den);

// Unique polynomial of degree < #points through the given points (exact
// Lagrange interpolation). Abscissae must be pairwise distinct and, over F_p,
// p must be at least the point count.
Poly interpolate(const std::vector<std::pair<Scalar, Scalar>>& points);

// Determinant of a square matrix with polynomial entries (row-major), via
// fraction-free elimination in k[t].
Poly det_poly(int n, const std::vector<Poly>& entries);

}  // namespace qrt
