#include "qrt/matrix.hpp"

namespace qrt {

Matrix Matrix::identity(const FieldSpec& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols != o.rows || !(field == o.field)) throw usage_error("matrix product shape mismatch");
  Matrix r(field, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) = r.at(i, j) + a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows != o.rows || cols != o.cols) throw usage_error("matrix sum shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] + o.entries[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows != o.rows || cols != o.cols) throw usage_error("matrix difference shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] - o.entries[i];
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r = *this;
  for (auto& e : r.entries) e = e * c;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries)
    if (!e.is_zero()) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows == o.rows && cols == o.cols && field == o.field && entries == o.entries;
}

Matrix Matrix::column(int c) const {
  Matrix r(field, rows, 1);
  for (int i = 0; i < rows; ++i) r.at(i, 0) = at(i, c);
  return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
  if (rows != o.rows) throw usage_error("hstack row mismatch");
  Matrix r(field, rows, cols + o.cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
  }
  return r;
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, {}, 0};
  Matrix& a = res.m;
  int r = 0;
  for (int c = 0; c < a.cols && r < a.rows; ++c) {
    int piv = -1;
    for (int i = r; i < a.rows; ++i)
      if (!a.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
    Scalar inv = a.at(r, c).inverse();
    for (int j = c; j < a.cols; ++j) a.at(r, j) = a.at(r, j) * inv;
    for (int i = 0; i < a.rows; ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      Scalar f = a.at(i, c);
      for (int j = c; j < a.cols; ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

int rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : rr.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix k(m.field, m.cols, int(free_cols.size()));
  for (int fi = 0; fi < int(free_cols.size()); ++fi) {
    int fc = free_cols[fi];
    k.at(fc, fi) = Scalar::one(m.field);
    for (int r = 0; r < rr.rank; ++r) k.at(rr.pivots[r], fi) = -rr.m.at(r, fc);
  }
  return k;
}

namespace {

Scalar det_fp(Matrix a) {
  const FieldSpec& f = a.field;
  Scalar d = Scalar::one(f);
  int n = a.rows;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!a.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar::zero(f);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
      d = -d;
    }
    d = d * a.at(c, c);
    Scalar inv = a.at(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (a.at(i, c).is_zero()) continue;
      Scalar g = a.at(i, c) * inv;
      for (int j = c; j < n; ++j) a.at(i, j) = a.at(i, j) - g * a.at(c, j);
    }
  }
  return d;
}

// Bareiss on an integer matrix; every division below is exact.
mpz_class det_bareiss(std::vector<mpz_class>& a, int n) {
  auto at = [&](int i, int j) -> mpz_class& { return a[std::size_t(i) * n + j]; };
  int sign = 1;
  mpz_class prev(1);
  for (int c = 0; c < n - 1; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return mpz_class(0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(c, j));
      sign = -sign;
    }
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j) {
        mpz_class t = at(i, j) * at(c, c) - at(i, c) * at(c, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = t;
      }
      at(i, c) = 0;
    }
    prev = at(c, c);
  }
  return sign * at(n - 1, n - 1);
}

}  // namespace

Scalar det(const Matrix& m) {
  if (m.rows != m.cols) throw usage_error("determinant of a non-square matrix");
  if (m.rows == 0) return Scalar::one(m.field);
  if (!m.field.is_rationals()) return det_fp(m);

  // Clear denominators row by row, then run integer Bareiss.
  int n = m.rows;
  std::vector<mpz_class> a(std::size_t(n) * n);
  mpq_class scale(1);
  for (int i = 0; i < n; ++i) {
    mpz_class l(1);
    for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).rational().get_den().get_mpz_t());
    for (int j = 0; j < n; ++j) {
      mpq_class v = m.at(i, j).rational() * l;
      a[std::size_t(i) * n + j] = v.get_num();
    }
    scale *= l;
  }
  mpz_class d = det_bareiss(a, n);
  mpq_class result = mpq_class(d) / scale;
  return Scalar::from_mpq(result);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows) throw usage_error("solve shape mismatch");
  RrefResult rr = rref(a.hstack(b));
  // Inconsistent when a pivot lands in the augmented block.
  for (int c : rr.pivots)
    if (c >= a.cols) return std::nullopt;
  Matrix x(a.field, a.cols, b.cols);
  for (int r = 0; r < rr.rank; ++r)
    for (int j = 0; j < b.cols; ++j) x.at(rr.pivots[r], j) = rr.m.at(r, a.cols + j);
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows != m.cols) throw usage_error("inverse of a non-square matrix");
  auto x = solve(m, Matrix::identity(m.field, m.rows));
  if (!x) throw usage_error("matrix not invertible");
  RrefResult rr = rref(m);
  if (rr.rank != m.rows) throw usage_error("matrix not invertible");
  return *x;
}

bool is_invertible(const Matrix& m) {
  return m.rows == m.cols && rank(m) == m.rows;
}

void Poly::normalize() {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

Scalar Poly::coeff(int k) const {
  if (k < 0 || k >= int(coeffs.size())) return Scalar::zero(field);
  return coeffs[k];
}

Scalar Poly::eval(const Scalar& t) const {
  Scalar acc = Scalar::zero(field);
  for (int k = int(coeffs.size()) - 1; k >= 0; --k) acc = acc * t + coeffs[k];
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Scalar> c(std::max(coeffs.size(), o.coeffs.size()), Scalar::zero(field));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(int(i)) + o.coeff(int(i));
  return Poly(field, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Scalar> c(std::max(coeffs.size(), o.coeffs.size()), Scalar::zero(field));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(int(i)) - o.coeff(int(i));
  return Poly(field, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(field);
  std::vector<Scalar> c(coeffs.size() + o.coeffs.size() - 1, Scalar::zero(field));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs.size(); ++j) c[i + j] = c[i + j] + coeffs[i] * o.coeffs[j];
  return Poly(field, std::move(c));
}

bool Poly::operator==(const Poly& o) const { return coeffs == o.coeffs; }

Poly divexact(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw usage_error("polynomial division by zero");
  Poly rem = num;
  std::vector<Scalar> q(num.is_zero() ? 0 : std::max(0, num.degree() - den.degree() + 1),
                        Scalar::zero(num.field));
  Scalar lead_inv = den.coeffs.back().inverse();
  while (!rem.is_zero() && rem.degree() >= den.degree()) {
    int shift = rem.degree() - den.degree();
    Scalar f = rem.coeffs.back() * lead_inv;
    q[shift] = f;
    std::vector<Scalar> sub(std::size_t(shift), Scalar::zero(num.field));
    for (const auto& c : den.coeffs) sub.push_back(c * f);
    rem = rem - Poly(num.field, std::move(sub));
  }
  if (!rem.is_zero()) throw invariant_error("poly-divexact", "division left a remainder");
  return Poly(num.field, std::move(q));
}

Poly interpolate(const std::vector<std::pair<Scalar, Scalar>>& points) {
  if (points.empty()) throw usage_error("interpolate needs at least one point");
  const FieldSpec& f = points[0].first.field();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first) throw usage_error("repeated abscissa");
  if (!f.is_rationals() && f.p < i64(points.size()))
    throw usage_error("field too small for interpolation degree");

  Poly acc(f);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Poly li(f, {Scalar::one(f)});
    Scalar denom = Scalar::one(f);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      li = li * Poly(f, {-points[j].first, Scalar::one(f)});
      denom = denom * (points[i].first - points[j].first);
    }
    acc = acc + li * Poly(f, {points[i].second / denom});
  }
  return acc;
}

Poly det_poly(int n, const std::vector<Poly>& entries) {
  if (int(entries.size()) != n * n) throw usage_error("det_poly shape mismatch");
  if (n == 0) return Poly(entries.empty() ? FieldSpec::rationals() : entries[0].field,
                          {Scalar::one(entries.empty() ? FieldSpec::rationals() : entries[0].field)});
  const FieldSpec& f = entries[0].field;
  std::vector<Poly> a = entries;
  auto at = [&](int i, int j) -> Poly& { return a[std::size_t(i) * n + j]; };
  int sign = 1;
  Poly prev(f, {Scalar::one(f)});
  for (int c = 0; c < n - 1; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Poly(f);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(c, j));
      sign = -sign;
    }
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j)
        at(i, j) = divexact(at(i, j) * at(c, c) - at(i, c) * at(c, j), prev);
      at(i, c) = Poly(f);
    }
    prev = at(c, c);
  }
  Poly d = at(n - 1, n - 1);
  if (sign < 0) d = Poly(f) - d;
  return d;
}

}  // namespace qrt
