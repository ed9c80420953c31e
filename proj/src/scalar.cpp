#include "qrt/scalar.hpp"

namespace qrt {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime_field(i64 p) {
  if (p < 2 || p >= (i64(1) << 31))
    throw usage_error("prime modulus must satisfy 2 <= p < 2^31");
  if (!is_prime(p)) throw usage_error("modulus " + std::to_string(p) + " is not prime");
  FieldSpec f;
  f.kind = Kind::PrimeField;
  f.p = p;
  return f;
}

std::string FieldSpec::str() const {
  return is_rationals() ? "Q" : "F" + std::to_string(p);
}

namespace {

i64 mod_pos(i64 v, i64 p) {
  i64 r = v % p;
  return r < 0 ? r + p : r;
}

// Extended Euclid; requires gcd(a, p) = 1.
i64 mod_inverse(i64 a, i64 p) {
  i64 t = 0, nt = 1, r = p, nr = mod_pos(a, p);
  while (nr != 0) {
    i64 q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw usage_error("element not invertible mod " + std::to_string(p));
  return mod_pos(t, p);
}

}  // namespace

Scalar Scalar::zero(const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const FieldSpec& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldSpec& f, i64 n) {
  Scalar s;
  s.field_ = f;
  if (f.is_rationals())
    s.q_ = n;
  else
    s.r_ = mod_pos(n, f.p);
  return s;
}

Scalar Scalar::from_fraction(const FieldSpec& f, i64 num, i64 den) {
  if (den == 0) throw usage_error("zero denominator");
  if (f.is_rationals()) {
    Scalar s;
    s.field_ = f;
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
    return s;
  }
  return from_int(f, num) / from_int(f, den);
}

Scalar Scalar::from_mpq(mpq_class q) {
  Scalar s;
  q.canonicalize();
  s.q_ = std::move(q);
  return s;
}

bool Scalar::is_zero() const {
  return field_.is_rationals() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_rationals() ? q_ == 1 : r_ == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) throw usage_error("mixed-field scalar arithmetic");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar s;
  s.field_ = field_;
  if (field_.is_rationals())
    s.q_ = q_ + o.q_;
  else
    s.r_ = mod_pos(r_ + o.r_, field_.p);
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  Scalar s;
  s.field_ = field_;
  if (field_.is_rationals())
    s.q_ = q_ - o.q_;
  else
    s.r_ = mod_pos(r_ - o.r_, field_.p);
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar s;
  s.field_ = field_;
  if (field_.is_rationals())
    s.q_ = q_ * o.q_;
  else
    s.r_ = mod_pos(r_ * o.r_, field_.p);  // p < 2^31 keeps the product in range
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s;
  s.field_ = field_;
  if (field_.is_rationals())
    s.q_ = -q_;
  else
    s.r_ = mod_pos(-r_, field_.p);
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw usage_error("division by zero");
  Scalar s;
  s.field_ = field_;
  if (field_.is_rationals())
    s.q_ = 1 / q_;
  else
    s.r_ = mod_inverse(r_, field_.p);
  return s;
}

Scalar Scalar::pow(i64 e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar acc = one(field_), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
  if (!field_.is_rationals()) return std::to_string(r_);
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rationals()) throw usage_error("rational() on a prime-field scalar");
  return q_;
}

i64 Scalar::residue() const {
  if (field_.is_rationals()) throw usage_error("residue() on a rational scalar");
  return r_;
}

Scalar Scalar::reduce_mod(const FieldSpec& fp) const {
  if (!field_.is_rationals() || fp.is_rationals())
    throw usage_error("reduce_mod maps Q scalars to a prime field");
  mpz_class num = q_.get_num(), den = q_.get_den();
  mpz_class p(static_cast<long>(fp.p));
  mpz_class dn = den % p;
  if (dn == 0) throw usage_error("denominator divisible by " + std::to_string(fp.p));
  mpz_class nn = num % p;
  i64 n = mod_pos(nn.get_si(), fp.p), d = mod_pos(dn.get_si(), fp.p);
  return Scalar::from_int(fp, n) / Scalar::from_int(fp, d);
}

Scalar Scalar::lift_balanced() const {
  if (field_.is_rationals()) throw usage_error("lift_balanced() expects a prime-field scalar");
  i64 v = r_ > field_.p / 2 ? r_ - field_.p : r_;
  return Scalar::from_int(FieldSpec::rationals(), v);
}

Scalar parse_scalar(const std::string& text, const FieldSpec& f) {
  auto bad = [&] { return usage_error("malformed scalar '" + text + "'"); };
  if (text.empty()) throw bad();
  std::size_t i = text[0] == '-' ? 1 : 0;
  if (i == text.size()) throw bad();
  std::string num, den;
  std::string* cur = &num;
  bool seen_slash = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/') {
      if (seen_slash || cur->empty()) throw bad();
      seen_slash = true;
      cur = &den;
    } else if (c >= '0' && c <= '9') {
      cur->push_back(c);
    } else {
      throw bad();
    }
  }
  if (cur->empty()) throw bad();

  mpz_class n(num, 10), d(seen_slash ? mpz_class(den, 10) : mpz_class(1));
  if (text[0] == '-') n = -n;
  if (d == 0) throw usage_error("zero denominator in '" + text + "'");
  if (f.is_rationals()) {
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar::from_mpq(q);
  }
  mpz_class p(static_cast<long>(f.p));
  mpz_class dn = d % p;
  if (dn == 0) throw usage_error("denominator divisible by " + std::to_string(f.p));
  mpz_class nn = n % p;
  return Scalar::from_int(f, nn.get_si()) / Scalar::from_int(f, dn.get_si());
}

}  // namespace qrt
