#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace qrt {

using i64 = std::int64_t;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A property the underlying theory guarantees failed to hold at runtime.
// `tag` names the violated property in a stable, machine-readable way.
struct invariant_error : std::runtime_error {
  std::string tag;
  invariant_error(std::string t, const std::string& what)
      : std::runtime_error("[" + t + "] " + what), tag(std::move(t)) {}
};

struct FieldSpec {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  i64 p = 0;  // modulus, PrimeField only; prime, < 2^31

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime_field(i64 p);

  bool is_rationals() const { return kind == Kind::Rationals; }
  bool operator==(const FieldSpec&) const = default;
  std::string str() const;
};

bool is_prime(i64 n);

// Exact field element. Over Q a fully reduced fraction with positive
// denominator; over F_p a residue in [0, p). Immutable in spirit: all
// arithmetic returns fresh values.
class Scalar {
 public:
  Scalar() = default;
  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar from_int(const FieldSpec& f, i64 n);
  static Scalar from_fraction(const FieldSpec& f, i64 num, i64 den);
  static Scalar from_mpq(mpq_class q);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(i64 e) const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Canonical text form, matching the grammar -?[0-9]+(/[0-9]+)?
  std::string str() const;

  const mpq_class& rational() const;  // Rationals only
  i64 residue() const;                // PrimeField only

  // F_p residue of a rational (throws if the denominator vanishes mod p),
  // and the centered lift back to Q.
  Scalar reduce_mod(const FieldSpec& fp) const;
  Scalar lift_balanced() const;

 private:
  FieldSpec field_{};
  mpq_class q_{0};  // Rationals payload
  i64 r_ = 0;       // PrimeField payload

  void check_same_field(const Scalar& o) const;
};

// Parses the external scalar format -?[0-9]+(/[0-9]+)? into the given field.
Scalar parse_scalar(const std::string& text, const FieldSpec& f);

}  // namespace qrt
