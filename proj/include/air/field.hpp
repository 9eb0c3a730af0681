#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace air {

/// Coefficient field: the rationals or a prime field F_p with p >= 5.
///
/// Characteristic 2 and 3 are rejected at construction; the polarization
/// identities used by the criteria need 2 and 3 to be invertible.
class FieldDesc {
 public:
  enum class Kind { Rationals, PrimeField };

  /// Largest accepted modulus; keeps residue products inside 64 bits.
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

  static FieldDesc rationals() noexcept { return FieldDesc(Kind::Rationals, 0); }
  static FieldDesc prime(std::uint64_t p);

  /// Parses `Q`, `F5`, `F7`, `F<p>`.
  static FieldDesc parse(std::string_view token);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::PrimeField; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const noexcept { return p_; }
  std::uint64_t modulus() const noexcept { return p_; }

  std::string token() const;

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;

 private:
  FieldDesc(Kind kind, std::uint64_t p) noexcept : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues are canonical in [0, p).
class Scalar {
 public:
  /// Zero of the rationals.
  Scalar() : Scalar(FieldDesc::rationals()) {}
  explicit Scalar(const FieldDesc& field);

  static Scalar zero(const FieldDesc& field) { return Scalar(field); }
  static Scalar one(const FieldDesc& field) { return from_int(field, 1); }
  static Scalar from_int(const FieldDesc& field, long long value);
  /// Reduces `value` into `field`; over F_p the denominator must be a unit.
  static Scalar from_rational(const FieldDesc& field, const mpq_class& value);
  static Scalar from_residue(const FieldDesc& field, std::uint64_t residue);

  const FieldDesc& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Residue in [0, p). Only valid over a prime field.
  std::uint64_t residue() const;
  /// Rational value. Only valid over Q.
  const mpq_class& rational() const;

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  /// Equality across different fields is false, never an error.
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Total order inside one field (by residue, or by rational value); used
  /// only for canonical sorting.
  std::strong_ordering compare(const Scalar& other) const;

  /// `3`, `-1/2`, or a residue `4`.
  std::string to_string() const;

 private:
  void require_same_field(const Scalar& other, const char* op) const;

  FieldDesc field_;
  std::variant<std::uint64_t, mpq_class> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace air
