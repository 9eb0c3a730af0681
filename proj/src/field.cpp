#include "air/field.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#include "air/errors.hpp"

namespace air {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldDesc FieldDesc::prime(std::uint64_t p) {
  if (p == 2 || p == 3) {
    throw InvalidFieldError("characteristic " + std::to_string(p) +
                            " is not supported (need characteristic 0 or p >= 5)");
  }
  if (!is_prime(p)) throw InvalidFieldError(std::to_string(p) + " is not prime");
  if (p > kMaxModulus) throw InvalidFieldError("modulus " + std::to_string(p) + " too large");
  return FieldDesc(Kind::PrimeField, p);
}

FieldDesc FieldDesc::parse(std::string_view token) {
  if (token == "Q") return rationals();
  if (token.size() >= 2 && token.front() == 'F') {
    std::uint64_t p = 0;
    const char* first = token.data() + 1;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec == std::errc() && ptr == last) return prime(p);
  }
  throw InvalidFieldError("bad field token '" + std::string(token) + "' (expected Q or F<p>)");
}

std::string FieldDesc::token() const {
  return kind_ == Kind::Rationals ? std::string("Q") : "F" + std::to_string(p_);
}

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return result;
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

Scalar::Scalar(const FieldDesc& field) : field_(field) {
  if (field.is_finite()) {
    value_ = std::uint64_t{0};
  } else {
    value_ = mpq_class(0);
  }
}

Scalar Scalar::from_int(const FieldDesc& field, long long value) {
  Scalar s(field);
  if (field.is_finite()) {
    const auto p = static_cast<long long>(field.modulus());
    long long r = value % p;
    if (r < 0) r += p;
    s.value_ = static_cast<std::uint64_t>(r);
  } else {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(value));
    s.value_ = mpq_class(z);
  }
  return s;
}

Scalar Scalar::from_rational(const FieldDesc& field, const mpq_class& value) {
  Scalar s(field);
  if (field.is_finite()) {
    const std::uint64_t p = field.modulus();
    const std::uint64_t den = reduce_mpz(value.get_den(), p);
    if (den == 0) {
      throw std::domain_error("denominator of " + value.get_str() + " vanishes in " + field.token());
    }
    const std::uint64_t num = reduce_mpz(value.get_num(), p);
    s.value_ = num * mod_pow(den, p - 2, p) % p;
  } else {
    mpq_class q(value);
    q.canonicalize();
    s.value_ = std::move(q);
  }
  return s;
}

Scalar Scalar::from_residue(const FieldDesc& field, std::uint64_t residue) {
  if (!field.is_finite()) throw UnsupportedFieldError("residues need a prime field");
  Scalar s(field);
  s.value_ = residue % field.modulus();
  return s;
}

bool Scalar::is_zero() const noexcept {
  if (const auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const noexcept {
  if (const auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 1;
  return std::get<mpq_class>(value_) == 1;
}

std::uint64_t Scalar::residue() const {
  if (!field_.is_finite()) throw UnsupportedFieldError("residue() on a rational scalar");
  return std::get<std::uint64_t>(value_);
}

const mpq_class& Scalar::rational() const {
  if (field_.is_finite()) throw UnsupportedFieldError("rational() on a residue");
  return std::get<mpq_class>(value_);
}

void Scalar::require_same_field(const Scalar& other, const char* op) const {
  if (!(field_ == other.field_)) {
    throw FieldMismatchError(std::string("field mismatch in ") + op + ": " + field_.token() +
                             " vs " + other.field_.token());
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar s(field_);
  if (field_.is_finite()) {
    const std::uint64_t p = field_.modulus();
    s.value_ = mod_pow(std::get<std::uint64_t>(value_), p - 2, p);
  } else {
    s.value_ = mpq_class(1) / std::get<mpq_class>(value_);
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_field(rhs, "+");
  if (field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(value_);
    r = (r + std::get<std::uint64_t>(rhs.value_)) % field_.modulus();
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_field(rhs, "-");
  if (field_.is_finite()) {
    const std::uint64_t p = field_.modulus();
    auto& r = std::get<std::uint64_t>(value_);
    r = (r + p - std::get<std::uint64_t>(rhs.value_)) % p;
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_field(rhs, "*");
  if (field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(value_);
    r = r * std::get<std::uint64_t>(rhs.value_) % field_.modulus();
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_field(rhs, "/");
  return *this *= rhs.inverse();
}

Scalar Scalar::operator-() const {
  Scalar s(field_);
  return s -= *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

std::strong_ordering Scalar::compare(const Scalar& other) const {
  require_same_field(other, "compare");
  if (field_.is_finite()) {
    return std::get<std::uint64_t>(value_) <=> std::get<std::uint64_t>(other.value_);
  }
  const int c = cmp(std::get<mpq_class>(value_), std::get<mpq_class>(other.value_));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Scalar::to_string() const {
  if (field_.is_finite()) return std::to_string(std::get<std::uint64_t>(value_));
  return std::get<mpq_class>(value_).get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace air
