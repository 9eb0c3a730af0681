#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "air/field.hpp"
#include "air/linalg.hpp"

namespace air {

/// Default cap on the number of elements any brute-force enumeration may visit.
inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// Coordinate vector of an algebra element in a fixed basis.
class Element {
 public:
  Element(const FieldDesc& field, std::size_t dim) : field_(field), coords_(zero_vector(field, dim)) {}
  Element(const FieldDesc& field, Vector coords);

  static Element basis(const FieldDesc& field, std::size_t dim, std::size_t i);
  static Element from_ints(const FieldDesc& field, std::initializer_list<long long> coords);

  const FieldDesc& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  const Vector& coords() const noexcept { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  bool is_zero() const { return is_zero_vector(coords_); }

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(const Scalar& s);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& s, Element a) { return a *= s; }
  Element operator-() const;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  void require_compatible(const Element& other) const;

  FieldDesc field_;
  Vector coords_;
};

/// Multiplication table b_i b_j = sum_k c[i][j][k] b_k with no associativity
/// requirement. Jordan tables produced by jordanize() live here.
class NonassocTable {
 public:
  NonassocTable(const FieldDesc& field, std::vector<std::string> basis_names);

  const FieldDesc& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return names_.size(); }
  const std::vector<std::string>& basis_names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  const Scalar& coeff(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim() + j) * dim() + k];
  }
  void set_coeff(std::size_t i, std::size_t j, std::size_t k, const Scalar& value);
  /// Sets the whole product b_i b_j.
  void set_product(std::size_t i, std::size_t j, const Element& value);
  Element product(std::size_t i, std::size_t j) const;

  Element basis_element(std::size_t i) const { return Element::basis(field_, dim(), i); }
  Element zero() const { return Element(field_, dim()); }

  Element multiply(const Element& x, const Element& y) const;
  bool is_commutative() const;

  /// Same field and identical coefficient tensor; basis names are ignored.
  bool same_coefficients(const NonassocTable& other) const;

  friend bool operator==(const NonassocTable&, const NonassocTable&) = default;

 private:
  void require_member(const Element& x) const;

  FieldDesc field_;
  std::vector<std::string> names_;
  std::vector<Scalar> c_;
};

/// Basis triple (i, j, k) with (b_i b_j) b_k != b_i (b_j b_k).
using AssociativityViolation = std::array<std::size_t, 3>;

/// First violating triple in lexicographic order, or nullopt when associative.
std::optional<AssociativityViolation> check_associative(const NonassocTable& table);

/// An associative algebra given by structure constants. The associativity
/// identity is checked once on construction.
class StructureConstants {
 public:
  /// Throws NonAssociativeError naming the first violating triple.
  static StructureConstants create(NonassocTable table);

  const NonassocTable& table() const noexcept { return table_; }
  const FieldDesc& field() const noexcept { return table_.field(); }
  std::size_t dim() const noexcept { return table_.dim(); }
  const std::vector<std::string>& basis_names() const noexcept { return table_.basis_names(); }
  Element basis_element(std::size_t i) const { return table_.basis_element(i); }
  Element zero() const { return table_.zero(); }

  /// Same algebra with coefficients reinterpreted in `field`; integer and
  /// rational coefficients must be representable there.
  StructureConstants over(const FieldDesc& field) const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  explicit StructureConstants(NonassocTable table) : table_(std::move(table)) {}
  NonassocTable table_;
};

Element multiply(const StructureConstants& a, const Element& x, const Element& y);
/// x y x.
Element sandwich(const StructureConstants& a, const Element& x, const Element& y);
/// x^k for k >= 1; k = 0 is rejected since most algebras here lack a unit.
Element power(const StructureConstants& a, const Element& x, std::size_t k);
bool is_idempotent(const StructureConstants& a, const Element& x);
/// Least k with x^k = 0, searched up to dim + 1; nullopt if x is not nilpotent.
std::optional<std::size_t> nilpotency_index(const StructureConstants& a, const Element& x);

/// The p^k elements sum_i c_i g_i of the F_p-span of k generators, indexed in
/// lexicographic coefficient order (first generator most significant).
class FiniteSpan {
 public:
  FiniteSpan(const FieldDesc& field, std::size_t ambient_dim, std::vector<Element> generators,
             std::size_t budget = kDefaultBudget);

  std::size_t size() const noexcept { return size_; }
  const FieldDesc& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }

  Element at(std::size_t index) const;
  /// Coefficient tuple of `index`, most significant first.
  std::vector<std::uint64_t> coefficients(std::size_t index) const;

  template <typename F>
  void for_each(F&& visit) const {
    for (std::size_t i = 0; i < size_; ++i) visit(i, at(i));
  }

 private:
  FieldDesc field_;
  std::size_t ambient_dim_;
  std::vector<Element> generators_;
  std::size_t size_;
};

/// Number of elements p^k, or BudgetExceededError when above `budget`.
std::size_t span_size(const FieldDesc& field, std::size_t k, std::size_t budget);

/// All p^dim elements of an algebra over F_p in lexicographic coordinate order.
FiniteSpan enumerate_elements(const StructureConstants& a, std::size_t budget = kDefaultBudget);
/// Fixed points of squaring, in enumeration order; always starts with 0.
std::vector<Element> enumerate_idempotents(const StructureConstants& a,
                                           std::size_t budget = kDefaultBudget);

/// Jordan table c'[i][j][k] = (c[i][j][k] + c[j][i][k]) / 2.
NonassocTable jordanize(const StructureConstants& a);
/// U_e(x) = 2 e.(e.x) - (e.e).x evaluated in a Jordan table.
Element jordan_U(const NonassocTable& jordan, const Element& e, const Element& x);

/// `e1 + 2*n1`, `-n2`, `0`.
std::string format_element(const NonassocTable& table, const Element& x);
inline std::string format_element(const StructureConstants& a, const Element& x) {
  return format_element(a.table(), x);
}

}  // namespace air
