#include "air/algebra.hpp"

#include <limits>
#include <stdexcept>

#include "air/errors.hpp"

namespace air {

// ---------------------------------------------------------------------------
// Element

Element::Element(const FieldDesc& field, Vector coords) : field_(field), coords_(std::move(coords)) {
  for (const auto& s : coords_) {
    if (!(s.field() == field_)) throw FieldMismatchError("element coordinate outside " + field_.token());
  }
}

Element Element::basis(const FieldDesc& field, std::size_t dim, std::size_t i) {
  Element e(field, dim);
  e.coords_.at(i) = Scalar::one(field);
  return e;
}

Element Element::from_ints(const FieldDesc& field, std::initializer_list<long long> coords) {
  Vector v;
  for (long long c : coords) v.push_back(Scalar::from_int(field, c));
  return Element(field, std::move(v));
}

void Element::require_compatible(const Element& other) const {
  if (!(field_ == other.field_)) throw FieldMismatchError("elements over different fields");
  if (coords_.size() != other.coords_.size()) {
    throw DimensionMismatchError("elements of dimension " + std::to_string(coords_.size()) +
                                 " and " + std::to_string(other.coords_.size()));
  }
}

Element& Element::operator+=(const Element& rhs) {
  require_compatible(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  require_compatible(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

Element& Element::operator*=(const Scalar& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

Element Element::operator-() const {
  Element out(field_, dim());
  return out -= *this;
}

// ---------------------------------------------------------------------------
// NonassocTable

NonassocTable::NonassocTable(const FieldDesc& field, std::vector<std::string> basis_names)
    : field_(field),
      names_(std::move(basis_names)),
      c_(names_.size() * names_.size() * names_.size(), Scalar::zero(field)) {}

std::optional<std::size_t> NonassocTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

void NonassocTable::set_coeff(std::size_t i, std::size_t j, std::size_t k, const Scalar& value) {
  if (!(value.field() == field_)) throw FieldMismatchError("structure constant outside " + field_.token());
  if (i >= dim() || j >= dim() || k >= dim()) throw std::out_of_range("structure constant index");
  c_[(i * dim() + j) * dim() + k] = value;
}

void NonassocTable::set_product(std::size_t i, std::size_t j, const Element& value) {
  require_member(value);
  for (std::size_t k = 0; k < dim(); ++k) set_coeff(i, j, k, value[k]);
}

Element NonassocTable::product(std::size_t i, std::size_t j) const {
  Element out(field_, dim());
  for (std::size_t k = 0; k < dim(); ++k) out[k] = coeff(i, j, k);
  return out;
}

void NonassocTable::require_member(const Element& x) const {
  if (!(x.field() == field_)) {
    throw FieldMismatchError("element over " + x.field().token() + " used in algebra over " +
                             field_.token());
  }
  if (x.dim() != dim()) {
    throw DimensionMismatchError("element of dimension " + std::to_string(x.dim()) +
                                 " used in algebra of dimension " + std::to_string(dim()));
  }
}

Element NonassocTable::multiply(const Element& x, const Element& y) const {
  require_member(x);
  require_member(y);
  const std::size_t n = dim();
  Element out(field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& c = coeff(i, j, k);
        if (!c.is_zero()) out[k] += xy * c;
      }
    }
  }
  return out;
}

bool NonassocTable::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      for (std::size_t k = 0; k < dim(); ++k) {
        if (!(coeff(i, j, k) == coeff(j, i, k))) return false;
      }
    }
  }
  return true;
}

bool NonassocTable::same_coefficients(const NonassocTable& other) const {
  return field_ == other.field_ && dim() == other.dim() && c_ == other.c_;
}

// ---------------------------------------------------------------------------
// Associativity

std::optional<AssociativityViolation> check_associative(const NonassocTable& t) {
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Element bij = t.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        const Element left = t.multiply(bij, t.basis_element(k));
        const Element right = t.multiply(t.basis_element(i), t.product(j, k));
        if (!(left == right)) return AssociativityViolation{i, j, k};
      }
    }
  }
  return std::nullopt;
}

StructureConstants StructureConstants::create(NonassocTable table) {
  if (const auto v = check_associative(table)) {
    const auto& names = table.basis_names();
    throw NonAssociativeError("multiplication table is not associative: (" + names[(*v)[0]] +
                              " " + names[(*v)[1]] + ") " + names[(*v)[2]] + " != " +
                              names[(*v)[0]] + " (" + names[(*v)[1]] + " " + names[(*v)[2]] + ")");
  }
  return StructureConstants(std::move(table));
}

StructureConstants StructureConstants::over(const FieldDesc& field) const {
  NonassocTable t(field, basis_names());
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& c = table_.coeff(i, j, k);
        if (c.is_zero()) continue;
        if (c.field().is_finite()) {
          t.set_coeff(i, j, k, Scalar::from_int(field, static_cast<long long>(c.residue())));
        } else {
          t.set_coeff(i, j, k, Scalar::from_rational(field, c.rational()));
        }
      }
    }
  }
  return create(std::move(t));
}

// ---------------------------------------------------------------------------
// Element arithmetic

Element multiply(const StructureConstants& a, const Element& x, const Element& y) {
  return a.table().multiply(x, y);
}

Element sandwich(const StructureConstants& a, const Element& x, const Element& y) {
  return multiply(a, multiply(a, x, y), x);
}

Element power(const StructureConstants& a, const Element& x, std::size_t k) {
  if (k == 0) throw std::invalid_argument("power(x, 0) is undefined: the algebra may lack a unit");
  Element out = x;
  for (std::size_t i = 1; i < k; ++i) out = multiply(a, out, x);
  return out;
}

bool is_idempotent(const StructureConstants& a, const Element& x) { return multiply(a, x, x) == x; }

std::optional<std::size_t> nilpotency_index(const StructureConstants& a, const Element& x) {
  Element current = x;
  for (std::size_t k = 1; k <= a.dim() + 1; ++k) {
    if (current.is_zero()) return k;
    current = multiply(a, current, x);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Enumeration

std::size_t span_size(const FieldDesc& field, std::size_t k, std::size_t budget) {
  if (!field.is_finite()) throw UnsupportedFieldError("enumeration needs a prime field, got Q");
  const std::uint64_t p = field.modulus();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / p || size * p > budget) {
      // Report the true count when it fits, otherwise a saturated value.
      std::uint64_t full = size;
      for (std::size_t j = i; j < k; ++j) {
        if (full > std::numeric_limits<std::uint64_t>::max() / p) {
          full = std::numeric_limits<std::uint64_t>::max();
          break;
        }
        full *= p;
      }
      throw BudgetExceededError(static_cast<std::size_t>(full), budget);
    }
    size *= p;
  }
  if (size > budget) throw BudgetExceededError(size, budget);
  return static_cast<std::size_t>(size);
}

FiniteSpan::FiniteSpan(const FieldDesc& field, std::size_t ambient_dim, std::vector<Element> generators,
                       std::size_t budget)
    : field_(field),
      ambient_dim_(ambient_dim),
      generators_(std::move(generators)),
      size_(span_size(field, generators_.size(), budget)) {
  for (const auto& g : generators_) {
    if (!(g.field() == field_) || g.dim() != ambient_dim_) {
      throw DimensionMismatchError("span generator does not live in the ambient space");
    }
  }
}

std::vector<std::uint64_t> FiniteSpan::coefficients(std::size_t index) const {
  const std::uint64_t p = field_.modulus();
  std::vector<std::uint64_t> coef(generators_.size());
  for (std::size_t g = generators_.size(); g-- > 0;) {
    coef[g] = index % p;
    index /= p;
  }
  return coef;
}

Element FiniteSpan::at(std::size_t index) const {
  const auto coef = coefficients(index);
  Element out(field_, ambient_dim_);
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    if (coef[g] == 0) continue;
    const Scalar c = Scalar::from_residue(field_, coef[g]);
    for (std::size_t k = 0; k < ambient_dim_; ++k) out[k] += c * generators_[g][k];
  }
  return out;
}

FiniteSpan enumerate_elements(const StructureConstants& a, std::size_t budget) {
  std::vector<Element> basis;
  for (std::size_t i = 0; i < a.dim(); ++i) basis.push_back(a.basis_element(i));
  return FiniteSpan(a.field(), a.dim(), std::move(basis), budget);
}

std::vector<Element> enumerate_idempotents(const StructureConstants& a, std::size_t budget) {
  const auto space = enumerate_elements(a, budget);
  std::vector<Element> out;
  space.for_each([&](std::size_t, const Element& x) {
    if (is_idempotent(a, x)) out.push_back(x);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Jordan functor

NonassocTable jordanize(const StructureConstants& a) {
  const auto& src = a.table();
  NonassocTable out(a.field(), a.basis_names());
  const Scalar half = Scalar::from_int(a.field(), 2).inverse();
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        out.set_coeff(i, j, k, (src.coeff(i, j, k) + src.coeff(j, i, k)) * half);
      }
    }
  }
  return out;
}

Element jordan_U(const NonassocTable& jordan, const Element& e, const Element& x) {
  const Scalar two = Scalar::from_int(jordan.field(), 2);
  const Element ex = jordan.multiply(e, x);
  Element out = two * jordan.multiply(e, ex);
  out -= jordan.multiply(jordan.multiply(e, e), x);
  return out;
}

// ---------------------------------------------------------------------------

std::string format_element(const NonassocTable& table, const Element& x) {
  std::string out;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const Scalar& c = x[i];
    if (c.is_zero()) continue;
    std::string coef = c.to_string();
    bool negative = !coef.empty() && coef.front() == '-';
    if (negative) coef.erase(0, 1);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (coef != "1") out += coef + "*";
    out += table.basis_names()[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace air
