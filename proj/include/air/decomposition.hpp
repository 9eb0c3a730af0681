#pragma once

#include <optional>
#include <string>
#include <vector>

#include "air/algebra.hpp"
#include "air/linalg.hpp"

namespace air {

/// A declared linear split A = S + N into a semisimple subalgebra S and the
/// nilradical N. `verified` is set only by verify().
struct Decomposition {
  std::vector<Element> s_basis;
  std::vector<Element> n_basis;
  /// Pairwise-orthogonal idempotents spanning S, when designated.
  std::optional<std::vector<Element>> s_idempotents;
  bool verified = false;
};

struct DecompositionReport {
  std::vector<std::string> failures;
  /// "orthogonal-idempotents", "trace-form" or "empty".
  std::string semisimplicity_evidence;

  bool ok() const noexcept { return failures.empty(); }
};

/// Checks that S is a subalgebra, N a nilpotent two-sided ideal, A = S (+) N,
/// and that S is semisimple (orthogonal idempotents or a nondegenerate trace
/// form of its left regular representation). Failures are data, not errors.
DecompositionReport verify_decomposition(const StructureConstants& a, const Decomposition& d);

/// Copy of `d` with `verified` set; UnverifiedDecompositionError listing the
/// failures otherwise.
Decomposition verify(const StructureConstants& a, Decomposition d);

Subspace span_of(const StructureConstants& a, const std::vector<Element>& elements);

/// Span of all k-fold products of elements of s (k >= 1).
Subspace ideal_power(const StructureConstants& a, const Subspace& s, std::size_t k);

/// Whether some power N^k, k <= dim + 1, of the span vanishes.
bool is_nilpotent_subspace(const StructureConstants& a, const Subspace& s);
bool is_nilpotent_algebra(const StructureConstants& a);

/// Gram matrix Tr(L_{s_i s_j}) of the trace form of S acting on itself.
Matrix trace_form(const StructureConstants& a, const Subspace& s);

/// The bare set {x^2 : x in span} over a finite field; not a subspace.
class SquaresSet {
 public:
  SquaresSet() = default;
  explicit SquaresSet(std::vector<Element> elements);

  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(const Element& v) const;

  SquaresSet unite(const SquaresSet& other) const;
  SquaresSet intersect(const SquaresSet& other) const;

  friend bool operator==(const SquaresSet&, const SquaresSet&) = default;

 private:
  std::vector<Element> elements_;  // sorted, deduplicated
};

/// Lexicographic order on residue coordinates.
bool residue_less(const Element& a, const Element& b);

SquaresSet squares_set(const StructureConstants& a, const std::vector<Element>& spanning,
                       std::size_t budget = kDefaultBudget);

/// Whether x^3 = 0 for every x in the span of `n_basis`.
///
/// With `commutative` the span must be commutative and the test is that every
/// triple product of basis vectors vanishes; otherwise the S3-symmetrized
/// triple products are tested. Both are exact because 2 and 3 are invertible.
bool cube_set_zero(const StructureConstants& a, const std::vector<Element>& n_basis, bool commutative);

/// Matrix of v -> x v x in the standard basis.
Matrix sandwich_matrix(const StructureConstants& a, const Element& x);

/// {v : x v x = 0}.
Subspace quadratic_annihilator(const StructureConstants& a, const Element& x);
/// Intersection of quadratic_annihilator over all listed elements.
Subspace quadratic_annihilator_set(const StructureConstants& a, const std::vector<Element>& b);

}  // namespace air
