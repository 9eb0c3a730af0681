#include "air/decomposition.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

#include "air/errors.hpp"

namespace air {

Subspace span_of(const StructureConstants& a, const std::vector<Element>& elements) {
  std::vector<Vector> rows;
  rows.reserve(elements.size());
  for (const auto& e : elements) rows.push_back(e.coords());
  return Subspace::span(a.field(), a.dim(), rows);
}

Subspace ideal_power(const StructureConstants& a, const Subspace& s, std::size_t k) {
  if (k == 0) throw std::invalid_argument("ideal_power needs k >= 1");
  const auto gens = s.basis_vectors();
  Subspace current = s;
  for (std::size_t step = 1; step < k && current.dim() > 0; ++step) {
    std::vector<Vector> products;
    for (const auto& p : current.basis_vectors()) {
      for (const auto& g : gens) {
        products.push_back(multiply(a, Element(a.field(), p), Element(a.field(), g)).coords());
      }
    }
    current = Subspace::span(a.field(), a.dim(), products);
  }
  return current;
}

bool is_nilpotent_subspace(const StructureConstants& a, const Subspace& s) {
  return ideal_power(a, s, a.dim() + 1).dim() == 0;
}

bool is_nilpotent_algebra(const StructureConstants& a) {
  return is_nilpotent_subspace(a, Subspace::full(a.field(), a.dim()));
}

namespace {

// Coordinates of v in the RREF basis of s (v must lie in s).
Vector coordinates_in(const Subspace& s, const Vector& v) {
  Vector coords;
  const auto& basis = s.basis();
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t pivot = 0;
    while (basis(i, pivot).is_zero()) ++pivot;
    coords.push_back(v[pivot]);
  }
  return coords;
}

}  // namespace

Matrix trace_form(const StructureConstants& a, const Subspace& s) {
  const auto basis = s.basis_vectors();
  const std::size_t m = basis.size();
  // left[i] is the matrix of L_{s_i} restricted to S, in S's own basis.
  std::vector<Matrix> left;
  for (const auto& si : basis) {
    Matrix l(a.field(), m, m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto prod = multiply(a, Element(a.field(), si), Element(a.field(), basis[j])).coords();
      const auto c = coordinates_in(s, prod);
      for (std::size_t r = 0; r < m; ++r) l(r, j) = c[r];
    }
    left.push_back(std::move(l));
  }
  Matrix gram(a.field(), m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Matrix prod = left[i] * left[j];
      Scalar tr = Scalar::zero(a.field());
      for (std::size_t r = 0; r < m; ++r) tr += prod(r, r);
      gram(i, j) = tr;
    }
  }
  return gram;
}

DecompositionReport verify_decomposition(const StructureConstants& a, const Decomposition& d) {
  DecompositionReport report;
  auto fail = [&](std::string msg) { report.failures.push_back(std::move(msg)); };

  for (const auto* list : {&d.s_basis, &d.n_basis}) {
    for (const auto& e : *list) {
      if (!(e.field() == a.field()) || e.dim() != a.dim()) {
        fail("basis element does not belong to the algebra");
        return report;
      }
    }
  }

  const Subspace s = span_of(a, d.s_basis);
  const Subspace n = span_of(a, d.n_basis);

  if (s.dim() != d.s_basis.size()) fail("semisimple basis is linearly dependent");
  if (n.dim() != d.n_basis.size()) fail("nilradical basis is linearly dependent");
  if (s.dim() + n.dim() != a.dim() || subspace_sum(s, n).dim() != a.dim()) {
    fail("S and N do not form a direct sum equal to the algebra (dim S = " +
         std::to_string(s.dim()) + ", dim N = " + std::to_string(n.dim()) +
         ", dim A = " + std::to_string(a.dim()) + ")");
  }

  bool subalgebra = true;
  for (const auto& x : d.s_basis) {
    for (const auto& y : d.s_basis) {
      if (!s.contains(multiply(a, x, y).coords())) subalgebra = false;
    }
  }
  if (!subalgebra) fail("S is not closed under multiplication");

  bool ideal = true;
  for (std::size_t k = 0; k < a.dim() && ideal; ++k) {
    const Element b = a.basis_element(k);
    for (const auto& x : d.n_basis) {
      if (!n.contains(multiply(a, b, x).coords()) || !n.contains(multiply(a, x, b).coords())) {
        ideal = false;
        break;
      }
    }
  }
  if (!ideal) fail("N is not a two-sided ideal");

  if (!is_nilpotent_subspace(a, n)) fail("N is not nilpotent");

  if (d.s_idempotents) {
    const auto& ids = *d.s_idempotents;
    bool ok = true;
    for (std::size_t i = 0; i < ids.size() && ok; ++i) {
      if (ids[i].is_zero() || !is_idempotent(a, ids[i])) ok = false;
      for (std::size_t j = 0; j < ids.size() && ok; ++j) {
        if (i != j && !multiply(a, ids[i], ids[j]).is_zero()) ok = false;
      }
    }
    if (!ok) {
      fail("designated idempotents of S are not pairwise-orthogonal nonzero idempotents");
    } else if (!(span_of(a, ids) == s)) {
      fail("designated idempotents do not span S");
    } else {
      report.semisimplicity_evidence = "orthogonal-idempotents";
    }
  } else if (s.dim() == 0) {
    report.semisimplicity_evidence = "empty";
  } else if (subalgebra) {
    if (rref(trace_form(a, s)).rank == s.dim()) {
      report.semisimplicity_evidence = "trace-form";
    } else {
      fail("trace form of S is degenerate: no semisimplicity evidence");
    }
  }
  return report;
}

Decomposition verify(const StructureConstants& a, Decomposition d) {
  const auto report = verify_decomposition(a, d);
  if (!report.ok()) {
    std::ostringstream os;
    os << "decomposition rejected:";
    for (const auto& f : report.failures) os << "\n  - " << f;
    throw UnverifiedDecompositionError(os.str());
  }
  d.verified = true;
  return d;
}

// ---------------------------------------------------------------------------
// Squares sets

bool residue_less(const Element& a, const Element& b) {
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(),
                                      b.coords().end(), [](const Scalar& x, const Scalar& y) {
                                        return x.compare(y) == std::strong_ordering::less;
                                      });
}

SquaresSet::SquaresSet(std::vector<Element> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), residue_less);
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool SquaresSet::contains(const Element& v) const {
  return std::binary_search(elements_.begin(), elements_.end(), v, residue_less);
}

SquaresSet SquaresSet::unite(const SquaresSet& other) const {
  std::vector<Element> out;
  std::set_union(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end(),
                 std::back_inserter(out), residue_less);
  return SquaresSet(std::move(out));
}

SquaresSet SquaresSet::intersect(const SquaresSet& other) const {
  std::vector<Element> out;
  std::set_intersection(elements_.begin(), elements_.end(), other.elements_.begin(),
                        other.elements_.end(), std::back_inserter(out), residue_less);
  return SquaresSet(std::move(out));
}

SquaresSet squares_set(const StructureConstants& a, const std::vector<Element>& spanning,
                       std::size_t budget) {
  if (!a.field().is_finite()) {
    throw UnsupportedFieldError("squares sets are only materialized over finite fields");
  }
  const FiniteSpan span(a.field(), a.dim(), spanning, budget);
  std::vector<Element> squares;
  squares.reserve(span.size());
  span.for_each([&](std::size_t, const Element& x) { squares.push_back(multiply(a, x, x)); });
  return SquaresSet(std::move(squares));
}

// ---------------------------------------------------------------------------
// Cube sets

bool cube_set_zero(const StructureConstants& a, const std::vector<Element>& n_basis, bool commutative) {
  const std::size_t m = n_basis.size();
  auto triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    return multiply(a, multiply(a, n_basis[i], n_basis[j]), n_basis[k]);
  };
  if (commutative) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (!(multiply(a, n_basis[i], n_basis[j]) == multiply(a, n_basis[j], n_basis[i]))) {
          throw std::invalid_argument("cube_set_zero: span declared commutative but is not");
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
          if (!triple(i, j, k).is_zero()) return false;
        }
      }
    }
    return true;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      for (std::size_t k = j; k < m; ++k) {
        std::array<std::size_t, 3> idx{i, j, k};
        Element sum = a.zero();
        // All 6 orderings, repeated indices included; the multiplicity is a
        // unit because 2 and 3 are invertible.
        std::sort(idx.begin(), idx.end());
        std::array<std::size_t, 3> perm{0, 1, 2};
        do {
          sum += triple(idx[perm[0]], idx[perm[1]], idx[perm[2]]);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!sum.is_zero()) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Quadratic annihilators

Matrix sandwich_matrix(const StructureConstants& a, const Element& x) {
  const std::size_t n = a.dim();
  Matrix m(a.field(), n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Element col = sandwich(a, x, a.basis_element(k));
    for (std::size_t r = 0; r < n; ++r) m(r, k) = col[r];
  }
  return m;
}

Subspace quadratic_annihilator(const StructureConstants& a, const Element& x) {
  return kernel(sandwich_matrix(a, x));
}

Subspace quadratic_annihilator_set(const StructureConstants& a, const std::vector<Element>& b) {
  Subspace out = Subspace::full(a.field(), a.dim());
  for (const auto& s : b) out = subspace_intersect(out, quadratic_annihilator(a, s));
  return out;
}

}  // namespace air
