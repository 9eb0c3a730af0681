#include <random>

#include <gtest/gtest.h>

#include "air/decomposition.hpp"
#include "air/errors.hpp"
#include "support.hpp"

using namespace air;
using airtest::el;
using airtest::f5;
using airtest::f7;
using airtest::row;

namespace {

const FieldDesc Q = FieldDesc::rationals();

Subspace full(const StructureConstants& a) { return Subspace::full(a.field(), a.dim()); }

std::vector<Element> basis_of(const StructureConstants& a, std::initializer_list<const char*> names) {
  std::vector<Element> out;
  for (const char* n : names) out.push_back(el(a, {{n, 1}}));
  return out;
}

}  // namespace

TEST(VerifyDecomposition, Examples) {
  const auto a22 = row("A2_2");
  EXPECT_TRUE(verify_decomposition(a22.algebra, a22.decomposition).ok());
  EXPECT_EQ(verify_decomposition(a22.algebra, a22.decomposition).semisimplicity_evidence, "orthogonal-idempotents");

  const auto a21 = row("A2_1");
  const auto r21 = verify_decomposition(a21.algebra, a21.decomposition);
  EXPECT_TRUE(r21.ok());
  EXPECT_EQ(r21.semisimplicity_evidence, "empty");

  Decomposition bad;
  bad.s_basis = basis_of(a22.algebra, {"n1"});
  bad.n_basis = {};
  const auto rb = verify_decomposition(a22.algebra, bad);
  EXPECT_FALSE(rb.ok());
  EXPECT_THROW(verify(a22.algebra, bad), UnverifiedDecompositionError);
}

TEST(VerifyDecomposition, NonIdealRejected) {
  // In A2_2 the span of e1 is not an ideal, so it cannot serve as N.
  const auto a = row("A2_2").algebra;
  Decomposition d;
  d.s_basis = basis_of(a, {"n1"});
  d.n_basis = basis_of(a, {"e1"});
  EXPECT_FALSE(verify_decomposition(a, d).ok());
}

TEST(VerifyDecomposition, MatrixAlgebraUsesTraceForm) {
  const auto m2 = instantiate(matrix_algebra(2));
  EXPECT_TRUE(m2.report.ok());
  EXPECT_EQ(m2.report.semisimplicity_evidence, "trace-form");
  EXPECT_TRUE(m2.decomposition.verified);
}

TEST(VerifyDecomposition, StableUnderRebasingN) {
  std::mt19937_64 rng(29);
  for (const auto& spec : builtin_tables()) {
    const auto pa = instantiate(spec, f7());
    const auto& d = pa.decomposition;
    if (d.n_basis.empty()) continue;
    for (int t = 0; t < 5; ++t) {
      const auto p = random_invertible(f7(), d.n_basis.size(), rng);
      Decomposition moved = d;
      moved.verified = false;
      for (std::size_t i = 0; i < d.n_basis.size(); ++i) {
        Element v = pa.algebra.zero();
        for (std::size_t j = 0; j < d.n_basis.size(); ++j) v += p(i, j) * d.n_basis[j];
        moved.n_basis[i] = v;
      }
      EXPECT_TRUE(verify_decomposition(pa.algebra, moved).ok()) << spec.name;
    }
  }
}

TEST(IdealPower, Examples) {
  const auto a21 = row("A2_1").algebra;
  EXPECT_EQ(ideal_power(a21, full(a21), 2), span_of(a21, basis_of(a21, {"n2"})));
  const auto a33 = row("A3_3").algebra;
  EXPECT_EQ(ideal_power(a33, full(a33), 3), span_of(a33, basis_of(a33, {"n3"})));
  EXPECT_EQ(ideal_power(a33, full(a33), 4).dim(), 0u);
  const auto s = span_of(a33, basis_of(a33, {"n2"}));
  EXPECT_EQ(ideal_power(a33, s, 1), s);
  EXPECT_THROW(ideal_power(a33, s, 0), std::invalid_argument);
}

TEST(SquaresSet, Examples) {
  const auto a21 = row("A2_1", f5());
  const auto sq = squares_set(a21.algebra, a21.decomposition.n_basis);
  const auto n2 = el(a21.algebra, {{"n2", 1}});
  EXPECT_EQ(sq, SquaresSet({a21.algebra.zero(), n2, Scalar::from_int(f5(), 4) * n2}));

  const auto m1 = instantiate(airtest::table_row("A3_2(alpha=-1)"), f5());
  EXPECT_EQ(squares_set(m1.algebra, m1.decomposition.n_basis), SquaresSet({m1.algebra.zero()}));
  EXPECT_EQ(squares_set(m1.algebra, {}), SquaresSet({m1.algebra.zero()}));
  EXPECT_THROW(squares_set(row("A2_1").algebra, {}), UnsupportedFieldError);
}

TEST(SquaresSet, SetOperations) {
  const FieldDesc f = f5();
  const SquaresSet a({Element::from_ints(f, {0}), Element::from_ints(f, {1})});
  const SquaresSet b({Element::from_ints(f, {1}), Element::from_ints(f, {4})});
  EXPECT_EQ(a.unite(b).size(), 3u);
  EXPECT_EQ(a.intersect(b), SquaresSet({Element::from_ints(f, {1})}));
}

TEST(CubeSetZero, Examples) {
  const auto a31 = row("A3_1");
  EXPECT_TRUE(cube_set_zero(a31.algebra, a31.decomposition.n_basis, true));
  EXPECT_TRUE(cube_set_zero(a31.algebra, a31.decomposition.n_basis, false));
  const auto a33 = row("A3_3");
  EXPECT_FALSE(cube_set_zero(a33.algebra, a33.decomposition.n_basis, true));
  const auto zero = StructureConstants::create(NonassocTable(Q, {"a", "b"}));
  EXPECT_TRUE(cube_set_zero(zero, {zero.basis_element(0), zero.basis_element(1)}, true));
}

TEST(QuadraticAnnihilator, Examples) {
  const auto a22 = row("A2_2").algebra;
  EXPECT_EQ(quadratic_annihilator(a22, a22.zero()), full(a22));
  EXPECT_EQ(quadratic_annihilator(a22, el(a22, {{"e1", 1}})), span_of(a22, basis_of(a22, {"n1"})));
  const auto a21 = row("A2_1").algebra;
  EXPECT_EQ(quadratic_annihilator(a21, el(a21, {{"n1", 1}})), full(a21));
  EXPECT_EQ(quadratic_annihilator_set(a21, {}), full(a21));
  EXPECT_EQ(quadratic_annihilator_set(a21, basis_of(a21, {"n1", "n2"})), full(a21));
  const auto x = el(a22, {{"e1", 1}, {"n1", 3}});
  EXPECT_EQ(quadratic_annihilator_set(a22, {x}), quadratic_annihilator(a22, x));
}

// --- properties -------------------------------------------------------------

TEST(DecompositionProperties, AnnihilatorIsAntitone) {
  std::mt19937_64 rng(31);
  for (const auto& spec : builtin_tables()) {
    const auto a = instantiate(spec, f5()).algebra;
    const auto all = enumerate_elements(a);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int t = 0; t < 10; ++t) {
      std::vector<Element> b{all.at(pick(rng))};
      std::vector<Element> c = b;
      c.push_back(all.at(pick(rng)));
      EXPECT_TRUE(quadratic_annihilator_set(a, c).is_subset_of(quadratic_annihilator_set(a, b))) << spec.name;
    }
  }
}

TEST(DecompositionProperties, AnnihilatorIsKernelOfSandwichMap) {
  for (const auto& spec : builtin_tables()) {
    const auto a = instantiate(spec, f5()).algebra;
    enumerate_elements(a).for_each([&](std::size_t, const Element& x) {
      const auto ann = quadratic_annihilator(a, x);
      EXPECT_EQ(ann, kernel(sandwich_matrix(a, x)));
      enumerate_elements(a).for_each([&](std::size_t, const Element& v) {
        EXPECT_EQ(ann.contains(v.coords()), sandwich(a, x, v).is_zero());
      });
    });
  }
}

TEST(DecompositionProperties, CubeSetZeroMatchesExhaustiveCubes) {
  std::mt19937_64 rng(37);
  auto check = [](const StructureConstants& a, const std::vector<Element>& n) {
    bool all_zero = true;
    FiniteSpan(a.field(), a.dim(), n).for_each([&](std::size_t, const Element& x) {
      if (!power(a, x, 3).is_zero()) all_zero = false;
    });
    EXPECT_EQ(cube_set_zero(a, n, false), all_zero);
    bool commutative = true;
    for (const auto& x : n)
      for (const auto& y : n) commutative = commutative && multiply(a, x, y) == multiply(a, y, x);
    if (commutative) {
      EXPECT_EQ(cube_set_zero(a, n, true), all_zero);
    }
  };
  for (const auto& spec : builtin_tables()) {
    const auto pa = instantiate(spec, f5());
    check(pa.algebra, pa.decomposition.n_basis);
  }
  for (int t = 0; t < 60; ++t) {
    const auto pa = instantiate(random_nilpotent(f5(), 3, rng));
    std::vector<Element> basis;
    for (std::size_t i = 0; i < pa.algebra.dim(); ++i) basis.push_back(pa.algebra.basis_element(i));
    check(pa.algebra, basis);
  }
}

TEST(DecompositionProperties, CubeZeroForcesTripleProductsToVanish) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const auto pa = instantiate(random_nilpotent(f7(), 3, rng));
    const auto& a = pa.algebra;
    const auto& n = pa.decomposition.n_basis;
    if (!a.table().is_commutative() || !cube_set_zero(a, n, true)) continue;
    for (const auto& x : n)
      for (const auto& y : n) {
        EXPECT_TRUE(multiply(a, multiply(a, x, x), y).is_zero());
        EXPECT_TRUE(multiply(a, multiply(a, y, y), x).is_zero());
        for (const auto& z : n) EXPECT_TRUE(multiply(a, multiply(a, x, y), z).is_zero());
      }
  }
}

TEST(DecompositionProperties, SquaresSetContainsZeroAndLiesInProducts) {
  for (const auto& spec : builtin_tables()) {
    const auto pa = instantiate(spec, f5());
    for (const auto* part : {&pa.decomposition.s_basis, &pa.decomposition.n_basis}) {
      const auto sq = squares_set(pa.algebra, *part);
      EXPECT_TRUE(sq.contains(pa.algebra.zero()));
      std::vector<Element> products;
      for (const auto& x : *part)
        for (const auto& y : *part) products.push_back(multiply(pa.algebra, x, y));
      const auto ps = span_of(pa.algebra, products);
      for (const auto& v : sq.elements()) EXPECT_TRUE(ps.contains(v.coords())) << spec.name;
    }
  }
}
