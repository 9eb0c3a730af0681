#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "air/algebra.hpp"
#include "air/decomposition.hpp"
#include "air/field.hpp"

namespace air {

enum class Role { Semisimple, Nilpotent };

struct BasisDecl {
  std::string name;
  Role role = Role::Nilpotent;
  friend bool operator==(const BasisDecl&, const BasisDecl&) = default;
};

struct Term {
  mpq_class coef;
  std::string basis;
  friend bool operator==(const Term& a, const Term& b) { return a.coef == b.coef && a.basis == b.basis; }
};

/// b_left * b_right = sum of terms; unlisted products are zero.
struct ProductRule {
  std::string left;
  std::string right;
  std::vector<Term> terms;
  friend bool operator==(const ProductRule&, const ProductRule&) = default;
};

/// Textual description of an algebra as written in the DSL. Canonical form:
/// rules ordered by (left, right) basis position, terms by basis position,
/// like terms merged, no zero terms and no empty rules.
struct AlgebraSpec {
  std::string name;
  std::string field = "Q";
  std::vector<BasisDecl> basis;
  std::vector<ProductRule> products;
  std::optional<bool> expected_air;
  std::string cite;

  std::optional<std::size_t> index_of(std::string_view basis_name) const;
  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

/// Reorders and merges rules and terms into canonical form.
void canonicalize(AlgebraSpec& spec);

/// An instantiated spec. The decomposition comes from the :s / :n roles and is
/// marked verified only if verify_decomposition accepts it.
struct ParsedAlgebra {
  AlgebraSpec spec;
  StructureConstants algebra;
  Decomposition decomposition;
  DecompositionReport report;
};

/// Parses DSL text into a canonical spec; ParseError with line and column on
/// any malformed input.
AlgebraSpec parse_spec(std::string_view text);

/// Builds the algebra over the spec's field or `field_override`.
/// Throws NonAssociativeError, InvalidFieldError or UnsupportedFieldError.
ParsedAlgebra instantiate(const AlgebraSpec& spec, const std::optional<FieldDesc>& field_override = std::nullopt);

/// parse_spec followed by instantiate; every failure is a located ParseError.
ParsedAlgebra parse_algebra(std::string_view text, const std::optional<FieldDesc>& field_override = std::nullopt);

std::string serialize(const AlgebraSpec& spec);

/// Spec reproducing `a` exactly; residues are written as integers in [0, p).
AlgebraSpec spec_from_structure(const StructureConstants& a, std::string name,
                                const std::vector<Role>& roles);

// ---------------------------------------------------------------------------
// Fixtures

/// The four two-dimensional rows, expected (-, +, +, +).
std::vector<AlgebraSpec> builtin_table1();

/// The thirteen three-dimensional rows; the generic row uses `alpha`, which
/// must avoid 1 and -1.
std::vector<AlgebraSpec> builtin_table2(const mpq_class& alpha = 2);

/// The two-dimensional rows followed by the three-dimensional rows at `alpha`.
std::vector<AlgebraSpec> builtin_tables(const mpq_class& alpha = 2);

struct RemarkAlgebra {
  std::string key;  // A1, A2, B1, B2, C1, C2
  AlgebraSpec spec;
  bool decomposable = false;
};

std::vector<RemarkAlgebra> remark_algebras();
/// Lookup by key; std::invalid_argument for unknown keys.
AlgebraSpec remark_algebra(std::string_view key);

/// Kinds a/b: unit u plus k square-zero matrix units above / below the
/// diagonal. Kinds c/d: the k matrix units alone (all products zero).
AlgebraSpec example_matrix_unit(char kind, std::size_t k, const std::string& field = "Q");

/// Basis e, e1..en with e a two-sided unit and all e_i e_j = 0.
AlgebraSpec example_unital_null(std::size_t n, const std::string& field = "Q");

/// M_n on matrix units e_ij, n in {2, 3}; all of it semisimple.
AlgebraSpec matrix_algebra(std::size_t n, const std::string& field = "Q");

// ---------------------------------------------------------------------------
// Random generators

/// Change of basis: new b'_i = sum_j p(i, j) b_j. `p` must be invertible.
StructureConstants rebase(const StructureConstants& a, const Matrix& p);

/// Random invertible matrix over a prime field.
Matrix random_invertible(const FieldDesc& field, std::size_t n, std::mt19937_64& rng);

/// Nilpotent algebra of dimension 1..max_dim over F_p: products of b_i, b_j
/// land in the span of later basis vectors, sparse random coefficients,
/// rejection-sampled for associativity. Some draws are forced anticommutative
/// so square-zero algebras occur regularly.
AlgebraSpec random_nilpotent(const FieldDesc& field, std::size_t max_dim, std::mt19937_64& rng);

/// S = F e with N^2 = 0 and e acting on N by commuting idempotent left and
/// right projections, presented in a random basis of N. These satisfy the
/// codim-1 conditions by construction.
AlgebraSpec random_codim1(const FieldDesc& field, std::size_t n_dim, std::mt19937_64& rng);

/// Random nilpotent 3x3 matrix g u g^-1 with u strictly upper triangular.
Matrix random_nilpotent_matrix(const FieldDesc& field, std::mt19937_64& rng, int coef_range = 5);

}  // namespace air
