#include "air/catalog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "air/errors.hpp"

namespace air {

std::optional<std::size_t> AlgebraSpec::index_of(std::string_view basis_name) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].name == basis_name) return i;
  }
  return std::nullopt;
}

void canonicalize(AlgebraSpec& spec) {
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, mpq_class>> merged;
  for (const auto& rule : spec.products) {
    auto& terms = merged[{*spec.index_of(rule.left), *spec.index_of(rule.right)}];
    for (const auto& t : rule.terms) terms[*spec.index_of(t.basis)] += t.coef;
  }
  spec.products.clear();
  for (const auto& [ij, terms] : merged) {
    ProductRule rule{spec.basis[ij.first].name, spec.basis[ij.second].name, {}};
    for (const auto& [k, c] : terms) {
      if (c != 0) rule.terms.push_back({c, spec.basis[k].name});
    }
    if (!rule.terms.empty()) spec.products.push_back(std::move(rule));
  }
}

ParsedAlgebra instantiate(const AlgebraSpec& spec, const std::optional<FieldDesc>& field_override) {
  const FieldDesc field = field_override ? *field_override : FieldDesc::parse(spec.field);
  std::vector<std::string> names;
  for (const auto& b : spec.basis) names.push_back(b.name);
  NonassocTable table(field, names);
  for (const auto& rule : spec.products) {
    const std::size_t i = *spec.index_of(rule.left);
    const std::size_t j = *spec.index_of(rule.right);
    for (const auto& t : rule.terms) {
      const std::size_t k = *spec.index_of(t.basis);
      try {
        table.set_coeff(i, j, k, table.coeff(i, j, k) + Scalar::from_rational(field, t.coef));
      } catch (const std::domain_error&) {
        throw InvalidFieldError("coefficient " + t.coef.get_str() + " of " + rule.left + " " + rule.right +
                                " is undefined in " + field.token());
      }
    }
  }
  StructureConstants algebra = StructureConstants::create(std::move(table));

  Decomposition d;
  for (std::size_t i = 0; i < spec.basis.size(); ++i) {
    (spec.basis[i].role == Role::Semisimple ? d.s_basis : d.n_basis).push_back(algebra.basis_element(i));
  }
  bool orthogonal = !d.s_basis.empty();
  for (std::size_t i = 0; i < d.s_basis.size() && orthogonal; ++i) {
    for (std::size_t j = 0; j < d.s_basis.size() && orthogonal; ++j) {
      const Element prod = multiply(algebra, d.s_basis[i], d.s_basis[j]);
      orthogonal = i == j ? prod == d.s_basis[i] : prod.is_zero();
    }
  }
  if (orthogonal) d.s_idempotents = d.s_basis;
  DecompositionReport report = verify_decomposition(algebra, d);
  d.verified = report.ok();
  return ParsedAlgebra{spec, std::move(algebra), std::move(d), std::move(report)};
}

AlgebraSpec spec_from_structure(const StructureConstants& a, std::string name, const std::vector<Role>& roles) {
  if (roles.size() != a.dim()) throw DimensionMismatchError("one role per basis element required");
  AlgebraSpec spec;
  spec.name = std::move(name);
  spec.field = a.field().token();
  for (std::size_t i = 0; i < a.dim(); ++i) spec.basis.push_back({a.basis_names()[i], roles[i]});
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      ProductRule rule{spec.basis[i].name, spec.basis[j].name, {}};
      for (std::size_t k = 0; k < a.dim(); ++k) {
        const Scalar& c = a.table().coeff(i, j, k);
        if (c.is_zero()) continue;
        const mpq_class q = c.field().is_finite() ? mpq_class(static_cast<unsigned long>(c.residue())) : c.rational();
        rule.terms.push_back({q, spec.basis[k].name});
      }
      if (!rule.terms.empty()) spec.products.push_back(std::move(rule));
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

AlgebraSpec fixture(const std::string& text) { return parse_spec(text); }

const char* const kTable1[] = {
    "algebra A2_1 over Q\nbasis n1:n n2:n\nmul n1 n1 = n2\nexpect -\ncite nilpotent criterion\n",
    "algebra A2_2 over Q\nbasis e1:s n1:n\nmul e1 e1 = e1\nmul e1 n1 = n1\nexpect +\ncite codim-1 criterion\n",
    "algebra A2_3 over Q\nbasis e1:s n1:n\nmul e1 e1 = e1\nmul n1 e1 = n1\nexpect +\ncite codim-1 criterion\n",
    "algebra A2_4 over Q\nbasis e1:s n1:n\nmul e1 e1 = e1\nmul e1 n1 = n1\nmul n1 e1 = n1\n"
    "expect +\ncite codim-1 criterion\n",
};

std::string alpha_text(const mpq_class& alpha) {
  return alpha.get_den() == 1 ? alpha.get_num().get_str()
                              : alpha.get_num().get_str() + "/" + alpha.get_den().get_str();
}

}  // namespace

std::vector<AlgebraSpec> builtin_table1() {
  std::vector<AlgebraSpec> out;
  for (const char* text : kTable1) out.push_back(fixture(text));
  return out;
}

std::vector<AlgebraSpec> builtin_table2(const mpq_class& alpha) {
  if (alpha == 1 || alpha == -1) {
    throw std::invalid_argument("alpha must avoid 1 and -1 for the generic row");
  }
  const std::string a = alpha_text(alpha);
  const std::string nil = "basis n1:n n2:n n3:n\n";
  const std::string one = "basis e1:s n1:n n2:n\n";
  const std::string c1 = "cite codim-1 criterion\n";
  const std::string cn = "cite nilpotent criterion\n";
  const std::vector<std::string> texts = {
      "algebra A3_1 over Q\n" + nil + "mul n1 n3 = n2\nmul n3 n1 = n2\nexpect -\n" + cn,
      "algebra A3_2(alpha=" + a + ") over Q\n" + nil + "mul n1 n3 = n2\nmul n3 n1 = " + a +
          "*n2\nexpect -\n" + cn,
      "algebra A3_2(alpha=-1) over Q\n" + nil + "mul n1 n3 = n2\nmul n3 n1 = -n2\nexpect +\n" + cn,
      "algebra A3_3 over Q\n" + nil + "mul n1 n1 = n2\nmul n1 n2 = n3\nmul n2 n1 = n3\nexpect -\n" + cn,
      "algebra A3_4 over Q\n" + one + "mul n1 e1 = n2\nmul n2 e1 = n2\nmul e1 e1 = e1\nexpect +\n" + c1,
      "algebra A3_5 over Q\n" + one + "mul n2 e1 = n2\nmul e1 n1 = n1\nmul e1 e1 = e1\nexpect +\n" + c1,
      "algebra A3_6 over Q\n" + one + "mul e1 n1 = n2\nmul e1 n2 = n2\nmul e1 e1 = e1\nexpect +\n" + c1,
      "algebra A3_7 over Q\nbasis e1:s e2:s n1:n\nmul n1 e1 = n1\nmul e1 e1 = e1\nmul e2 n1 = n1\n"
      "mul e2 e2 = e2\nexpect +\ncite codim-2 criterion, both case 1 and case 2\n",
      "algebra A3_8 over Q\n" + one + "mul n1 e1 = n1\nmul n2 e1 = n2\nmul e1 n1 = n1\nmul e1 e1 = e1\nexpect +\n" +
          c1,
      "algebra A3_9 over Q\n" + one + "mul n2 e1 = n2\nmul e1 n1 = n1\nmul e1 n2 = n2\nmul e1 e1 = e1\nexpect +\n" +
          c1,
      "algebra A3_10 over Q\n" + one +
          "mul n1 e1 = n1\nmul n2 e1 = n2\nmul e1 n1 = n1\nmul e1 n2 = n2\nmul e1 e1 = e1\nexpect +\n" + c1,
      "algebra A3_11 over Q\n" + one +
          "mul n1 e1 = n2\nmul n2 e1 = n2\nmul e1 n1 = n2\nmul e1 n2 = n2\nmul e1 e1 = e1\nexpect +\n" + c1,
      "algebra A3_12 over Q\n" + one +
          "mul n1 n1 = n2\nmul n1 e1 = n1\nmul n2 e1 = n2\nmul e1 n1 = n1\nmul e1 n2 = n2\nmul e1 e1 = e1\n"
          "expect -\n" + c1,
  };
  std::vector<AlgebraSpec> out;
  for (const auto& t : texts) out.push_back(fixture(t));
  return out;
}

std::vector<AlgebraSpec> builtin_tables(const mpq_class& alpha) {
  auto out = builtin_table1();
  for (auto& s : builtin_table2(alpha)) out.push_back(std::move(s));
  return out;
}

std::vector<RemarkAlgebra> remark_algebras() {
  const std::string c1 = "cite codim-1 criterion\n";
  const std::string c2 = "cite codim-2 criterion\n";
  return {
      {"A1",
       fixture("algebra remark_A1 over Q\nbasis e1:s e2:s n1:n n2:n\nmul e1 e1 = e1\nmul e2 e2 = e2\n"
               "mul e1 n1 = n1\nmul n2 e2 = n2\nexpect +\n" + c2),
       true},
      {"A2",
       fixture("algebra remark_A2 over Q\nbasis e1:s e2:s n1:n n2:n\nmul e1 e1 = e1\nmul e2 e2 = e2\n"
               "mul n1 e1 = n1\nmul e2 n1 = n1\nmul n2 e1 = n2\nexpect +\n" + c2),
       false},
      {"B1", fixture("algebra remark_B1 over Q\nbasis e1:s n1:n\nmul e1 e1 = e1\nmul e1 n1 = n1\nexpect +\n" + c1),
       false},
      {"B2", fixture("algebra remark_B2 over Q\nbasis e2:s n2:n\nmul e2 e2 = e2\nmul e2 n2 = n2\nexpect +\n" + c1),
       false},
      {"C1",
       fixture("algebra remark_C1 over Q\nbasis e1:s n1:n n2:n\nmul e1 e1 = e1\nmul n1 e1 = n1\nmul n2 e1 = n2\n"
               "expect +\n" + c1),
       false},
      {"C2", fixture("algebra remark_C2 over Q\nbasis e2:s n1:n\nmul e2 e2 = e2\nmul e2 n1 = n1\nexpect +\n" + c1),
       false},
  };
}

AlgebraSpec remark_algebra(std::string_view key) {
  for (auto& r : remark_algebras()) {
    if (r.key == key) return r.spec;
  }
  throw std::invalid_argument("unknown remark algebra '" + std::string(key) + "' (expected A1, A2, B1, B2, C1, C2)");
}

AlgebraSpec example_matrix_unit(char kind, std::size_t k, const std::string& field) {
  if (kind != 'a' && kind != 'b' && kind != 'c' && kind != 'd') {
    throw std::invalid_argument(std::string("matrix-unit kind must be a, b, c or d, got '") + kind + "'");
  }
  if (k == 0) throw std::invalid_argument("matrix-unit examples need k >= 1");
  AlgebraSpec spec;
  spec.name = std::string("matrix_unit_") + kind + "_k" + std::to_string(k);
  spec.field = field;
  const bool unital = kind == 'a' || kind == 'b';
  const bool above = kind == 'a' || kind == 'c';
  if (unital) spec.basis.push_back({"u", Role::Semisimple});
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t odd = 2 * i - 1, even = 2 * i;
    const std::string name = above ? "e" + std::to_string(odd) + "_" + std::to_string(even)
                                   : "e" + std::to_string(even) + "_" + std::to_string(odd);
    spec.basis.push_back({name, Role::Nilpotent});
  }
  if (unital) {
    for (const auto& b : spec.basis) {
      spec.products.push_back({"u", b.name, {{1, b.name}}});
      if (b.name != "u") spec.products.push_back({b.name, "u", {{1, b.name}}});
    }
  }
  spec.expected_air = true;
  spec.cite = unital ? "codim-1 criterion" : "nilpotent criterion";
  (void)FieldDesc::parse(field);
  canonicalize(spec);
  return spec;
}

AlgebraSpec example_unital_null(std::size_t n, const std::string& field) {
  if (n == 0) throw std::invalid_argument("unital-null examples need n >= 1");
  (void)FieldDesc::parse(field);
  AlgebraSpec spec;
  spec.name = "unital_null_n" + std::to_string(n);
  spec.field = field;
  spec.basis.push_back({"e", Role::Semisimple});
  spec.products.push_back({"e", "e", {{1, "e"}}});
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string name = "e" + std::to_string(i);
    spec.basis.push_back({name, Role::Nilpotent});
    spec.products.push_back({"e", name, {{1, name}}});
    spec.products.push_back({name, "e", {{1, name}}});
  }
  spec.expected_air = true;
  spec.cite = "codim-1 criterion";
  canonicalize(spec);
  return spec;
}

AlgebraSpec matrix_algebra(std::size_t n, const std::string& field) {
  if (n != 2 && n != 3) throw std::invalid_argument("matrix_algebra supports n = 2 or 3");
  (void)FieldDesc::parse(field);
  AlgebraSpec spec;
  spec.name = "M" + std::to_string(n);
  spec.field = field;
  auto name = [](std::size_t i, std::size_t j) { return "e" + std::to_string(i + 1) + std::to_string(j + 1); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) spec.basis.push_back({name(i, j), Role::Semisimple});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) spec.products.push_back({name(i, j), name(j, l), {{1, name(i, l)}}});
    }
  }
  spec.expected_air = false;
  canonicalize(spec);
  return spec;
}

// ---------------------------------------------------------------------------
// Random generators

StructureConstants rebase(const StructureConstants& a, const Matrix& p) {
  const std::size_t n = a.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionMismatchError("change-of-basis matrix has the wrong shape");
  const Matrix pinv = inverse(p);
  std::vector<Element> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = p.row(i);
    rows.emplace_back(a.field(), Vector(r.begin(), r.end()));
  }
  NonassocTable t(a.field(), a.basis_names());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Element w = multiply(a, rows[i], rows[j]);
      for (std::size_t k = 0; k < n; ++k) {
        Scalar c = Scalar::zero(a.field());
        for (std::size_t l = 0; l < n; ++l) c += w[l] * pinv(l, k);
        t.set_coeff(i, j, k, c);
      }
    }
  }
  return StructureConstants::create(std::move(t));
}

namespace {

Scalar random_scalar(const FieldDesc& field, std::mt19937_64& rng, int range) {
  if (field.is_finite()) {
    return Scalar::from_residue(field, std::uniform_int_distribution<std::uint64_t>(0, field.modulus() - 1)(rng));
  }
  return Scalar::from_int(field, std::uniform_int_distribution<int>(-range, range)(rng));
}

}  // namespace

Matrix random_invertible(const FieldDesc& field, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar(field, rng, 3);
    }
    if (rref(m).rank == n) return m;
  }
}

AlgebraSpec random_nilpotent(const FieldDesc& field, std::size_t max_dim, std::mt19937_64& rng) {
  if (!field.is_finite()) throw UnsupportedFieldError("random_nilpotent draws over a prime field");
  if (max_dim == 0) throw std::invalid_argument("random_nilpotent needs max_dim >= 1");
  std::uniform_int_distribution<std::size_t> dim_dist(1, max_dim);
  std::uniform_int_distribution<std::uint64_t> coef(1, field.modulus() - 1);
  std::bernoulli_distribution use(0.45);
  for (;;) {
    const std::size_t n = dim_dist(rng);
    const bool anti = std::uniform_int_distribution<int>(0, 2)(rng) == 0;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i + 1));
    NonassocTable t(field, names);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = anti ? i + 1 : 0; j < n; ++j) {
        for (std::size_t k = std::max(i, j) + 1; k < n; ++k) {
          if (!use(rng)) continue;
          const Scalar c = Scalar::from_residue(field, coef(rng));
          t.set_coeff(i, j, k, c);
          if (anti) t.set_coeff(j, i, k, -c);
        }
      }
    }
    if (check_associative(t)) continue;
    const auto a = StructureConstants::create(std::move(t));
    return spec_from_structure(a, "random_nilpotent", std::vector<Role>(n, Role::Nilpotent));
  }
}

AlgebraSpec random_codim1(const FieldDesc& field, std::size_t n_dim, std::mt19937_64& rng) {
  if (!field.is_finite()) throw UnsupportedFieldError("random_codim1 draws over a prime field");
  if (n_dim == 0) throw std::invalid_argument("random_codim1 needs a nonzero nilradical");
  const std::size_t n = n_dim + 1;
  std::vector<std::string> names{"e"};
  for (std::size_t i = 1; i <= n_dim; ++i) names.push_back("n" + std::to_string(i));
  NonassocTable t(field, names);
  const Scalar one = Scalar::one(field);
  t.set_coeff(0, 0, 0, one);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 1; i < n; ++i) {
    if (coin(rng)) t.set_coeff(0, i, i, one);
    if (coin(rng)) t.set_coeff(i, 0, i, one);
  }
  const auto plain = StructureConstants::create(std::move(t));
  Matrix p = Matrix::identity(field, n);
  const Matrix q = random_invertible(field, n_dim, rng);
  for (std::size_t i = 0; i < n_dim; ++i) {
    for (std::size_t j = 0; j < n_dim; ++j) p(i + 1, j + 1) = q(i, j);
  }
  std::vector<Role> roles(n, Role::Nilpotent);
  roles[0] = Role::Semisimple;
  return spec_from_structure(rebase(plain, p), "random_codim1", roles);
}

Matrix random_nilpotent_matrix(const FieldDesc& field, std::mt19937_64& rng, int coef_range) {
  Matrix u(field, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) u(i, j) = random_scalar(field, rng, coef_range);
  }
  Matrix g(field, 3, 3);
  for (;;) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) g(i, j) = random_scalar(field, rng, coef_range);
    }
    if (rref(g).rank == 3) break;
  }
  return g * u * inverse(g);
}

}  // namespace air
