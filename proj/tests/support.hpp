#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "air/catalog.hpp"
#include "air/rickart.hpp"

namespace airtest {

inline air::AlgebraSpec table_row(const std::string& name, const mpq_class& alpha = 2) {
  for (auto& s : air::builtin_tables(alpha)) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("no row " + name);
}

inline air::ParsedAlgebra row(const std::string& name, std::optional<air::FieldDesc> field = std::nullopt) {
  return air::instantiate(table_row(name), field);
}

inline const air::FieldDesc& f5() {
  static const air::FieldDesc f = air::FieldDesc::prime(5);
  return f;
}

inline const air::FieldDesc& f7() {
  static const air::FieldDesc f = air::FieldDesc::prime(7);
  return f;
}

/// Element from named integer coordinates, e.g. {{"e1", 1}, {"n1", 2}}.
inline air::Element el(const air::StructureConstants& a, std::initializer_list<std::pair<const char*, long long>> terms) {
  air::Element x = a.zero();
  for (const auto& [name, c] : terms) {
    const auto i = a.table().index_of(name);
    if (!i) throw std::invalid_argument(std::string("no basis element ") + name);
    x[*i] += air::Scalar::from_int(a.field(), c);
  }
  return x;
}

/// Test-side model of an algebra over F_p working on raw residue tuples and
/// the coefficient tensor only. It shares no enumeration or linear algebra
/// code with the library.
class ResidueModel {
 public:
  using Vec = std::vector<std::uint64_t>;

  explicit ResidueModel(const air::StructureConstants& a) : p_(a.field().modulus()), n_(a.dim()) {
    c_.resize(n_ * n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) c_[(i * n_ + j) * n_ + k] = a.table().coeff(i, j, k).residue();
  }

  std::size_t dim() const { return n_; }
  std::uint64_t p() const { return p_; }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (y[j] == 0) continue;
        const std::uint64_t xy = x[i] * y[j] % p_;
        for (std::size_t k = 0; k < n_; ++k) out[k] = (out[k] + xy * c_[(i * n_ + j) * n_ + k]) % p_;
      }
    }
    return out;
  }

  static Vec from(const air::Element& e) {
    Vec v;
    for (const auto& s : e.coords()) v.push_back(s.residue());
    return v;
  }

  air::Element to_element(const air::FieldDesc& f, const Vec& v) const {
    air::Vector coords;
    for (auto r : v) coords.push_back(air::Scalar::from_residue(f, r));
    return air::Element(f, coords);
  }

  /// All combinations of the generators, lexicographic in the coefficients.
  std::vector<Vec> span(const std::vector<Vec>& gens) const {
    std::vector<Vec> out;
    std::vector<std::uint64_t> coef(gens.size(), 0);
    for (;;) {
      Vec v(n_, 0);
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t k = 0; k < n_; ++k) v[k] = (v[k] + coef[g] * gens[g][k]) % p_;
      out.push_back(v);
      std::size_t pos = gens.size();
      while (pos > 0) {
        --pos;
        if (++coef[pos] < p_) break;
        coef[pos] = 0;
        if (pos == 0) return out;
      }
      if (gens.empty()) return out;
    }
  }

  std::vector<Vec> all() const {
    std::vector<Vec> unit;
    for (std::size_t i = 0; i < n_; ++i) {
      Vec v(n_, 0);
      v[i] = 1;
      unit.push_back(v);
    }
    return span(unit);
  }

  std::set<Vec> squares(const std::vector<Vec>& gens) const {
    std::set<Vec> out;
    for (const auto& v : span(gens)) out.insert(mul(v, v));
    return out;
  }

 private:
  std::uint64_t p_;
  std::size_t n_;
  std::vector<std::uint64_t> c_;
};

struct OracleVerdict {
  bool is_air = true;
  std::optional<ResidueModel::Vec> counterexample;
  std::size_t idempotents = 0;
  std::size_t sq_size = 0;
};

/// Condition (A) by direct definition: for each x look for an idempotent e
/// with {v in SQ : xvx = 0} = {v in SQ : eve = v}.
inline OracleVerdict oracle_condition_A(const air::StructureConstants& a, const air::Decomposition& d,
                                        air::SetOp op = air::SetOp::Union) {
  ResidueModel m(a);
  std::vector<ResidueModel::Vec> sg, ng;
  for (const auto& s : d.s_basis) sg.push_back(ResidueModel::from(s));
  for (const auto& n : d.n_basis) ng.push_back(ResidueModel::from(n));
  const auto s2 = m.squares(sg);
  const auto n2 = m.squares(ng);
  std::set<ResidueModel::Vec> sq;
  if (op == air::SetOp::Union) {
    sq = s2;
    sq.insert(n2.begin(), n2.end());
  } else {
    for (const auto& v : s2)
      if (n2.count(v)) sq.insert(v);
  }
  const std::vector<ResidueModel::Vec> sqv(sq.begin(), sq.end());
  const auto elems = m.all();
  std::set<std::vector<bool>> corner_sets;
  std::size_t idem = 0;
  for (const auto& e : elems) {
    if (m.mul(e, e) != e) continue;
    ++idem;
    std::vector<bool> in(sqv.size());
    for (std::size_t i = 0; i < sqv.size(); ++i) in[i] = m.mul(m.mul(e, sqv[i]), e) == sqv[i];
    corner_sets.insert(in);
  }
  OracleVerdict out;
  out.idempotents = idem;
  out.sq_size = sqv.size();
  for (const auto& x : elems) {
    std::vector<bool> ann(sqv.size());
    for (std::size_t i = 0; i < sqv.size(); ++i) {
      const auto r = m.mul(m.mul(x, sqv[i]), x);
      ann[i] = std::all_of(r.begin(), r.end(), [](std::uint64_t c) { return c == 0; });
    }
    if (!corner_sets.count(ann)) {
      out.is_air = false;
      out.counterexample = x;
      return out;
    }
  }
  return out;
}

}  // namespace airtest
