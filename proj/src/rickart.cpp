#include "air/rickart.hpp"

#include <algorithm>
#include <sstream>

#include "air/errors.hpp"
#include "fp_engine.hpp"

namespace air {

std::string to_string(SetOp op) { return op == SetOp::Union ? "union" : "intersection"; }
std::string to_string(CondBReading r) { return r == CondBReading::ForAll ? "forall" : "exists"; }
std::string to_string(CubeReading r) { return r == CubeReading::CubeSet ? "cube-set" : "ideal-power"; }

std::string to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::BruteForce: return "bruteforce";
    case Method::Criteria: return "criteria";
  }
  return "auto";
}

std::vector<WitnessPair> AirVerdict::witness_pairs() const {
  std::vector<WitnessPair> out;
  for (const auto& cw : class_witnesses) out.push_back({std::nullopt, cw.description, cw.e});
  if (brute) {
    for (std::size_t i = 0; i < brute->witness_of.size(); ++i) {
      const auto pos = brute->witness_of[i];
      if (pos < 0) continue;
      out.push_back({brute->space.at(i), "", brute->idempotents[static_cast<std::size_t>(pos)]});
    }
  }
  return out;
}

std::size_t AirVerdict::witness_count() const {
  std::size_t count = class_witnesses.size();
  if (brute) {
    count += static_cast<std::size_t>(
        std::count_if(brute->witness_of.begin(), brute->witness_of.end(), [](auto w) { return w >= 0; }));
  }
  return count;
}

namespace {

void require_verified(const Decomposition& d) {
  if (!d.verified) throw UnverifiedDecompositionError("decomposition has not been verified");
}

bool all_commute(const StructureConstants& a, const std::vector<Element>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (!(multiply(a, xs[i], xs[j]) == multiply(a, xs[j], xs[i]))) return false;
    }
  }
  return true;
}

bool commutes_with_all(const StructureConstants& a, const Element& e, const std::vector<Element>& xs) {
  return std::all_of(xs.begin(), xs.end(),
                     [&](const Element& x) { return multiply(a, e, x) == multiply(a, x, e); });
}

Element triple(const StructureConstants& a, const Element& x, const Element& y, const Element& z) {
  return multiply(a, multiply(a, x, y), z);
}

// Conditions shared by both structural criteria: triple products vanish, e is a two-sided
// unit on N*N, the e-sandwiches are skew, and e*N, N*e stay inside N.
std::vector<ConditionResult> peirce_conditions(const StructureConstants& a, const std::vector<Element>& n,
                                               const Subspace& n_space, const Element& e,
                                               const std::string& prefix, const std::string& num) {
  bool c1 = true, c2 = true, c3 = true, c4 = true;
  for (const auto& x : n) {
    for (const auto& y : n) {
      for (const auto& z : n) {
        if (!triple(a, x, y, z).is_zero()) c1 = false;
      }
      const Element xy = multiply(a, x, y);
      if (!(multiply(a, e, xy) == xy) || !(multiply(a, xy, e) == xy)) c2 = false;
      if (!(triple(a, x, e, y) + triple(a, y, e, x)).is_zero()) c3 = false;
    }
    if (!n_space.contains(multiply(a, e, x).coords()) || !n_space.contains(multiply(a, x, e).coords())) {
      c4 = false;
    }
  }
  return {{prefix + num + ".1", c1}, {prefix + num + ".2", c2}, {prefix + num + ".3", c3}, {prefix + num + ".4", c4}};
}

std::optional<std::string> first_failure(const std::vector<ConditionResult>& conds) {
  for (const auto& [id, ok] : conds) {
    if (ok.has_value() && !*ok) return id;
  }
  return std::nullopt;
}

bool all_pass(const std::vector<ConditionResult>& conds) {
  return std::all_of(conds.begin(), conds.end(), [](const auto& c) { return c.second.value_or(false); });
}

bool any_undetermined(const std::vector<ConditionResult>& conds) {
  return std::any_of(conds.begin(), conds.end(), [](const auto& c) { return !c.second.has_value(); });
}

bool cube_hypothesis(const StructureConstants& a, const Decomposition& d, const Subspace& n, CubeReading r) {
  if (r == CubeReading::IdealPower) return ideal_power(a, n, 3).dim() == 0;
  return cube_set_zero(a, d.n_basis, /*commutative=*/true);
}

}  // namespace

// ---------------------------------------------------------------------------
// Exhaustive scans

AirVerdict check_condition_A_bruteforce(const StructureConstants& a, const Decomposition& d,
                                        const AirOptions& opt) {
  require_verified(d);
  const detail::FpScan scan(a, d, opt.set_op, opt.budget);
  const auto& alg = scan.algebra();

  auto brute = std::make_shared<BruteForceWitnesses>(BruteForceWitnesses{
      enumerate_elements(a, opt.budget), {}, std::vector<std::int32_t>(scan.size(), -1)});
  for (auto idx : scan.idempotents()) brute->idempotents.push_back(alg.element_at(idx));

  AirVerdict v;
  v.method = "bruteforce";
  v.is_air = true;
  for (std::uint64_t x = 0; x < scan.size(); ++x) {
    const auto* group = scan.witnesses(scan.annihilator_key(x));
    if (group == nullptr) {
      v.is_air = false;
      v.counterexample = alg.element_at(x);
      break;
    }
    brute->witness_of[x] = static_cast<std::int32_t>(group->front());
  }
  v.brute = std::move(brute);
  v.notes.push_back("|SQ| = " + std::to_string(scan.squares().size()) + " (" + to_string(opt.set_op) +
                    "), idempotents = " + std::to_string(scan.idempotents().size()));
  return v;
}

ConditionBVerdict check_condition_B_bruteforce(const StructureConstants& a, const Decomposition& d,
                                               const AirOptions& opt) {
  require_verified(d);
  const detail::FpScan scan(a, d, opt.set_op, opt.budget);
  const auto& alg = scan.algebra();
  ConditionBVerdict out;
  for (std::uint64_t x = 0; x < scan.size(); ++x) {
    const auto* group = scan.witnesses(scan.annihilator_key(x));
    if (group == nullptr) continue;
    ++out.witnessed;
    std::optional<std::uint64_t> outside;
    bool some_inside = false;
    for (auto pos : *group) {
      const auto e = scan.idempotents()[pos];
      if (scan.in_s(e)) {
        some_inside = true;
      } else if (!outside) {
        outside = e;
      }
    }
    const bool violated = opt.cond_b == CondBReading::ForAll ? outside.has_value() : !some_inside;
    if (violated && !out.violating_pair) {
      out.holds = false;
      out.violating_pair = std::make_pair(alg.element_at(x), alg.element_at(*outside));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structural criteria

bool criterion_nilpotent_air(const StructureConstants& a) {
  if (!is_nilpotent_algebra(a)) throw NotNilpotentError("algebra is not nilpotent");
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Element bi = a.basis_element(i);
    if (!multiply(a, bi, bi).is_zero()) return false;
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      const Element bj = a.basis_element(j);
      if (!(multiply(a, bi, bj) + multiply(a, bj, bi)).is_zero()) return false;
    }
  }
  return true;
}

CriterionResult criterion_codim1(const StructureConstants& a, const Decomposition& d, const AirOptions& opt) {
  require_verified(d);
  CriterionResult r;
  if (d.s_basis.size() != 1) {
    r.reason = "dim S = " + std::to_string(d.s_basis.size()) + ", expected 1";
    return r;
  }
  // Rescale the S generator to an idempotent: s^2 = l s with l != 0.
  const Element& s = d.s_basis.front();
  const Element s2 = multiply(a, s, s);
  std::size_t lead = 0;
  while (s[lead].is_zero()) ++lead;
  const Scalar lambda = s2[lead] / s[lead];
  if (lambda.is_zero() || !(s2 == lambda * s)) {
    r.reason = "S is not spanned by an idempotent";
    return r;
  }
  const Element e = lambda.inverse() * s;
  if (!all_commute(a, d.n_basis)) {
    r.reason = "N is not commutative";
    return r;
  }

  const Subspace n = span_of(a, d.n_basis);
  r.conditions = peirce_conditions(a, d.n_basis, n, e, "", "1");
  if (all_pass(r.conditions)) {
    r.outcome = CriterionOutcome::Air;
    r.witnesses = {{"x in N", e}, {"x not in N", a.zero()}};
    return r;
  }

  // A failed condition refutes AIR only where the forward direction is
  // actually valid: N^2 != 0, N^3 = 0, and e central on N (which rules out
  // witnesses outside S).
  const std::string failed = *first_failure(r.conditions);
  r.notes.push_back("N^3 reading: " + to_string(opt.cube));
  if (ideal_power(a, n, 2).dim() == 0) {
    r.reason = "N^2 = 0";
  } else if (!cube_hypothesis(a, d, n, opt.cube)) {
    r.reason = "N^3 != 0 (" + to_string(opt.cube) + ")";
  } else if (!commutes_with_all(a, e, d.n_basis)) {
    r.reason = "e is not central on N; condition " + failed + " fails but does not refute AIR";
  } else {
    r.outcome = CriterionOutcome::NotAir;
    r.failed_condition = failed;
  }
  return r;
}

namespace {

// Condition (2.5): whenever p1 x^2 p1 = 0 or p2 x^2 p2 = 0, the off-diagonal
// part p1 x^2 p2 + p2 x^2 p1 vanishes, for all x in N.
std::optional<bool> condition_2_5(const StructureConstants& a, const Decomposition& d, const Element& p1,
                                  const Element& p2, std::size_t budget, std::vector<std::string>& notes) {
  auto violates = [&](const Element& x) {
    const Element x2 = multiply(a, x, x);
    const bool premise = triple(a, p1, x2, p1).is_zero() || triple(a, p2, x2, p2).is_zero();
    return premise && !(triple(a, p1, x2, p2) + triple(a, p2, x2, p1)).is_zero();
  };
  // Sufficient: the off-diagonal part of every product n_i n_j vanishes.
  bool polarized = true;
  for (const auto& x : d.n_basis) {
    for (const auto& y : d.n_basis) {
      const Element xy = multiply(a, x, y);
      if (!(triple(a, p1, xy, p2) + triple(a, p2, xy, p1)).is_zero()) polarized = false;
    }
  }
  if (polarized) return true;

  if (a.field().is_finite()) {
    try {
      const FiniteSpan span(a.field(), a.dim(), d.n_basis, budget);
      for (std::size_t i = 0; i < span.size(); ++i) {
        if (violates(span.at(i))) return false;
      }
      return true;
    } catch (const BudgetExceededError&) {
      notes.push_back("(2.5): span of N exceeds the budget, falling back to a bounded search");
    }
  }
  // Bounded integer search for a violator with coefficients in [-3, 3].
  const std::size_t m = d.n_basis.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m && total <= budget; ++i) total *= 7;
  if (total > budget) {
    notes.push_back("(2.5): search space too large, undetermined");
    return std::nullopt;
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    Element x = a.zero();
    std::size_t rest = idx;
    for (std::size_t g = 0; g < m; ++g) {
      const long long c = static_cast<long long>(rest % 7) - 3;
      rest /= 7;
      if (c != 0) x += Scalar::from_int(a.field(), c) * d.n_basis[g];
    }
    if (violates(x)) return false;
  }
  notes.push_back("(2.5): no violator with coefficients in [-3,3], undetermined");
  return std::nullopt;
}

}  // namespace

CriterionResult criterion_codim2(const StructureConstants& a, const Decomposition& d, const AirOptions& opt) {
  require_verified(d);
  CriterionResult r;
  if (d.s_basis.size() != 2) {
    r.reason = "dim S = " + std::to_string(d.s_basis.size()) + ", expected 2";
    return r;
  }
  const auto& ps = (d.s_idempotents && d.s_idempotents->size() == 2) ? *d.s_idempotents : d.s_basis;
  const Element& p1 = ps[0];
  const Element& p2 = ps[1];
  if (p1.is_zero() || p2.is_zero() || !is_idempotent(a, p1) || !is_idempotent(a, p2) ||
      !multiply(a, p1, p2).is_zero() || !multiply(a, p2, p1).is_zero()) {
    r.reason = "S is not spanned by two orthogonal idempotents";
    return r;
  }
  if (!all_commute(a, d.n_basis)) {
    r.reason = "N is not commutative";
    return r;
  }

  const Subspace n = span_of(a, d.n_basis);
  auto case1 = [&](const Element& e, const Element& other, const std::string& tag) {
    auto conds = peirce_conditions(a, d.n_basis, n, e, "case1(" + tag + "):", "1");
    // (1.4) quantifies over both idempotents.
    for (const auto& x : d.n_basis) {
      if (!n.contains(multiply(a, other, x).coords()) || !n.contains(multiply(a, x, other).coords())) {
        conds[3].second = false;
      }
    }
    bool c5 = true;
    for (const auto& x : d.n_basis) {
      for (const auto& y : d.n_basis) {
        if (!multiply(a, other, multiply(a, x, y) + multiply(a, y, x)).is_zero()) c5 = false;
      }
    }
    conds.push_back({"case1(" + tag + "):1.5", c5});
    return conds;
  };

  const auto c1p1 = case1(p1, p2, "p1");
  const auto c1p2 = case1(p2, p1, "p2");
  const auto c2 = [&] {
    auto conds = peirce_conditions(a, d.n_basis, n, p1 + p2, "case2:", "2");
    conds.push_back({"case2:2.5", condition_2_5(a, d, p1, p2, opt.budget, r.notes)});
    return conds;
  }();
  bool c26 = true;
  for (const auto* pk : {&p1, &p2}) {
    for (const auto& x : d.n_basis) {
      for (const auto& y : d.n_basis) {
        if (!(triple(a, x, *pk, y) + triple(a, y, *pk, x)).is_zero()) c26 = false;
      }
    }
  }

  for (const auto* list : {&c1p1, &c1p2, &c2}) {
    r.conditions.insert(r.conditions.end(), list->begin(), list->end());
  }
  r.conditions.push_back({"2.6", c26});

  if (all_pass(c1p1)) r.applicable_cases.push_back("case1(p1)");
  if (all_pass(c1p2)) r.applicable_cases.push_back("case1(p2)");
  if (all_pass(c2)) r.applicable_cases.push_back("case2");
  if (!r.applicable_cases.empty()) {
    r.outcome = CriterionOutcome::Air;
    if (all_pass(c2) && !c26) r.notes.push_back("case 2 holds without (2.6)");
    return r;
  }

  std::ostringstream failed;
  bool first = true;
  for (const auto* list : {&c1p1, &c1p2, &c2}) {
    if (const auto f = first_failure(*list)) {
      failed << (first ? "" : ", ") << *f;
      first = false;
    }
  }
  if (any_undetermined(c2)) {
    r.reason = "case 2 undetermined: condition (2.5) could not be decided";
  } else if (ideal_power(a, n, 2).dim() == 0) {
    r.reason = "N^2 = 0";
  } else if (!commutes_with_all(a, p1, d.n_basis) || !commutes_with_all(a, p2, d.n_basis)) {
    r.reason = "p1, p2 are not central on N; failed " + failed.str() + " do not refute AIR";
  } else {
    r.outcome = CriterionOutcome::NotAir;
    r.failed_condition = failed.str();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dispatcher

namespace {

AirVerdict from_criterion(const CriterionResult& c, std::string method) {
  AirVerdict v;
  v.method = std::move(method);
  v.is_air = c.outcome == CriterionOutcome::Air;
  v.class_witnesses = c.witnesses;
  v.conditions = c.conditions;
  v.notes = c.notes;
  if (!c.applicable_cases.empty()) {
    std::string cases = "cases holding:";
    for (const auto& k : c.applicable_cases) cases += " " + k;
    v.notes.push_back(cases);
  }
  if (!c.failed_condition.empty()) v.notes.push_back("failed: " + c.failed_condition);
  return v;
}

}  // namespace

AirVerdict classify(const StructureConstants& a, const Decomposition& d, Method method, const AirOptions& opt) {
  require_verified(d);
  if (method == Method::BruteForce) {
    if (!a.field().is_finite()) throw UnsupportedFieldError("brute force needs a prime field, got Q");
    return check_condition_A_bruteforce(a, d, opt);
  }

  std::vector<std::string> notes;
  // The structural criteria describe the union reading only.
  if (opt.set_op == SetOp::Union) {
    if (is_nilpotent_algebra(a)) {
      AirVerdict v;
      v.method = "thm_nilpotent";
      v.is_air = criterion_nilpotent_air(a);
      if (*v.is_air) {
        v.class_witnesses.push_back({"every x", a.zero()});
      } else {
        // 0 is the only idempotent while some square is nonzero.
        v.counterexample = a.zero();
      }
      return v;
    }
    if (d.s_basis.size() == 1) {
      const auto c = criterion_codim1(a, d, opt);
      if (c.outcome != CriterionOutcome::HypothesesNotMet) return from_criterion(c, "thm_codim1");
      notes.push_back("codim-1 criterion not applicable: " + c.reason);
    } else if (d.s_basis.size() == 2) {
      const auto c = criterion_codim2(a, d, opt);
      if (c.outcome == CriterionOutcome::Air) {
        const bool case1 = std::any_of(c.applicable_cases.begin(), c.applicable_cases.end(),
                                       [](const std::string& k) { return k.rfind("case1", 0) == 0; });
        return from_criterion(c, case1 ? "thm_codim2_case1" : "thm_codim2_case2");
      }
      if (c.outcome == CriterionOutcome::NotAir) return from_criterion(c, "thm_codim2");
      notes.push_back("codim-2 criterion not applicable: " + c.reason);
    } else {
      notes.push_back("no structural criterion for dim S = " + std::to_string(d.s_basis.size()));
    }
  } else {
    notes.push_back("structural criteria assume the union reading; skipped");
  }

  if (method == Method::Auto && a.field().is_finite()) {
    try {
      auto v = check_condition_A_bruteforce(a, d, opt);
      v.notes.insert(v.notes.begin(), notes.begin(), notes.end());
      return v;
    } catch (const BudgetExceededError& e) {
      notes.push_back(e.what());
    }
  }
  AirVerdict v;
  v.method = "undecided";
  v.notes = std::move(notes);
  return v;
}

// ---------------------------------------------------------------------------
// Auxiliary checks

std::optional<Element> squares_unit_witness(const StructureConstants& a, const Decomposition& d,
                                            const AirOptions& opt) {
  const detail::FpScan scan(a, d, opt.set_op, opt.budget);
  const auto& alg = scan.algebra();
  std::vector<detail::Coords> sq;
  for (auto idx : scan.squares()) sq.push_back(alg.decode(idx));
  auto fixes_all = [&](std::uint64_t idx) {
    const auto e = alg.decode(idx);
    return std::all_of(sq.begin(), sq.end(),
                       [&](const detail::Coords& s) { return alg.multiply(e, s) == s && alg.multiply(s, e) == s; });
  };
  for (auto idx : scan.idempotents()) {
    if (fixes_all(idx)) return alg.element_at(idx);
  }
  for (std::uint64_t idx = 0; idx < scan.size(); ++idx) {
    if (fixes_all(idx)) return alg.element_at(idx);
  }
  return std::nullopt;
}

std::optional<Element> cube_nonzero_nilpotent(const StructureConstants& a, const Decomposition& d,
                                              const AirOptions& opt) {
  for (const auto* basis : {&d.s_basis, &d.n_basis}) {
    const FiniteSpan span(a.field(), a.dim(), *basis, opt.budget);
    for (std::size_t i = 0; i < span.size(); ++i) {
      const Element x = span.at(i);
      if (nilpotency_index(a, x) && !power(a, x, 3).is_zero()) return x;
    }
  }
  return std::nullopt;
}

AirVerdict check_condition_RJ_bruteforce(const StructureConstants& a, const Decomposition& d,
                                         const AirOptions& opt) {
  require_verified(d);
  const NonassocTable jordan = jordanize(a);
  const std::size_t n = a.dim();

  // Squares taken in the Jordan table (x.x = x^2).
  auto squares = [&](const std::vector<Element>& gens) {
    std::vector<Element> out;
    FiniteSpan(a.field(), n, gens, opt.budget).for_each([&](std::size_t, const Element& x) {
      out.push_back(jordan.multiply(x, x));
    });
    return SquaresSet(std::move(out));
  };
  const SquaresSet s_sq = squares(d.s_basis);
  const SquaresSet n_sq = squares(d.n_basis);
  const SquaresSet sq = opt.set_op == SetOp::Union ? s_sq.unite(n_sq) : s_sq.intersect(n_sq);

  auto u_matrix = [&](const Element& x) {
    Matrix m(a.field(), n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const Element col = jordan_U(jordan, x, a.basis_element(k));
      for (std::size_t r = 0; r < n; ++r) m(r, k) = col[r];
    }
    return m;
  };
  auto key_of = [&](const Matrix& m, bool fixed) {
    std::vector<bool> key;
    for (const auto& v : sq.elements()) {
      const Vector image = m.apply(v.coords());
      key.push_back(fixed ? image == v.coords() : is_zero_vector(image));
    }
    return key;
  };

  std::vector<Element> candidates;
  std::vector<std::vector<bool>> candidate_keys;
  FiniteSpan(a.field(), n, d.s_basis, opt.budget).for_each([&](std::size_t, const Element& e) {
    if (jordan.multiply(e, e) == e) {
      candidates.push_back(e);
      candidate_keys.push_back(key_of(u_matrix(e), true));
    }
  });

  auto brute = std::make_shared<BruteForceWitnesses>(BruteForceWitnesses{
      enumerate_elements(a, opt.budget), candidates, {}});
  brute->witness_of.assign(brute->space.size(), -1);

  AirVerdict v;
  v.method = "bruteforce";
  v.is_air = true;
  for (std::size_t i = 0; i < brute->space.size(); ++i) {
    const Element x = brute->space.at(i);
    const auto key = key_of(u_matrix(x), false);
    const auto it = std::find(candidate_keys.begin(), candidate_keys.end(), key);
    if (it == candidate_keys.end()) {
      v.is_air = false;
      v.counterexample = x;
      break;
    }
    brute->witness_of[i] = static_cast<std::int32_t>(it - candidate_keys.begin());
  }
  v.brute = std::move(brute);
  v.notes.push_back("Jordan table; witnesses restricted to idempotents of S");
  return v;
}

}  // namespace air
