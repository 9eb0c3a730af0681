// Acceptance gate: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "air/errors.hpp"
#include "air/rickart.hpp"
#include "support.hpp"

using namespace air;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Runtime ceilings in seconds, per criterion.
constexpr double kLimitTable1 = 1.0;
constexpr double kLimitTable2 = 5.0;
constexpr double kLimitNilpotent = 30.0;
constexpr double kLimitCodim1 = 30.0;
constexpr double kLimitMatrix = 10.0;
constexpr double kNoLimit = 0.0;

constexpr std::size_t kNilpotentInstances = 200;
constexpr std::size_t kCodim1Instances = 100;
constexpr std::size_t kJordanSamples = 1000;
constexpr std::size_t kMatrixSamples = 10000;
constexpr std::size_t kParserMutations = 5000;

const FieldDesc Q = FieldDesc::rationals();
const FieldDesc F5 = FieldDesc::prime(5);
const FieldDesc F7 = FieldDesc::prime(7);

int failures = 0;

void run(int id, const std::string& title, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs >= limit) {
    out.ok = false;
    out.detail += " (over the " + std::to_string(limit) + " s limit)";
  }
  if (!out.ok) ++failures;
  std::printf("%s criterion %d: %s [%s; %.3f s]\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), out.detail.c_str(),
              secs);
  std::fflush(stdout);
}

struct ExpectedRow {
  std::string name;
  mpq_class alpha;
  bool air;
};

// Signs from the published tables, kept here independently of the fixtures.
const std::vector<ExpectedRow> kTable1 = {
    {"A2_1", 2, false}, {"A2_2", 2, true}, {"A2_3", 2, true}, {"A2_4", 2, true}};
const std::vector<ExpectedRow> kTable2 = {
    {"A3_1", 2, false},  {"A3_2(alpha=2)", 2, false}, {"A3_2(alpha=3)", 3, false}, {"A3_2(alpha=-1)", 2, true},
    {"A3_3", 2, false},  {"A3_4", 2, true},           {"A3_5", 2, true},           {"A3_6", 2, true},
    {"A3_7", 2, true},   {"A3_8", 2, true},           {"A3_9", 2, true},           {"A3_10", 2, true},
    {"A3_11", 2, true},  {"A3_12", 2, false}};

Outcome reproduce(const std::vector<ExpectedRow>& rows) {
  Outcome out;
  std::size_t checks = 0;
  for (const auto& r : rows) {
    const auto spec = airtest::table_row(r.name, r.alpha);
    const auto pq = instantiate(spec);
    const auto vq = classify(pq.algebra, pq.decomposition, Method::Criteria);
    std::vector<std::optional<bool>> verdicts{vq.is_air};
    for (const auto& f : {F5, F7}) {
      const auto pf = instantiate(spec, f);
      verdicts.push_back(check_condition_A_bruteforce(pf.algebra, pf.decomposition).is_air);
    }
    for (const auto& v : verdicts) {
      ++checks;
      if (v != r.air) {
        out.ok = false;
        out.detail += r.name + " mismatch; ";
      }
    }
  }
  out.detail += std::to_string(rows.size()) + " rows, " + std::to_string(checks) + " verdicts (Q criteria, F5, F7)";
  return out;
}

std::vector<AlgebraSpec> catalog() {
  std::vector<AlgebraSpec> out = builtin_tables();
  out.push_back(airtest::table_row("A3_2(alpha=3)", 3));
  for (auto& r : remark_algebras()) out.push_back(r.spec);
  for (char kind : {'a', 'b', 'c', 'd'})
    for (std::size_t k = 1; k <= 2; ++k) out.push_back(example_matrix_unit(kind, k));
  for (std::size_t n = 1; n <= 3; ++n) out.push_back(example_unital_null(n));
  return out;
}

bool all_pass(const std::vector<ConditionResult>& cs) {
  if (cs.empty()) return false;
  for (const auto& c : cs)
    if (!c.second.value_or(false)) return false;
  return true;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  run(1, "two-dimensional table reproduced", kLimitTable1, [] { return reproduce(kTable1); });

  run(2, "three-dimensional table reproduced, alpha in {-1, 2, 3}", kLimitTable2, [] { return reproduce(kTable2); });

  run(3, "nilpotent criterion equals exhaustive Condition (A) over F5", kLimitNilpotent, [] {
    std::mt19937_64 rng(2024);
    std::size_t agree = 0, plus = 0;
    Outcome out;
    for (std::size_t i = 0; i < kNilpotentInstances; ++i) {
      const auto spec = random_nilpotent(F5, 3, rng);
      const auto pa = instantiate(spec);
      const bool crit = criterion_nilpotent_air(pa.algebra);
      const bool brute = *check_condition_A_bruteforce(pa.algebra, pa.decomposition).is_air;
      const bool oracle = airtest::oracle_condition_A(pa.algebra, pa.decomposition).is_air;
      if (crit == brute && brute == oracle) {
        ++agree;
      } else if (out.ok) {
        out.ok = false;
        out.detail += "disagreement on:\n" + serialize(spec);
      }
      plus += crit;
    }
    out.detail += std::to_string(agree) + "/" + std::to_string(kNilpotentInstances) + " agree, " +
                  std::to_string(plus) + " AIR";
    return out;
  });

  run(4, "codim-1 conditions: generated instances are AIR, catalog AIR algebras pass them", kLimitCodim1, [] {
    std::mt19937_64 rng(4242);
    Outcome out;
    std::size_t converse = 0;
    for (std::size_t i = 0; i < kCodim1Instances; ++i) {
      const auto spec = random_codim1(F5, 1 + i % 3, rng);
      const auto pa = instantiate(spec);
      const bool hyp = all_pass(criterion_codim1(pa.algebra, pa.decomposition).conditions);
      const bool brute = *check_condition_A_bruteforce(pa.algebra, pa.decomposition).is_air;
      const bool oracle = airtest::oracle_condition_A(pa.algebra, pa.decomposition).is_air;
      if (hyp && brute && oracle) {
        ++converse;
      } else if (out.ok) {
        out.ok = false;
        out.detail += "converse fails on:\n" + serialize(spec);
      }
    }
    std::size_t forward = 0, forward_total = 0;
    for (const auto& spec : catalog()) {
      const auto pa = instantiate(spec, F5);
      if (pa.decomposition.s_basis.size() != 1) continue;
      if (!*check_condition_A_bruteforce(pa.algebra, pa.decomposition).is_air) continue;
      ++forward_total;
      if (all_pass(criterion_codim1(pa.algebra, pa.decomposition).conditions)) {
        ++forward;
      } else {
        out.ok = false;
        out.detail += spec.name + " is AIR but fails the conditions; ";
      }
    }
    out.ok = out.ok && forward_total > 0;
    out.detail += "converse " + std::to_string(converse) + "/" + std::to_string(kCodim1Instances) + ", forward " +
                  std::to_string(forward) + "/" + std::to_string(forward_total);
    return out;
  });

  run(5, "every AIR catalog algebra over F5 has a two-sided unit on its squares; A2_1 has none", kNoLimit, [] {
    Outcome out;
    std::size_t with = 0, air = 0;
    for (const auto& spec : catalog()) {
      const auto pa = instantiate(spec, F5);
      if (!*check_condition_A_bruteforce(pa.algebra, pa.decomposition).is_air) continue;
      ++air;
      const auto w = squares_unit_witness(pa.algebra, pa.decomposition);
      if (!w) {
        out.ok = false;
        out.detail += spec.name + " has no witness; ";
        continue;
      }
      const auto sq = squares_set(pa.algebra, pa.decomposition.s_basis)
                          .unite(squares_set(pa.algebra, pa.decomposition.n_basis));
      bool fixes = true;
      for (const auto& s : sq.elements())
        fixes = fixes && multiply(pa.algebra, *w, s) == s && multiply(pa.algebra, s, *w) == s;
      if (fixes) {
        ++with;
      } else {
        out.ok = false;
        out.detail += spec.name + " witness does not replay; ";
      }
    }
    const auto a21 = airtest::row("A2_1", F5);
    const bool none = !squares_unit_witness(a21.algebra, a21.decomposition).has_value();
    out.ok = out.ok && none && air > 0;
    out.detail += std::to_string(with) + "/" + std::to_string(air) + " witnessed, A2_1 " + (none ? "none" : "HAS ONE");
    return out;
  });

  run(6, "AIR catalog algebras with Condition (B) have no nilpotent a in S or N with a^3 != 0", kNoLimit, [] {
    Outcome out;
    std::size_t checked = 0;
    for (const auto& spec : catalog()) {
      const auto pa = instantiate(spec, F5);
      if (!*check_condition_A_bruteforce(pa.algebra, pa.decomposition).is_air) continue;
      if (!check_condition_B_bruteforce(pa.algebra, pa.decomposition).holds) continue;
      ++checked;
      // Exhaustive test-side scan of span(S) and span(N).
      airtest::ResidueModel m(pa.algebra);
      for (const auto* part : {&pa.decomposition.s_basis, &pa.decomposition.n_basis}) {
        std::vector<airtest::ResidueModel::Vec> gens;
        for (const auto& g : *part) gens.push_back(airtest::ResidueModel::from(g));
        for (const auto& a : m.span(gens)) {
          auto pw = a;
          bool nilpotent = false;
          for (std::size_t k = 1; k <= pa.algebra.dim() + 1; ++k) {
            if (std::all_of(pw.begin(), pw.end(), [](auto c) { return c == 0; })) {
              nilpotent = true;
              break;
            }
            pw = m.mul(pw, a);
          }
          const auto cube = m.mul(m.mul(a, a), a);
          if (nilpotent && std::any_of(cube.begin(), cube.end(), [](auto c) { return c != 0; })) {
            out.ok = false;
            out.detail += spec.name + " violates; ";
          }
        }
      }
      if (cube_nonzero_nilpotent(pa.algebra, pa.decomposition).has_value()) {
        out.ok = false;
        out.detail += spec.name + " flagged by cube_nonzero_nilpotent; ";
      }
    }
    out.ok = out.ok && checked > 0;
    out.detail += std::to_string(checked) + " algebras checked";
    return out;
  });

  run(7, "M2(F5) with S the whole algebra is not AIR", kLimitMatrix, [] {
    const auto pa = instantiate(matrix_algebra(2), F5);
    const auto v = check_condition_A_bruteforce(pa.algebra, pa.decomposition);
    const auto o = airtest::oracle_condition_A(pa.algebra, pa.decomposition);
    Outcome out;
    out.ok = v.is_air == false && !o.is_air && pa.decomposition.n_basis.empty();
    out.detail = "counterexample " + (v.counterexample ? format_element(pa.algebra, *v.counterexample) : "none") +
                 ", " + std::to_string(o.idempotents) + " idempotents, |SQ| = " + std::to_string(o.sq_size);
    return out;
  });

  run(8, "Jordan tables coincide on the example pairs; U_e(x) = exe on random samples", kNoLimit, [] {
    Outcome out;
    const bool p2 = jordanize(airtest::row("A2_2").algebra).same_coefficients(jordanize(airtest::row("A2_3").algebra));
    const bool p3 = jordanize(airtest::row("A3_4").algebra).same_coefficients(jordanize(airtest::row("A3_6").algebra));
    const auto specs = catalog();
    std::mt19937_64 rng(88);
    std::uniform_int_distribution<std::size_t> pick(0, specs.size() - 1);
    std::uniform_int_distribution<long long> coef(-6, 6);
    std::size_t equal = 0;
    for (std::size_t i = 0; i < kJordanSamples; ++i) {
      const auto& f = i % 2 == 0 ? Q : F5;
      const auto a = instantiate(specs[pick(rng)], f).algebra;
      const auto j = jordanize(a);
      Element e = a.zero(), x = a.zero();
      for (std::size_t k = 0; k < a.dim(); ++k) {
        e[k] = Scalar::from_int(f, coef(rng));
        x[k] = Scalar::from_int(f, coef(rng));
      }
      // exe straight from the structure constants.
      Element ex = a.zero(), exe = a.zero();
      for (std::size_t p = 0; p < a.dim(); ++p)
        for (std::size_t q = 0; q < a.dim(); ++q)
          for (std::size_t r = 0; r < a.dim(); ++r) ex[r] += e[p] * x[q] * a.table().coeff(p, q, r);
      for (std::size_t p = 0; p < a.dim(); ++p)
        for (std::size_t q = 0; q < a.dim(); ++q)
          for (std::size_t r = 0; r < a.dim(); ++r) exe[r] += ex[p] * e[q] * a.table().coeff(p, q, r);
      equal += jordan_U(j, e, x) == exe;
    }
    out.ok = p2 && p3 && equal == kJordanSamples;
    out.detail = std::string("A2_2~A2_3 ") + (p2 ? "equal" : "DIFFER") + ", A3_4~A3_6 " + (p3 ? "equal" : "DIFFER") +
                 ", " + std::to_string(equal) + "/" + std::to_string(kJordanSamples) + " samples";
    return out;
  });

  run(9, "sampled nilpotent 3x3 matrices over Q and F5 cube to zero", kNoLimit, [] {
    Outcome out;
    std::mt19937_64 rng(99);
    std::size_t good = 0, nonzero_square = 0;
    for (const auto& f : {Q, F5}) {
      const Matrix zero(f, 3, 3);
      for (std::size_t i = 0; i < kMatrixSamples; ++i) {
        const auto a = random_nilpotent_matrix(f, rng);
        const auto a2 = a * a;
        good += a2 * a == zero;
        nonzero_square += !(a2 == zero);
      }
    }
    out.ok = good == 2 * kMatrixSamples && nonzero_square > 0;
    out.detail = std::to_string(good) + "/" + std::to_string(2 * kMatrixSamples) + " with a^3 = 0, " +
                 std::to_string(nonzero_square) + " with a^2 != 0";
    return out;
  });

  run(10, "parse/serialize fixpoint on fixtures and generators; malformed input gives located errors", kNoLimit, [] {
    Outcome out;
    std::size_t fixtures = 0, generated = 0;
    std::vector<std::string> texts;
    for (const auto& entry : std::filesystem::directory_iterator(AIR_TABLES_DIR)) {
      texts.push_back(read_file(entry.path()));
      ++fixtures;
    }
    std::vector<AlgebraSpec> gen;
    for (char kind : {'a', 'b', 'c', 'd'}) gen.push_back(example_matrix_unit(kind, 3));
    for (std::size_t n = 1; n <= 4; ++n) gen.push_back(example_unital_null(n));
    gen.push_back(matrix_algebra(2, "F5"));
    gen.push_back(matrix_algebra(3));
    for (auto& r : remark_algebras()) gen.push_back(r.spec);
    std::mt19937_64 rng(1010);
    for (int i = 0; i < 20; ++i) {
      gen.push_back(random_nilpotent(F7, 3, rng));
      gen.push_back(random_codim1(F5, 1 + i % 3, rng));
    }
    for (const auto& s : gen) {
      texts.push_back(serialize(s));
      ++generated;
    }
    for (const auto& t : texts) {
      const auto spec = parse_spec(t);
      const auto again = serialize(spec);
      if (again != t || !(parse_spec(again) == spec)) {
        out.ok = false;
        out.detail += "no fixpoint for " + spec.name + "; ";
      }
      (void)parse_algebra(t);
    }
    if (fixtures != 17) {
      out.ok = false;
      out.detail += "expected 17 fixtures; ";
    }
    // Mutation fuzzing: every failure must be a ParseError with a position.
    const std::string alphabet = "abegilmnorsuv QF57:=+-*/#0123\n ";
    std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
    std::size_t located = 0, accepted = 0;
    for (std::size_t i = 0; i < kParserMutations; ++i) {
      std::string s = texts[i % texts.size()];
      for (int k = 0; k < 1 + static_cast<int>(i % 3) && !s.empty(); ++k) {
        std::uniform_int_distribution<std::size_t> pos(0, s.size() - 1);
        const auto p = pos(rng);
        switch (rng() % 3) {
          case 0: s[p] = alphabet[ch(rng)]; break;
          case 1: s.insert(s.begin() + static_cast<long>(p), alphabet[ch(rng)]); break;
          default: s.erase(p, 1); break;
        }
      }
      try {
        (void)parse_algebra(s);
        ++accepted;
      } catch (const ParseError& e) {
        if (e.line() >= 1 && e.column() >= 1) {
          ++located;
        } else {
          out.ok = false;
        }
      } catch (const std::exception& e) {
        out.ok = false;
        out.detail += std::string("unlocated error: ") + e.what() + "; ";
        break;
      }
    }
    out.detail += std::to_string(fixtures) + " fixtures + " + std::to_string(generated) + " generated round-trip, " +
                  std::to_string(located) + " located errors, " + std::to_string(accepted) + " mutants accepted";
    return out;
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
