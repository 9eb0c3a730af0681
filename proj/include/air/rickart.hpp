#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "air/algebra.hpp"
#include "air/decomposition.hpp"

namespace air {

/// How the target set S^2 (op) N^2 is formed.
enum class SetOp { Union, Intersection };
/// Quantifier of Condition (B): every witness in S, or some witness in S.
enum class CondBReading { ForAll, Exists };
/// Meaning of the hypothesis "N^3 = 0": the set of cubes, or the ideal power.
enum class CubeReading { CubeSet, IdealPower };

struct AirOptions {
  SetOp set_op = SetOp::Union;
  CondBReading cond_b = CondBReading::ForAll;
  CubeReading cube = CubeReading::CubeSet;
  std::size_t budget = kDefaultBudget;
};

std::string to_string(SetOp op);
std::string to_string(CondBReading r);
std::string to_string(CubeReading r);

/// A witness idempotent for a class of elements described in words, as
/// produced by the structural criteria ("x in N", "x not in N").
struct ClassWitness {
  std::string description;
  Element e;
};

/// Per-element witnesses of an exhaustive scan, stored by enumeration index.
struct BruteForceWitnesses {
  FiniteSpan space;                       // all elements of the algebra
  std::vector<Element> idempotents;       // enumeration order
  std::vector<std::int32_t> witness_of;   // idempotent position per x, -1 if none
};

/// One (x, e) pair, x either a concrete element or a class description.
struct WitnessPair {
  std::optional<Element> x;
  std::string x_class;
  Element e;
};

/// Named condition with a pass/fail result, or nullopt when undetermined.
using ConditionResult = std::pair<std::string, std::optional<bool>>;

struct AirVerdict {
  /// nullopt means undecided.
  std::optional<bool> is_air;
  /// bruteforce, thm_nilpotent, thm_codim1, thm_codim2_case1,
  /// thm_codim2_case2, thm_codim2 or undecided.
  std::string method = "undecided";
  std::vector<ClassWitness> class_witnesses;
  std::shared_ptr<const BruteForceWitnesses> brute;
  std::optional<Element> counterexample;
  std::vector<ConditionResult> conditions;
  std::vector<std::string> notes;

  bool decided() const noexcept { return is_air.has_value(); }
  /// Class witnesses followed by every per-element witness.
  std::vector<WitnessPair> witness_pairs() const;
  std::size_t witness_count() const;
};

struct ConditionBVerdict {
  bool holds = true;
  /// (x, e): e is an idempotent outside S that witnesses the equality for x.
  std::optional<std::pair<Element, Element>> violating_pair;
  /// Number of x with at least one witness.
  std::size_t witnessed = 0;
};

/// Exhaustive Condition (A) over F_p. The counterexample is the first x in
/// enumeration order with no witness; witnesses are the first idempotent in
/// enumeration order.
AirVerdict check_condition_A_bruteforce(const StructureConstants& a, const Decomposition& d,
                                        const AirOptions& opt = {});

ConditionBVerdict check_condition_B_bruteforce(const StructureConstants& a, const Decomposition& d,
                                               const AirOptions& opt = {});

/// Whether a nilpotent algebra has a^2 = 0 identically; throws NotNilpotentError otherwise.
bool criterion_nilpotent_air(const StructureConstants& a);

enum class CriterionOutcome { Air, NotAir, HypothesesNotMet };

struct CriterionResult {
  CriterionOutcome outcome = CriterionOutcome::HypothesesNotMet;
  /// Identifier of the first failed condition for NotAir.
  std::string failed_condition;
  /// Why the hypotheses are not met.
  std::string reason;
  std::vector<ConditionResult> conditions;
  /// Cases that hold, e.g. "case1(p1)", "case2".
  std::vector<std::string> applicable_cases;
  std::vector<ClassWitness> witnesses;
  std::vector<std::string> notes;
};

/// One-dimensional semisimple part S = F e with commutative nilradical.
CriterionResult criterion_codim1(const StructureConstants& a, const Decomposition& d,
                                 const AirOptions& opt = {});

/// Two-dimensional semisimple part spanned by orthogonal idempotents p1, p2
/// (the designated s_idempotents, else the S basis) with commutative nilradical.
CriterionResult criterion_codim2(const StructureConstants& a, const Decomposition& d,
                                 const AirOptions& opt = {});

enum class Method { Auto, BruteForce, Criteria };
std::string to_string(Method m);

AirVerdict classify(const StructureConstants& a, const Decomposition& d, Method method = Method::Auto,
                    const AirOptions& opt = {});

/// An element e with e s = s e = s for every s in S^2 u N^2, searched among
/// idempotents first and then among all elements.
std::optional<Element> squares_unit_witness(const StructureConstants& a, const Decomposition& d,
                                            const AirOptions& opt = {});

/// First nilpotent a in span(S) then span(N) with a^3 != 0; nullopt when none.
std::optional<Element> cube_nonzero_nilpotent(const StructureConstants& a, const Decomposition& d,
                                              const AirOptions& opt = {});

/// The almost inner RJ condition in the Jordan table: for every x some
/// idempotent e of S gives ker(U_x) n SQ = U_e(A) n SQ.
AirVerdict check_condition_RJ_bruteforce(const StructureConstants& a, const Decomposition& d,
                                         const AirOptions& opt = {});

}  // namespace air
