#pragma once

// Word-sized arithmetic for exhaustive scans over F_p. Elements are encoded
// by their position in the lexicographic enumeration (first coordinate most
// significant), which matches FiniteSpan / enumerate_elements.

#include <cstdint>
#include <map>
#include <vector>

#include "air/algebra.hpp"
#include "air/decomposition.hpp"
#include "air/rickart.hpp"

namespace air::detail {

using Word = std::uint64_t;
using Coords = std::vector<Word>;
using Key = std::vector<std::uint64_t>;  // bitset over the squares set

class FpAlgebra {
 public:
  explicit FpAlgebra(const StructureConstants& a);

  Word p() const noexcept { return p_; }
  std::size_t n() const noexcept { return n_; }
  const FieldDesc& field() const noexcept { return field_; }

  Coords decode(std::uint64_t index) const;
  std::uint64_t encode(const Coords& x) const;
  Coords from_element(const Element& x) const;
  Element to_element(const Coords& x) const;
  Element element_at(std::uint64_t index) const { return to_element(decode(index)); }

  Coords multiply(const Coords& x, const Coords& y) const;
  /// Row-major n x n matrix of v -> x v x.
  std::vector<Word> sandwich_matrix(const Coords& x) const;
  /// Whether m * v is zero / equals v.
  bool maps_to_zero(const std::vector<Word>& m, const Coords& v) const;
  bool fixes(const std::vector<Word>& m, const Coords& v) const;

  /// Indices of all elements of the span of `gens`, in span enumeration order.
  std::vector<std::uint64_t> span_indices(const std::vector<Element>& gens, std::size_t budget) const;

 private:
  Word coeff(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }

  FieldDesc field_;
  Word p_;
  std::size_t n_;
  std::vector<Word> c_;
};

/// Shared precomputation for the Condition (A)/(B) scans: the squares set,
/// the idempotents, and the idempotents grouped by the part of the squares
/// set they fix.
class FpScan {
 public:
  FpScan(const StructureConstants& a, const Decomposition& d, SetOp op, std::size_t budget);

  const FpAlgebra& algebra() const noexcept { return alg_; }
  std::uint64_t size() const noexcept { return size_; }
  const std::vector<std::uint64_t>& squares() const noexcept { return sq_; }
  const std::vector<std::uint64_t>& idempotents() const noexcept { return idempotents_; }

  /// Bitset of squares v with x v x = 0.
  Key annihilator_key(std::uint64_t x) const;
  /// Idempotent positions (enumeration order) whose corner meets the squares
  /// set exactly in `key`; nullptr when none.
  const std::vector<std::uint32_t>* witnesses(const Key& key) const;

  bool in_s(std::uint64_t index) const;

 private:
  FpAlgebra alg_;
  std::uint64_t size_;
  std::vector<std::uint64_t> sq_;
  std::vector<Coords> sq_coords_;
  std::vector<std::uint64_t> idempotents_;
  std::vector<std::uint64_t> s_span_;  // sorted
  std::map<Key, std::vector<std::uint32_t>> groups_;
};

}  // namespace air::detail
