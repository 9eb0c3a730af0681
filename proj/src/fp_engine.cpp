#include "fp_engine.hpp"

#include <algorithm>
#include <iterator>

#include "air/errors.hpp"

namespace air::detail {

FpAlgebra::FpAlgebra(const StructureConstants& a)
    : field_(a.field()), p_(0), n_(a.dim()), c_(n_ * n_ * n_, 0) {
  if (!field_.is_finite()) throw UnsupportedFieldError("exhaustive scans need a prime field, got Q");
  p_ = field_.modulus();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) c_[(i * n_ + j) * n_ + k] = a.table().coeff(i, j, k).residue();
    }
  }
}

Coords FpAlgebra::decode(std::uint64_t index) const {
  Coords x(n_);
  for (std::size_t i = n_; i-- > 0;) {
    x[i] = index % p_;
    index /= p_;
  }
  return x;
}

std::uint64_t FpAlgebra::encode(const Coords& x) const {
  std::uint64_t index = 0;
  for (Word v : x) index = index * p_ + v;
  return index;
}

Coords FpAlgebra::from_element(const Element& x) const {
  Coords out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = x[i].residue();
  return out;
}

Element FpAlgebra::to_element(const Coords& x) const {
  Vector v;
  v.reserve(n_);
  for (Word w : x) v.push_back(Scalar::from_residue(field_, w));
  return Element(field_, std::move(v));
}

Coords FpAlgebra::multiply(const Coords& x, const Coords& y) const {
  Coords out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j] == 0) continue;
      const Word xy = x[i] * y[j] % p_;
      for (std::size_t k = 0; k < n_; ++k) {
        const Word c = coeff(i, j, k);
        if (c != 0) out[k] = (out[k] + xy * c) % p_;
      }
    }
  }
  return out;
}

std::vector<Word> FpAlgebra::sandwich_matrix(const Coords& x) const {
  // left(i, k) = (x b_k)_i and right(m, i) = (b_i x)_m, so xvx = right * left * v.
  std::vector<Word> left(n_ * n_, 0);
  std::vector<Word> right(n_ * n_, 0);
  for (std::size_t l = 0; l < n_; ++l) {
    if (x[l] == 0) continue;
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t i = 0; i < n_; ++i) {
        left[i * n_ + k] = (left[i * n_ + k] + x[l] * coeff(l, k, i)) % p_;
        right[k * n_ + i] = (right[k * n_ + i] + x[l] * coeff(i, l, k)) % p_;
      }
    }
  }
  std::vector<Word> m(n_ * n_, 0);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t i = 0; i < n_; ++i) {
      const Word a = right[r * n_ + i];
      if (a == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) m[r * n_ + k] = (m[r * n_ + k] + a * left[i * n_ + k]) % p_;
    }
  }
  return m;
}

bool FpAlgebra::maps_to_zero(const std::vector<Word>& m, const Coords& v) const {
  for (std::size_t r = 0; r < n_; ++r) {
    Word acc = 0;
    for (std::size_t k = 0; k < n_; ++k) acc = (acc + m[r * n_ + k] * v[k]) % p_;
    if (acc != 0) return false;
  }
  return true;
}

bool FpAlgebra::fixes(const std::vector<Word>& m, const Coords& v) const {
  for (std::size_t r = 0; r < n_; ++r) {
    Word acc = 0;
    for (std::size_t k = 0; k < n_; ++k) acc = (acc + m[r * n_ + k] * v[k]) % p_;
    if (acc != v[r]) return false;
  }
  return true;
}

std::vector<std::uint64_t> FpAlgebra::span_indices(const std::vector<Element>& gens,
                                                   std::size_t budget) const {
  const std::size_t count = span_size(field_, gens.size(), budget);
  std::vector<Coords> g;
  for (const auto& e : gens) g.push_back(from_element(e));
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::vector<Word> coef(gens.size(), 0);
  for (std::size_t step = 0; step < count; ++step) {
    Coords x(n_, 0);
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      if (coef[gi] == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) x[k] = (x[k] + coef[gi] * g[gi][k]) % p_;
    }
    out.push_back(encode(x));
    // Odometer increment, last generator least significant.
    for (std::size_t gi = g.size(); gi-- > 0;) {
      if (++coef[gi] < p_) break;
      coef[gi] = 0;
    }
  }
  return out;
}

namespace {

std::vector<std::uint64_t> sorted_squares(const FpAlgebra& alg, const std::vector<std::uint64_t>& span) {
  std::vector<std::uint64_t> out;
  out.reserve(span.size());
  for (auto idx : span) {
    const Coords x = alg.decode(idx);
    out.push_back(alg.encode(alg.multiply(x, x)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

FpScan::FpScan(const StructureConstants& a, const Decomposition& d, SetOp op, std::size_t budget)
    : alg_(a), size_(span_size(a.field(), a.dim(), budget)) {
  s_span_ = alg_.span_indices(d.s_basis, budget);
  const auto s_sq = sorted_squares(alg_, s_span_);
  const auto n_sq = sorted_squares(alg_, alg_.span_indices(d.n_basis, budget));
  std::sort(s_span_.begin(), s_span_.end());
  if (op == SetOp::Union) {
    std::set_union(s_sq.begin(), s_sq.end(), n_sq.begin(), n_sq.end(), std::back_inserter(sq_));
  } else {
    std::set_intersection(s_sq.begin(), s_sq.end(), n_sq.begin(), n_sq.end(), std::back_inserter(sq_));
  }
  for (auto idx : sq_) sq_coords_.push_back(alg_.decode(idx));

  for (std::uint64_t x = 0; x < size_; ++x) {
    const Coords c = alg_.decode(x);
    if (alg_.multiply(c, c) == c) idempotents_.push_back(x);
  }

  const std::size_t words = (sq_.size() + 63) / 64;
  for (std::uint32_t pos = 0; pos < idempotents_.size(); ++pos) {
    const auto m = alg_.sandwich_matrix(alg_.decode(idempotents_[pos]));
    Key key(words, 0);
    for (std::size_t v = 0; v < sq_coords_.size(); ++v) {
      if (alg_.fixes(m, sq_coords_[v])) key[v / 64] |= std::uint64_t{1} << (v % 64);
    }
    groups_[key].push_back(pos);
  }
}

Key FpScan::annihilator_key(std::uint64_t x) const {
  const auto m = alg_.sandwich_matrix(alg_.decode(x));
  Key key((sq_.size() + 63) / 64, 0);
  for (std::size_t v = 0; v < sq_coords_.size(); ++v) {
    if (alg_.maps_to_zero(m, sq_coords_[v])) key[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  return key;
}

const std::vector<std::uint32_t>* FpScan::witnesses(const Key& key) const {
  const auto it = groups_.find(key);
  return it == groups_.end() ? nullptr : &it->second;
}

bool FpScan::in_s(std::uint64_t index) const {
  return std::binary_search(s_span_.begin(), s_span_.end(), index);
}

}  // namespace air::detail
