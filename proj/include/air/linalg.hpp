#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "air/field.hpp"

namespace air {

using Vector = std::vector<Scalar>;

Vector zero_vector(const FieldDesc& field, std::size_t n);
bool is_zero_vector(std::span<const Scalar> v);

/// Dense row-major matrix over one field.
class Matrix {
 public:
  Matrix(const FieldDesc& field, std::size_t rows, std::size_t cols);

  /// All entries must share `field`; otherwise FieldMismatchError.
  static Matrix from_rows(const FieldDesc& field, const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_ints(const FieldDesc& field,
                          std::initializer_list<std::initializer_list<long long>> rows);
  static Matrix identity(const FieldDesc& field, std::size_t n);

  const FieldDesc& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector column(std::size_t c) const;

  Matrix operator*(const Matrix& rhs) const;
  Vector apply(std::span<const Scalar> v) const;
  Matrix transpose() const;
  /// Rows of `this` followed by rows of `below`.
  Matrix stack(const Matrix& below) const;

  std::string to_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  FieldDesc field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;  // nonzero rows only
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form; zero rows are dropped.
RrefResult rref(const Matrix& m);

/// Inverse of a square matrix, or std::domain_error when singular.
Matrix inverse(const Matrix& m);

/// Linear subspace of F^n, stored as its canonical RREF basis. Two subspaces
/// are equal iff their RREF bases are identical.
class Subspace {
 public:
  static Subspace zero(const FieldDesc& field, std::size_t ambient_dim);
  static Subspace full(const FieldDesc& field, std::size_t ambient_dim);
  static Subspace span(const FieldDesc& field, std::size_t ambient_dim,
                       const std::vector<Vector>& vectors);
  /// Row space of `m`.
  static Subspace row_space(const Matrix& m);

  const FieldDesc& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  std::vector<Vector> basis_vectors() const;

  bool contains(std::span<const Scalar> v) const;
  bool is_subset_of(const Subspace& other) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// {v : m v = 0}.
Subspace kernel(const Matrix& m);

Subspace subspace_intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& s, std::span<const Scalar> v);

}  // namespace air
