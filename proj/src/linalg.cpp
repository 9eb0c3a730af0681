#include "air/linalg.hpp"

#include <sstream>
#include <stdexcept>

#include "air/errors.hpp"

namespace air {

Vector zero_vector(const FieldDesc& field, std::size_t n) { return Vector(n, Scalar::zero(field)); }

bool is_zero_vector(std::span<const Scalar> v) {
  for (const auto& s : v) {
    if (!s.is_zero()) return false;
  }
  return true;
}

Matrix::Matrix(const FieldDesc& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::from_rows(const FieldDesc& field, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionMismatchError("row " + std::to_string(r) + " has " +
                                   std::to_string(rows[r].size()) + " entries, expected " +
                                   std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].field() == field)) {
        throw FieldMismatchError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                                 ") is over " + rows[r][c].field().token() + ", expected " +
                                 field.token());
      }
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::from_ints(const FieldDesc& field,
                         std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  Matrix m(field, rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionMismatchError("ragged integer matrix");
    std::size_t c = 0;
    for (long long v : row) m(r, c++) = Scalar::from_int(field, v);
    ++r;
  }
  return m;
}

Matrix Matrix::identity(const FieldDesc& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (!(field_ == rhs.field_)) throw FieldMismatchError("matrix product over different fields");
  if (cols_ != rhs.rows_) throw DimensionMismatchError("matrix product shape mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw DimensionMismatchError("matrix-vector shape mismatch");
  Vector out = zero_vector(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix Matrix::stack(const Matrix& below) const {
  if (!(field_ == below.field_)) throw FieldMismatchError("stacking matrices over different fields");
  if (cols_ != below.cols_) throw DimensionMismatchError("stacking matrices of different widths");
  Matrix out(field_, rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a(pivot, c).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
    }
    const Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar factor = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= factor * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced(a.field(), r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = a(i, j);
  }
  return {std::move(reduced), r, std::move(pivots)};
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatchError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  const auto res = rref(aug);
  if (res.rank < n || res.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = res.reduced(i, n + j);
  }
  return inv;
}

Subspace Subspace::zero(const FieldDesc& field, std::size_t ambient_dim) {
  return Subspace(Matrix(field, 0, ambient_dim));
}

Subspace Subspace::full(const FieldDesc& field, std::size_t ambient_dim) {
  return Subspace(Matrix::identity(field, ambient_dim));
}

Subspace Subspace::span(const FieldDesc& field, std::size_t ambient_dim,
                        const std::vector<Vector>& vectors) {
  return row_space(Matrix::from_rows(field, vectors, ambient_dim));
}

Subspace Subspace::row_space(const Matrix& m) { return Subspace(rref(m).reduced); }

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    const auto row = basis_.row(i);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

bool Subspace::contains(std::span<const Scalar> v) const {
  if (v.size() != ambient_dim()) {
    throw DimensionMismatchError("vector of length " + std::to_string(v.size()) +
                                 " tested against subspace of F^" + std::to_string(ambient_dim()));
  }
  for (const auto& s : v) {
    if (!(s.field() == field())) throw FieldMismatchError("vector and subspace over different fields");
  }
  // Eliminate against the RREF basis; v is inside iff the residual vanishes.
  Vector residual(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::size_t pivot = 0;
    while (basis_(i, pivot).is_zero()) ++pivot;
    const Scalar coef = residual[pivot];
    if (coef.is_zero()) continue;
    for (std::size_t j = 0; j < residual.size(); ++j) residual[j] -= coef * basis_(i, j);
  }
  return is_zero_vector(residual);
}

bool Subspace::is_subset_of(const Subspace& other) const {
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    if (!other.contains(basis_.row(i))) return false;
  }
  return true;
}

Subspace kernel(const Matrix& m) {
  const auto res = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : res.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(m.field(), cols);
    v[free] = Scalar::one(m.field());
    for (std::size_t i = 0; i < res.pivots.size(); ++i) v[res.pivots[i]] = -res.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.field(), cols, basis);
}

namespace {

// Rows spanning the annihilator of s, so that s = {v : A v = 0}.
Matrix defining_equations(const Subspace& s) {
  const auto ann = kernel(s.basis());
  return ann.basis();
}

void require_compatible(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatchError("subspaces of F^" + std::to_string(a.ambient_dim()) + " and F^" +
                                 std::to_string(b.ambient_dim()));
  }
  if (!(a.field() == b.field())) throw FieldMismatchError("subspaces over different fields");
}

}  // namespace

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  return kernel(defining_equations(a).stack(defining_equations(b)));
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  return Subspace::row_space(a.basis().stack(b.basis()));
}

bool subspace_contains(const Subspace& s, std::span<const Scalar> v) { return s.contains(v); }

}  // namespace air
