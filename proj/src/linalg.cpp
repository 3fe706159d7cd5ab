#include "rootproj/linalg.hpp"

#include <sstream>
#include <utility>

namespace rootproj {

namespace {

void require_same_dim(const Vector& u, const Vector& v, const char* what) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(u.dim()) + " vs " +
                            std::to_string(v.dim()));
  }
}

}  // namespace

Vector Vector::unit(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("Vector::unit: index out of range");
  Vector v(dim);
  v[index] = 1;
  return v;
}

bool Vector::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

bool Vector::lex_positive() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return c.sign() > 0;
  return false;
}

Vector Vector::operator-() const {
  Vector out(*this);
  for (auto& c : out.coords_) c = -c;
  return out;
}

Vector& Vector::operator+=(const Vector& rhs) {
  require_same_dim(*this, rhs, "Vector::operator+=");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
  require_same_dim(*this, rhs, "Vector::operator-=");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

Vector& Vector::operator*=(const Rational& scalar) {
  for (auto& c : coords_) c *= scalar;
  return *this;
}

std::strong_ordering operator<=>(const Vector& a, const Vector& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.dim() <=> b.dim();
}

std::size_t Vector::hash() const {
  std::size_t h = coords_.size();
  for (const auto& c : coords_) h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string Vector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += coords_[i].str();
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const Vector& v) { return os << v.str(); }

Rational dot(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "dot");
  mpq_class acc = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) acc += u[i].raw() * v[i].raw();
  return Rational(std::move(acc));
}

Rational pairing(const Vector& u, const Vector& v) {
  const Rational vv = dot(v, v);
  if (vv.is_zero()) throw std::domain_error("pairing: zero vector");
  return Rational(2) * dot(u, v) / vv;
}

Vector reflect(const Vector& v, const Vector& b) { return v - pairing(v, b) * b; }

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("RationalMatrix: ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  RationalMatrix m(rows.size(), rows.front().dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != m.cols_) throw DimensionMismatch("RationalMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

const Rational& RationalMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("RationalMatrix::at");
  return (*this)(r, c);
}

Rational& RationalMatrix::at(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("RationalMatrix::at");
  return (*this)(r, c);
}

Vector RationalMatrix::row(std::size_t r) const {
  if (r >= rows_) throw std::out_of_range("RationalMatrix::row");
  return Vector(std::vector<Rational>(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_));
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::submatrix(const std::vector<std::size_t>& indices) const {
  RationalMatrix s(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) s(i, j) = at(indices[i], indices[j]);
  return s;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("RationalMatrix::operator*: inner dimensions differ");
  RationalMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

std::string RationalMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RationalMatrix& m) { return os << m.str(); }

RationalMatrix invert(const RationalMatrix& m) {
  if (!m.square()) throw DimensionMismatch("invert: matrix is not square");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw NotInvertible("invert: matrix is not invertible");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Rational scale = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= scale;
      inv(col, c) /= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Rational factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= factor * a(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

Vector mat_vec(const Vector& row, const RationalMatrix& m) {
  if (row.dim() != m.rows()) {
    throw DimensionMismatch("mat_vec: row of length " + std::to_string(row.dim()) + " times " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  Vector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (row[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[i] * m(i, j);
  }
  return out;
}

}  // namespace rootproj
