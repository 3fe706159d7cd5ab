#pragma once

// Exact vectors and dense matrices over the rationals.

#include "rootproj/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rootproj {

/// Thrown when operand shapes do not agree. Always a caller bug.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by invert() on a singular matrix.
class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coordinate vector in the ambient Euclidean space. Equality is exact
/// coordinate-wise equality; ordering is lexicographic on coordinates.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim) {}
  explicit Vector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Vector(std::initializer_list<Rational> coords) : coords_(coords) {}

  /// Unit vector e_index (0-based) of the given dimension.
  static Vector unit(std::size_t dim, std::size_t index);

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  /// First nonzero coordinate is positive. The zero vector is not lex-positive.
  bool lex_positive() const;

  Vector operator-() const;
  Vector& operator+=(const Vector& rhs);
  Vector& operator-=(const Vector& rhs);
  Vector& operator*=(const Rational& scalar);

  friend Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
  friend Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
  friend Vector operator*(Vector v, const Rational& s) { return v *= s; }
  friend Vector operator*(const Rational& s, Vector v) { return v *= s; }

  friend bool operator==(const Vector&, const Vector&) = default;
  friend std::strong_ordering operator<=>(const Vector& a, const Vector& b);

  std::size_t hash() const;
  std::string str() const;

 private:
  std::vector<Rational> coords_;
};

std::ostream& operator<<(std::ostream& os, const Vector& v);

/// Exact Euclidean inner product. Throws DimensionMismatch.
Rational dot(const Vector& u, const Vector& v);

inline Rational norm2(const Vector& v) { return dot(v, v); }

/// Cartan integer 2<u,v>/<v,v>. Throws std::domain_error if v is zero.
Rational pairing(const Vector& u, const Vector& v);

/// Reflection s_b(v) = v - 2<v,b>/<b,b> b.
Vector reflect(const Vector& v, const Vector& b);

struct VectorHash {
  std::size_t operator()(const Vector& v) const noexcept { return v.hash(); }
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  /// One row per vector.
  static RationalMatrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  /// Bounds-checked access; throws std::out_of_range.
  const Rational& at(std::size_t r, std::size_t c) const;
  Rational& at(std::size_t r, std::size_t c);
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  RationalMatrix transpose() const;
  /// Principal sub-matrix on the given (0-based) rows/columns, in the given order.
  RationalMatrix submatrix(const std::vector<std::size_t>& indices) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

std::ostream& operator<<(std::ostream& os, const RationalMatrix& m);

/// Exact inverse by Gauss-Jordan elimination (first nonzero pivot).
/// Throws DimensionMismatch if not square, NotInvertible if singular.
RationalMatrix invert(const RationalMatrix& m);

/// Row vector times matrix: v * M. Throws DimensionMismatch.
Vector mat_vec(const Vector& row, const RationalMatrix& m);

}  // namespace rootproj

template <>
struct std::hash<rootproj::Vector> {
  std::size_t operator()(const rootproj::Vector& v) const noexcept { return v.hash(); }
};
