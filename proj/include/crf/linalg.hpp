#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crf/numeric.hpp"

namespace crf {

// Dense row-major matrix over an exact field (Rational or GaussianRational).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(size_t rows, size_t cols, std::vector<T> entries);

  static Matrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const T& operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  const std::vector<T>& entries() const { return a_; }

  Matrix transpose() const;
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> a_;
};

using ExactMatrix = Matrix<GaussianRational>;
using RationalMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y);
template <class T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y);
template <class T>
Matrix<T> scale(const T& s, const Matrix<T>& x);

ExactMatrix conj(const ExactMatrix& x);
// Conjugate transpose.
ExactMatrix adjoint(const ExactMatrix& x);
ExactMatrix to_exact(const RationalMatrix& x);

// In-place reduced row echelon form. Pivots are chosen column by column as
// the first nonzero entry at or below the current row, so the result is
// independent of the execution mode. Returns the pivot columns.
enum class Exec { Serial, Parallel };
template <class T>
std::vector<size_t> rref(Matrix<T>& m, Exec exec = Exec::Serial);

template <class T>
size_t rank(Matrix<T> m, Exec exec = Exec::Serial);

template <class T>
std::vector<std::vector<T>> exact_nullspace(const Matrix<T>& a, Exec exec = Exec::Serial);

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

template <class T>
struct SolveResult {
  SolveStatus status = SolveStatus::Inconsistent;
  // Unique solution, or the particular solution with free variables at zero.
  std::vector<T> x;
  // Index of the first row that cannot be satisfied, when inconsistent.
  size_t conflict_row = 0;
};

template <class T>
SolveResult<T> exact_solve(const Matrix<T>& a, const std::vector<T>& b, Exec exec = Exec::Serial);

template <class T>
std::vector<T> apply(const Matrix<T>& a, const std::vector<T>& x);

GaussianRational det2(const ExactMatrix& m);
ExactMatrix inverse2(const ExactMatrix& m);

std::string format_matrix(const ExactMatrix& m);
ExactMatrix parse_matrix(const std::string& text);

}  // namespace crf
