#include "crf/linalg.hpp"

#include <omp.h>

#include <sstream>

#include "crf/errors.hpp"

namespace crf {

namespace {

bool is_zero(const Rational& x) { return sgn(x) == 0; }
bool is_zero(const GaussianRational& x) { return x.is_zero(); }

template <class T>
void eliminate_row(Matrix<T>& m, size_t r, size_t pr, size_t pc) {
  if (is_zero(m(r, pc))) return;
  T f = m(r, pc);
  for (size_t c = pc; c < m.cols(); ++c) {
    if (!is_zero(m(pr, c))) m(r, c) -= f * m(pr, c);
  }
}

}  // namespace

template <class T>
Matrix<T>::Matrix(size_t rows, size_t cols, std::vector<T> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows_ * cols_) throw PreconditionError("matrix entry count does not match shape");
}

template <class T>
Matrix<T> Matrix<T>::identity(size_t n) {
  Matrix m(n, n);
  for (size_t k = 0; k < n; ++k) m(k, k) = T(1);
  return m;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.cols() != y.rows()) throw PreconditionError("matrix product dimension mismatch");
  Matrix<T> p(x.rows(), y.cols());
  for (size_t r = 0; r < x.rows(); ++r)
    for (size_t k = 0; k < x.cols(); ++k) {
      if (is_zero(x(r, k))) continue;
      for (size_t c = 0; c < y.cols(); ++c) p(r, c) += x(r, k) * y(k, c);
    }
  return p;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw PreconditionError("matrix sum dimension mismatch");
  Matrix<T> s = x;
  for (size_t r = 0; r < x.rows(); ++r)
    for (size_t c = 0; c < x.cols(); ++c) s(r, c) += y(r, c);
  return s;
}

template <class T>
Matrix<T> scale(const T& f, const Matrix<T>& x) {
  Matrix<T> s = x;
  for (size_t r = 0; r < x.rows(); ++r)
    for (size_t c = 0; c < x.cols(); ++c) s(r, c) = f * x(r, c);
  return s;
}

ExactMatrix conj(const ExactMatrix& x) {
  ExactMatrix c(x.rows(), x.cols());
  for (size_t r = 0; r < x.rows(); ++r)
    for (size_t k = 0; k < x.cols(); ++k) c(r, k) = x(r, k).conj();
  return c;
}

ExactMatrix adjoint(const ExactMatrix& x) { return conj(x).transpose(); }

ExactMatrix to_exact(const RationalMatrix& x) {
  ExactMatrix e(x.rows(), x.cols());
  for (size_t r = 0; r < x.rows(); ++r)
    for (size_t c = 0; c < x.cols(); ++c) e(r, c) = GaussianRational(x(r, c));
  return e;
}

template <class T>
std::vector<size_t> rref(Matrix<T>& m, Exec exec) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    T inv = T(1) / m(row, col);
    for (size_t c = col; c < m.cols(); ++c)
      if (!is_zero(m(row, c))) m(row, c) *= inv;
    const long nrows = static_cast<long>(m.rows());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
      for (long r = 0; r < nrows; ++r)
        if (static_cast<size_t>(r) != row) eliminate_row(m, static_cast<size_t>(r), row, col);
    } else {
      for (long r = 0; r < nrows; ++r)
        if (static_cast<size_t>(r) != row) eliminate_row(m, static_cast<size_t>(r), row, col);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
size_t rank(Matrix<T> m, Exec exec) {
  return rref(m, exec).size();
}

template <class T>
std::vector<std::vector<T>> exact_nullspace(const Matrix<T>& a, Exec exec) {
  Matrix<T> m = a;
  std::vector<size_t> pivots = rref(m, exec);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(a.cols());
    v[f] = T(1);
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
SolveResult<T> exact_solve(const Matrix<T>& a, const std::vector<T>& b, Exec exec) {
  if (a.rows() == 0 || a.cols() == 0) throw PreconditionError("exact_solve on empty matrix");
  if (b.size() != a.rows()) throw PreconditionError("exact_solve dimension mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  std::vector<size_t> pivots = rref(aug, exec);
  SolveResult<T> res;
  if (!pivots.empty() && pivots.back() == a.cols()) {
    res.status = SolveStatus::Inconsistent;
    // Smallest prefix of the rows that is already inconsistent.
    for (size_t k = 1; k <= a.rows(); ++k) {
      Matrix<T> sub(k, a.cols() + 1);
      for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c <= a.cols(); ++c) sub(r, c) = c < a.cols() ? a(r, c) : b[r];
      auto pv = rref(sub, exec);
      if (!pv.empty() && pv.back() == a.cols()) {
        res.conflict_row = k - 1;
        break;
      }
    }
    return res;
  }
  res.x.assign(a.cols(), T());
  for (size_t k = 0; k < pivots.size(); ++k) res.x[pivots[k]] = aug(k, a.cols());
  res.status = pivots.size() == a.cols() ? SolveStatus::Unique : SolveStatus::Underdetermined;
  return res;
}

template <class T>
std::vector<T> apply(const Matrix<T>& a, const std::vector<T>& x) {
  if (x.size() != a.cols()) throw PreconditionError("apply dimension mismatch");
  std::vector<T> y(a.rows());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c)
      if (!is_zero(a(r, c)) && !is_zero(x[c])) y[r] += a(r, c) * x[c];
  return y;
}

GaussianRational det2(const ExactMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw PreconditionError("det2 needs a 2x2 matrix");
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

ExactMatrix inverse2(const ExactMatrix& m) {
  GaussianRational d = det2(m);
  if (d.is_zero()) throw PreconditionError("singular 2x2 matrix");
  GaussianRational inv = d.inverse();
  return ExactMatrix(2, 2, {m(1, 1) * inv, -m(0, 1) * inv, -m(1, 0) * inv, m(0, 0) * inv});
}

std::string format_matrix(const ExactMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ",[" : "[");
    for (size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << format_gaussian(m(r, c));
    os << "]";
  }
  os << "]";
  return os.str();
}

ExactMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<GaussianRational>> rows;
  size_t depth = 0;
  std::string cell;
  std::vector<GaussianRational> cur;
  for (char ch : text) {
    if (ch == '[') {
      ++depth;
      if (depth > 2) throw ParseError("matrix nesting too deep");
      if (depth == 2) cur.clear();
    } else if (ch == ']') {
      if (depth == 0) throw ParseError("unbalanced ']' in matrix");
      if (depth == 2) {
        cur.push_back(parse_gaussian(cell));
        cell.clear();
        rows.push_back(cur);
      }
      --depth;
    } else if (ch == ',') {
      if (depth == 2) {
        cur.push_back(parse_gaussian(cell));
        cell.clear();
      }
    } else if (depth == 2) {
      cell.push_back(ch);
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw ParseError("unexpected character in matrix literal");
    }
  }
  if (depth != 0 || rows.empty()) throw ParseError("malformed matrix literal");
  size_t cols = rows[0].size();
  std::vector<GaussianRational> flat;
  for (auto& r : rows) {
    if (r.size() != cols) throw ParseError("ragged matrix literal");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return ExactMatrix(rows.size(), cols, std::move(flat));
}

#define CRF_INSTANTIATE(T)                                                                     \
  template class Matrix<T>;                                                                    \
  template Matrix<T> operator*(const Matrix<T>&, const Matrix<T>&);                            \
  template Matrix<T> operator+(const Matrix<T>&, const Matrix<T>&);                            \
  template Matrix<T> scale(const T&, const Matrix<T>&);                                        \
  template std::vector<size_t> rref(Matrix<T>&, Exec);                                         \
  template size_t rank(Matrix<T>, Exec);                                                       \
  template std::vector<std::vector<T>> exact_nullspace(const Matrix<T>&, Exec);                \
  template SolveResult<T> exact_solve(const Matrix<T>&, const std::vector<T>&, Exec);          \
  template std::vector<T> apply(const Matrix<T>&, const std::vector<T>&);

CRF_INSTANTIATE(Rational)
CRF_INSTANTIATE(GaussianRational)

}  // namespace crf
