#pragma once

#include "novikov/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace novikov {

// Variable used for characteristic polynomials; the scalar grammar cannot spell it.
inline const std::string kCharVar = "_x";

inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
inline Poly exact_div(const Poly& a, const Poly& b) { return a / b; }

template <class T>
struct Echelon {
  Matrix<T> reduced;                   // reduced row echelon form, pivot rows first
  std::vector<Eigen::Index> pivot_cols;
  std::vector<T> pivots;               // reduced(i, pivot_cols[i]); 1 for unit pivots
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_cols.size()); }
  // non-constant pivots: the generic rank holds only where these are nonzero
  std::vector<T> assumptions() const {
    std::vector<T> out;
    for (const auto& p : pivots)
      if (!is_constant(p)) out.push_back(p);
    return out;
  }
};

namespace detail {

inline Rational leading_rational(const Rational& x) { return x; }
inline Rational leading_rational(const Poly& x) { return x.leading().coef; }

inline int pivot_cost(const Rational&) { return 0; }
inline int pivot_cost(const Poly& x) {
  if (x.is_constant()) return 0;
  return 1000 * static_cast<int>(x.total_degree()) + static_cast<int>(x.terms().size());
}

inline bool try_divide_row(Matrix<Rational>&, Eigen::Index, const Rational&) { return false; }
inline bool try_divide_row(Matrix<Poly>& m, Eigen::Index r, const Poly& d) {
  if (d.is_constant() || is_zero(m.row(r))) return false;
  std::vector<Poly> q(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    auto v = divide_exact(m(r, j), d);
    if (!v) return false;
    q[static_cast<std::size_t>(j)] = std::move(*v);
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) m(r, j) = std::move(q[static_cast<std::size_t>(j)]);
  return true;
}

template <class T>
void normalize_row(Matrix<T>& m, Eigen::Index r) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (!is_zero(m(r, j))) {
      Rational c = leading_rational(m(r, j));
      if (!c.is_one()) {
        T inv = T(Rational(1) / c);
        for (Eigen::Index k = j; k < m.cols(); ++k) m(r, k) *= inv;
      }
      return;
    }
  }
}

}  // namespace detail

// Fraction-free Gauss-Jordan. Constant pivots are scaled to 1; parametric pivots
// are eliminated by cross-multiplication, which is generic-rank semantics.
template <class T>
Echelon<T> echelon(Matrix<T> m) {
  Echelon<T> e;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  std::vector<T> used;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index best = -1;
    int best_cost = 0;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (is_zero(m(i, c))) continue;
      int cost = detail::pivot_cost(m(i, c));
      if (best < 0 || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best < 0) continue;
    m.row(r).swap(m.row(best));
    T p = m(r, c);
    if (is_constant(p)) {
      T inv = T(Rational(1) / detail::leading_rational(p));
      for (Eigen::Index k = c; k < cols; ++k) m(r, k) *= inv;
      p = T(1);
      for (Eigen::Index i = 0; i < rows; ++i) {
        if (i == r || is_zero(m(i, c))) continue;
        T f = m(i, c);
        for (Eigen::Index k = c; k < cols; ++k) m(i, k) -= f * m(r, k);
      }
    } else {
      detail::normalize_row(m, r);
      p = m(r, c);
      for (Eigen::Index i = 0; i < rows; ++i) {
        if (i == r || is_zero(m(i, c))) continue;
        T f = m(i, c);
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = p * m(i, k) - f * m(r, k);
        for (const auto& d : used)
          while (detail::try_divide_row(m, i, d)) {
          }
        detail::try_divide_row(m, i, p);
        detail::normalize_row(m, i);
      }
      used.push_back(p);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    auto row = static_cast<Eigen::Index>(i);
    detail::normalize_row(m, row);
    e.pivots.push_back(m(row, e.pivot_cols[i]));
  }
  e.reduced = std::move(m);
  return e;
}

template <class T>
Eigen::Index rank(const Matrix<T>& m) {
  return echelon(m).rank();
}

// Basis of the right null space; each vector satisfies m*v = 0 identically.
template <class T>
std::vector<Vector<T>> kernel_basis(const Matrix<T>& m) {
  auto e = echelon(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vector<T>> out;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<T> v = Vector<T>::Zero(n);
    T D(1);
    for (const auto& p : e.pivots)
      if (!is_constant(p)) D *= p;
    v(f) = D;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
      const T& a = e.reduced(static_cast<Eigen::Index>(i), f);
      if (is_zero(a)) continue;
      v(e.pivot_cols[i]) = -(a * exact_div(D, e.pivots[i]));
    }
    Matrix<T> row = v.transpose();
    for (const auto& p : e.pivots)
      if (!is_constant(p))
        while (detail::try_divide_row(row, 0, p)) {
        }
    detail::normalize_row(row, 0);
    out.push_back(row.transpose());
  }
  return out;
}

// Bareiss fraction-free determinant.
template <class T>
T det(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return T(1);
  T sign(1), prev(1);
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (is_zero(m(k, k))) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (!is_zero(m(i, k))) {
          swap = i;
          break;
        }
      if (swap < 0) return T(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// One solution of a*x = b (free variables 0), or nullopt when inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);
std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b);
std::optional<QMatrix> inverse(const QMatrix& m);

// Generic membership of v in the column span of s; `assumptions` lists the
// parametric pivots the verdict depends on.
struct SpanTest {
  bool member = false;
  std::vector<Poly> assumptions;
};
SpanTest in_span(const PMatrix& s, const PVector& v);
bool in_span(const QMatrix& s, const QVector& v);

// det(x*I - m) in the variable kCharVar.
Poly charpoly(const QMatrix& m);
std::vector<Rational> rational_eigenvalues(const QMatrix& m);

// Columns of a canonical basis for the span of the columns of m (reduced echelon of the transpose).
QMatrix column_space(const QMatrix& m);
// Greedy completion: standard basis vectors, in index order, independent of span(m).
QMatrix greedy_complement(const QMatrix& m);

}  // namespace novikov
