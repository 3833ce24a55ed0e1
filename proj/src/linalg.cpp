#include "novikov/linalg.hpp"

#include <sstream>

namespace novikov {

namespace {

template <class M>
std::string matrix_string(const M& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace

std::string to_string(const PMatrix& m) { return matrix_string(m); }
std::string to_string(const QMatrix& m) { return matrix_string(m); }

std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
  QMatrix aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  auto e = echelon(aug);
  QMatrix x = QMatrix::Zero(a.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    auto c = e.pivot_cols[i];
    if (c >= a.cols()) return std::nullopt;
    x.row(c) = e.reduced.row(static_cast<Eigen::Index>(i)).tail(b.cols());
  }
  return x;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  auto x = solve(a, QMatrix(b));
  if (!x) return std::nullopt;
  return QVector(x->col(0));
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, QMatrix(QMatrix::Identity(m.rows(), m.rows())));
}

SpanTest in_span(const PMatrix& s, const PVector& v) {
  PMatrix aug(s.rows(), s.cols() + 1);
  aug << s, v;
  auto es = echelon(s);
  auto ea = echelon(aug);
  SpanTest t;
  t.member = ea.rank() == es.rank();
  t.assumptions = ea.assumptions();
  for (auto& p : es.assumptions()) t.assumptions.push_back(p);
  return t;
}

bool in_span(const QMatrix& s, const QVector& v) {
  QMatrix aug(s.rows(), s.cols() + 1);
  aug << s, v;
  return rank(aug) == rank(s);
}

Poly charpoly(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("charpoly of a non-square matrix");
  PMatrix x = -to_poly(m);
  Poly var = Poly::variable(kCharVar);
  for (Eigen::Index i = 0; i < m.rows(); ++i) x(i, i) += var;
  return det(x);
}

std::vector<Rational> rational_eigenvalues(const QMatrix& m) {
  if (m.rows() == 0) return {};
  return rational_roots(charpoly(m));
}

QMatrix column_space(const QMatrix& m) {
  auto e = echelon(QMatrix(m.transpose()));
  QMatrix out(m.rows(), e.rank());
  for (Eigen::Index i = 0; i < e.rank(); ++i) out.col(i) = e.reduced.row(i).transpose();
  return out;
}

QMatrix greedy_complement(const QMatrix& m) {
  const Eigen::Index n = m.rows();
  QMatrix cur = m;
  Eigen::Index r = rank(m);
  std::vector<Eigen::Index> picked;
  for (Eigen::Index i = 0; i < n && r < n; ++i) {
    QMatrix trial(n, cur.cols() + 1);
    trial << cur, QVector::Unit(n, i);
    Eigen::Index rt = rank(trial);
    if (rt > r) {
      cur = trial;
      r = rt;
      picked.push_back(i);
    }
  }
  QMatrix out = QMatrix::Zero(n, static_cast<Eigen::Index>(picked.size()));
  for (std::size_t k = 0; k < picked.size(); ++k) out(picked[k], static_cast<Eigen::Index>(k)) = 1;
  return out;
}

}  // namespace novikov
