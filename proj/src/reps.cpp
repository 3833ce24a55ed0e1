#include "novikov/reps.hpp"

#include <stdexcept>

namespace novikov {

namespace {

PMatrix combine(const std::vector<PMatrix>& maps, const PVector& x, Eigen::Index dim) {
  PMatrix m = PMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!x(i).is_zero()) m += maps[static_cast<std::size_t>(i)] * x(i);
  return m;
}

std::string first_nonzero(const PMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + m(i, j).str();
  return "0";
}

}  // namespace

Report check_representation(const NovikovAlgebra& a, const Representation& v) {
  const std::size_t n = a.dim();
  if (v.l.size() != n || v.r.size() != n) throw std::invalid_argument("representation has the wrong number of maps");
  for (std::size_t i = 0; i < n; ++i)
    if (v.l[i].rows() != v.dim || v.l[i].cols() != v.dim || v.r[i].rows() != v.dim || v.r[i].cols() != v.dim)
      throw std::invalid_argument("representation map has the wrong shape");
  Check comm{"rep-commutator"}, mixed{"rep-mixed"}, left{"rep-left"}, right{"rep-right"};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const PMatrix &la = v.l[i], &lb = v.l[j], &ra = v.r[i], &rb = v.r[j];
      PMatrix l_ab = combine(v.l, a.product(i, j), v.dim);
      PMatrix l_ba = combine(v.l, a.product(j, i), v.dim);
      PMatrix r_ab = combine(v.r, a.product(i, j), v.dim);
      auto tag = format_tuple({i, j}, a.basis()) + ": ";
      PMatrix x1 = l_ab - l_ba - (la * lb - lb * la);
      if (!is_zero(x1)) comm.violate({i, j}, tag + first_nonzero(x1));
      PMatrix x2 = la * rb - rb * la - (r_ab - ra * rb);
      if (!is_zero(x2)) mixed.violate({i, j}, tag + first_nonzero(x2));
      PMatrix x3 = l_ab - rb * la;
      if (!is_zero(x3)) left.violate({i, j}, tag + first_nonzero(x3));
      PMatrix x4 = ra * rb - rb * ra;
      if (!is_zero(x4)) right.violate({i, j}, tag + first_nonzero(x4));
    }
  Report r;
  r.checks = {comm, mixed, left, right};
  return r;
}

Representation adjoint_rep(const NovikovAlgebra& a) {
  auto m = mult_operators(a);
  return {a.n(), m.L, m.R};
}

Representation dual_star_rep(const NovikovAlgebra& a) {
  auto m = mult_operators(a);
  Representation v{a.n(), {}, {}};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    v.l.push_back(-(m.L[i] + m.R[i]).transpose());
    v.r.push_back(m.R[i].transpose());
  }
  return v;
}

ThetaResult theta_isomorphism(const QuadraticNovikov& q) {
  ThetaResult out;
  out.theta = q.metric;
  Check bij{"bijective"}, il{"intertwine-l"}, ir{"intertwine-r"};
  Poly d = det(q.metric);
  bij.value = "det = " + d.str();
  if (d.is_zero()) bij.violate({}, "theta is singular");
  auto adj = adjoint_rep(q.algebra);
  auto dual = dual_star_rep(q.algebra);
  for (std::size_t i = 0; i < q.algebra.dim(); ++i) {
    PMatrix x = out.theta * adj.l[i] - dual.l[i] * out.theta;
    if (!is_zero(x)) il.violate({i}, q.algebra.basis()[i] + ": " + first_nonzero(x));
    PMatrix y = out.theta * adj.r[i] - dual.r[i] * out.theta;
    if (!is_zero(y)) ir.violate({i}, q.algebra.basis()[i] + ": " + first_nonzero(y));
  }
  out.report.checks = {bij, il, ir};
  return out;
}

}  // namespace novikov
