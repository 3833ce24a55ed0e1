#include "novikov/forms.hpp"

#include <stdexcept>

namespace novikov {

bool Tensor3::is_zero() const {
  for (const auto& p : data)
    if (!p.is_zero()) return false;
  return true;
}

bool is_symmetric(const PMatrix& m) { return m.rows() == m.cols() && m == PMatrix(m.transpose()); }

bool is_antisymmetric(const PMatrix& m) { return m.rows() == m.cols() && m == PMatrix(-m.transpose()); }

Poly bilinear(const PMatrix& b, const PVector& x, const PVector& y) { return (x.transpose() * b * y)(0, 0); }

Tensor3 invariance_residual(const NovikovAlgebra& a, const PMatrix& b) {
  if (b.rows() != a.n() || b.cols() != a.n()) throw std::invalid_argument("metric shape does not match the algebra");
  const std::size_t n = a.dim();
  Tensor3 t{n, std::vector<Poly>(n * n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        PVector star_ik = a.product(i, k) + a.product(k, i);
        t(i, j, k) = bilinear(b, a.product(i, j), unit(n, k)) + bilinear(b, unit(n, j), star_ik);
      }
  return t;
}

std::vector<PMatrix> invariant_form_space(const NovikovAlgebra& a) {
  const std::size_t n = a.dim();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      index[i][j] = index[j][i] = unknowns.size();
      unknowns.emplace_back(i, j);
    }
  const auto N = static_cast<Eigen::Index>(unknowns.size());
  PMatrix sys = PMatrix::Zero(static_cast<Eigen::Index>(n * n * n), N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto row = static_cast<Eigen::Index>((i * n + j) * n + k);
        const PVector& ij = a.product(i, j);
        PVector star_ik = a.product(i, k) + a.product(k, i);
        for (std::size_t l = 0; l < n; ++l) {
          auto L = static_cast<Eigen::Index>(l);
          if (!ij(L).is_zero()) sys(row, static_cast<Eigen::Index>(index[l][k])) += ij(L);
          if (!star_ik(L).is_zero()) sys(row, static_cast<Eigen::Index>(index[j][l])) += star_ik(L);
        }
      }
  std::vector<PMatrix> out;
  if (N == 0) return out;
  for (const auto& v : kernel_basis(sys)) {
    PMatrix b = PMatrix::Zero(a.n(), a.n());
    for (Eigen::Index u = 0; u < N; ++u) {
      auto [i, j] = unknowns[static_cast<std::size_t>(u)];
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v(u);
      b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v(u);
    }
    out.push_back(std::move(b));
  }
  return out;
}

FormFamily make_family(const std::vector<PMatrix>& basis, std::vector<std::string> names) {
  FormFamily f;
  if (names.empty())
    for (std::size_t i = 0; i < basis.size(); ++i) names.push_back("p" + std::to_string(i + 1));
  if (names.size() != basis.size()) throw std::invalid_argument("family parameter count mismatch");
  f.params = names;
  if (basis.empty()) return f;
  f.matrix = PMatrix::Zero(basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i) f.matrix += basis[i] * Poly::variable(names[i]);
  return f;
}

Nondegeneracy nondegeneracy_condition(const FormFamily& family) {
  Nondegeneracy r;
  if (family.matrix.size() == 0 && family.params.empty()) {
    r.det = Poly();
    r.verdict.kind = Nonvanishing::IdenticallyZero;
    return r;
  }
  r.det = det(family.matrix);
  r.verdict = nonvanishing_check(r.det, family.constraints);
  return r;
}

QuadraticNovikov QuadraticNovikov::substitute(const Assignment& at) const {
  auto c = check_quadratic(algebra.substitute(at), evaluate(metric, at), [&] {
    ConstraintSet cs;
    for (const auto& p : constraints.polys()) {
      Poly v = p.substitute(at);
      if (v.is_zero()) throw std::domain_error("instantiation violates the constraint " + p.str() + " != 0");
      cs.add(v);
    }
    return cs;
  }());
  if (!c.quadratic) throw std::domain_error("instantiation is not quadratic:\n" + c.report.str());
  return *c.quadratic;
}

QuadraticCheck check_quadratic(const NovikovAlgebra& a, const PMatrix& b, const ConstraintSet& extra) {
  if (b.rows() != a.n() || b.cols() != a.n()) throw std::invalid_argument("metric shape does not match the algebra");
  QuadraticCheck out;
  Report& r = out.report;
  r.append(check_novikov(a));
  {
    Check& c = r.add("symmetric");
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = i + 1; j < b.cols(); ++j)
        if (b(i, j) != b(j, i))
          c.violate({static_cast<std::size_t>(i), static_cast<std::size_t>(j)},
                    "B" + format_tuple({static_cast<std::size_t>(i), static_cast<std::size_t>(j)}, a.basis()) + " = " +
                        b(i, j).str() + " but B" +
                        format_tuple({static_cast<std::size_t>(j), static_cast<std::size_t>(i)}, a.basis()) + " = " +
                        b(j, i).str());
  }
  {
    Check& c = r.add("invariant");
    auto t = invariance_residual(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k)
          if (!t(i, j, k).is_zero()) c.violate({i, j, k}, format_tuple({i, j, k}, a.basis()) + ": " + t(i, j, k).str());
  }
  ConstraintSet cs = a.constraints;
  cs.merge(extra);
  NonvanishingVerdict v;
  {
    Check& c = r.add("nondegenerate");
    Poly d = det(b);
    c.value = "det = " + d.str();
    if (d.is_constant()) {
      v.kind = d.is_zero() ? Nonvanishing::IdenticallyZero : Nonvanishing::GenericallyNonzero;
    } else {
      v = nonvanishing_check(d, cs);
    }
    if (v.kind == Nonvanishing::IdenticallyZero) {
      c.status = Status::Fail;
      c.violations = 1;
    } else if (v.kind == Nonvanishing::Inconclusive) {
      c.status = Status::Inconclusive;
      if (v.witness) c.witnesses.push_back({{}, "vanishes at " + assignment_string(*v.witness)});
    } else if (v.sampled) {
      c.value += " (nonzero at sample points)";
    }
  }
  if (r.passed()) out.quadratic = QuadraticNovikov{a, b, cs, v};
  return out;
}

QuadraticNovikov make_quadratic(const NovikovAlgebra& a, const PMatrix& b, const ConstraintSet& extra) {
  auto c = check_quadratic(a, b, extra);
  if (!c.quadratic) throw std::domain_error("not a quadratic Novikov algebra:\n" + c.report.str());
  return *c.quadratic;
}

PVector derivation_residual(const NovikovAlgebra& a, const PMatrix& d, std::size_t i, std::size_t j) {
  const std::size_t n = a.dim();
  PVector ei = unit(n, i), ej = unit(n, j);
  return d * a.product(i, j) - a.mul(d * ei, ej) - a.mul(ei, d * ej);
}

PVector half_twisted_residual(const NovikovAlgebra& a, const PMatrix& d, std::size_t i, std::size_t j) {
  const std::size_t n = a.dim();
  PVector ei = unit(n, i), ej = unit(n, j);
  return d * a.product(i, j) - a.mul(ei, d * ej) * Poly(Rational(1, 2));
}

std::vector<QMatrix> derivation_space(const NovikovAlgebra& a) {
  if (!a.is_concrete()) throw std::domain_error("derivation_space needs parameter-free structure constants");
  const Eigen::Index n = a.n();
  // unknown d(r,c) at r*n + c
  QMatrix sys = QMatrix::Zero(n * n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      QVector p = to_rational(a.product(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      for (Eigen::Index m = 0; m < n; ++m) {
        Eigen::Index row = (i * n + j) * n + m;
        for (Eigen::Index l = 0; l < n; ++l) sys(row, m * n + l) += p(l);
        // -(D e_i)∘e_j = -sum_r d(r,i) e_r∘e_j
        for (Eigen::Index r = 0; r < n; ++r) {
          sys(row, r * n + i) -= a.product(static_cast<std::size_t>(r), static_cast<std::size_t>(j))(m).constant();
          sys(row, r * n + j) -= a.product(static_cast<std::size_t>(i), static_cast<std::size_t>(r))(m).constant();
        }
      }
    }
  std::vector<QMatrix> out;
  for (const auto& v : kernel_basis(sys)) {
    QMatrix d(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) d(r, c) = v(r * n + c);
    out.push_back(d);
  }
  return out;
}

QFResult quasi_frobenius_from_derivation(const QuadraticNovikov& q, const PMatrix& d, QFMode mode) {
  const auto& a = q.algebra;
  const std::size_t n = a.dim();
  if (d.rows() != a.n() || d.cols() != a.n()) throw std::invalid_argument("D has the wrong shape");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PVector res = mode == QFMode::Derivation ? derivation_residual(a, d, i, j) : half_twisted_residual(a, d, i, j);
      if (!is_zero(res))
        throw std::domain_error(std::string(mode == QFMode::Derivation ? "D is not a derivation" : "D(a∘b) != a∘D(b)/2") +
                                " at " + format_tuple({i, j}, a.basis()) + ": " + format_vector(res, a.basis()));
    }
  PMatrix omega = d.transpose() * q.metric;
  PMatrix skew = omega + PMatrix(q.metric * d);
  for (Eigen::Index i = 0; i < skew.rows(); ++i)
    for (Eigen::Index j = 0; j < skew.cols(); ++j)
      if (!skew(i, j).is_zero())
        throw std::domain_error("D is not skew-adjoint: B(D" + a.basis()[static_cast<std::size_t>(i)] + "," +
                                a.basis()[static_cast<std::size_t>(j)] + ") + B(" + a.basis()[static_cast<std::size_t>(i)] +
                                ",D" + a.basis()[static_cast<std::size_t>(j)] + ") = " + skew(i, j).str());
  Poly dd = det(d);
  if (mode == QFMode::HalfTwisted) {
    auto v = dd.is_constant() ? NonvanishingVerdict{dd.is_zero() ? Nonvanishing::IdenticallyZero : Nonvanishing::GenericallyNonzero, false, {}, {}}
                              : nonvanishing_check(dd, q.constraints);
    if (v.kind != Nonvanishing::GenericallyNonzero) throw std::domain_error("D is not invertible");
  }
  QFResult out;
  out.omega = omega;
  Report& r = out.report;
  Check anti{"antisymmetric"};
  if (!is_antisymmetric(omega)) anti.violate({}, "omega + omega^T != 0");
  Check cocycle{"cocycle"};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        PVector ei = unit(n, i), ej = unit(n, j), ek = unit(n, k);
        Poly v = bilinear(omega, a.product(i, j), ek) - bilinear(omega, a.star(ei, ek), ej) + bilinear(omega, a.product(k, j), ei);
        if (!v.is_zero()) cocycle.violate({i, j, k}, format_tuple({i, j, k}, a.basis()) + ": " + v.str());
      }
  Check nd{"nondegenerate"};
  Poly dw = det(omega);
  nd.value = "det = " + dw.str();
  bool nondeg;
  if (dw.is_constant()) {
    nondeg = !dw.is_zero();
  } else {
    auto v = nonvanishing_check(dw, q.constraints);
    nondeg = v.kind == Nonvanishing::GenericallyNonzero;
  }
  if (!nondeg) nd.status = Status::Info;
  r.checks = {anti, cocycle, nd};
  out.quasi_frobenius = anti.status == Status::Pass && cocycle.status == Status::Pass && nondeg;
  r.add("quasi-frobenius", Status::Info, out.quasi_frobenius ? "yes" : "no");
  return out;
}

}  // namespace novikov
