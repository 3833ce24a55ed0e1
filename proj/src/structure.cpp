#include "novikov/structure.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace novikov {

namespace {

void require_concrete(const QuadraticNovikov& q) {
  if (!q.is_concrete()) throw std::invalid_argument("structure operations need parameter-free structure constants and metric (instantiate with --set)");
}

QMatrix hcat(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

// rational L(e_i), R(e_i), zero operators dropped
std::vector<QMatrix> nonzero_operators(const NovikovAlgebra& a) {
  auto ops = mult_operators(a);
  std::vector<QMatrix> out;
  for (const auto* list : {&ops.L, &ops.R})
    for (const auto& m : *list)
      if (!is_zero(m)) out.push_back(to_rational(m));
  return out;
}

bool is_ideal(const NovikovAlgebra& a, const QMatrix& basis) {
  if (basis.cols() == 0) return true;
  return subspace_kind(a, Subspace(basis)).kind == SubspaceKind::Ideal;
}

QMatrix kernel_matrix(const QMatrix& m) {
  auto ker = kernel_basis(m);
  QMatrix out(m.cols(), static_cast<Eigen::Index>(ker.size()));
  for (std::size_t i = 0; i < ker.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = ker[i];
  return out;
}

Poly quadratic_form(const QMatrix& g) {
  Poly f;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if (!g(i, j).is_zero())
        f += Poly(g(i, j)) * Poly::variable("v" + std::to_string(i + 1)) * Poly::variable("v" + std::to_string(j + 1));
  return f;
}

bool nondegenerate_on(const QMatrix& b, const QMatrix& u) {
  return !det(QMatrix(u.transpose() * b * u)).is_zero();
}

}  // namespace

bool same_subspace(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  return rank(hcat(a.rational_basis(), b.rational_basis())) == a.dim();
}

Subspace perp(const QuadraticNovikov& q, const Subspace& w) {
  require_concrete(q);
  if (w.ambient() != q.n()) throw std::invalid_argument("subspace lives in the wrong ambient dimension");
  if (!is_constant(w.basis())) throw std::invalid_argument("perp needs a parameter-free subspace");
  const Eigen::Index n = q.n();
  if (w.dim() == 0) return Subspace::whole(n);
  QMatrix wb = w.rational_basis();
  QMatrix k = kernel_matrix(QMatrix(wb.transpose() * q.rational_metric()));
  Subspace out(column_space(k));
  if (is_ideal(q.algebra, wb) && !is_ideal(q.algebra, out.rational_basis()))
    throw std::logic_error("perp of an ideal is not an ideal");
  return out;
}

QuadraticNovikov restrict_to(const QuadraticNovikov& q, const QMatrix& basis) {
  require_concrete(q);
  const Eigen::Index n = q.n(), d = basis.cols();
  std::vector<std::string> names;
  for (Eigen::Index c = 0; c < d; ++c) {
    Eigen::Index hit = -1, nonzero = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!basis(i, c).is_zero()) {
        ++nonzero;
        hit = i;
      }
    if (nonzero == 1 && basis(hit, c).is_one()) names.push_back(q.algebra.basis()[static_cast<std::size_t>(hit)]);
  }
  if (static_cast<Eigen::Index>(names.size()) != d) names = NovikovAlgebra::default_basis(static_cast<std::size_t>(d), "u");
  NovikovAlgebra a(q.algebra.name(), names);
  PMatrix pb = to_poly(basis);
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y) {
      auto c = solve(basis, to_rational(q.algebra.mul(pb.col(x), pb.col(y))));
      if (!c) throw std::invalid_argument("restriction to a subspace that is not a subalgebra");
      a.set_product(static_cast<std::size_t>(x), static_cast<std::size_t>(y), to_poly(*c));
    }
  QMatrix g = basis.transpose() * q.rational_metric() * basis;
  QuadraticNovikov out{a, to_poly(g), {}, {}};
  out.nondegenerate.kind = det(g).is_zero() ? Nonvanishing::IdenticallyZero : Nonvanishing::GenericallyNonzero;
  return out;
}

std::vector<Subspace> common_eigenspaces(const NovikovAlgebra& a) {
  if (!a.is_concrete()) throw std::invalid_argument("eigenspaces need parameter-free structure constants");
  const Eigen::Index n = a.n();
  std::vector<QMatrix> spaces = {QMatrix(QMatrix::Identity(n, n))};
  for (const auto& op : nonzero_operators(a)) {
    std::vector<QMatrix> next;
    auto eig = rational_eigenvalues(op);
    for (const auto& e : spaces)
      for (const auto& mu : eig) {
        QMatrix shifted = op - QMatrix(QMatrix::Identity(n, n)) * mu;
        QMatrix k = kernel_matrix(QMatrix(shifted * e));
        if (k.cols() > 0) next.push_back(column_space(QMatrix(e * k)));
      }
    spaces = std::move(next);
    if (spaces.empty()) break;
  }
  std::vector<Subspace> out;
  for (const auto& s : spaces) out.emplace_back(s);
  return out;
}

Subspace ideal_generated(const NovikovAlgebra& a, const QMatrix& m) {
  if (!a.is_concrete()) throw std::invalid_argument("ideal_generated needs parameter-free structure constants");
  auto ops = nonzero_operators(a);
  QMatrix cur = column_space(m);
  for (;;) {
    QMatrix all = cur;
    for (const auto& op : ops) all = hcat(all, QMatrix(op * cur));
    QMatrix next = column_space(all);
    if (next.cols() == cur.cols()) return Subspace(cur);
    cur = next;
  }
}

IsotropicLines isotropic_ideal_lines(const QuadraticNovikov& q) {
  require_concrete(q);
  IsotropicLines out;
  QMatrix b = q.rational_metric();
  if (nonzero_operators(q.algebra).empty()) {
    out.cones.push_back({Subspace::whole(q.n()), quadratic_form(b)});
    return out;
  }
  for (const auto& e : common_eigenspaces(q.algebra)) {
    QMatrix eb = e.rational_basis();
    if (e.dim() > 1) out.cones.push_back({e, quadratic_form(QMatrix(eb.transpose() * b * eb))});
    for (Eigen::Index c = 0; c < e.dim(); ++c) {
      QVector v = eb.col(c);
      if ((v.transpose() * b * v)(0, 0).is_zero()) out.lines.emplace_back(QMatrix(v));
    }
  }
  return out;
}

namespace {

// candidate ideals for a nondegenerate proper summand, in discovery order
std::vector<QMatrix> ideal_candidates(const QuadraticNovikov& x) {
  const Eigen::Index n = x.n();
  std::vector<QMatrix> found;
  auto add = [&](const QMatrix& m) {
    QMatrix c = column_space(m);
    if (c.cols() == 0 || c.cols() >= n) return;
    for (const auto& f : found)
      if (f == c) return;
    found.push_back(c);
  };
  auto ops = nonzero_operators(x.algebra);
  std::vector<QMatrix> lines;
  if (ops.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) lines.push_back(QVector::Unit(n, i));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) lines.push_back(QVector(QVector::Unit(n, i) + QVector::Unit(n, j)));
  } else {
    for (const auto& e : common_eigenspaces(x.algebra)) {
      QMatrix eb = e.rational_basis();
      for (Eigen::Index i = 0; i < eb.cols(); ++i) lines.push_back(eb.col(i));
      for (Eigen::Index i = 0; i < eb.cols(); ++i)
        for (Eigen::Index j = i + 1; j < eb.cols(); ++j) lines.push_back(QVector(eb.col(i) + eb.col(j)));
    }
  }
  for (const auto& l : lines) add(l);
  // sub-sums of the lines
  if (lines.size() <= 10) {
    for (unsigned mask = 1; mask < (1u << lines.size()); ++mask) {
      if ((mask & (mask - 1)) == 0) continue;
      QMatrix s(n, 0);
      for (std::size_t i = 0; i < lines.size(); ++i)
        if (mask & (1u << i)) s = hcat(s, lines[i]);
      add(s);
    }
  } else {
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) add(hcat(lines[i], lines[j]));
  }
  if (!ops.empty()) {
    for (const auto& op : ops)
      for (const auto& mu : rational_eigenvalues(op)) {
        QMatrix k = kernel_matrix(QMatrix(op - QMatrix(QMatrix::Identity(n, n)) * mu));
        for (Eigen::Index c = 0; c < k.cols(); ++c) add(ideal_generated(x.algebra, k.col(c)).rational_basis());
      }
    for (Eigen::Index i = 0; i < n; ++i) add(ideal_generated(x.algebra, QVector::Unit(n, i)).rational_basis());
  }
  const std::size_t before = found.size();
  for (std::size_t i = 0; i < before; ++i)
    if (is_ideal(x.algebra, found[i])) add(perp(x, Subspace(found[i])).rational_basis());
  return found;
}

std::vector<QMatrix> decompose_rec(const QuadraticNovikov& x) {
  const Eigen::Index n = x.n();
  if (n <= 1) return {QMatrix(QMatrix::Identity(n, n))};
  const QMatrix b = x.rational_metric();
  std::optional<QMatrix> pick;
  for (const auto& c : ideal_candidates(x)) {
    if (!nondegenerate_on(b, c) || !is_ideal(x.algebra, c)) continue;
    if (!pick || c.cols() < pick->cols()) pick = c;
  }
  if (!pick) return {QMatrix(QMatrix::Identity(n, n))};
  QMatrix other = perp(x, Subspace(*pick)).rational_basis();
  std::vector<QMatrix> out;
  for (const auto& part : {*pick, other})
    for (const auto& f : decompose_rec(restrict_to(x, part))) out.push_back(column_space(QMatrix(part * f)));
  return out;
}

}  // namespace

Decomposition decompose(const QuadraticNovikov& q) {
  require_concrete(q);
  const QMatrix b = q.rational_metric();
  if (det(b).is_zero()) throw std::invalid_argument("decompose needs a nondegenerate metric");
  Decomposition d;
  for (const auto& f : decompose_rec(q)) d.factors.emplace_back(f);

  Check ideals("ideals"), orth("orthogonal"), nondeg("nondegenerate"), sum("direct-sum");
  QMatrix all(q.n(), 0);
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    QMatrix fi = d.factors[i].rational_basis();
    all = hcat(all, fi);
    if (!is_ideal(q.algebra, fi)) ideals.violate({i}, "factor " + std::to_string(i + 1) + " is not an ideal");
    if (!nondegenerate_on(b, fi)) nondeg.violate({i}, "factor " + std::to_string(i + 1) + " is degenerate");
    for (std::size_t j = i + 1; j < d.factors.size(); ++j)
      if (!is_zero(QMatrix(fi.transpose() * b * d.factors[j].rational_basis())))
        orth.violate({i, j}, "factors " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not orthogonal");
  }
  if (all.cols() != q.n() || rank(all) != q.n()) sum.violate({}, "factor dimensions do not add up to " + std::to_string(q.n()));
  sum.value = std::to_string(d.factors.size()) + " factor(s)";
  d.report.checks = {ideals, orth, nondeg, sum,
                     Check("minimality", Status::Info, "relative to the rational eigen-line ideal search")};
  return d;
}

Splitting splitting(const QuadraticNovikov& q, const Subspace& J) {
  require_concrete(q);
  if (J.ambient() != q.n()) throw std::invalid_argument("J lives in the wrong ambient dimension");
  if (J.dim() == 0) throw std::invalid_argument("J is zero");
  const QMatrix b = q.rational_metric();
  QMatrix jb = J.rational_basis();
  if (!is_zero(QMatrix(jb.transpose() * b * jb))) throw std::invalid_argument("J is not isotropic");
  if (!is_ideal(q.algebra, jb)) throw std::invalid_argument("J is not an ideal");
  Splitting s;
  s.J = J;
  s.Jperp = perp(q, J);
  QMatrix v = greedy_complement(s.Jperp.rational_basis());
  s.V = Subspace(v);
  s.S = Subspace(hcat(jb, v));
  s.Sperp = perp(q, s.S);
  const Eigen::Index n = q.n();
  QMatrix jp = s.Jperp.rational_basis();
  QMatrix three = hcat(hcat(jb, s.Sperp.rational_basis()), v);
  if (three.cols() != n || rank(three) != n) throw std::logic_error("J + S^⊥ + V is not a direct sum");
  if (rank(hcat(jp, jb)) != jp.cols() || rank(hcat(jp, s.Sperp.rational_basis())) != jp.cols())
    throw std::logic_error("J or S^⊥ is not inside J^⊥");
  if (!nondegenerate_on(b, s.S.rational_basis())) throw std::logic_error("B is degenerate on S");
  return s;
}

QuadraticQuotient quotient_quadratic(const QuadraticNovikov& q, const Subspace& ideal) {
  require_concrete(q);
  if (ideal.ambient() != q.n()) throw std::invalid_argument("ideal lives in the wrong ambient dimension");
  QMatrix ib = ideal.rational_basis();
  if (!is_ideal(q.algebra, ib)) throw std::invalid_argument("quotient by a subspace that is not an ideal");
  const Eigen::Index n = q.n();
  const QMatrix b = q.rational_metric();
  QMatrix ip = perp(q, ideal).rational_basis();
  QMatrix u = column_space(hcat(ib, ip));
  QMatrix k = ib.cols() == 0 ? QMatrix(n, 0) : column_space(QMatrix(ib * kernel_matrix(QMatrix(ib.transpose() * b * ib))));
  auto ambient_part = restrict_to(q, u);
  auto kc = solve(u, k);
  if (!kc) throw std::logic_error("I ∩ I^⊥ is not inside I + I^⊥");
  auto quo = quotient(ambient_part.algebra, Subspace(*kc));
  QuadraticQuotient out;
  out.lift = u * quo.complement;
  QMatrix full = hcat(u, greedy_complement(u));
  auto inv = inverse(full);
  if (!inv) throw std::logic_error("I + I^⊥ and its complement do not span");
  out.reduce = quo.projection * QMatrix(inv->topRows(u.cols()));
  NovikovAlgebra a = quo.algebra;
  a.set_name(q.algebra.name() + "/quot");
  out.quotient = make_quadratic(a, to_poly(QMatrix(out.lift.transpose() * b * out.lift)));
  return out;
}

}  // namespace novikov
