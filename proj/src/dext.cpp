#include "novikov/dext.hpp"

#include "novikov/classify.hpp"

#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

namespace novikov {

PVector BilinearTable::apply(const PVector& x, const PVector& y) const {
  PVector r = PVector::Zero(out);
  for (std::size_t i = 0; i < rows; ++i) {
    if (novikov::is_zero(x(static_cast<Eigen::Index>(i)))) continue;
    for (std::size_t j = 0; j < cols; ++j) {
      if (novikov::is_zero(y(static_cast<Eigen::Index>(j)))) continue;
      r += (*this)(i, j) * (x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j)));
    }
  }
  return r;
}

bool BilinearTable::is_zero() const {
  for (const auto& v : at)
    if (!novikov::is_zero(v)) return false;
  return true;
}

DextData DextData::zero(QuadraticNovikov a1, NovikovAlgebra a2) {
  DextData d;
  const std::size_t p = a2.dim(), q = a1.algebra.dim();
  const auto pi = static_cast<Eigen::Index>(p), qi = static_cast<Eigen::Index>(q);
  d.A1 = std::move(a1);
  d.A2 = std::move(a2);
  d.tau = PMatrix::Zero(pi, pi);
  d.phi = BilinearTable(q, q, pi);
  d.mu.assign(p, PMatrix::Zero(qi, qi));
  d.muP.assign(p, PMatrix::Zero(qi, qi));
  d.v = BilinearTable(p, q, pi);
  d.vP = BilinearTable(q, p, pi);
  d.lambda = BilinearTable(p, p, qi);
  d.gamma = BilinearTable(p, p, pi);
  return d;
}

void DextData::check_shapes() const {
  const std::size_t P = p(), Q = q();
  const auto pi = static_cast<Eigen::Index>(P), qi = static_cast<Eigen::Index>(Q);
  auto table = [](const BilinearTable& t, std::size_t r, std::size_t c, Eigen::Index o, const char* what) {
    bool ok = t.rows == r && t.cols == c && t.out == o && t.at.size() == r * c;
    for (const auto& v : t.at) ok = ok && v.size() == o;
    if (!ok) throw std::invalid_argument(std::string("map ") + what + " has the wrong shape");
  };
  if (A1.metric.rows() != qi || A1.metric.cols() != qi) throw std::invalid_argument("B1 has the wrong shape");
  if (tau.rows() != pi || tau.cols() != pi) throw std::invalid_argument("tau has the wrong shape");
  if (!is_symmetric(tau)) throw std::invalid_argument("tau is not symmetric");
  table(phi, Q, Q, pi, "phi");
  table(v, P, Q, pi, "v");
  table(vP, Q, P, pi, "vP");
  table(lambda, P, P, qi, "lambda");
  table(gamma, P, P, pi, "gamma");
  for (const auto* ms : {&mu, &muP}) {
    if (ms->size() != P) throw std::invalid_argument("mu/muP need one matrix per A2 basis vector");
    for (const auto& m : *ms)
      if (m.rows() != qi || m.cols() != qi) throw std::invalid_argument("mu/muP matrices have the wrong shape");
  }
}

namespace {

std::vector<std::string> star_names(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(n + "star");
  return out;
}

std::string poly_text(const Poly& p) { return p.str(); }

// Records nonzero residuals as witnesses.
class Recorder {
 public:
  explicit Recorder(Check& c) : check_(c) {}
  void vec(const std::vector<std::size_t>& at, const std::vector<std::string>& names, const PVector& r,
           const std::vector<std::string>& value_basis) {
    if (is_zero(r)) return;
    check_.violate(at, tuple(names) + ": " + format_vector(r, value_basis));
  }
  void scalar(const std::vector<std::size_t>& at, const std::vector<std::string>& names, const Poly& r) {
    if (r.is_zero()) return;
    check_.violate(at, tuple(names) + ": " + poly_text(r));
  }

 private:
  static std::string tuple(const std::vector<std::string>& names) {
    std::string s = "(";
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
    return s + ")";
  }
  Check& check_;
};

PMatrix combine(const std::vector<PMatrix>& ops, const PVector& x, Eigen::Index size) {
  PMatrix m = PMatrix::Zero(size, size);
  for (std::size_t a = 0; a < ops.size(); ++a)
    if (!is_zero(x(static_cast<Eigen::Index>(a)))) m += ops[a] * x(static_cast<Eigen::Index>(a));
  return m;
}

void finish(Check& c) {
  c.value = c.violations == 0 ? "holds" : std::to_string(c.violations) + " violation(s)";
}

}  // namespace

Report check_central(const NovikovAlgebra& a1, const BilinearTable& phi) {
  if (phi.rows != a1.dim() || phi.cols != a1.dim()) throw std::invalid_argument("phi has the wrong shape");
  const std::size_t q = a1.dim();
  const auto dual = NovikovAlgebra::default_basis(static_cast<std::size_t>(phi.out), "f");
  Check c1("(cent-1)"), c2("(cent-2)");
  Recorder r1(c1), r2(c2);
  const auto& nm = a1.basis();
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = 0; y < q; ++y)
      for (std::size_t z = 0; z < q; ++z) {
        PVector ex = unit(q, x), ey = unit(q, y), ez = unit(q, z);
        PVector xy = phi.apply(a1.product(x, y), ez);
        r1.vec({x, y, z}, {nm[x], nm[y], nm[z]},
               xy - phi.apply(ex, a1.product(y, z)) - phi.apply(a1.product(y, x), ez) + phi.apply(ey, a1.product(x, z)), dual);
        r2.vec({x, y, z}, {nm[x], nm[y], nm[z]}, xy - phi.apply(a1.product(x, z), ey), dual);
      }
  finish(c1);
  finish(c2);
  Report rep;
  rep.checks = {c1, c2};
  return rep;
}

NovikovAlgebra central_extension(const NovikovAlgebra& a1, const BilinearTable& phi, std::vector<std::string> dual_names) {
  auto rep = check_central(a1, phi);
  if (!rep.passed()) throw std::domain_error("central extension conditions fail:\n" + rep.str());
  const std::size_t q = a1.dim(), p = static_cast<std::size_t>(phi.out);
  if (dual_names.empty()) dual_names = NovikovAlgebra::default_basis(p, "f");
  if (dual_names.size() != p) throw std::invalid_argument("wrong number of dual basis names");
  auto names = a1.basis();
  names.insert(names.end(), dual_names.begin(), dual_names.end());
  NovikovAlgebra out(a1.name() + "+cent", names);
  out.params = a1.params;
  out.constraints = a1.constraints;
  const auto n = static_cast<Eigen::Index>(q + p), qi = static_cast<Eigen::Index>(q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      PVector v = PVector::Zero(n);
      v.head(qi) = a1.product(i, j);
      v.tail(static_cast<Eigen::Index>(p)) = phi(i, j);
      out.set_product(i, j, v);
    }
  return out;
}

Report validate_dext(const DextData& d) {
  d.check_shapes();
  const std::size_t P = d.p(), Q = d.q();
  const auto pi = static_cast<Eigen::Index>(P), qi = static_cast<Eigen::Index>(Q);
  const NovikovAlgebra& a1 = d.A1.algebra;
  const NovikovAlgebra& a2 = d.A2;
  const auto& n1 = a1.basis();
  const auto& n2 = a2.basis();
  const auto dual = star_names(n2);
  const PMatrix& b1 = d.A1.metric;
  auto ops2 = mult_operators(a2);
  auto stars2 = star_operators(a2);

  auto B1 = [&](const PVector& x, const PVector& y) { return bilinear(b1, x, y); };
  auto m1 = [&](const PVector& x, const PVector& y) { return a1.mul(x, y); };
  auto mu = [&](const PVector& x) { return combine(d.mu, x, qi); };
  auto muP = [&](const PVector& x) { return combine(d.muP, x, qi); };
  // L*⋆(x)g = -g(x⋆·),  R*∘(x)f = -f(·∘x)
  auto Ldual = [&](const PVector& x, const PVector& g) -> PVector { return -(combine(stars2, x, pi).transpose() * g); };
  auto Rdual = [&](const PVector& x, const PVector& f) -> PVector { return -(combine(ops2.R, x, pi).transpose() * f); };
  auto u1 = [&](std::size_t i) { return unit(Q, i); };
  auto u2 = [&](std::size_t a) { return unit(P, a); };
  auto lam = [&](const PVector& x, const PVector& y) { return d.lambda.apply(x, y); };
  auto gam = [&](const PVector& x, const PVector& y) { return d.gamma.apply(x, y); };
  auto at = [](const PVector& f, const PVector& x) { return Poly((f.transpose() * x)(0, 0)); };

  std::vector<Check> cs;
  for (int i = 1; i <= 18; ++i) cs.emplace_back("(3.4." + std::to_string(i) + ")");
  std::vector<Recorder> rec;
  for (auto& c : cs) rec.emplace_back(c);

  // one A2 index, two A1 indices
  for (std::size_t a = 0; a < P; ++a) {
    const PMatrix& M = d.mu[a];
    const PMatrix& MP = d.muP[a];
    for (std::size_t i = 0; i < Q; ++i)
      for (std::size_t j = 0; j < Q; ++j) {
        PVector x1 = u1(i), y1 = u1(j);
        rec[0].scalar({i, j, a}, {n1[i], n1[j], n2[a]}, d.phi(i, j)(static_cast<Eigen::Index>(a)) + B1(y1, PVector(M * x1 + MP * x1)));
        rec[1].scalar({a, i, j}, {n2[a], n1[i], n1[j]}, B1(PVector(M * x1), y1) + B1(x1, PVector(M * y1 + MP * y1)));
        rec[2].vec({a, i, j}, {n2[a], n1[i], n1[j]}, m1(M * x1, y1) - m1(M * y1, x1), n1);
        rec[3].vec({a, i, j}, {n2[a], n1[i], n1[j]}, m1(MP * x1, y1) - MP * m1(x1, y1), n1);
        rec[4].vec({a, i, j}, {n2[a], n1[i], n1[j]},
                   MP * (m1(x1, y1) - m1(y1, x1)) - m1(x1, MP * y1) + m1(y1, MP * x1), n1);
        rec[5].vec({a, i, j}, {n2[a], n1[i], n1[j]}, M * m1(x1, y1) - m1((M - MP) * x1, y1) - m1(x1, M * y1), n1);
      }
  }
  // two A2 indices, one A1 index
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) {
      PVector x2 = u2(a), y2 = u2(b);
      PVector xy = a2.product(a, b), yx = a2.product(b, a);
      PVector l_ab = lam(x2, y2), l_ba = lam(y2, x2);
      for (std::size_t i = 0; i < Q; ++i) {
        PVector x1 = u1(i);
        std::vector<std::size_t> t = {a, b, i};
        std::vector<std::string> tn = {n2[a], n2[b], n1[i]};
        rec[6].vec(t, tn, (d.muP[a] * d.muP[b] - d.muP[b] * d.muP[a]) * x1, n1);
        rec[7].vec(t, tn, d.muP[b] * (d.mu[a] * x1) - m1(l_ab, x1) - mu(xy) * x1, n1);
        rec[8].vec(t, tn,
                   (mu(xy) - mu(yx)) * x1 - (d.mu[a] * d.mu[b] - d.mu[b] * d.mu[a]) * x1 + m1(l_ab - l_ba, x1), n1);
        rec[9].vec(t, tn, (d.mu[a] * d.muP[b] - d.muP[b] * d.mu[a]) * x1, n1);
        rec[10].vec(t, tn, m1(x1, l_ba) + muP(yx) * x1 - d.muP[a] * (d.muP[b] * x1), n1);
      }
      // (3.4.15): (x2, y1, z2) = (a, j, b); (3.4.16): (x2, z1, y2) = (a, i, b)
      for (std::size_t j = 0; j < Q; ++j) {
        PVector y1 = u1(j);
        rec[14].scalar({a, j, b}, {n2[a], n1[j], n2[b]}, d.v(a, j)(static_cast<Eigen::Index>(b)) + B1(y1, PVector(l_ab + l_ba)));
        rec[15].scalar({a, j, b}, {n2[a], n1[j], n2[b]},
                       d.v(a, j)(static_cast<Eigen::Index>(b)) + d.vP(j, a)(static_cast<Eigen::Index>(b)) + B1(l_ab, y1));
      }
    }
  // three A2 indices
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b)
      for (std::size_t c = 0; c < P; ++c) {
        PVector x = u2(a), y = u2(b), z = u2(c);
        PVector xy = a2.product(a, b), xz = a2.product(a, c), yx = a2.product(b, a), yz = a2.product(b, c);
        std::vector<std::size_t> t = {a, b, c};
        std::vector<std::string> tn = {n2[a], n2[b], n2[c]};
        PVector g_xy = gam(x, y), g_xz = gam(x, z), g_yx = gam(y, x), g_yz = gam(y, z);
        PVector l_xy = lam(x, y), l_xz = lam(x, z), l_yx = lam(y, x), l_yz = lam(y, z);
        rec[11].vec(t, tn,
                    gam(xy, z) - Rdual(z, g_xy) + d.vP.apply(l_xy, z) - gam(xz, y) + Rdual(y, g_xz) - d.vP.apply(l_xz, y), dual);
        PVector lhs13 = gam(xy, z) - gam(x, yz) - gam(yx, z) + gam(y, xz);
        PVector rhs13 = -d.vP.apply(l_xy - l_yx, z) + Rdual(z, g_xy - g_yx) + d.v.apply(x, l_yz) + Ldual(x, g_yz) -
                        d.v.apply(y, l_xz) - Ldual(y, g_xz);
        rec[12].vec(t, tn, lhs13 - rhs13, dual);
        Poly r14 = bilinear(d.tau, xy, z) + at(g_xy, z) + bilinear(d.tau, y, a2.star(x, z)) + at(g_xz, y) + at(gam(z, x), y);
        rec[13].scalar(t, tn, r14);
        rec[16].vec(t, tn, lam(xy, z) + d.muP[c] * l_xy - lam(xz, y) - d.muP[b] * l_xz, n1);
        rec[17].vec(t, tn,
                    lam(xy, z) - lam(x, yz) - lam(yx, z) + lam(y, xz) + d.muP[c] * (l_xy - l_yx) - d.mu[a] * l_yz + d.mu[b] * l_xz,
                    n1);
      }
  for (auto& c : cs) finish(c);
  Report rep;
  rep.checks = std::move(cs);
  return rep;
}

namespace {

DextBuild assemble(const DextData& d, Report validation) {
  const std::size_t P = d.p(), Q = d.q();
  const auto pi = static_cast<Eigen::Index>(P), qi = static_cast<Eigen::Index>(Q), n = 2 * pi + qi;
  const NovikovAlgebra& a1 = d.A1.algebra;
  const NovikovAlgebra& a2 = d.A2;
  auto names = a2.basis();
  names.insert(names.end(), a1.basis().begin(), a1.basis().end());
  for (const auto& s : star_names(a2.basis())) names.push_back(s);
  DextBuild out;
  out.validation = std::move(validation);
  try {
    out.algebra = NovikovAlgebra("dext(" + a1.name() + "," + a2.name() + ")", names);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("basis names of A2, A1 and A2* collide");
  }
  std::set<std::string> params(a1.params.begin(), a1.params.end());
  params.insert(a2.params.begin(), a2.params.end());
  out.algebra.params.assign(params.begin(), params.end());
  out.algebra.constraints = a1.constraints;
  out.algebra.constraints.merge(a2.constraints);
  auto ops2 = mult_operators(a2);
  auto stars2 = star_operators(a2);
  auto block = [&](const PVector& x2, const PVector& x1, const PVector& f) {
    PVector v(n);
    v << x2, x1, f;
    return v;
  };
  const PVector z2 = PVector::Zero(pi), z1 = PVector::Zero(qi);
  const auto o1 = static_cast<std::size_t>(pi), o2 = static_cast<std::size_t>(pi + qi);
  for (std::size_t a = 0; a < P; ++a) {
    for (std::size_t b = 0; b < P; ++b) out.algebra.set_product(a, b, block(a2.product(a, b), d.lambda(a, b), d.gamma(a, b)));
    for (std::size_t j = 0; j < Q; ++j) out.algebra.set_product(a, o1 + j, block(z2, d.mu[a].col(static_cast<Eigen::Index>(j)), d.v(a, j)));
    for (std::size_t k = 0; k < P; ++k) {
      // e_a · f_k = L*⋆(e_a) f_k ;  f_k · e_a = -R*∘(e_a) f_k
      out.algebra.set_product(a, o2 + k, block(z2, z1, PVector(-stars2[a].transpose().col(static_cast<Eigen::Index>(k)))));
      out.algebra.set_product(o2 + k, a, block(z2, z1, PVector(ops2.R[a].transpose().col(static_cast<Eigen::Index>(k)))));
    }
  }
  for (std::size_t i = 0; i < Q; ++i) {
    for (std::size_t b = 0; b < P; ++b) out.algebra.set_product(o1 + i, b, block(z2, d.muP[b].col(static_cast<Eigen::Index>(i)), d.vP(i, b)));
    for (std::size_t j = 0; j < Q; ++j) out.algebra.set_product(o1 + i, o1 + j, block(z2, a1.product(i, j), d.phi(i, j)));
  }
  out.metric = PMatrix::Zero(n, n);
  out.metric.topLeftCorner(pi, pi) = d.tau;
  out.metric.block(pi, pi, qi, qi) = d.A1.metric;
  out.metric.block(0, pi + qi, pi, pi) = PMatrix::Identity(pi, pi);
  out.metric.block(pi + qi, 0, pi, pi) = PMatrix::Identity(pi, pi);
  auto qc = check_quadratic(out.algebra, out.metric, d.A1.constraints);
  out.crosscheck = qc.report;
  out.quadratic = qc.quadratic;
  return out;
}

}  // namespace

DextBuild build_dext(const DextData& d) {
  auto rep = validate_dext(d);
  if (rep.failed()) throw std::domain_error("double extension data fails:\n" + rep.str());
  return assemble(d, std::move(rep));
}

DextBuild build_tstar(const NovikovAlgebra& a2, const PMatrix& tau, const BilinearTable& gamma) {
  QuadraticNovikov zero{NovikovAlgebra("0", {}), PMatrix(0, 0), {}, {}};
  DextData d = DextData::zero(zero, a2);
  d.tau = tau;
  d.gamma = gamma;
  return build_dext(d);
}

Report check_dim1(const QuadraticNovikov& a1q, const Dim1DextData& d) {
  const NovikovAlgebra& a1 = a1q.algebra;
  const std::size_t Q = a1.dim();
  const auto qi = static_cast<Eigen::Index>(Q);
  if (d.alpha.size() != qi || d.Q1.rows() != qi || d.Q1.cols() != qi || d.Q2.rows() != qi || d.Q2.cols() != qi ||
      d.h.rows() != qi || d.h.cols() != qi || d.f.size() != qi || d.g.size() != qi)
    throw std::invalid_argument("dimension-1 data does not match dim A1");
  const auto& nm = a1.basis();
  auto B1 = [&](const PVector& x, const PVector& y) { return bilinear(a1q.metric, x, y); };
  std::vector<Check> cs;
  for (const char* id : {"kt+s", "h", "Q1-skew", "Q1-symmetric", "Q2-right", "Q2-bracket", "Q1-derivation", "Q2Q1",
                         "Q1Q2", "Q2-square", "f", "f+g"})
    cs.emplace_back(id);
  std::vector<Recorder> rec;
  for (auto& c : cs) rec.emplace_back(c);
  rec[0].scalar({}, {}, d.k * d.t + d.s);
  for (std::size_t i = 0; i < Q; ++i) {
    PVector x = unit(Q, i);
    for (std::size_t j = 0; j < Q; ++j) {
      PVector y = unit(Q, j);
      std::vector<std::size_t> t = {i, j};
      std::vector<std::string> tn = {nm[i], nm[j]};
      rec[1].scalar(t, tn, d.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) + B1(y, PVector((d.Q1 + d.Q2) * x)));
      rec[2].scalar(t, tn, B1(PVector(d.Q1 * x), y) + B1(x, PVector((d.Q1 + d.Q2) * y)));
      rec[3].vec(t, tn, a1.mul(d.Q1 * x, y) - a1.mul(d.Q1 * y, x), nm);
      rec[4].vec(t, tn, a1.mul(d.Q2 * x, y) - d.Q2 * a1.mul(x, y), nm);
      rec[5].vec(t, tn, d.Q2 * (a1.mul(x, y) - a1.mul(y, x)) - a1.mul(x, d.Q2 * y) + a1.mul(y, d.Q2 * x), nm);
      rec[6].vec(t, tn, d.Q1 * a1.mul(x, y) - a1.mul((d.Q1 - d.Q2) * x, y) - a1.mul(x, d.Q1 * y), nm);
    }
    std::vector<std::size_t> t = {i};
    std::vector<std::string> tn = {nm[i]};
    rec[7].vec(t, tn, d.Q2 * (d.Q1 * x) - a1.mul(d.alpha, x) - d.Q1 * x * d.k, nm);
    rec[8].vec(t, tn, (d.Q1 * d.Q2 - d.Q2 * d.Q1) * x, nm);
    rec[9].vec(t, tn, d.Q2 * (d.Q2 * x) - a1.mul(x, d.alpha) - d.Q2 * x * d.k, nm);
    rec[10].scalar(t, tn, d.f(static_cast<Eigen::Index>(i)) + B1(x, d.alpha) * Poly(2));
    rec[11].scalar(t, tn, d.f(static_cast<Eigen::Index>(i)) + d.g(static_cast<Eigen::Index>(i)) + B1(d.alpha, x));
  }
  for (auto& c : cs) finish(c);
  Report rep;
  rep.checks = std::move(cs);
  return rep;
}

namespace {

NovikovAlgebra line_algebra(const Dim1DextData& d) {
  NovikovAlgebra a2("line", {d.name});
  PVector k(1);
  k << d.k;
  a2.set_product(0, 0, k);
  for (const auto& v : d.k.variables()) a2.params.push_back(v);
  return a2;
}

PVector scalar_vec(const Poly& x) {
  PVector v(1);
  v << x;
  return v;
}

}  // namespace

DextData induced_dext(const QuadraticNovikov& a1, const Dim1DextData& d) {
  DextData out = DextData::zero(a1, line_algebra(d));
  const std::size_t Q = a1.algebra.dim();
  out.tau(0, 0) = d.t;
  out.gamma(0, 0) = scalar_vec(d.s);
  out.lambda(0, 0) = d.alpha;
  out.mu[0] = d.Q1;
  out.muP[0] = d.Q2;
  for (std::size_t i = 0; i < Q; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    out.v(0, i) = scalar_vec(d.f(ii));
    out.vP(i, 0) = scalar_vec(d.g(ii));
    for (std::size_t j = 0; j < Q; ++j) out.phi(i, j) = scalar_vec(d.h(ii, static_cast<Eigen::Index>(j)));
  }
  return out;
}

Dim1Build build_dext_dim1(const QuadraticNovikov& a1q, const Dim1DextData& d) {
  Dim1Build out;
  out.conditions = check_dim1(a1q, d);
  if (out.conditions.failed()) {
    std::string ids;
    for (const auto& id : out.conditions.failing_ids()) ids += (ids.empty() ? "" : ", ") + id;
    throw std::domain_error("dimension-1 extension conditions fail: " + ids + "\n" + out.conditions.str());
  }
  const NovikovAlgebra& a1 = a1q.algebra;
  const std::size_t Q = a1.dim();
  const auto qi = static_cast<Eigen::Index>(Q), n = qi + 2;
  auto names = std::vector<std::string>{d.name};
  names.insert(names.end(), a1.basis().begin(), a1.basis().end());
  names.push_back(d.name + "star");
  DextBuild& b = out.build;
  b.algebra = NovikovAlgebra("dext1(" + a1.name() + ")", names);
  std::set<std::string> params(a1.params.begin(), a1.params.end());
  for (const Poly* x : {&d.k, &d.t, &d.s})
    for (const auto& v : x->variables()) params.insert(v);
  b.algebra.params.assign(params.begin(), params.end());
  b.algebra.constraints = a1.constraints;
  auto vec = [&](const Poly& e, const PVector& x1, const Poly& estar) {
    PVector v(n);
    v << e, x1, estar;
    return v;
  };
  const PVector z1 = PVector::Zero(qi);
  const std::size_t last = Q + 1;
  // (k1 e + x1 + l1 e*)(k2 e + y1 + l2 e*) expanded on basis pairs
  b.algebra.set_product(0, 0, vec(d.k, d.alpha, d.s));
  b.algebra.set_product(0, last, vec(Poly(), z1, d.k * Poly(-2)));
  b.algebra.set_product(last, 0, vec(Poly(), z1, d.k));
  for (std::size_t i = 0; i < Q; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    b.algebra.set_product(0, 1 + i, vec(Poly(), d.Q1.col(ii), d.f(ii)));
    b.algebra.set_product(1 + i, 0, vec(Poly(), d.Q2.col(ii), d.g(ii)));
    for (std::size_t j = 0; j < Q; ++j) b.algebra.set_product(1 + i, 1 + j, vec(Poly(), a1.product(i, j), d.h(ii, static_cast<Eigen::Index>(j))));
  }
  b.metric = PMatrix::Zero(n, n);
  b.metric(0, 0) = d.t;
  b.metric.block(1, 1, qi, qi) = a1q.metric;
  b.metric(0, n - 1) = b.metric(n - 1, 0) = Poly(1);
  auto qc = check_quadratic(b.algebra, b.metric, a1q.constraints);
  b.crosscheck = qc.report;
  b.quadratic = qc.quadratic;
  try {
    auto general = build_dext(induced_dext(a1q, d));
    b.validation = general.validation;
    bool same = general.metric == b.metric;
    for (std::size_t i = 0; i < b.algebra.dim() && same; ++i)
      for (std::size_t j = 0; j < b.algebra.dim() && same; ++j) same = general.algebra.product(i, j) == b.algebra.product(i, j);
    out.matches_general = same;
  } catch (const std::domain_error& e) {
    b.validation = validate_dext(induced_dext(a1q, d));
    out.matches_general = false;
  }
  return out;
}

Extraction extract_dext(const QuadraticNovikov& q, const Subspace& J) {
  Extraction ex;
  ex.split = splitting(q, J);
  const Splitting& sp = ex.split;
  const NovikovAlgebra& A = q.algebra;
  const QMatrix b = q.rational_metric();
  const QMatrix V = sp.V.rational_basis(), Sp = sp.Sperp.rational_basis(), Jb = sp.J.rational_basis(),
                Jp = sp.Jperp.rational_basis();
  const Eigen::Index p = V.cols(), m = Sp.cols(), n = q.n();

  Check annihilate("J-perp-annihilates-J");
  for (Eigen::Index x = 0; x < Jp.cols(); ++x)
    for (Eigen::Index y = 0; y < Jb.cols(); ++y) {
      PVector xp = to_poly(QVector(Jp.col(x))), yj = to_poly(QVector(Jb.col(y)));
      if (!is_zero(A.mul(xp, yj)) || !is_zero(A.mul(yj, xp)))
        annihilate.violate({static_cast<std::size_t>(x), static_cast<std::size_t>(y)}, "J^⊥∘J or J∘J^⊥ is nonzero");
    }
  if (annihilate.status == Status::Fail) throw std::logic_error("J^⊥∘J != 0 inside the extraction");

  QMatrix P(n, n);
  P << V, Sp, Jb;
  auto Pinv = inverse(P);
  if (!Pinv) throw std::logic_error("V + S^⊥ + J does not span");
  // coordinates of a product in V ⊕ S^⊥ ⊕ J
  auto split_product = [&](const QVector& x, const QVector& y) {
    QVector c = *Pinv * to_rational(A.mul(to_poly(x), to_poly(y)));
    return std::array<QVector, 3>{c.head(p), c.segment(p, m), c.tail(p)};
  };

  auto W = quotient_quadratic(q, J);
  QMatrix theta = W.reduce * Sp;  // S^⊥ coordinates -> W coordinates
  auto theta_inv = inverse(theta);
  QMatrix Phi = V.transpose() * b * Jb;  // Phi(x)(u) = B(x,u), J coordinates -> V* coordinates
  auto Phi_inv = inverse(Phi);
  if (!theta_inv || !Phi_inv) throw std::logic_error("theta or Phi is not invertible");

  Check shape("product-shape");
  auto expect_zero = [&](const QVector& v, const std::string& what) {
    if (!is_zero(v)) shape.violate({}, what);
  };

  std::vector<std::string> vnames;
  for (Eigen::Index a = 0; a < p; ++a)
    for (Eigen::Index i = 0; i < n; ++i)
      if (!V(i, a).is_zero()) {
        vnames.push_back(A.basis()[static_cast<std::size_t>(i)]);
        break;
      }
  std::set<std::string> taken(W.quotient.algebra.basis().begin(), W.quotient.algebra.basis().end());
  bool clash = false;
  for (const auto& nm : vnames) clash = clash || taken.count(nm) || taken.count(nm + "star");
  if (clash) vnames = NovikovAlgebra::default_basis(static_cast<std::size_t>(p), "v");
  NovikovAlgebra a2("V", vnames);
  const auto P_ = static_cast<std::size_t>(p), M_ = static_cast<std::size_t>(m);
  for (std::size_t a = 0; a < P_; ++a)
    for (std::size_t c = 0; c < P_; ++c)
      a2.set_product(a, c, to_poly(split_product(V.col(static_cast<Eigen::Index>(a)), V.col(static_cast<Eigen::Index>(c)))[0]));
  DextData d = DextData::zero(W.quotient, a2);
  for (std::size_t a = 0; a < P_; ++a)
    for (std::size_t c = 0; c < P_; ++c) {
      auto pr = split_product(V.col(static_cast<Eigen::Index>(a)), V.col(static_cast<Eigen::Index>(c)));
      d.lambda(a, c) = to_poly(QVector(theta * pr[1]));
      d.gamma(a, c) = to_poly(QVector(Phi * pr[2]));
    }
  d.tau = to_poly(QMatrix(V.transpose() * b * V));
  // S^⊥ vectors for the W basis
  QMatrix w_in_sp = Sp * *theta_inv;
  for (std::size_t a = 0; a < P_; ++a) {
    QVector u = V.col(static_cast<Eigen::Index>(a));
    QMatrix mu(m, m), muP(m, m);
    for (std::size_t j = 0; j < M_; ++j) {
      QVector y = w_in_sp.col(static_cast<Eigen::Index>(j));
      auto uy = split_product(u, y);
      auto yu = split_product(y, u);
      expect_zero(uy[0], "V∘S^⊥ has a V component");
      expect_zero(yu[0], "S^⊥∘V has a V component");
      mu.col(static_cast<Eigen::Index>(j)) = theta * uy[1];
      muP.col(static_cast<Eigen::Index>(j)) = theta * yu[1];
      d.v(a, j) = to_poly(QVector(Phi * uy[2]));
      d.vP(j, a) = to_poly(QVector(Phi * yu[2]));
    }
    d.mu[a] = to_poly(mu);
    d.muP[a] = to_poly(muP);
  }
  for (std::size_t i = 0; i < M_; ++i)
    for (std::size_t j = 0; j < M_; ++j) {
      auto yy = split_product(w_in_sp.col(static_cast<Eigen::Index>(i)), w_in_sp.col(static_cast<Eigen::Index>(j)));
      expect_zero(yy[0], "S^⊥∘S^⊥ has a V component");
      PVector wprod = W.quotient.algebra.product(i, j);
      if (to_poly(QVector(theta * yy[1])) != wprod) shape.violate({i, j}, "theta is not multiplicative on S^⊥");
      d.phi(i, j) = to_poly(QVector(Phi * yy[2]));
    }
  ex.data = d;

  QMatrix blocks = QMatrix::Zero(n, n);
  blocks.topLeftCorner(p, p) = QMatrix::Identity(p, p);
  blocks.block(p, p, m, m) = theta;
  blocks.bottomRightCorner(p, p) = Phi;
  ex.sigma = blocks * *Pinv;

  auto validation = validate_dext(d);
  ex.report.checks = {annihilate, shape};
  ex.report.append(validation);
  if (validation.failed()) {
    ex.rebuilt.validation = validation;
    return ex;
  }
  ex.rebuilt = build_dext(d);
  ex.report.append(ex.rebuilt.crosscheck);
  if (ex.rebuilt.quadratic) {
    auto iso = check_iso_quadratic(q, *ex.rebuilt.quadratic, ex.sigma);
    ex.report.append(iso.report);
  } else {
    ex.report.add("sigma", Status::Fail, "rebuilt extension is not quadratic");
  }
  return ex;
}

}  // namespace novikov
