#include "novikov/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace novikov {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Info: return "info";
  }
  return "?";
}

std::string Report::str() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << to_string(c.status) << "  " << c.id;
    if (!c.value.empty()) os << "  " << c.value;
    os << '\n';
    for (const auto& w : c.witnesses) os << "      " << w.text << '\n';
    if (c.violations > c.witnesses.size()) os << "      ... " << c.violations << " violations in total\n";
  }
  return os.str();
}

NovikovAlgebra::NovikovAlgebra(std::string name, std::vector<std::string> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
  std::set<std::string> seen;
  for (const auto& b : basis_)
    if (!seen.insert(b).second) throw std::invalid_argument("duplicate basis name '" + b + "'");
  table_.assign(dim() * dim(), PVector::Zero(n()));
}

std::vector<std::string> NovikovAlgebra::default_basis(std::size_t n, const std::string& prefix) {
  std::vector<std::string> b;
  for (std::size_t i = 1; i <= n; ++i) b.push_back(prefix + std::to_string(i));
  return b;
}

NovikovAlgebra NovikovAlgebra::trivial(std::size_t n, const std::string& prefix) {
  return NovikovAlgebra("trivial" + std::to_string(n), default_basis(n, prefix));
}

std::optional<std::size_t> NovikovAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] == name) return i;
  return std::nullopt;
}

void NovikovAlgebra::set_product(std::size_t i, std::size_t j, PVector v) {
  if (i >= dim() || j >= dim() || v.size() != n()) throw std::invalid_argument("product entry out of shape");
  table_[i * dim() + j] = std::move(v);
}

PVector NovikovAlgebra::mul(const PVector& x, const PVector& y) const {
  if (x.size() != n() || y.size() != n()) throw std::invalid_argument("vector dimension mismatch");
  PVector out = PVector::Zero(n());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (is_zero(x(static_cast<Eigen::Index>(i)))) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (is_zero(y(static_cast<Eigen::Index>(j)))) continue;
      const PVector& p = product(i, j);
      if (is_zero(p)) continue;
      Poly c = x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j));
      out += p * c;
    }
  }
  return out;
}

bool NovikovAlgebra::is_concrete() const {
  for (const auto& p : table_)
    if (!is_constant(p)) return false;
  return true;
}

bool NovikovAlgebra::is_trivial() const {
  for (const auto& p : table_)
    if (!is_zero(p)) return false;
  return true;
}

NovikovAlgebra NovikovAlgebra::substitute(const Assignment& at) const {
  NovikovAlgebra r = *this;
  for (auto& p : r.table_) p = evaluate(PMatrix(p), at);
  std::vector<std::string> keep;
  for (const auto& q : params)
    if (!at.count(q)) keep.push_back(q);
  r.params = keep;
  r.constraints = ConstraintSet{};
  for (const auto& c : constraints.polys()) {
    Poly v = c.substitute(at);
    if (v.is_zero()) throw std::domain_error("instantiation violates the constraint " + c.str() + " != 0");
    r.constraints.add(v);
  }
  return r;
}

bool operator==(const NovikovAlgebra& a, const NovikovAlgebra& b) {
  return a.basis_ == b.basis_ && a.table_ == b.table_;
}

PVector unit(std::size_t n, std::size_t i) {
  PVector v = PVector::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(i)) = Poly(1);
  return v;
}

std::string format_vector(const PVector& v, const std::vector<std::string>& basis) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Poly& c = v(i);
    if (c.is_zero()) continue;
    const std::string& name = basis[static_cast<std::size_t>(i)];
    bool neg = c.terms().size() == 1 && c.leading().coef.sign() < 0;
    Poly mag = neg ? -c : c;
    std::string coef;
    if (mag.terms().size() > 1)
      coef = "(" + mag.str() + ")*";
    else if (!(mag.is_constant() && mag.constant().is_one()))
      coef = mag.str() + "*";
    if (s.empty())
      s += (neg ? "-" : "") + coef + name;
    else
      s += (neg ? " - " : " + ") + coef + name;
  }
  return s.empty() ? "0" : s;
}

std::string format_vector(const QVector& v, const std::vector<std::string>& basis) {
  return format_vector(to_poly(v), basis);
}

std::string format_tuple(const std::vector<std::size_t>& at, const std::vector<std::string>& basis) {
  std::string s = "(";
  for (std::size_t i = 0; i < at.size(); ++i) {
    if (i) s += ",";
    s += at[i] < basis.size() ? basis[at[i]] : std::to_string(at[i]);
  }
  return s + ")";
}

PVector left_symmetry_residual(const NovikovAlgebra& a, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = a.dim();
  PVector ei = unit(n, i), ej = unit(n, j), ek = unit(n, k);
  return a.mul(a.product(i, j), ek) - a.mul(ei, a.product(j, k)) - a.mul(a.product(j, i), ek) +
         a.mul(ej, a.product(i, k));
}

PVector right_commutativity_residual(const NovikovAlgebra& a, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = a.dim();
  return a.mul(a.product(i, j), unit(n, k)) - a.mul(a.product(i, k), unit(n, j));
}

Report check_novikov(const NovikovAlgebra& a) {
  Report r;
  r.add("left-symmetry");
  r.add("right-commutativity");
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        PVector x = left_symmetry_residual(a, i, j, k);
        if (!is_zero(x)) r.checks[0].violate({i, j, k}, format_tuple({i, j, k}, a.basis()) + ": " + format_vector(x, a.basis()));
        PVector y = right_commutativity_residual(a, i, j, k);
        if (!is_zero(y)) r.checks[1].violate({i, j, k}, format_tuple({i, j, k}, a.basis()) + ": " + format_vector(y, a.basis()));
      }
  return r;
}

PVector star(const NovikovAlgebra& a, const PVector& x, const PVector& y) { return a.star(x, y); }

MultOperators mult_operators(const NovikovAlgebra& a) {
  MultOperators m;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    PMatrix L(a.n(), a.n()), R(a.n(), a.n());
    for (std::size_t j = 0; j < n; ++j) {
      L.col(static_cast<Eigen::Index>(j)) = a.product(i, j);
      R.col(static_cast<Eigen::Index>(j)) = a.product(j, i);
    }
    m.L.push_back(std::move(L));
    m.R.push_back(std::move(R));
  }
  return m;
}

std::vector<PMatrix> star_operators(const NovikovAlgebra& a) {
  auto m = mult_operators(a);
  std::vector<PMatrix> out;
  for (std::size_t i = 0; i < m.L.size(); ++i) out.push_back(m.L[i] + m.R[i]);
  return out;
}

Subspace::Subspace(PMatrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() > 0 && rank(basis_) != basis_.cols())
    throw std::invalid_argument("subspace spanning set is linearly dependent");
}

Subspace Subspace::span_of(Eigen::Index ambient, const std::vector<std::size_t>& units) {
  PMatrix b = PMatrix::Zero(ambient, static_cast<Eigen::Index>(units.size()));
  for (std::size_t k = 0; k < units.size(); ++k) b(static_cast<Eigen::Index>(units[k]), static_cast<Eigen::Index>(k)) = Poly(1);
  return Subspace(std::move(b));
}

std::string to_string(SubspaceKind k) {
  switch (k) {
    case SubspaceKind::NotSubalgebra: return "NotSubalgebra";
    case SubspaceKind::Subalgebra: return "Subalgebra";
    case SubspaceKind::Ideal: return "Ideal";
  }
  return "?";
}

KindResult subspace_kind(const NovikovAlgebra& a, const Subspace& s) {
  if (s.ambient() != a.n()) throw std::invalid_argument("subspace lives in the wrong ambient dimension");
  KindResult res;
  std::vector<Poly> assumptions;
  auto member = [&](const PVector& v) {
    if (is_zero(v)) return true;
    if (s.dim() == 0) return false;
    auto t = in_span(s.basis(), v);
    assumptions.insert(assumptions.end(), t.assumptions.begin(), t.assumptions.end());
    return t.member;
  };
  bool sub = true;
  for (Eigen::Index x = 0; x < s.dim() && sub; ++x)
    for (Eigen::Index y = 0; y < s.dim() && sub; ++y) sub = member(a.mul(s.basis().col(x), s.basis().col(y)));
  bool ideal = sub;
  for (Eigen::Index x = 0; x < s.dim() && ideal; ++x)
    for (std::size_t i = 0; i < a.dim() && ideal; ++i) {
      PVector e = unit(a.dim(), i);
      ideal = member(a.mul(s.basis().col(x), e)) && member(a.mul(e, s.basis().col(x)));
    }
  res.kind = ideal ? SubspaceKind::Ideal : (sub ? SubspaceKind::Subalgebra : SubspaceKind::NotSubalgebra);
  std::vector<Poly> seen;
  for (const auto& p : assumptions) {
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(p);
    auto v = nonvanishing_check(p, a.constraints);
    if (v.kind != Nonvanishing::GenericallyNonzero || v.sampled) res.unresolved.push_back(p);
  }
  res.inconclusive = !res.unresolved.empty();
  return res;
}

Quotient quotient(const NovikovAlgebra& a, const Subspace& ideal) {
  if (!is_constant(ideal.basis())) throw std::invalid_argument("quotient needs a parameter-free ideal basis");
  auto kind = subspace_kind(a, ideal);
  if (kind.kind != SubspaceKind::Ideal || kind.inconclusive) throw std::invalid_argument("quotient by a subspace that is not an ideal");
  QMatrix ib = ideal.rational_basis();
  Quotient q;
  q.complement = greedy_complement(ib);
  const Eigen::Index n = a.n(), m = q.complement.cols();
  QMatrix full(n, n);
  full << ib, q.complement;
  auto inv = inverse(full);
  if (!inv) throw std::logic_error("ideal and complement do not span");
  q.projection = inv->bottomRows(m);
  std::vector<std::string> names;
  for (Eigen::Index c = 0; c < m; ++c)
    for (Eigen::Index i = 0; i < n; ++i)
      if (!q.complement(i, c).is_zero()) names.push_back(a.basis()[static_cast<std::size_t>(i)]);
  q.algebra = NovikovAlgebra(a.name() + "/I", names);
  q.algebra.params = a.params;
  q.algebra.constraints = a.constraints;
  PMatrix proj = to_poly(q.projection);
  PMatrix comp = to_poly(q.complement);
  for (Eigen::Index x = 0; x < m; ++x)
    for (Eigen::Index y = 0; y < m; ++y)
      q.algebra.set_product(static_cast<std::size_t>(x), static_cast<std::size_t>(y), proj * a.mul(comp.col(x), comp.col(y)));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      PVector lhs = proj * a.product(i, j);
      PVector rhs = q.algebra.mul(proj.col(static_cast<Eigen::Index>(i)), proj.col(static_cast<Eigen::Index>(j)));
      if (lhs != rhs) throw std::logic_error("quotient projection is not multiplicative");
    }
  return q;
}

NovikovAlgebra direct_sum(const NovikovAlgebra& a, const NovikovAlgebra& b) {
  std::vector<std::string> names = a.basis();
  names.insert(names.end(), b.basis().begin(), b.basis().end());
  NovikovAlgebra s(a.name() + "+" + b.name(), names);  // throws on collision
  s.params = a.params;
  for (const auto& p : b.params)
    if (std::find(s.params.begin(), s.params.end(), p) == s.params.end()) s.params.push_back(p);
  s.constraints = a.constraints;
  s.constraints.merge(b.constraints);
  const Eigen::Index na = a.n(), nb = b.n();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      PVector v = PVector::Zero(na + nb);
      v.head(na) = a.product(i, j);
      s.set_product(i, j, v);
    }
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      PVector v = PVector::Zero(na + nb);
      v.tail(nb) = b.product(i, j);
      s.set_product(a.dim() + i, a.dim() + j, v);
    }
  return s;
}

std::optional<QVector> find_identity(const NovikovAlgebra& a) {
  if (!a.is_concrete()) throw std::domain_error("find_identity needs parameter-free structure constants");
  const Eigen::Index n = a.n();
  if (n == 0) return QVector(0);
  QMatrix M = QMatrix::Zero(2 * n * n, n);
  QVector b = QVector::Zero(2 * n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index m = 0; m < n; ++m) {
      Eigen::Index r1 = j * n + m, r2 = n * n + j * n + m;
      for (Eigen::Index k = 0; k < n; ++k) {
        M(r1, k) = a.product(static_cast<std::size_t>(k), static_cast<std::size_t>(j))(m).constant();
        M(r2, k) = a.product(static_cast<std::size_t>(j), static_cast<std::size_t>(k))(m).constant();
      }
      if (j == m) b(r1) = b(r2) = 1;
    }
  return solve(M, b);
}

}  // namespace novikov
