#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "novikov/classify.hpp"

#include <random>

using namespace novikov;

namespace {

NovikovAlgebra alg(const std::string& label) { return catalog_entry(label).algebra; }
Poly P(const char* s) { return parse_poly(s).value; }
PMatrix M(const std::vector<std::vector<std::string>>& rows) { return matrix_from_strings(rows); }

// symmetric form with all residuals vanishing, by direct expansion
bool invariant_by_expansion(const NovikovAlgebra& a, const PMatrix& b) {
  const auto n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Poly lhs, rhs;
        for (std::size_t m = 0; m < n; ++m) {
          lhs += a.product(i, j)(static_cast<Eigen::Index>(m)) * b(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
          rhs += b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m)) *
                 (a.product(i, k) + a.product(k, i))(static_cast<Eigen::Index>(m));
        }
        if (lhs != -rhs) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("invariance residual examples") {
  auto t = alg("N6@l=-2");
  CHECK(invariance_residual(t, M({{"0", "s"}, {"s", "0"}})).is_zero());
  CHECK(invariance_residual(NovikovAlgebra::trivial(3), PMatrix(PMatrix::Identity(3, 3))).is_zero());
  auto r = invariance_residual(t, PMatrix(PMatrix::Identity(2, 2)));
  CHECK(r(1, 1, 1) == Poly(3));
  CHECK_THROWS_AS(invariance_residual(t, PMatrix(PMatrix::Identity(3, 3))), std::invalid_argument);
}

TEST_CASE("published 2-dim family is invariant only on k = 0") {
  auto t = alg("Thm3.4");
  auto r = invariance_residual(t, catalog_entry("Thm3.4").family->matrix);
  bool some_nonzero = false;
  for (const auto& p : r.data) {
    if (p.is_zero()) continue;
    some_nonzero = true;
    // every residual is a rational multiple of k
    CHECK(p.substitute(Assignment{{"k", Rational(0)}}).is_zero());
    CHECK(p.total_degree() == 1);
  }
  CHECK(some_nonzero);
  CHECK(r(0, 1, 0) == P("k"));
}

TEST_CASE("invariant form spaces") {
  CHECK(invariant_form_space(NovikovAlgebra::trivial(3)).size() == 6);
  auto n6 = invariant_form_space(alg("N6@l=-2"));
  REQUIRE(n6.size() == 1);
  CHECK(n6[0] == M({{"0", "1"}, {"1", "0"}}));
  CHECK(invariant_form_space(alg("N1")).empty());
  for (const auto& e : catalog()) {
    INFO(e.label);
    for (const auto& b : invariant_form_space(e.algebra)) {
      CHECK(is_symmetric(b));
      CHECK(invariance_residual(e.algebra, b).is_zero());
      CHECK(invariant_by_expansion(e.algebra, b));
    }
  }
}

TEST_CASE("form space completeness against random invariant forms") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (const auto& e : catalog()) {
    if (!e.algebra.is_concrete()) continue;
    auto basis = invariant_form_space(e.algebra);
    const auto n = e.algebra.n();
    QMatrix span(n * n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
      QMatrix b = to_rational(basis[c]);
      span.col(static_cast<Eigen::Index>(c)) = Eigen::Map<QVector>(b.data(), n * n);
    }
    for (int trial = 0; trial < 25; ++trial) {
      // random combination of the basis plus a random symmetric perturbation on some trials
      QMatrix b = QMatrix::Zero(n, n);
      for (const auto& f : basis) b += to_rational(f) * Rational(coef(rng));
      bool perturb = trial % 2 == 1;
      if (perturb) {
        Eigen::Index i = trial % n, j = (trial / 2) % n;
        b(i, j) += 1;
        if (i != j) b(j, i) += 1;
      }
      bool invariant = invariance_residual(e.algebra, to_poly(b)).is_zero();
      QVector flat = Eigen::Map<QVector>(b.data(), n * n);
      INFO(e.label);
      if (invariant) CHECK(in_span(span, flat));
      if (!perturb) CHECK(invariant);
    }
  }
}

TEST_CASE("B(a∘a,a) vanishes for quadratic algebras") {
  std::vector<std::pair<std::string, Assignment>> cases = {
      {"Thm3.4", {{"k", 0}, {"s", 1}}},       {"A7@l=-2", {{"k", 1}, {"t", 0}}}, {"C5@l=-2", {{"k", 2}, {"s", -1}}},
      {"D6@l=-1/2", {{"s", 3}}},              {"Ex4.8", {{"s", 0}}},             {"Ex4.8", {{"s", 5}}}};
  for (const auto& [label, at] : cases) {
    auto q = catalog_quadratic(label, at);
    const auto n = q.n();
    PVector a(n);
    for (Eigen::Index i = 0; i < n; ++i) a(i) = Poly::variable("x" + std::to_string(i + 1));
    CHECK(bilinear(q.metric, q.algebra.mul(a, a), a).is_zero());
  }
}

TEST_CASE("nondegeneracy condition of published families") {
  auto a7 = catalog_entry("A7@l=-2").family.value();
  auto r = nondegeneracy_condition(a7);
  CHECK(r.det == P("-k^3"));
  CHECK(r.verdict.kind == Nonvanishing::GenericallyNonzero);
  auto c5 = nondegeneracy_condition(catalog_entry("C5@l=-2").family.value());
  CHECK(c5.det == P("-k^2*s"));
  CHECK(c5.verdict.kind == Nonvanishing::GenericallyNonzero);
  FormFamily zero;
  zero.matrix = PMatrix::Zero(2, 2);
  zero.params = {"p1"};
  CHECK(nondegeneracy_condition(zero).verdict.kind == Nonvanishing::IdenticallyZero);
  CHECK(nondegeneracy_condition(make_family({})).verdict.kind == Nonvanishing::IdenticallyZero);
}

TEST_CASE("check_quadratic") {
  auto t = alg("Thm3.4");
  CHECK(check_quadratic(t, M({{"0", "1"}, {"1", "0"}})).quadratic.has_value());
  auto bad = check_quadratic(alg("N3"), M({{"1", "0"}, {"0", "1"}}));
  CHECK_FALSE(bad.quadratic);
  CHECK(bad.report.find("invariant")->status == Status::Fail);
  CHECK(check_quadratic(NovikovAlgebra::trivial(2), PMatrix(PMatrix::Identity(2, 2))).quadratic.has_value());
  auto asym = check_quadratic(NovikovAlgebra::trivial(2), M({{"1", "1"}, {"0", "1"}}));
  CHECK(asym.report.find("symmetric")->status == Status::Fail);
  auto deg = check_quadratic(NovikovAlgebra::trivial(2), M({{"1", "1"}, {"1", "1"}}));
  CHECK(deg.report.find("nondegenerate")->status == Status::Fail);
  // parametric metric: nondegeneracy decided by constraints
  CHECK(check_quadratic(t, M({{"0", "s"}, {"s", "0"}}), {P("s")}).quadratic.has_value());
  auto unconstrained = check_quadratic(t, M({{"0", "s"}, {"s", "0"}}));
  CHECK(unconstrained.report.find("nondegenerate")->status == Status::Inconclusive);
  CHECK_THROWS_AS(check_quadratic(t, PMatrix(PMatrix::Identity(3, 3))), std::invalid_argument);
}

TEST_CASE("quasi-Frobenius from derivations") {
  auto triv = make_quadratic(NovikovAlgebra::trivial(2), PMatrix(PMatrix::Identity(2, 2)));
  auto r = quasi_frobenius_from_derivation(triv, M({{"0", "1"}, {"-1", "0"}}), QFMode::Derivation);
  // columns hold images: D e1 = -e2, so omega(e1,e2) = B(-e2,e2) = -1
  CHECK(r.omega == M({{"0", "-1"}, {"1", "0"}}));
  CHECK(r.quasi_frobenius);
  auto z = quasi_frobenius_from_derivation(triv, PMatrix(PMatrix::Zero(2, 2)), QFMode::Derivation);
  CHECK(is_zero(z.omega));
  CHECK(z.report.find("cocycle")->status == Status::Pass);
  CHECK_FALSE(z.quasi_frobenius);
  auto t = make_quadratic(alg("Thm3.4"), M({{"0", "1"}, {"1", "0"}}));
  // diag(1,0) is a derivation of the 2-dim algebra but is not skew-adjoint
  PMatrix d = M({{"1", "0"}, {"0", "0"}});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(is_zero(derivation_residual(t.algebra, d, i, j)));
  auto ders = derivation_space(t.algebra);
  REQUIRE(ders.size() == 1);
  CHECK(ders[0] == to_rational(d));
  CHECK_THROWS_WITH_AS(quasi_frobenius_from_derivation(t, d, QFMode::Derivation), doctest::Contains("skew-adjoint"),
                       std::domain_error);
  CHECK_THROWS_AS(quasi_frobenius_from_derivation(t, M({{"0", "1"}, {"0", "0"}}), QFMode::Derivation), std::domain_error);
}

TEST_CASE("derivation outputs satisfy the cocycle identity") {
  // trivial algebras: every B-skew map is a derivation
  for (int n = 2; n <= 4; ++n) {
    auto q = make_quadratic(NovikovAlgebra::trivial(static_cast<std::size_t>(n)), PMatrix(PMatrix::Identity(n, n)));
    PMatrix d = PMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        d(i, j) = Poly(i + j + 1);
        d(j, i) = Poly(-(i + j + 1));
      }
    auto r = quasi_frobenius_from_derivation(q, d, QFMode::Derivation);
    CHECK(r.report.find("antisymmetric")->status == Status::Pass);
    CHECK(r.report.find("cocycle")->status == Status::Pass);
  }
  // quadratic catalog algebras: search the derivation space for skew-adjoint members
  std::vector<std::pair<std::string, Assignment>> cases = {
      {"A7@l=-2", {{"k", 1}, {"t", 0}}}, {"C5@l=-2", {{"k", 1}, {"s", 1}}}, {"D6@l=-1/2", {{"s", 1}}}, {"Ex4.8", {{"s", 0}}}};
  for (const auto& [label, at] : cases) {
    auto q = catalog_quadratic(label, at);
    QMatrix b = q.rational_metric();
    auto ders = derivation_space(q.algebra);
    // skew-adjoint derivations: D^T B + B D = 0 restricted to the derivation span
    const auto n = q.n();
    QMatrix sys(n * n, static_cast<Eigen::Index>(ders.size()));
    for (std::size_t c = 0; c < ders.size(); ++c) {
      QMatrix s = ders[c].transpose() * b + b * ders[c];
      sys.col(static_cast<Eigen::Index>(c)) = Eigen::Map<QVector>(s.data(), n * n);
    }
    for (const auto& coeffs : kernel_basis(sys)) {
      QMatrix d = QMatrix::Zero(n, n);
      for (std::size_t c = 0; c < ders.size(); ++c) d += ders[c] * coeffs(static_cast<Eigen::Index>(c));
      auto r = quasi_frobenius_from_derivation(q, to_poly(d), QFMode::Derivation);
      INFO(label);
      CHECK(r.report.find("antisymmetric")->status == Status::Pass);
      CHECK(r.report.find("cocycle")->status == Status::Pass);
    }
  }
}
