#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "novikov/classify.hpp"
#include "novikov/reps.hpp"

using namespace novikov;

namespace {

NovikovAlgebra alg(const std::string& label) { return catalog_entry(label).algebra; }
PMatrix M(const std::vector<std::vector<std::string>>& rows) { return matrix_from_strings(rows); }

}  // namespace

TEST_CASE("adjoint and dual-star representations of the 2-dim algebra") {
  auto t = alg("N6@l=-2");
  CHECK(check_representation(t, adjoint_rep(t)).passed());
  CHECK(check_representation(t, dual_star_rep(t)).passed());
  auto adj = adjoint_rep(t);
  CHECK(adj.l[1] == M({{"-2", "0"}, {"0", "1"}}));
  Representation swapped{adj.dim, adj.r, adj.l};
  auto r = check_representation(t, swapped);
  CHECK_FALSE(r.passed());
  const Check* left = r.find("rep-left");
  REQUIRE(left);
  CHECK(left->status == Status::Fail);
  bool at_21 = false;
  for (const auto& w : left->witnesses)
    if (w.at == std::vector<std::size_t>{1, 0}) at_21 = true;
  CHECK(at_21);
}

TEST_CASE("small representation examples") {
  auto triv = NovikovAlgebra::trivial(2);
  for (const auto& m : adjoint_rep(triv).l) CHECK(is_zero(m));
  for (const auto& m : dual_star_rep(triv).r) CHECK(is_zero(m));
  auto one = algebra_from_rules("one", {"e"}, {{1, 1, "e"}});
  auto d = dual_star_rep(one);
  CHECK(d.l[0](0, 0) == Poly(-2));
  CHECK(d.r[0](0, 0) == Poly(1));
  auto a7 = alg("A7@l=-2");
  CHECK(PVector(adjoint_rep(a7).r[1] * unit(3, 2)) == PVector(unit(3, 0) * Poly(-2)));
  CHECK_THROWS_AS(check_representation(a7, Representation{2, {}, {}}), std::invalid_argument);
}

TEST_CASE("adjoint and dual-star pass over the whole catalog") {
  for (const auto& e : catalog()) {
    INFO(e.label);
    CHECK(check_representation(e.algebra, adjoint_rep(e.algebra)).passed());
    CHECK(check_representation(e.algebra, dual_star_rep(e.algebra)).passed());
  }
}

TEST_CASE("theta isomorphism") {
  auto t = catalog_quadratic("Thm3.4", {{"k", 0}, {"s", 1}});
  auto r = theta_isomorphism(t);
  CHECK(r.theta == M({{"0", "1"}, {"1", "0"}}));
  CHECK(r.report.passed());
  auto triv = make_quadratic(NovikovAlgebra::trivial(3), PMatrix(PMatrix::Identity(3, 3)));
  auto tr = theta_isomorphism(triv);
  CHECK(tr.theta == PMatrix(PMatrix::Identity(3, 3)));
  CHECK(tr.report.passed());
  auto a7 = catalog_quadratic("A7@l=-2", {{"k", 1}, {"t", 0}});
  auto ar = theta_isomorphism(a7);
  CHECK(ar.theta == a7.metric);
  CHECK(ar.report.passed());
  // a non-invariant metric breaks the intertwining
  QuadraticNovikov fake{alg("N6@l=-2"), PMatrix(PMatrix::Identity(2, 2)), {}, {}};
  CHECK_FALSE(theta_isomorphism(fake).report.passed());
}

TEST_CASE("theta residuals vanish on parametric families") {
  auto a7 = catalog_entry("A7@l=-2");
  QuadraticNovikov q{a7.algebra, a7.family->matrix, a7.family->constraints, {}};
  CHECK(theta_isomorphism(q).report.passed());
  auto ex = catalog_entry("Ex4.8");
  QuadraticNovikov qe{ex.algebra, ex.family->matrix, {}, {}};
  CHECK(theta_isomorphism(qe).report.passed());
}
