#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "novikov/classify.hpp"

using namespace novikov;

namespace {

PMatrix M(const std::vector<std::vector<std::string>>& rows) { return matrix_from_strings(rows); }
Poly P(const char* s) { return parse_poly(s).value; }

QMatrix Q(std::initializer_list<std::initializer_list<int>> rows) {
  QMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (int x : r) m(i, j++) = Rational(x);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("catalog") {
  auto n6 = catalog_entry("N6@l=-2").algebra;
  CHECK(n6.product(0, 1) == PVector(unit(2, 0)));
  CHECK(n6.product(1, 0) == PVector(unit(2, 0) * Poly(-2)));
  CHECK(n6.product(1, 1) == PVector(unit(2, 1)));
  auto d6 = catalog_entry("D6@l=-1/2").algebra;
  CHECK(d6.product(2, 0) == PVector(unit(3, 0) * P("-1/2")));
  CHECK(d6.product(2, 1) == PVector(unit(3, 1) * Poly(-2)));
  CHECK(d6.product(2, 2) == PVector(unit(3, 2)));
  auto ex = catalog_entry("Ex4.8");
  CHECK(ex.algebra.dim() == 4);
  CHECK(ex.algebra.params == std::vector<std::string>{"s"});
  CHECK_THROWS_AS(catalog_entry("A99"), std::invalid_argument);
  for (const auto& e : catalog()) {
    INFO(e.label);
    CHECK(check_novikov(e.algebra).passed());
  }
}

TEST_CASE("stored families: the 3-dim ones and Ex4.8 are invariant, the 2-dim one only at k = 0") {
  for (const auto& e : catalog()) {
    if (!e.family) continue;
    INFO(e.label);
    auto r = invariance_residual(e.algebra, e.family->matrix);
    if (e.label == "Thm3.4") {
      CHECK_FALSE(r.is_zero());
      CHECK(invariance_residual(e.algebra, evaluate(e.family->matrix, {{"k", 0}})).is_zero());
    } else {
      CHECK(r.is_zero());
    }
  }
}

TEST_CASE("compare_families") {
  auto basis = invariant_form_space(catalog_entry("A7@l=-2").algebra);
  auto m = compare_families(M({{"0", "0", "k"}, {"0", "k", "0"}, {"k", "0", "t"}}), {"k", "t"}, basis);
  CHECK(m.matches);
  // renamed and rescaled parameters
  CHECK(compare_families(M({{"0", "0", "2*a"}, {"0", "2*a", "0"}, {"2*a", "0", "-b"}}), {"a", "b"}, basis).matches);
  CHECK_FALSE(compare_families(M({{"0", "0", "k"}, {"0", "0", "0"}, {"k", "0", "t"}}), {"k", "t"}, basis).matches);
  CHECK_FALSE(compare_families(M({{"0", "0", "k"}, {"0", "k", "0"}, {"k", "0", "0"}}), {"k"}, basis).matches);
  CHECK_FALSE(compare_families(M({{"0", "0", "k^2"}, {"0", "k", "0"}, {"k", "0", "t"}}), {"k", "t"}, basis).matches);
}

TEST_CASE("2-dim classification") {
  auto r = verify_theorem_2dim();
  CHECK(r.find("T1")->status == Status::Info);
  CHECK(r.find("T1")->value.find("trivial algebra, excluded") != std::string::npos);
  for (const char* label : {"T2", "T3", "N1", "N2", "N3", "N4", "N5", "N6"}) {
    INFO(label);
    CHECK(r.find(label)->status == Status::Pass);
  }
  CHECK(r.find("N1")->value.find("dim 0") != std::string::npos);
  CHECK(r.find("only-N6@l=-2")->status == Status::Pass);
  CHECK(r.find("N6@l=-2 nondegenerate")->status == Status::Pass);
  // the recomputed space at l = -2 is {b12 = s} only: b11 = k is not invariant for k != 0
  auto fam = r.find("N6@l=-2 family");
  CHECK(fam->status == Status::Fail);
  CHECK(fam->value.find("computed space has dimension 1") != std::string::npos);
  auto n6 = invariant_form_space(catalog_entry("N6@l=-2").algebra);
  REQUIRE(n6.size() == 1);
  CHECK(det(make_family(n6, {"s"}).matrix) == P("-s^2"));
}

TEST_CASE("3-dim table") {
  auto r = verify_table2();
  CHECK(r.passed());
  CHECK(r.checks.size() == 6);
  CHECK(invariant_form_space(catalog_entry("A7@l=-2").algebra).size() == 2);
  CHECK(invariant_form_space(catalog_entry("C5@l=-2").algebra).size() == 2);
  CHECK(invariant_form_space(catalog_entry("D6@l=-1/2").algebra).size() == 1);
  CHECK(r.find("D6@l=-1/2 det")->value.find("2*s^3") != std::string::npos);
}

TEST_CASE("check_iso_quadratic") {
  auto t = catalog_quadratic("Thm3.4", {{"k", 0}, {"s", 1}});
  CHECK(check_iso_quadratic(t, t, Q({{1, 0}, {0, 1}})).iso);
  auto t2 = catalog_quadratic("Thm3.4", {{"k", 0}, {"s", 2}});
  auto r = check_iso_quadratic(t2, t, Q({{2, 0}, {0, 1}}));
  CHECK(r.iso);
  // same witness over the stated (non-invariant for k != 0) metrics, checked as raw structures
  const auto& a = catalog_entry("Thm3.4").algebra;
  QuadraticNovikov b42{a, M({{"4", "2"}, {"2", "0"}}), {}, {}}, b11{a, M({{"1", "1"}, {"1", "0"}}), {}, {}};
  CHECK(check_iso_quadratic(b42, b11, Q({{2, 0}, {0, 1}})).iso);
  auto swap = check_iso_quadratic(t, t, Q({{0, 1}, {1, 0}}));
  CHECK_FALSE(swap.iso);
  CHECK(swap.report.find("multiplicative")->status == Status::Fail);
  auto sing = check_iso_quadratic(t, t, Q({{1, 0}, {0, 0}}));
  CHECK(sing.report.find("invertible")->status == Status::Fail);
  auto scaled = check_iso_quadratic(t, t, Q({{3, 0}, {0, 1}}));
  CHECK(scaled.report.find("multiplicative")->status == Status::Pass);
  CHECK(scaled.report.find("isometric")->status == Status::Fail);
  CHECK_THROWS_AS(check_iso_quadratic(t, catalog_quadratic("D6@l=-1/2", {{"s", 1}}), Q({{1, 0}, {0, 1}})), std::invalid_argument);
}

TEST_CASE("degenerate case audit") {
  auto n3 = degenerate_case_audit(catalog_entry("N3").algebra);
  REQUIRE(!n3.matches.empty());
  CHECK(n3.matches[0].hypothesis == "identity");
  CHECK(n3.matches[0].detail.find("e1") != std::string::npos);
  CHECK(n3.matches[0].degenerate_confirmed);
  CHECK(n3.report.find("scope")->value.find("presented-basis diagnostic") != std::string::npos);

  auto t2 = degenerate_case_audit(catalog_entry("T2").algebra);
  REQUIRE(t2.matches.size() == 1);
  CHECK(t2.matches[0].hypothesis == "annihilated");
  CHECK(t2.matches[0].detail.find("e2") != std::string::npos);
  CHECK(t2.matches[0].degenerate_confirmed);

  auto c1 = degenerate_case_audit(algebra_from_rules("c1", NovikovAlgebra::default_basis(3), {{1, 1, "e2"}}));
  bool case1 = false;
  for (const auto& m : c1.matches) case1 = case1 || (m.hypothesis == "case-1" && m.degenerate_confirmed);
  CHECK(case1);

  // C5 at l = 1 falls under case 2 (m = 1)
  auto c5l1 = algebra_from_rules("c5", NovikovAlgebra::default_basis(3), {{1, 3, "e1"}, {3, 1, "e1"}, {3, 3, "e3"}});
  if (check_novikov(c5l1).passed()) {
    auto a = degenerate_case_audit(c5l1);
    bool any = false;
    for (const auto& m : a.matches) any = any || m.degenerate_confirmed;
    CHECK(any);
  }

  // the quadratic 3-dim cases match no pattern
  for (const char* label : {"A7@l=-2", "D6@l=-1/2"}) {
    auto a = degenerate_case_audit(catalog_entry(label).algebra);
    INFO(label);
    CHECK(a.matches.empty());
    CHECK(a.family_verdict != Nonvanishing::IdenticallyZero);
  }
  auto n6 = degenerate_case_audit(catalog_entry("N6@l=-2").algebra);
  CHECK(n6.matches.empty());
}

TEST_CASE("identity or annihilated vector forces degeneracy across the catalog") {
  std::size_t hits = 0;
  for (const auto& e : catalog()) {
    if (!e.algebra.is_concrete()) continue;
    auto a = degenerate_case_audit(e.algebra);
    for (const auto& m : a.matches) {
      if (m.hypothesis != "identity" && m.hypothesis != "annihilated") continue;
      ++hits;
      INFO(e.label);
      CHECK(m.degenerate_confirmed);
    }
  }
  CHECK(hits >= 7);
}
