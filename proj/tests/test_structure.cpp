#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "novikov/classify.hpp"
#include "novikov/structure.hpp"

#include <random>

using namespace novikov;

namespace {

PMatrix M(const std::vector<std::vector<std::string>>& rows) { return matrix_from_strings(rows); }
Subspace span(Eigen::Index n, std::vector<std::size_t> u) { return Subspace::span_of(n, u); }

QuadraticNovikov a7() { return catalog_quadratic("A7@l=-2", {{"k", 1}, {"t", 0}}); }
QuadraticNovikov two_dim() { return catalog_quadratic("Thm3.4", {{"k", 0}, {"s", 1}}); }

QuadraticNovikov orthogonal_sum(const std::vector<QuadraticNovikov>& parts) {
  NovikovAlgebra a = parts[0].algebra;
  PMatrix b = parts[0].metric;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    // rename so basis names stay distinct
    NovikovAlgebra next(parts[i].algebra.name(), NovikovAlgebra::default_basis(parts[i].algebra.dim(), "f" + std::to_string(i) + "_"));
    for (std::size_t x = 0; x < next.dim(); ++x)
      for (std::size_t y = 0; y < next.dim(); ++y) next.set_product(x, y, parts[i].algebra.product(x, y));
    a = direct_sum(a, next);
    PMatrix nb = PMatrix::Zero(b.rows() + parts[i].metric.rows(), b.cols() + parts[i].metric.cols());
    nb.topLeftCorner(b.rows(), b.cols()) = b;
    nb.bottomRightCorner(parts[i].metric.rows(), parts[i].metric.cols()) = parts[i].metric;
    b = nb;
  }
  return make_quadratic(a, b);
}

}  // namespace

TEST_CASE("perp examples") {
  CHECK(same_subspace(perp(a7(), span(3, {0})), span(3, {0, 1})));
  CHECK(perp(a7(), Subspace::whole(3)).dim() == 0);
  CHECK(same_subspace(perp(two_dim(), span(2, {0})), span(2, {0})));
  auto param = catalog_entry("A7@l=-2");
  QuadraticNovikov sym{param.algebra, param.family->matrix, {}, {}};
  CHECK_THROWS_WITH_AS(perp(sym, span(3, {0})), doctest::Contains("--set"), std::invalid_argument);
}

TEST_CASE("perp invariants over concrete catalog metrics") {
  std::vector<QuadraticNovikov> qs = {a7(), two_dim(), catalog_quadratic("C5@l=-2", {{"k", 2}, {"s", -1}}),
                                      catalog_quadratic("D6@l=-1/2", {{"s", 3}}), catalog_quadratic("Ex4.8", {{"s", 0}})};
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const auto& q : qs) {
    const auto n = q.n();
    for (int trial = 0; trial < 20; ++trial) {
      QMatrix w(n, 1 + trial % static_cast<int>(n));
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = Rational(coef(rng));
      QMatrix cs = column_space(w);
      if (cs.cols() == 0) continue;
      Subspace W(cs);
      Subspace P = perp(q, W);
      CHECK(W.dim() + P.dim() == n);
      CHECK(same_subspace(perp(q, P), W));
      CHECK(is_zero(QMatrix(cs.transpose() * q.rational_metric() * P.rational_basis())));
    }
    for (std::size_t i = 0; i < q.algebra.dim(); ++i) {
      Subspace I = ideal_generated(q.algebra, QMatrix(to_rational(unit(q.algebra.dim(), i))));
      CHECK(subspace_kind(q.algebra, I).kind == SubspaceKind::Ideal);
      CHECK(subspace_kind(q.algebra, perp(q, I)).kind == SubspaceKind::Ideal);
    }
  }
}

TEST_CASE("decompose examples") {
  auto triv = make_quadratic(NovikovAlgebra::trivial(2), PMatrix(PMatrix::Identity(2, 2)));
  auto d = decompose(triv);
  CHECK(d.factors.size() == 2);
  for (const auto& f : d.factors) CHECK(f.dim() == 1);
  CHECK(d.report.passed());
  auto one = decompose(a7());
  REQUIRE(one.factors.size() == 1);
  CHECK(one.factors[0].dim() == 3);
  auto c5 = decompose(catalog_quadratic("C5@l=-2", {{"k", 1}, {"s", 1}}));
  REQUIRE(c5.factors.size() == 2);
  CHECK((same_subspace(c5.factors[0], span(3, {1})) || same_subspace(c5.factors[1], span(3, {1}))));
  auto dbl = orthogonal_sum({two_dim(), two_dim()});
  auto dd = decompose(dbl);
  REQUIRE(dd.factors.size() == 2);
  bool first = same_subspace(dd.factors[0], span(4, {0, 1})) || same_subspace(dd.factors[1], span(4, {0, 1}));
  bool second = same_subspace(dd.factors[0], span(4, {2, 3})) || same_subspace(dd.factors[1], span(4, {2, 3}));
  CHECK(first);
  CHECK(second);
  const Check* minimal = dd.report.find("minimality");
  REQUIRE(minimal);
  CHECK(minimal->status == Status::Info);
}

TEST_CASE("decompose recovers orthogonal sums of catalog algebras") {
  // C5 is left out: e2 spans a central nondegenerate ideal, so it splits further
  std::vector<QuadraticNovikov> pool = {two_dim(), a7(), catalog_quadratic("D6@l=-1/2", {{"s", 1}}),
                                        catalog_quadratic("Thm3.4", {{"k", 0}, {"s", -2}})};
  std::mt19937_64 rng(2016);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t count = 2 + static_cast<std::size_t>(trial % 2);
    std::vector<QuadraticNovikov> parts;
    std::vector<Subspace> blocks;
    Eigen::Index offset = 0, total = 0;
    for (std::size_t i = 0; i < count; ++i) parts.push_back(pool[rng() % pool.size()]);
    for (const auto& p : parts) total += p.n();
    for (const auto& p : parts) {
      std::vector<std::size_t> idx;
      for (Eigen::Index i = 0; i < p.n(); ++i) idx.push_back(static_cast<std::size_t>(offset + i));
      blocks.push_back(span(total, idx));
      offset += p.n();
    }
    auto q = orthogonal_sum(parts);
    auto d = decompose(q);
    INFO(trial);
    CHECK(d.report.passed());
    REQUIRE(d.factors.size() == blocks.size());
    for (const auto& b : blocks) {
      bool found = false;
      for (const auto& f : d.factors) found = found || same_subspace(f, b);
      CHECK(found);
    }
  }
}

TEST_CASE("isotropic ideal lines") {
  auto lines = isotropic_ideal_lines(a7());
  REQUIRE(lines.lines.size() == 1);
  CHECK(same_subspace(lines.lines[0], span(3, {0})));
  CHECK(lines.cones.empty());
  QuadraticNovikov bad{catalog_entry("Thm3.4").algebra, M({{"1", "1"}, {"1", "0"}}), {}, {}};
  CHECK(isotropic_ideal_lines(bad).lines.empty());
  auto hyper = make_quadratic(NovikovAlgebra::trivial(2), M({{"0", "1"}, {"1", "0"}}));
  auto cone = isotropic_ideal_lines(hyper);
  CHECK(cone.lines.empty());
  REQUIRE(cone.cones.size() == 1);
  CHECK(cone.cones[0].form == parse_poly("2*v1*v2").value);
}

TEST_CASE("splitting examples") {
  auto s = splitting(a7(), span(3, {0}));
  CHECK(same_subspace(s.V, span(3, {2})));
  CHECK(same_subspace(s.S, span(3, {0, 2})));
  CHECK(same_subspace(s.Sperp, span(3, {1})));
  CHECK(same_subspace(splitting(catalog_quadratic("D6@l=-1/2", {{"s", 1}}), span(3, {1})).Sperp, span(3, {0})));
  CHECK(same_subspace(splitting(catalog_quadratic("C5@l=-2", {{"k", 1}, {"s", 1}}), span(3, {0})).Sperp, span(3, {1})));
  CHECK_THROWS_AS(splitting(a7(), Subspace::zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(splitting(a7(), span(3, {2})), std::invalid_argument);
  CHECK_THROWS_AS(splitting(a7(), span(3, {0, 2})), std::invalid_argument);
}

TEST_CASE("quotient examples") {
  auto w = quotient_quadratic(a7(), span(3, {0}));
  CHECK(w.quotient.algebra.dim() == 1);
  CHECK(w.quotient.algebra.is_trivial());
  CHECK(w.quotient.metric(0, 0) == Poly(1));
  auto whole = quotient_quadratic(two_dim(), Subspace::whole(2));
  CHECK(whole.quotient.algebra.dim() == 2);
  CHECK(whole.quotient.metric == two_dim().metric);
  auto dbl = orthogonal_sum({two_dim(), two_dim()});
  CHECK(quotient_quadratic(dbl, span(4, {0, 1})).quotient.algebra.dim() == 4);
  CHECK_THROWS_AS(quotient_quadratic(a7(), span(3, {2})), std::invalid_argument);
}
