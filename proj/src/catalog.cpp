#include "novikov/classify.hpp"

#include <stdexcept>

namespace novikov {

PMatrix matrix_from_strings(const std::vector<std::vector<std::string>>& rows) {
  PMatrix m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_poly(rows[i][j]).value;
  return m;
}

NovikovAlgebra algebra_from_rules(const std::string& name, const std::vector<std::string>& basis,
                                  const std::vector<ProductRule>& rules, std::vector<std::string> params,
                                  ConstraintSet constraints) {
  NovikovAlgebra a(name, basis);
  a.params = std::move(params);
  a.constraints = std::move(constraints);
  for (const auto& rule : rules) {
    Poly expr = parse_poly(rule.value).value;
    PVector v = PVector::Zero(a.n());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::map<std::string, Poly> sub;
      for (std::size_t m = 0; m < basis.size(); ++m) sub[basis[m]] = Poly(m == k ? 1 : 0);
      // coefficient of basis[k]: the expression is linear in basis names
      Poly at1 = expr.substitute(sub);
      for (auto& [key, val] : sub) val = Poly(0);
      Poly at0 = expr.substitute(sub);
      v(static_cast<Eigen::Index>(k)) = at1 - at0;
    }
    a.set_product(rule.i - 1, rule.j - 1, v);
  }
  return a;
}

namespace {

CatalogEntry entry(std::string label, std::string description, NovikovAlgebra a) {
  a.set_name(label);
  return {std::move(label), std::move(description), std::move(a), std::nullopt};
}

FormFamily family(const std::vector<std::vector<std::string>>& rows, std::vector<std::string> params,
                  std::initializer_list<const char*> constraints) {
  FormFamily f;
  f.matrix = matrix_from_strings(rows);
  f.params = std::move(params);
  for (const auto* c : constraints) f.constraints.add(parse_poly(c).value);
  return f;
}

std::vector<CatalogEntry> build_catalog() {
  const auto b2 = NovikovAlgebra::default_basis(2);
  const auto b3 = NovikovAlgebra::default_basis(3);
  std::vector<CatalogEntry> c;
  c.push_back(entry("T1", "2-dim trivial", algebra_from_rules("T1", b2, {})));
  c.push_back(entry("T2", "2-dim, e1e1 = e2", algebra_from_rules("T2", b2, {{1, 1, "e2"}})));
  c.push_back(entry("T3", "2-dim, e2e1 = -e1", algebra_from_rules("T3", b2, {{2, 1, "-e1"}})));
  c.push_back(entry("N1", "2-dim", algebra_from_rules("N1", b2, {{1, 1, "e1"}, {2, 2, "e2"}})));
  c.push_back(entry("N2", "2-dim", algebra_from_rules("N2", b2, {{1, 1, "e1"}})));
  c.push_back(entry("N3", "2-dim, unital", algebra_from_rules("N3", b2, {{1, 1, "e1"}, {1, 2, "e2"}, {2, 1, "e2"}})));
  c.push_back(entry("N4", "2-dim", algebra_from_rules("N4", b2, {{1, 2, "e1"}, {2, 2, "e2"}})));
  c.push_back(entry("N5", "2-dim", algebra_from_rules("N5", b2, {{1, 2, "e1"}, {2, 2, "e2 + e1"}})));
  {
    ConstraintSet cs{parse_poly("l").value, parse_poly("l - 1").value};
    c.push_back(entry("N6", "2-dim, l != 0,1",
                      algebra_from_rules("N6", b2, {{1, 2, "e1"}, {2, 1, "l*e1"}, {2, 2, "e2"}}, {"l"}, cs)));
  }
  c.push_back(entry("N6@l=-2", "2-dim, N6 at l = -2",
                    algebra_from_rules("N6@l=-2", b2, {{1, 2, "e1"}, {2, 1, "-2*e1"}, {2, 2, "e2"}})));
  {
    auto e = entry("A7@l=-2", "3-dim quadratic", algebra_from_rules("A7", b3, {{2, 3, "e1"}, {3, 2, "-2*e1"}, {3, 3, "e2"}}));
    e.family = family({{"0", "0", "k"}, {"0", "k", "0"}, {"k", "0", "t"}}, {"k", "t"}, {"k^3"});
    c.push_back(e);
  }
  {
    auto e = entry("C5@l=-2", "3-dim quadratic", algebra_from_rules("C5", b3, {{1, 3, "e1"}, {3, 1, "-2*e1"}, {3, 3, "e3"}}));
    e.family = family({{"0", "0", "k"}, {"0", "s", "0"}, {"k", "0", "0"}}, {"k", "s"}, {"k^2*s"});
    c.push_back(e);
  }
  {
    auto e = entry("D6@l=-1/2", "3-dim quadratic",
                   algebra_from_rules("D6", b3,
                                      {{1, 1, "e2"}, {1, 3, "e1"}, {2, 3, "e2"}, {3, 1, "-1/2*e1"}, {3, 2, "-2*e2"}, {3, 3, "e3"}}));
    e.family = family({{"-2*s", "0", "0"}, {"0", "0", "s"}, {"0", "s", "0"}}, {"s"}, {"s^3"});
    c.push_back(e);
  }
  {
    auto e = entry("Thm3.4", "2-dim quadratic family as published",
                   algebra_from_rules("Thm3.4", b2, {{1, 2, "e1"}, {2, 1, "-2*e1"}, {2, 2, "e2"}}));
    e.family = family({{"k", "s"}, {"s", "0"}}, {"k", "s"}, {"s"});
    c.push_back(e);
  }
  {
    std::vector<std::string> b4 = {"e", "e1", "e2", "estar"};
    auto a = algebra_from_rules("Ex4.8", b4,
                                {{1, 1, "e + 2*e2 + s*estar"},
                                 {1, 4, "-2*estar"},
                                 {4, 1, "estar"},
                                 {1, 2, "2*e1 - 4*estar"},
                                 {1, 3, "-e2"},
                                 {2, 1, "-e1 + 2*estar"},
                                 {3, 1, "-e2"},
                                 {2, 3, "e1 - estar"},
                                 {3, 2, "-2*e1 + 2*estar"},
                                 {3, 3, "e2"}},
                                {"s"});
    auto e = entry("Ex4.8", "4-dim double extension of the 2-dim quadratic algebra", a);
    e.family = family({{"-s", "0", "0", "1"}, {"0", "0", "1", "0"}, {"0", "1", "0", "0"}, {"1", "0", "0", "0"}}, {"s"}, {});
    c.push_back(e);
  }
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

const CatalogEntry& catalog_entry(const std::string& label) {
  for (const auto& e : catalog())
    if (e.label == label) return e;
  throw std::invalid_argument("unknown catalog label '" + label + "'");
}

QuadraticNovikov catalog_quadratic(const std::string& label, const Assignment& at) {
  const auto& e = catalog_entry(label);
  if (!e.family) throw std::invalid_argument(label + " carries no metric family");
  ConstraintSet cs;
  for (const auto& p : e.family->constraints.polys()) {
    Poly v = p.substitute(at);
    if (v.is_zero()) throw std::domain_error("instantiation violates " + p.str() + " != 0");
    cs.add(v);
  }
  return make_quadratic(e.algebra.substitute(at), evaluate(e.family->matrix, at), cs);
}

}  // namespace novikov
