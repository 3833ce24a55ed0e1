#pragma once

#include "novikov/forms.hpp"

#include <optional>

namespace novikov {

struct CatalogEntry {
  std::string label;
  std::string description;
  NovikovAlgebra algebra;
  std::optional<FormFamily> family;  // as published; recomputed families are compared against it
};

// Stable labels: T1 T2 T3 N1..N6 N6@l=-2 A7@l=-2 C5@l=-2 D6@l=-1/2 Thm3.4 Ex4.8
const std::vector<CatalogEntry>& catalog();
// Throws std::invalid_argument for an unknown label.
const CatalogEntry& catalog_entry(const std::string& label);

// Builds an algebra from entries (i, j, "linear expression in e1..en"), 1-based.
struct ProductRule {
  std::size_t i, j;
  std::string value;
};
NovikovAlgebra algebra_from_rules(const std::string& name, const std::vector<std::string>& basis,
                                  const std::vector<ProductRule>& rules, std::vector<std::string> params = {},
                                  ConstraintSet constraints = {});
PMatrix matrix_from_strings(const std::vector<std::vector<std::string>>& rows);

// Catalog quadratic algebras with parameters instantiated, e.g. for structure tests.
QuadraticNovikov catalog_quadratic(const std::string& label, const Assignment& at);

struct FamilyMatch {
  bool matches = false;
  std::string detail;
};
// Equal up to renaming parameters and rescaling them by nonzero rationals.
FamilyMatch compare_families(const PMatrix& published, const std::vector<std::string>& published_params,
                             const std::vector<PMatrix>& computed_basis);

Report verify_theorem_2dim();
Report verify_table2();

struct IsoCheck {
  bool iso = false;
  Report report;  // ids: invertible, multiplicative, isometric
};
// m maps coordinates of q1 to coordinates of q2.
IsoCheck check_iso_quadratic(const QuadraticNovikov& q1, const QuadraticNovikov& q2, const QMatrix& m);

struct AuditMatch {
  std::string hypothesis;  // "identity", "annihilated", "case-1" .. "case-6"
  std::string detail;
  bool degenerate_confirmed = false;
};
struct Audit {
  std::vector<AuditMatch> matches;
  std::size_t form_space_dim = 0;
  Nonvanishing family_verdict = Nonvanishing::IdenticallyZero;
  Report report;
};
// Presented-basis diagnostic of the elimination patterns; not a basis-independent proof.
Audit degenerate_case_audit(const NovikovAlgebra& a);

}  // namespace novikov
