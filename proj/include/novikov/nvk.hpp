#pragma once

#include "novikov/dext.hpp"

#include <stdexcept>

namespace novikov {

// Parse errors carry a 1-based line and column.
class NvkError : public std::invalid_argument {
 public:
  NvkError(std::size_t line, std::size_t column, const std::string& what)
      : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct NvkForm {
  std::string name;
  PMatrix matrix;
  friend bool operator==(const NvkForm&, const NvkForm&) = default;
};

struct NvkAlgebra {
  NovikovAlgebra algebra;
  std::vector<NvkForm> forms;
  friend bool operator==(const NvkAlgebra&, const NvkAlgebra&) = default;
};

// extend <A1> by <A2>; A1 empty for a T*-extension
struct NvkDext {
  std::string a1, a2;
  PMatrix tau;
  std::vector<PMatrix> mu, muP;
  BilinearTable phi, v, vP, lambda, gamma;
  friend bool operator==(const NvkDext&, const NvkDext&) = default;
};

struct NvkDocument {
  std::vector<NvkAlgebra> algebras;
  std::vector<std::string> params;
  ConstraintSet constraints;
  std::optional<NvkDext> dext;

  const NvkAlgebra& algebra(const std::string& name) const;  // throws std::invalid_argument
  friend bool operator==(const NvkDocument&, const NvkDocument&) = default;
};

NvkDocument parse_nvk(std::string_view text);
std::string print_nvk(const NvkDocument& doc);

// One-algebra documents from library values.
NvkDocument nvk_from_algebra(const NovikovAlgebra& a, const std::optional<PMatrix>& metric = std::nullopt,
                             const ConstraintSet& constraints = {});

// Document constraints after substituting `at`; constants are dropped.
// Throws std::invalid_argument when `at` makes one of them vanish.
ConstraintSet nvk_constraints(const NvkDocument& doc, const Assignment& at);

// "2*e1 - e3" over `basis`; errors are NvkError at line 1.
PVector parse_linear(std::string_view text, const std::vector<std::string>& basis);

// The named form (the first when empty) as a quadratic algebra, after substituting `at`.
// Throws std::invalid_argument when the algebra has no forms.
QuadraticNovikov nvk_quadratic(const NvkDocument& doc, const NvkAlgebra& block, const Assignment& at,
                               const std::string& form = {});
// The dext section as library data; A1 is the quadratic algebra of its first form.
DextData nvk_dext_data(const NvkDocument& doc, const Assignment& at);
// Requires dim A2 = 1.
Dim1DextData nvk_dim1_data(const DextData& d);
// Writes a DextData back as a document.
NvkDocument nvk_from_dext(const DextData& d);

}  // namespace novikov
