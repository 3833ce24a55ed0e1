#pragma once

#include "novikov/linalg.hpp"
#include "novikov/nonvanishing.hpp"
#include "novikov/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace novikov {

// Structure constants: product(i,j) holds the coordinates of e_i∘e_j.
class NovikovAlgebra {
 public:
  NovikovAlgebra() = default;
  NovikovAlgebra(std::string name, std::vector<std::string> basis);
  static NovikovAlgebra trivial(std::size_t n, const std::string& prefix = "e");
  // basis e1..en
  static std::vector<std::string> default_basis(std::size_t n, const std::string& prefix = "e");

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  std::size_t dim() const { return basis_.size(); }
  Eigen::Index n() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<std::string>& basis() const { return basis_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  const PVector& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  void set_product(std::size_t i, std::size_t j, PVector v);
  PVector mul(const PVector& x, const PVector& y) const;
  PVector star(const PVector& x, const PVector& y) const { return mul(x, y) + mul(y, x); }

  std::vector<std::string> params;
  ConstraintSet constraints;

  bool is_concrete() const;
  bool is_trivial() const;
  NovikovAlgebra substitute(const Assignment& at) const;

  friend bool operator==(const NovikovAlgebra& a, const NovikovAlgebra& b);

 private:
  std::string name_;
  std::vector<std::string> basis_;
  std::vector<PVector> table_;
};

// Coordinates of a basis vector.
PVector unit(std::size_t n, std::size_t i);

// "2*e1 - (k + 1)*e2", or "0".
std::string format_vector(const PVector& v, const std::vector<std::string>& basis);
std::string format_vector(const QVector& v, const std::vector<std::string>& basis);
std::string format_tuple(const std::vector<std::size_t>& at, const std::vector<std::string>& basis);

Report check_novikov(const NovikovAlgebra& a);
PVector left_symmetry_residual(const NovikovAlgebra& a, std::size_t i, std::size_t j, std::size_t k);
PVector right_commutativity_residual(const NovikovAlgebra& a, std::size_t i, std::size_t j, std::size_t k);

PVector star(const NovikovAlgebra& a, const PVector& x, const PVector& y);

struct MultOperators {
  std::vector<PMatrix> L, R;  // L[i] column j = e_i∘e_j, R[i] column j = e_j∘e_i
};
MultOperators mult_operators(const NovikovAlgebra& a);
// L⋆(e_i) = L(e_i) + R(e_i)
std::vector<PMatrix> star_operators(const NovikovAlgebra& a);

// Columns span the subspace; they must be independent.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(PMatrix basis);  // throws std::invalid_argument on dependent columns
  explicit Subspace(const QMatrix& basis) : Subspace(to_poly(basis)) {}
  static Subspace zero(Eigen::Index ambient) { return Subspace(PMatrix(ambient, 0)); }
  static Subspace whole(Eigen::Index ambient) { return Subspace(PMatrix(PMatrix::Identity(ambient, ambient))); }
  static Subspace span_of(Eigen::Index ambient, const std::vector<std::size_t>& units);

  const PMatrix& basis() const { return basis_; }
  QMatrix rational_basis() const { return to_rational(basis_); }
  Eigen::Index ambient() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }

 private:
  PMatrix basis_;
};

enum class SubspaceKind { NotSubalgebra, Subalgebra, Ideal };
std::string to_string(SubspaceKind k);

struct KindResult {
  SubspaceKind kind = SubspaceKind::NotSubalgebra;
  bool inconclusive = false;  // depends on a parametric rank not certified by the constraints
  std::vector<Poly> unresolved;
};
KindResult subspace_kind(const NovikovAlgebra& a, const Subspace& s);

struct Quotient {
  NovikovAlgebra algebra;
  QMatrix complement;  // n x m, greedy standard basis vectors
  QMatrix projection;  // m x n, kills the ideal
};
// Throws std::invalid_argument unless `ideal` is an ideal with a parameter-free basis.
Quotient quotient(const NovikovAlgebra& a, const Subspace& ideal);

// Throws std::invalid_argument on a basis-name collision.
NovikovAlgebra direct_sum(const NovikovAlgebra& a, const NovikovAlgebra& b);

// Two-sided identity; throws std::domain_error for parametric algebras.
std::optional<QVector> find_identity(const NovikovAlgebra& a);

}  // namespace novikov
