#pragma once

#include "novikov/algebra.hpp"

namespace novikov {

// n x n x n array of scalars, entry (i,j,k) at (i*n + j)*n + k.
struct Tensor3 {
  std::size_t n = 0;
  std::vector<Poly> data;
  const Poly& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data[(i * n + j) * n + k]; }
  Poly& operator()(std::size_t i, std::size_t j, std::size_t k) { return data[(i * n + j) * n + k]; }
  bool is_zero() const;
};

bool is_symmetric(const PMatrix& m);
bool is_antisymmetric(const PMatrix& m);

// B(x,y) = x^T B y
Poly bilinear(const PMatrix& b, const PVector& x, const PVector& y);

// (i,j,k) -> B(e_i∘e_j, e_k) + B(e_j, e_i⋆e_k)
Tensor3 invariance_residual(const NovikovAlgebra& a, const PMatrix& b);

// Basis of the symmetric solutions of the invariance equations (generic in A's parameters).
std::vector<PMatrix> invariant_form_space(const NovikovAlgebra& a);

struct FormFamily {
  PMatrix matrix;
  std::vector<std::string> params;
  ConstraintSet constraints;
};
// sum of names[i] * basis[i]; fresh names default to p1, p2, ...
FormFamily make_family(const std::vector<PMatrix>& basis, std::vector<std::string> names = {});

struct Nondegeneracy {
  Poly det;
  NonvanishingVerdict verdict;
};
Nondegeneracy nondegeneracy_condition(const FormFamily& family);

struct QuadraticNovikov {
  NovikovAlgebra algebra;
  PMatrix metric;
  ConstraintSet constraints;  // algebra constraints plus those of the metric
  NonvanishingVerdict nondegenerate;

  Eigen::Index n() const { return algebra.n(); }
  bool is_concrete() const { return algebra.is_concrete() && novikov::is_constant(metric); }
  QMatrix rational_metric() const { return to_rational(metric); }
  QuadraticNovikov substitute(const Assignment& at) const;
};

struct QuadraticCheck {
  std::optional<QuadraticNovikov> quadratic;
  Report report;  // ids: novikov, symmetric, invariant, nondegenerate
};
QuadraticCheck check_quadratic(const NovikovAlgebra& a, const PMatrix& b, const ConstraintSet& extra = {});
// check_quadratic or throw std::domain_error carrying the report text
QuadraticNovikov make_quadratic(const NovikovAlgebra& a, const PMatrix& b, const ConstraintSet& extra = {});

PVector derivation_residual(const NovikovAlgebra& a, const PMatrix& d, std::size_t i, std::size_t j);
PVector half_twisted_residual(const NovikovAlgebra& a, const PMatrix& d, std::size_t i, std::size_t j);
// Derivations of a parameter-free algebra, as a basis of matrices.
std::vector<QMatrix> derivation_space(const NovikovAlgebra& a);

enum class QFMode { Derivation, HalfTwisted };

struct QFResult {
  PMatrix omega;
  Report report;  // ids: antisymmetric, cocycle, nondegenerate
  bool quasi_frobenius = false;
};
// Throws std::domain_error when D violates its mode's equation or is not skew-adjoint.
QFResult quasi_frobenius_from_derivation(const QuadraticNovikov& q, const PMatrix& d, QFMode mode);

}  // namespace novikov
