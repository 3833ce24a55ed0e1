#pragma once

#include "novikov/forms.hpp"

namespace novikov {

// All operations here need a parameter-free metric and algebra; they throw
// std::invalid_argument otherwise.

// {a : B(a,w) = 0 for all w in W}
Subspace perp(const QuadraticNovikov& q, const Subspace& w);

// The algebra and metric carried by a subalgebra, in the coordinates of `basis`.
QuadraticNovikov restrict_to(const QuadraticNovikov& q, const QMatrix& basis);

struct Decomposition {
  std::vector<Subspace> factors;  // ideals, pairwise orthogonal, each nondegenerate
  Report report;
};
// Factors are minimal only relative to the implemented ideal search.
Decomposition decompose(const QuadraticNovikov& q);

// Every line of `space` on which `form` vanishes is an isotropic ideal.
// `form` is B(v,v) written in the coordinates v1.. of `space`.
struct Cone {
  Subspace space;
  Poly form;
};

struct IsotropicLines {
  std::vector<Subspace> lines;
  std::vector<Cone> cones;  // eigenspaces of dimension > 1, or the whole space when all operators vanish
};
IsotropicLines isotropic_ideal_lines(const QuadraticNovikov& q);

// Lines spanned by common rational eigenvectors of all L(e_i), R(e_i), grouped by eigenspace.
std::vector<Subspace> common_eigenspaces(const NovikovAlgebra& a);

// Smallest ideal containing the columns of m.
Subspace ideal_generated(const NovikovAlgebra& a, const QMatrix& m);

struct Splitting {
  Subspace J, Jperp, V, S, Sperp;
};
// Throws std::invalid_argument when J is zero, not isotropic or not an ideal.
Splitting splitting(const QuadraticNovikov& q, const Subspace& J);

struct QuadraticQuotient {
  QuadraticNovikov quotient;  // (I + I^⊥)/(I ∩ I^⊥)
  QMatrix lift;               // n x m, ambient representatives of the quotient basis
  QMatrix reduce;             // m x n, valid on I + I^⊥: coordinates in the quotient
};
QuadraticQuotient quotient_quadratic(const QuadraticNovikov& q, const Subspace& ideal);

// Same column span.
bool same_subspace(const Subspace& a, const Subspace& b);

}  // namespace novikov
