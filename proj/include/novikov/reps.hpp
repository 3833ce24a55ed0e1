#pragma once

#include "novikov/forms.hpp"

namespace novikov {

// l, r indexed by the basis of the algebra, each acting on a carrier of dimension `dim`.
struct Representation {
  Eigen::Index dim = 0;
  std::vector<PMatrix> l, r;
};

// ids: rep-commutator  l(a∘b - b∘a) = [l(a),l(b)]
//      rep-mixed       l(a)r(b) - r(b)l(a) = r(a∘b) - r(a)r(b)
//      rep-left        l(a∘b) = r(b)l(a)
//      rep-right       r(a)r(b) = r(b)r(a)
Report check_representation(const NovikovAlgebra& a, const Representation& v);

Representation adjoint_rep(const NovikovAlgebra& a);
// On the dual basis: l(a) = -(L⋆(a))^T, r(a) = (R∘(a))^T.
Representation dual_star_rep(const NovikovAlgebra& a);

struct ThetaResult {
  PMatrix theta;
  Report report;  // ids: bijective, intertwine-l, intertwine-r
};
ThetaResult theta_isomorphism(const QuadraticNovikov& q);

}  // namespace novikov
