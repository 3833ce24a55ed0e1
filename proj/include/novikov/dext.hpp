#pragma once

#include "novikov/structure.hpp"

namespace novikov {

// Bilinear map X x Y -> Z as coordinate vectors in Z, entry (i,j) at i*cols + j.
// Values in A2* are coordinates in the dual basis: f(e_k) is component k.
struct BilinearTable {
  std::size_t rows = 0, cols = 0;
  Eigen::Index out = 0;
  std::vector<PVector> at;

  BilinearTable() = default;
  BilinearTable(std::size_t r, std::size_t c, Eigen::Index o) : rows(r), cols(c), out(o), at(r * c, PVector::Zero(o)) {}
  const PVector& operator()(std::size_t i, std::size_t j) const { return at[i * cols + j]; }
  PVector& operator()(std::size_t i, std::size_t j) { return at[i * cols + j]; }
  PVector apply(const PVector& x, const PVector& y) const;
  bool is_zero() const;
  friend bool operator==(const BilinearTable& a, const BilinearTable& b) {
    return a.rows == b.rows && a.cols == b.cols && a.out == b.out && a.at == b.at;
  }
};

// Double extension data over A2 ⊕ A1 ⊕ A2*; p = dim A2, q = dim A1.
struct DextData {
  QuadraticNovikov A1;
  NovikovAlgebra A2;
  PMatrix tau;                    // p x p, symmetric, need not be invariant
  BilinearTable phi;              // A1 x A1 -> A2*
  std::vector<PMatrix> mu, muP;   // per A2 basis vector, q x q (columns are images)
  BilinearTable v;                // A2 x A1 -> A2*
  BilinearTable vP;               // A1 x A2 -> A2*
  BilinearTable lambda;           // A2 x A2 -> A1
  BilinearTable gamma;            // A2 x A2 -> A2*

  std::size_t p() const { return A2.dim(); }
  std::size_t q() const { return A1.algebra.dim(); }
  // all maps zero, tau zero
  static DextData zero(QuadraticNovikov a1, NovikovAlgebra a2);
  // throws std::invalid_argument on inconsistent shapes
  void check_shapes() const;
};

// ids (cent-1), (cent-2)
Report check_central(const NovikovAlgebra& a1, const BilinearTable& phi);
// A1 ⊕ A2* with (x1+f)*(y1+g) = x1∘y1 + phi(x1,y1). Throws std::domain_error on a violated condition.
NovikovAlgebra central_extension(const NovikovAlgebra& a1, const BilinearTable& phi,
                                 std::vector<std::string> dual_names = {});

// ids (3.4.1) .. (3.4.18), one check each
Report validate_dext(const DextData& d);

struct DextBuild {
  NovikovAlgebra algebra;  // basis: A2 names, A1 names, A2 names + "star"
  PMatrix metric;
  std::optional<QuadraticNovikov> quadratic;  // set when the cross-check passes
  Report validation;
  Report crosscheck;  // check_quadratic on the assembled structure
};
// Throws std::domain_error when validation fails.
DextBuild build_dext(const DextData& d);
// The A1 = 0 case; throws std::domain_error when gamma/tau violate their conditions.
DextBuild build_tstar(const NovikovAlgebra& a2, const PMatrix& tau, const BilinearTable& gamma);

struct Dim1DextData {
  Poly k;  // e∘e = k e
  PVector alpha;
  PMatrix Q1, Q2;
  PMatrix h;  // h(x_i, y_j)
  PVector f, g;  // f(e_i), g(e_i)
  Poly t, s;
  std::string name = "e";
};

// twelve ids: kt+s, h, Q1-skew, Q1-symmetric, Q2-right, Q2-bracket, Q1-derivation,
// Q2Q1, Q1Q2, Q2-square, f, f+g
Report check_dim1(const QuadraticNovikov& a1, const Dim1DextData& d);
DextData induced_dext(const QuadraticNovikov& a1, const Dim1DextData& d);

struct Dim1Build {
  DextBuild build;     // from the closed product formula
  Report conditions;   // the twelve conditions
  bool matches_general = false;  // equal to build_dext of the induced data
};
// Throws std::domain_error naming the failed conditions.
Dim1Build build_dext_dim1(const QuadraticNovikov& a1, const Dim1DextData& d);

struct Extraction {
  Splitting split;
  DextData data;
  DextBuild rebuilt;
  QMatrix sigma;  // coordinates of Q -> coordinates of the rebuilt extension
  Report report;
};
// Throws std::invalid_argument when J is zero, not isotropic or not an ideal.
Extraction extract_dext(const QuadraticNovikov& q, const Subspace& J);

}  // namespace novikov
