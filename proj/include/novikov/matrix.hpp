#pragma once

#include "novikov/poly.hpp"
#include "novikov/rational.hpp"

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<novikov::Rational> : GenericNumTraits<novikov::Rational> {
  using Real = novikov::Rational;
  using NonInteger = novikov::Rational;
  using Literal = novikov::Rational;
  using Nested = novikov::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 16
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<novikov::Poly> : GenericNumTraits<novikov::Poly> {
  using Real = novikov::Poly;
  using NonInteger = novikov::Poly;
  using Literal = novikov::Poly;
  using Nested = novikov::Poly;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 64,
    MulCost = 128
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace novikov {

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;
using PMatrix = Matrix<Poly>;
using PVector = Vector<Poly>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Poly& x) { return x.is_zero(); }

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

inline bool is_constant(const Rational&) { return true; }
inline bool is_constant(const Poly& x) { return x.is_constant(); }

template <class Derived>
bool is_constant(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_constant(m(i, j))) return false;
  return true;
}

inline PMatrix to_poly(const QMatrix& m) { return m.unaryExpr([](const Rational& x) { return Poly(x); }); }
inline PVector to_poly(const QVector& v) { return v.unaryExpr([](const Rational& x) { return Poly(x); }); }
// throws std::domain_error if a parameter occurs
inline QMatrix to_rational(const PMatrix& m) { return m.unaryExpr([](const Poly& x) { return x.constant(); }); }
inline QVector to_rational(const PVector& v) { return v.unaryExpr([](const Poly& x) { return x.constant(); }); }

inline PMatrix evaluate(const PMatrix& m, const Assignment& at) {
  return m.unaryExpr([&](const Poly& x) { return x.substitute(at); });
}

std::string to_string(const PMatrix& m);
std::string to_string(const QMatrix& m);

}  // namespace novikov
