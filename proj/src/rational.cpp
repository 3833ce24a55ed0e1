#include "novikov/rational.hpp"

#include <stdexcept>

namespace novikov {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
  q.canonicalize();
  return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
  return Rational(mpq_class(n, d));
}

}  // namespace novikov
