#include "novikov/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace novikov {

// ---- Monomial ---------------------------------------------------------------

Monomial Monomial::variable(std::string name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(std::move(name), exponent);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::exponent(std::string_view var) const {
  for (const auto& f : factors_)
    if (f.first == var) return f.second;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [v, e] : factors_)
    if (other.exponent(v) < e) return false;
  return true;
}

Monomial Monomial::cofactor_in(const Monomial& other) const {
  Monomial r;
  for (const auto& [v, e] : other.factors_) {
    unsigned mine = exponent(v);
    if (e > mine) r.factors_.emplace_back(v, e - mine);
  }
  return r;
}

std::string Monomial::str() const {
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += '*';
    s += v;
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) return 1;
    if (i == fa.size() || fb[j].first < fa[i].first) return -1;
    if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

// ---- Poly -------------------------------------------------------------------

Poly::Poly(Rational c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, std::move(c)});
}

Poly Poly::variable(const std::string& name) { return monomial(Monomial::variable(name), Rational(1)); }

Poly Poly::monomial(Monomial m, Rational c) {
  Poly p;
  if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Rational Poly::constant() const {
  if (!is_constant()) throw std::domain_error("expected a parameter-free scalar, got " + str());
  return terms_.empty() ? Rational(0) : terms_[0].coef;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

unsigned Poly::degree_in(std::string_view var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(var));
  return d;
}

std::set<std::string> Poly::variables() const {
  std::set<std::string> vs;
  for (const auto& t : terms_)
    for (const auto& f : t.monomial.factors()) vs.insert(f.first);
  return vs;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return grlex_compare(t.monomial, key) > 0; });
  if (it != terms_.end() && it->monomial == m) {
    it->coef += c;
    if (it->coef.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, Term{m, c});
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    int c = i == terms_.end() ? -1 : (j == o.terms_.end() ? 1 : grlex_compare(i->monomial, j->monomial));
    if (c > 0) {
      merged.push_back(std::move(*i++));
    } else if (c < 0) {
      merged.push_back(*j++);
    } else {
      Rational s = i->coef + j->coef;
      if (!s.is_zero()) merged.push_back({std::move(i->monomial), std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  if (b.is_constant()) return a.scaled(b.terms_[0].coef);
  if (a.is_constant()) return b.scaled(a.terms_[0].coef);
  std::map<Monomial, Rational, GrlexGreater> acc;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[x.monomial * y.monomial] += x.coef * y.coef;
  Poly r;
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.terms_.push_back({m, c});
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator/=(const Poly& o) {
  auto q = divide_exact(*this, o);
  if (!q) throw std::domain_error("inexact polynomial division: (" + str() + ") / (" + o.str() + ")");
  return *this = std::move(*q);
}

Poly Poly::scaled(const Rational& c) const {
  if (c.is_zero()) return Poly{};
  Poly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r(1), base = *this;
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

Rational Poly::evaluate(const Assignment& at) const {
  Rational sum;
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (const auto& [name, e] : t.monomial.factors()) {
      auto it = at.find(name);
      if (it == at.end()) throw std::domain_error("no value for parameter '" + name + "'");
      v *= it->second.pow(e);
    }
    sum += v;
  }
  return sum;
}

Poly Poly::substitute(const std::map<std::string, Poly>& values) const {
  Poly sum;
  for (const auto& t : terms_) {
    Poly v(t.coef);
    Monomial rest;
    for (const auto& [name, e] : t.monomial.factors()) {
      auto it = values.find(name);
      if (it == values.end())
        rest = rest * Monomial::variable(name, e);
      else
        v *= it->second.pow(e);
    }
    sum += v * Poly::monomial(rest, Rational(1));
  }
  return sum;
}

Poly Poly::substitute(const Assignment& values) const {
  std::map<std::string, Poly> m;
  for (const auto& [k, v] : values) m.emplace(k, Poly(v));
  return substitute(m);
}

std::vector<Poly> Poly::coefficients_in(const std::string& var) const {
  std::vector<Poly> out(degree_in(var) + 1);
  for (const auto& t : terms_) {
    unsigned e = t.monomial.exponent(var);
    Monomial rest;
    for (const auto& f : t.monomial.factors())
      if (f.first != var) rest = rest * Monomial::variable(f.first, f.second);
    out[e] += Poly::monomial(rest, t.coef);
  }
  return out;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading().coef);
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    if (first) {
      if (c.sign() < 0) {
        s += '-';
        c = -c;
      }
    } else {
      s += c.sign() < 0 ? " - " : " + ";
      c = c.abs();
    }
    if (t.monomial.is_one()) {
      s += c.str();
    } else {
      if (!c.is_one()) s += c.str() + '*';
      s += t.monomial.str();
    }
    first = false;
  }
  return s;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (b.is_constant()) return a.scaled(Rational(1) / b.constant());
  Poly rem = a, quot;
  const auto& lb = b.leading();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    if (!lb.monomial.divides(lr.monomial)) return std::nullopt;
    Poly step = Poly::monomial(lb.monomial.cofactor_in(lr.monomial), lr.coef / lb.coef);
    quot += step;
    rem -= step * b;
  }
  return quot;
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly& p) {
  auto vars = p.variables();
  if (vars.size() > 1) throw std::domain_error("rational_roots expects a univariate polynomial");
  if (p.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
  if (vars.empty()) return {};
  auto coeffs = p.coefficients_in(*vars.begin());
  // Clear denominators to integer coefficients.
  mpz_class lcm = 1;
  for (const auto& c : coeffs) {
    mpz_class d = c.constant().denominator();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<mpz_class> ints;
  for (const auto& c : coeffs) {
    mpq_class v = c.constant().value() * lcm;
    ints.push_back(v.get_num());
  }
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (low < ints.size() && ints[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  const mpz_class& a0 = ints[low];
  const mpz_class& an = ints.back();
  if (low + 1 < ints.size()) {
    auto ps = positive_divisors(a0);
    auto qs = positive_divisors(an);
    std::set<mpq_class> seen;
    for (const auto& num : ps) {
      for (const auto& den : qs) {
        for (int sgn : {1, -1}) {
          mpz_class n = num;
          if (sgn < 0) n = -n;
          mpq_class cand(n, den);
          cand.canonicalize();
          if (!seen.insert(cand).second) continue;
          mpq_class acc = 0;
          for (std::size_t i = ints.size(); i-- > low;) acc = acc * cand + ints[i];
          if (acc == 0) roots.emplace_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---- Parser -----------------------------------------------------------------

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  ParsedPoly run() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "empty expression");
    ParsedPoly out;
    out.value = expr();
    skip_ws();
    if (pos_ < text_.size()) throw SyntaxError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
    out.identifiers = std::move(idents_);
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) throw SyntaxError(at, "division only by a nonzero rational constant");
        acc = acc.scaled(Rational(1) / d.constant());
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw SyntaxError(start, "'^' expects a nonnegative integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 1000) throw SyntaxError(start, "exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly(Rational::parse(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      idents_.emplace_back(name, start);
      return Poly::variable(name);
    }
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, std::size_t>> idents_;
};

}  // namespace

ParsedPoly parse_poly(std::string_view text) { return ScalarParser(text).run(); }

}  // namespace novikov
