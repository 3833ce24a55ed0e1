#include "novikov/nonvanishing.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace novikov {

ConstraintSet::ConstraintSet(std::initializer_list<Poly> ps) {
  for (const auto& p : ps) add(p);
}

void ConstraintSet::add_one(const Poly& monic) {
  if (std::find(polys_.begin(), polys_.end(), monic) == polys_.end()) polys_.push_back(monic);
}

void ConstraintSet::add(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("constraint polynomial is identically zero");
  if (p.is_constant()) return;
  Poly m = p.monic();
  add_one(m);
  if (m.terms().size() == 1)
    for (const auto& [v, e] : m.leading().monomial.factors()) add_one(Poly::variable(v));
}

void ConstraintSet::merge(const ConstraintSet& other) {
  for (const auto& p : other.polys_) add_one(p);
}

bool ConstraintSet::holds_at(const Assignment& at) const {
  for (const auto& p : polys_)
    if (p.evaluate(at).is_zero()) return false;
  return true;
}

std::set<std::string> ConstraintSet::variables() const {
  std::set<std::string> out;
  for (const auto& p : polys_) {
    auto v = p.variables();
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::string ConstraintSet::str() const {
  std::string s;
  for (const auto& p : polys_) {
    if (!s.empty()) s += ", ";
    s += p.str() + " != 0";
  }
  return s;
}

std::string to_string(Nonvanishing v) {
  switch (v) {
    case Nonvanishing::GenericallyNonzero: return "GenericallyNonzero";
    case Nonvanishing::IdenticallyZero: return "IdenticallyZero";
    case Nonvanishing::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string assignment_string(const Assignment& a) {
  std::string s;
  for (const auto& [k, v] : a) {
    if (!s.empty()) s += ",";
    s += k + "=" + v.str();
  }
  return s;
}

namespace {

const std::vector<Rational>& probe_values() {
  static const std::vector<Rational> vals = {Rational(1), Rational(-1), Rational(2),     Rational(-2),
                                             Rational(1, 2), Rational(3), Rational(-1, 2), Rational(-3)};
  return vals;
}

// Zero of p found by fixing all but one variable to small values and
// solving the remaining univariate polynomial for rational roots.
std::optional<Assignment> root_search(const Poly& p, const ConstraintSet& c, const std::vector<std::string>& vars) {
  const auto& probes = probe_values();
  for (const auto& x : p.variables()) {
    std::vector<std::string> others;
    for (const auto& v : vars)
      if (v != x) others.push_back(v);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < others.size() && combos < 512; ++i) combos *= probes.size();
    combos = std::min<std::size_t>(combos, 512);
    for (std::size_t code = 0; code < combos; ++code) {
      Assignment at;
      std::size_t rest = code;
      for (const auto& o : others) {
        at[o] = probes[rest % probes.size()];
        rest /= probes.size();
      }
      Poly q = p.substitute(at);
      std::vector<Rational> roots;
      if (q.is_zero())
        roots = probes;
      else if (!q.is_constant())
        roots = rational_roots(q);
      for (const auto& r : roots) {
        Assignment full = at;
        full[x] = r;
        if (c.holds_at(full) && p.evaluate(full).is_zero()) return full;
      }
    }
  }
  return std::nullopt;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
  long n = 0;
  while (n == 0) n = num(rng);
  return Rational(n, den(rng));
}

}  // namespace

NonvanishingVerdict nonvanishing_check(const Poly& p, const ConstraintSet& c) {
  NonvanishingVerdict v;
  if (p.is_zero()) {
    v.kind = Nonvanishing::IdenticallyZero;
    return v;
  }
  Poly rest = p;
  bool progress = true;
  while (progress && !rest.is_constant()) {
    progress = false;
    for (const auto& f : c.polys()) {
      if (auto q = divide_exact(rest, f)) {
        rest = std::move(*q);
        progress = true;
      }
    }
  }
  if (rest.is_constant()) {
    v.kind = Nonvanishing::GenericallyNonzero;
    v.note = "unit times a product of constraints";
    return v;
  }

  std::set<std::string> varset = p.variables();
  auto cv = c.variables();
  varset.insert(cv.begin(), cv.end());
  std::vector<std::string> vars(varset.begin(), varset.end());

  if (auto w = root_search(p, c, vars)) {
    v.kind = Nonvanishing::Inconclusive;
    v.witness = *w;
    v.note = "rational zero satisfying the constraints";
    return v;
  }

  std::mt19937_64 rng(kSamplingSeed);
  for (int k = 0; k < kSamplePoints; ++k) {
    Assignment at;
    do {
      for (const auto& name : vars) at[name] = random_rational(rng);
    } while (!c.holds_at(at));
    if (p.evaluate(at).is_zero()) {
      v.kind = Nonvanishing::Inconclusive;
      v.witness = at;
      v.note = "vanishes at a sample point";
      return v;
    }
  }
  v.kind = Nonvanishing::GenericallyNonzero;
  v.sampled = true;
  v.note = "nonzero at " + std::to_string(kSamplePoints) + " sample points";
  return v;
}

}  // namespace novikov
