#pragma once

#include "novikov/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace novikov {

// Polynomials asserted nonzero. Stored monic and deduplicated; a monomial
// constraint such as k^2*s also records its variables k and s.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(std::initializer_list<Poly> ps);

  void add(const Poly& p);  // throws std::invalid_argument on the zero polynomial
  void merge(const ConstraintSet& other);
  const std::vector<Poly>& polys() const { return polys_; }
  bool empty() const { return polys_.empty(); }
  bool holds_at(const Assignment& at) const;
  std::set<std::string> variables() const;
  std::string str() const;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  void add_one(const Poly& monic);
  std::vector<Poly> polys_;
};

enum class Nonvanishing { GenericallyNonzero, IdenticallyZero, Inconclusive };

struct NonvanishingVerdict {
  Nonvanishing kind = Nonvanishing::Inconclusive;
  bool sampled = false;               // GenericallyNonzero decided by sampling only
  std::optional<Assignment> witness;  // a constraint-respecting zero of p
  std::string note;
};

inline constexpr std::uint64_t kSamplingSeed = 0x4e6f76696b6f76ULL;
inline constexpr int kSamplePoints = 8;

NonvanishingVerdict nonvanishing_check(const Poly& p, const ConstraintSet& c);

std::string to_string(Nonvanishing v);
std::string assignment_string(const Assignment& a);

}  // namespace novikov
