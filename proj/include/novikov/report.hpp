#pragma once

#include <string>
#include <vector>

namespace novikov {

enum class Status { Pass, Fail, Inconclusive, Info };

std::string to_string(Status s);

inline constexpr std::size_t kMaxWitnesses = 5;

struct Witness {
  std::vector<std::size_t> at;  // basis indices, 0-based
  std::string text;
};

struct Check {
  Check() = default;
  explicit Check(std::string id_, Status s = Status::Pass, std::string value_ = {})
      : id(std::move(id_)), status(s), value(std::move(value_)) {}

  std::string id;
  Status status = Status::Pass;
  std::string value;
  std::vector<Witness> witnesses;  // at most kMaxWitnesses
  std::size_t violations = 0;

  void violate(std::vector<std::size_t> at, std::string text) {
    status = Status::Fail;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back({std::move(at), std::move(text)});
    ++violations;
  }
};

struct Report {
  std::vector<Check> checks;

  Check& add(std::string id, Status s = Status::Pass, std::string value = {}) {
    checks.emplace_back(std::move(id), s, std::move(value));
    return checks.back();
  }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

  bool passed() const {
    for (const auto& c : checks)
      if (c.status == Status::Fail || c.status == Status::Inconclusive) return false;
    return true;
  }
  bool failed() const {
    for (const auto& c : checks)
      if (c.status == Status::Fail) return true;
    return false;
  }
  const Check* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
  std::vector<std::string> failing_ids() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (c.status == Status::Fail) out.push_back(c.id);
    return out;
  }
  std::string str() const;
};

}  // namespace novikov
