#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qcross {

/// One named exact check and its outcome.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Ordered list of checks.  Verification routines never stop at the first
/// failure; they record every violation so the caller sees all of them.
class Report {
 public:
  void add(std::string name, bool passed, std::string detail = {}) {
    checks_.push_back({std::move(name), passed, std::move(detail)});
  }
  void merge(const Report& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  bool ok() const { return failures() == 0; }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += c.passed ? 0 : 1;
    return n;
  }
  std::size_t size() const { return checks_.size(); }
  const std::vector<Check>& checks() const { return checks_; }

 private:
  std::vector<Check> checks_;
};

}  // namespace qcross
