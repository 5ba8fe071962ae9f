#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rackx {

/// Elements of every finite structure are dense indices 0..n-1.
using Index = std::size_t;

/// Square operation or multiplication table in row-major form, t[a][b].
using Table = std::vector<std::vector<Index>>;

/// A failed axiom together with the lexicographically first witness tuple.
struct Violation {
  std::string axiom;
  std::vector<Index> witness;
  std::string detail;

  std::string message() const {
    std::ostringstream os;
    os << axiom << "(";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) os << ",";
      os << witness[i];
    }
    os << ")";
    if (!detail.empty()) os << ": " << detail;
    return os.str();
  }

  bool operator==(const Violation&) const = default;
};

class AxiomViolation : public std::runtime_error {
 public:
  explicit AxiomViolation(Violation v)
      : std::runtime_error(v.message()), violation_(std::move(v)) {}

  const Violation& violation() const noexcept { return violation_; }
  const std::string& axiom() const noexcept { return violation_.axiom; }
  const std::vector<Index>& witness() const noexcept { return violation_.witness; }

 private:
  Violation violation_;
};

namespace detail {

inline void raise_if(const std::optional<Violation>& v) {
  if (v) throw AxiomViolation(*v);
}

inline Violation violation(std::string axiom, std::vector<Index> witness,
                           std::string detail = {}) {
  return Violation{std::move(axiom), std::move(witness), std::move(detail)};
}

}  // namespace detail

}  // namespace rackx
