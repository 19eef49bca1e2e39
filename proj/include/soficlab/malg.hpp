#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace soficlab {

// A subset of the unit space, by global unit index. Identified with the
// idempotent bisection of its unit arrows.
class MAlgElement {
 public:
  MAlgElement() = default;
  explicit MAlgElement(std::vector<std::size_t> units);

  [[nodiscard]] std::span<const std::size_t> units() const noexcept { return units_; }
  [[nodiscard]] std::size_t size() const noexcept { return units_.size(); }
  [[nodiscard]] bool empty() const noexcept { return units_.empty(); }
  [[nodiscard]] bool contains(std::size_t unit) const;

  auto operator<=>(const MAlgElement&) const = default;

 private:
  std::vector<std::size_t> units_;
};

MAlgElement set_union(const MAlgElement& a, const MAlgElement& b);
MAlgElement set_intersection(const MAlgElement& a, const MAlgElement& b);
MAlgElement set_difference(const MAlgElement& a, const MAlgElement& b);

}  // namespace soficlab
