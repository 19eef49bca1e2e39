#include "soficlab/malg.hpp"

#include <algorithm>
#include <iterator>

namespace soficlab {

MAlgElement::MAlgElement(std::vector<std::size_t> units) : units_(std::move(units)) {
  std::sort(units_.begin(), units_.end());
  units_.erase(std::unique(units_.begin(), units_.end()), units_.end());
}

bool MAlgElement::contains(std::size_t unit) const {
  return std::binary_search(units_.begin(), units_.end(), unit);
}

MAlgElement set_union(const MAlgElement& a, const MAlgElement& b) {
  std::vector<std::size_t> out;
  std::set_union(a.units().begin(), a.units().end(), b.units().begin(), b.units().end(),
                 std::back_inserter(out));
  return MAlgElement(std::move(out));
}

MAlgElement set_intersection(const MAlgElement& a, const MAlgElement& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.units().begin(), a.units().end(), b.units().begin(), b.units().end(),
                        std::back_inserter(out));
  return MAlgElement(std::move(out));
}

MAlgElement set_difference(const MAlgElement& a, const MAlgElement& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.units().begin(), a.units().end(), b.units().begin(), b.units().end(),
                      std::back_inserter(out));
  return MAlgElement(std::move(out));
}

}  // namespace soficlab
