#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace soficlab {

// A finite group given by its multiplication table. Element 0 is the
// identity; table[a][b] is the index of a*b.
class CayleyTable {
 public:
  using Rows = std::vector<std::vector<std::size_t>>;

  // The trivial group.
  CayleyTable();

  // Throws InputError naming the first failed group axiom.
  explicit CayleyTable(Rows rows);

  // Every failed group axiom, checked by exhaustion: square shape, entries in
  // range, Latin-square rows and columns, identity at index 0, inverses and
  // associativity over all triples.
  static std::vector<std::string> violations(const Rows& rows);

  static CayleyTable cyclic(std::size_t n);
  // Permutations of {0..n-1} in lexicographic order, composed right-to-left.
  static CayleyTable symmetric(std::size_t n);
  // (a,b) has index a * right.order() + b.
  static CayleyTable direct_product(const CayleyTable& left, const CayleyTable& right);

  [[nodiscard]] std::size_t order() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t multiply(std::size_t a, std::size_t b) const { return rows_[a][b]; }
  [[nodiscard]] std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  [[nodiscard]] const Rows& rows() const noexcept { return rows_; }

  friend bool operator==(const CayleyTable& a, const CayleyTable& b) { return a.rows_ == b.rows_; }

 private:
  Rows rows_;
  std::vector<std::size_t> inverses_;
};

}  // namespace soficlab
