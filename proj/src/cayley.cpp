#include "soficlab/cayley.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "soficlab/errors.hpp"

namespace soficlab {

CayleyTable::CayleyTable() : rows_{{0}}, inverses_{0} {}

CayleyTable::CayleyTable(Rows rows) : rows_(std::move(rows)) {
  auto problems = violations(rows_);
  if (!problems.empty()) throw InputError("not a group table: " + problems.front());
  inverses_.resize(rows_.size());
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      if (rows_[a][b] == 0) inverses_[a] = b;
    }
  }
}

std::vector<std::string> CayleyTable::violations(const Rows& rows) {
  std::vector<std::string> out;
  auto const m = rows.size();
  if (m == 0) {
    out.emplace_back("empty table");
    return out;
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (rows[a].size() != m) {
      out.push_back("row " + std::to_string(a) + " has wrong length");
      return out;
    }
    for (auto v : rows[a]) {
      if (v >= m) {
        out.push_back("entry out of range in row " + std::to_string(a));
        return out;
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<bool> row_seen(m), col_seen(m);
    for (std::size_t b = 0; b < m; ++b) {
      row_seen[rows[a][b]] = true;
      col_seen[rows[b][a]] = true;
    }
    if (std::find(row_seen.begin(), row_seen.end(), false) != row_seen.end()) {
      out.push_back("row " + std::to_string(a) + " is not a bijection");
    }
    if (std::find(col_seen.begin(), col_seen.end(), false) != col_seen.end()) {
      out.push_back("column " + std::to_string(a) + " is not a bijection");
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (rows[0][a] != a || rows[a][0] != a) {
      out.push_back("index 0 is not an identity at " + std::to_string(a));
    }
    bool has_inverse = false;
    for (std::size_t b = 0; b < m; ++b) {
      if (rows[a][b] == 0 && rows[b][a] == 0) has_inverse = true;
    }
    if (!has_inverse) out.push_back("no inverse for " + std::to_string(a));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t c = 0; c < m; ++c) {
        if (rows[rows[a][b]][c] != rows[a][rows[b][c]]) {
          out.push_back("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                        "," + std::to_string(c) + ")");
          return out;
        }
      }
    }
  }
  return out;
}

CayleyTable CayleyTable::cyclic(std::size_t n) {
  if (n == 0) throw InputError("cyclic group of order 0");
  Rows rows(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
  }
  return CayleyTable(std::move(rows));
}

CayleyTable CayleyTable::symmetric(std::size_t n) {
  if (n == 0) throw InputError("symmetric group on 0 points");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;

  Rows rows(perms.size(), std::vector<std::size_t>(perms.size()));
  std::vector<std::size_t> product(n);
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      for (std::size_t x = 0; x < n; ++x) product[x] = perms[a][perms[b][x]];
      rows[a][b] = index.at(product);
    }
  }
  return CayleyTable(std::move(rows));
}

CayleyTable CayleyTable::direct_product(const CayleyTable& left, const CayleyTable& right) {
  auto const m = left.order();
  auto const k = right.order();
  Rows rows(m * k, std::vector<std::size_t>(m * k));
  for (std::size_t a = 0; a < m * k; ++a) {
    for (std::size_t b = 0; b < m * k; ++b) {
      rows[a][b] = left.multiply(a / k, b / k) * k + right.multiply(a % k, b % k);
    }
  }
  return CayleyTable(std::move(rows));
}

}  // namespace soficlab
