#include "opchris/exactla.hpp"

#include <limits>
#include <set>
#include <stdexcept>

namespace opchris {

std::string rat_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Rational rat_parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

long long rat_ll(const Rational& r) {
  if (denominator(r) != 1) throw std::invalid_argument("rat_ll: not an integer");
  Int n = numerator(r);
  if (n > std::numeric_limits<long long>::max() ||
      n < std::numeric_limits<long long>::min())
    throw std::overflow_error("rat_ll: out of range");
  return static_cast<long long>(n);
}

void SparseMat::add(int row, int col, const Rational& v) {
  if (col < 0 || col >= ncols) throw std::out_of_range("SparseMat::add column");
  if (row < 0) throw std::out_of_range("SparseMat::add row");
  if (v == 0) return;
  if (row >= nrows()) rows.resize(row + 1);
  Rational& slot = rows[row][col];
  slot += v;
  if (slot == 0) rows[row].erase(col);
}

namespace {

// Gauss-Jordan elimination with Markowitz pivoting. After run(), every pivot
// column has a single 1 in its pivot row, so kernel vectors read off directly.
struct Elimination {
  int ncols;
  std::vector<SparseVec> rows;
  std::map<int, int> pivot_rows;  // pivot col -> row index

  explicit Elimination(SparseMat m) : ncols(m.ncols), rows(std::move(m.rows)) {}

  void run() {
    std::set<int> unprocessed;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (!rows[r].empty()) unprocessed.insert(r);

    while (!unprocessed.empty()) {
      // Column fill counts over unprocessed rows.
      std::map<int, int> col_count;
      for (int r : unprocessed)
        for (const auto& [c, v] : rows[r]) ++col_count[c];

      int best_r = -1, best_c = -1;
      long long best_score = -1;
      for (int r : unprocessed) {
        const long long rfill = static_cast<long long>(rows[r].size()) - 1;
        for (const auto& [c, v] : rows[r]) {
          const long long score = rfill * (col_count[c] - 1);
          if (best_r < 0 || score < best_score ||
              (score == best_score &&
               (c < best_c || (c == best_c && r < best_r)))) {
            best_score = score;
            best_r = r;
            best_c = c;
          }
        }
      }
      if (best_r < 0) break;

      SparseVec& prow = rows[best_r];
      const Rational inv = Rational(1) / prow[best_c];
      for (auto& [c, v] : prow) v *= inv;

      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (r == best_r) continue;
        auto it = rows[r].find(best_c);
        if (it == rows[r].end()) continue;
        const Rational factor = it->second;
        for (const auto& [c, v] : prow) {
          Rational& slot = rows[r][c];
          slot -= factor * v;
          if (slot == 0) rows[r].erase(c);
        }
      }
      pivot_rows[best_c] = best_r;
      unprocessed.erase(best_r);
      // Rows emptied by the update drop out of the candidate set.
      for (auto it = unprocessed.begin(); it != unprocessed.end();) {
        if (rows[*it].empty()) it = unprocessed.erase(it);
        else ++it;
      }
    }
  }
};

}  // namespace

int rank(SparseMat m) {
  Elimination e(std::move(m));
  e.run();
  return static_cast<int>(e.pivot_rows.size());
}

std::vector<SparseVec> kernel_basis(SparseMat m) {
  const int ncols = m.ncols;
  Elimination e(std::move(m));
  e.run();

  std::vector<SparseVec> basis;
  for (int f = 0; f < ncols; ++f) {
    if (e.pivot_rows.count(f)) continue;
    SparseVec x;
    x[f] = 1;
    for (const auto& [c, r] : e.pivot_rows) {
      auto it = e.rows[r].find(f);
      if (it != e.rows[r].end()) x[c] = -it->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

int span_dim(const std::vector<SparseVec>& vectors) {
  SparseMat m;
  int maxcol = -1;
  for (const auto& v : vectors)
    for (const auto& [c, val] : v)
      if (c > maxcol) maxcol = c;
  m.ncols = maxcol + 1;
  for (const auto& v : vectors) {
    SparseVec row;
    for (const auto& [c, val] : v)
      if (val != 0) row[c] = val;
    if (!row.empty()) m.rows.push_back(std::move(row));
  }
  return rank(std::move(m));
}

}  // namespace opchris
