#include "bounds.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "util.hpp"

namespace irratio {

namespace {

// Largest N handled with n, i.e. n + 2^n - 2.
long long block_hi(int n) { return n + (1LL << n) - 2; }

// Smallest N handled with n: r >= 1 always, and for n >= 3 the previous
// block already covers up to (n-1) + 2^{n-1} - 2, so this block starts
// one past that.
long long block_lo(int n) {
  if (n == 2) return 3;
  return (n - 1) + (1LL << (n - 1)) - 1;
}

}  // namespace

Decomposition decompose_dimension(long long N) {
  if (N < 3) throw usage_error("dimension must be at least 3");
  int n = 2;
  while (block_hi(n) < N) ++n;
  if (block_lo(n) > N) throw std::logic_error("block tiling gap");
  Decomposition d;
  d.n = n;
  d.r = N - n;
  return d;
}

int min_degree(long long N) { return decompose_dimension(N).n + 2; }

std::vector<BoundsRow> bounds_table(long long max_dim) {
  if (max_dim < 3) throw usage_error("dimension bound must be at least 3");
  std::vector<BoundsRow> rows;
  for (int n = 2; block_lo(n) <= max_dim; ++n) {
    BoundsRow row;
    row.n = n;
    row.dim_max = std::min(block_hi(n), max_dim);
    row.deg_min = n + 2;
    rows.push_back(row);
  }
  return rows;
}

std::string bounds_table_text(long long max_dim) {
  auto rows = bounds_table(max_dim);
  std::size_t wn = 1, wd = 7, wg = 7;
  for (const auto& row : rows) {
    wn = std::max(wn, std::to_string(row.n).size());
    wd = std::max(wd, std::to_string(row.dim_max).size());
    wg = std::max(wg, std::to_string(row.deg_min).size());
  }
  std::ostringstream out;
  auto pad = [](const std::string& s, std::size_t w) {
    return std::string(w - s.size(), ' ') + s;
  };
  out << pad("n", wn) << "  " << pad("dim_max", wd) << "  "
      << pad("deg_min", wg) << "\n";
  for (const auto& row : rows) {
    out << pad(std::to_string(row.n), wn) << "  "
        << pad(std::to_string(row.dim_max), wd) << "  "
        << pad(std::to_string(row.deg_min), wg) << "\n";
  }
  for (const auto& row : rows) {
    out << "row n=" << row.n << " dim_max=" << row.dim_max
        << " deg_min=" << row.deg_min << "\n";
  }
  return out.str();
}

LogBound log_bound_check(long long N) {
  if (N < 3) throw usage_error("dimension must be at least 3");
  int ceil_log2 = 0;
  while ((1LL << ceil_log2) < N) ++ceil_log2;
  LogBound lb;
  lb.bound = ceil_log2 + 2;
  int actual = min_degree(N);
  if (actual > lb.bound) throw std::logic_error("logarithmic bound violated");
  lb.tight = (actual == lb.bound);
  return lb;
}

}  // namespace irratio
