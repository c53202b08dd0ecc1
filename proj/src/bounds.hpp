#pragma once

#include <string>
#include <vector>

namespace irratio {

// Degree/dimension numerology for the witness family.  Dimension N splits
// as N = n + r with 1 <= r <= 2^n - 2; the blocks
//   n fixed:  n + max(1, 2^{n-1} - 2)  <=  N  <=  n + 2^n - 2
// tile every N >= 3, and the minimal witness degree on a block is n + 2.
struct Decomposition {
  int n = 0;
  long long r = 0;
};

Decomposition decompose_dimension(long long N);  // N >= 3
int min_degree(long long N);                     // = decompose(N).n + 2

struct BoundsRow {
  int n = 0;
  long long dim_max = 0;  // clipped to the query bound on the last row
  int deg_min = 0;
};

// Rows for all blocks intersecting [3, max_dim]; max_dim >= 3.
std::vector<BoundsRow> bounds_table(long long max_dim);

// Two-line aligned table plus one machine-readable "row ..." line per block.
std::string bounds_table_text(long long max_dim);

struct LogBound {
  int bound = 0;     // ceil(log2 N) + 2
  bool tight = false;  // min_degree(N) == bound
};

// Integer logarithmic degree bound: min_degree(N) <= ceil(log2 N) + 2 for
// every N >= 3 (the real-valued form log2(N) + 2 fails for every N below
// the top of its block, so the ceiling version is the one that holds
// without exceptions).
LogBound log_bound_check(long long N);

}  // namespace irratio
