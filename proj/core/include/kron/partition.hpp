#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace kron {

// An integer partition / Young diagram: weakly decreasing positive row
// lengths. The empty sequence is the unique partition of 0. Trailing zeros
// are stripped on construction; anything else non-decreasing is rejected.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> rows);

  // Parses the text form "[8,7,4,3,3,1]" ("[]" for the empty partition).
  // Throws std::invalid_argument with the offending position.
  static Partition parse(std::string_view text);

  // Builds a partition from an arbitrary multiset of nonnegative parts.
  static Partition from_parts(std::vector<int> parts);

  const std::vector<int>& rows() const { return rows_; }
  int row(std::size_t i) const { return i < rows_.size() ? rows_[i] : 0; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  long long size() const { return size_; }
  bool empty() const { return rows_.empty(); }

  std::string to_string() const;

  bool operator==(const Partition&) const = default;

  // Canonical order: reverse-lexicographic, so partitions of n run
  // (n), (n-1,1), ..., 1^n. Partitions of different sizes compare by size
  // first so sets over mixed sizes stay well-ordered.
  bool operator<(const Partition& other) const;

 private:
  std::vector<int> rows_;
  long long size_ = 0;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

// Named shapes.
Partition trivial_shape(int n);    // 1_n, the single row (n)
Partition column_shape(int n);     // 1^n, the single column
Partition staircase(int r);        // (r, r-1, ..., 1)
Partition rect(int a, int b);      // b rows of length a
Partition hook(int a, int b);      // (a, 1^{b-1}), a+b-1 boxes

Partition conjugate(const Partition& p);
Partition hsum(const Partition& p, const Partition& q);
Partition vsum(const Partition& p, const Partition& q);

// Minimum number of boxes to move between two equal-size diagrams
// (upper-left corners aligned). Throws on a size mismatch.
long long blockwise_distance(const Partition& p, const Partition& q);

int dist_rows(const Partition& p);
int shared_dist_rows(const std::vector<Partition>& ps);

// Splits p as vsum(mu, hsum(nu, staircase(r))), moving one row of each
// chosen distinct length into the staircase part. Default choice: the r
// largest distinct lengths.
struct StaircaseDecomposition {
  Partition mu;
  Partition nu;
};
StaircaseDecomposition staircase_decompose(
    const Partition& p, int r,
    const std::optional<std::vector<int>>& chosen = std::nullopt);

// Per-cell hook lengths H(s) = arm + leg + 1, with the row part
// H_r(s) (cells to the right including s) and column part H_c(s),
// so H_r + H_c - 1 = H.
struct HookTable {
  std::vector<std::vector<int>> full;
  std::vector<std::vector<int>> row_part;
  std::vector<std::vector<int>> col_part;
};
HookTable hook_lengths(const Partition& p);

// Exact irreducible dimension n! / prod H(s).
mpz_class dimension(const Partition& p);

// Writes p as Vsum_i (rect(k*h_i, k) +_H nu_i), grouping rows k at a time
// (last group padded with empty rows), with h_i = floor(a_{ki} / k).
struct KRectBlock {
  long long h = 0;
  Partition nu;
};
std::vector<KRectBlock> krect_decompose(const Partition& p, int k);

// Greedy column split: returns gamma_j of size n_j whose horizontal sum has
// at least sqrt(2n) - 10J distinct row lengths.
std::vector<Partition> finish_split(const std::vector<long long>& parts);

// Peels the long first row: hat keeps first row max(a_2, b_1) (clamped to
// a_1) and p == hsum(hat, trivial(m)).
struct HatDecomposition {
  Partition hat;
  long long m = 0;
};
HatDecomposition hat_decompose(const Partition& p);

}  // namespace kron
