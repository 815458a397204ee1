#include "kron/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kron {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

Partition::Partition(std::vector<int> rows) : rows_(std::move(rows)) {
  while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] <= 0) fail("partition rows must be positive");
    if (i > 0 && rows_[i - 1] < rows_[i]) fail("partition rows must be weakly decreasing");
    size_ += rows_[i];
  }
}

Partition Partition::parse(std::string_view text) {
  auto bad = [&](std::size_t pos, const std::string& what) -> void {
    std::ostringstream os;
    os << "bad partition '" << std::string(text) << "' at offset " << pos << ": " << what;
    fail(os.str());
  };
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i >= text.size() || text[i] != '[') bad(i, "expected '['");
  ++i;
  std::vector<int> rows;
  skip_ws();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    while (true) {
      skip_ws();
      std::size_t start = i;
      long long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > (1LL << 31)) bad(start, "row length too large");
        ++i;
      }
      if (i == start) bad(i, "expected digit");
      rows.push_back(static_cast<int>(value));
      skip_ws();
      if (i < text.size() && text[i] == ',') { ++i; continue; }
      if (i < text.size() && text[i] == ']') { ++i; break; }
      bad(i, "expected ',' or ']'");
    }
  }
  skip_ws();
  if (i != text.size()) bad(i, "trailing characters");
  return Partition(std::move(rows));
}

Partition Partition::from_parts(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return Partition(std::move(parts));
}

std::string Partition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(rows_[i]);
  }
  out += ']';
  return out;
}

bool Partition::operator<(const Partition& other) const {
  if (size_ != other.size_) return size_ < other.size_;
  // Reverse-lexicographic: larger leading rows come first.
  return std::lexicographical_compare(other.rows_.begin(), other.rows_.end(),
                                      rows_.begin(), rows_.end());
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int r : p.rows()) h = (h ^ static_cast<std::size_t>(r)) * 0x100000001b3ULL;
  return h;
}

Partition trivial_shape(int n) {
  if (n < 1) fail("trivial_shape: n must be >= 1");
  return Partition({n});
}

Partition column_shape(int n) {
  if (n < 1) fail("column_shape: n must be >= 1");
  return Partition(std::vector<int>(static_cast<std::size_t>(n), 1));
}

Partition staircase(int r) {
  if (r < 1) fail("staircase: r must be >= 1");
  std::vector<int> rows(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) rows[static_cast<std::size_t>(i)] = r - i;
  return Partition(std::move(rows));
}

Partition rect(int a, int b) {
  if (a < 1 || b < 1) fail("rect: both sides must be >= 1");
  return Partition(std::vector<int>(static_cast<std::size_t>(b), a));
}

Partition hook(int a, int b) {
  if (a < 1 || b < 1) fail("hook: both parameters must be >= 1");
  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(b));
  rows.push_back(a);
  for (int i = 1; i < b; ++i) rows.push_back(1);
  return Partition(std::move(rows));
}

Partition conjugate(const Partition& p) {
  if (p.empty()) return Partition();
  std::vector<int> cols(static_cast<std::size_t>(p.rows()[0]), 0);
  for (int r : p.rows()) {
    for (int j = 0; j < r; ++j) ++cols[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(cols));
}

Partition hsum(const Partition& p, const Partition& q) {
  std::size_t k = std::max(p.rows().size(), q.rows().size());
  std::vector<int> rows(k, 0);
  for (std::size_t i = 0; i < k; ++i) rows[i] = p.row(i) + q.row(i);
  return Partition(std::move(rows));
}

Partition vsum(const Partition& p, const Partition& q) {
  std::vector<int> rows;
  rows.reserve(p.rows().size() + q.rows().size());
  std::merge(p.rows().begin(), p.rows().end(), q.rows().begin(), q.rows().end(),
             std::back_inserter(rows), std::greater<int>());
  return Partition(std::move(rows));
}

long long blockwise_distance(const Partition& p, const Partition& q) {
  if (p.size() != q.size())
    fail("blockwise_distance: partitions must have equal size");
  // Equal sizes make the two one-sided cell counts agree.
  long long moved = 0;
  std::size_t k = std::max(p.rows().size(), q.rows().size());
  for (std::size_t i = 0; i < k; ++i) moved += std::max(p.row(i) - q.row(i), 0);
  return moved;
}

int dist_rows(const Partition& p) {
  int distinct = 0;
  const auto& rows = p.rows();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (i == 0 || rows[i] != rows[i - 1]) ++distinct;
  return distinct;
}

int shared_dist_rows(const std::vector<Partition>& ps) {
  if (ps.empty()) fail("shared_dist_rows: empty list");
  std::set<int> shared(ps[0].rows().begin(), ps[0].rows().end());
  for (std::size_t i = 1; i < ps.size() && !shared.empty(); ++i) {
    std::set<int> lengths(ps[i].rows().begin(), ps[i].rows().end());
    std::set<int> next;
    std::set_intersection(shared.begin(), shared.end(), lengths.begin(), lengths.end(),
                          std::inserter(next, next.begin()));
    shared.swap(next);
  }
  return static_cast<int>(shared.size());
}

StaircaseDecomposition staircase_decompose(
    const Partition& p, int r, const std::optional<std::vector<int>>& chosen) {
  if (r < 1) fail("staircase_decompose: r must be >= 1");
  std::set<int, std::greater<int>> distinct(p.rows().begin(), p.rows().end());
  if (static_cast<int>(distinct.size()) < r)
    fail("staircase_decompose: fewer than r distinct row lengths");

  std::vector<int> picked;
  if (chosen) {
    picked = *chosen;
    std::sort(picked.begin(), picked.end(), std::greater<int>());
    if (static_cast<int>(picked.size()) != r)
      fail("staircase_decompose: chosen set must have exactly r lengths");
    for (std::size_t i = 0; i < picked.size(); ++i) {
      if (i > 0 && picked[i] == picked[i - 1])
        fail("staircase_decompose: chosen lengths must be distinct");
      if (!distinct.count(picked[i]))
        fail("staircase_decompose: chosen length not present in partition");
    }
  } else {
    for (int len : distinct) {
      picked.push_back(len);
      if (static_cast<int>(picked.size()) == r) break;
    }
  }

  // One row of each picked length moves to the staircase side.
  std::vector<int> nu_rows, mu_rows;
  std::multiset<int, std::greater<int>> remaining(p.rows().begin(), p.rows().end());
  for (int i = 0; i < r; ++i) {
    remaining.erase(remaining.find(picked[static_cast<std::size_t>(i)]));
    nu_rows.push_back(picked[static_cast<std::size_t>(i)] - (r - i));
  }
  mu_rows.assign(remaining.begin(), remaining.end());
  return {Partition(std::move(mu_rows)), Partition(std::move(nu_rows))};
}

HookTable hook_lengths(const Partition& p) {
  HookTable t;
  Partition cols = conjugate(p);
  t.full.resize(p.rows().size());
  t.row_part.resize(p.rows().size());
  t.col_part.resize(p.rows().size());
  for (std::size_t i = 0; i < p.rows().size(); ++i) {
    int len = p.rows()[i];
    t.full[i].resize(static_cast<std::size_t>(len));
    t.row_part[i].resize(static_cast<std::size_t>(len));
    t.col_part[i].resize(static_cast<std::size_t>(len));
    for (int j = 0; j < len; ++j) {
      int arm = len - j - 1;
      int leg = cols.rows()[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
      t.full[i][static_cast<std::size_t>(j)] = arm + leg + 1;
      t.row_part[i][static_cast<std::size_t>(j)] = arm + 1;
      t.col_part[i][static_cast<std::size_t>(j)] = leg + 1;
    }
  }
  return t;
}

mpz_class dimension(const Partition& p) {
  mpz_class dim;
  mpz_fac_ui(dim.get_mpz_t(), static_cast<unsigned long>(p.size()));
  HookTable t = hook_lengths(p);
  for (const auto& row : t.full)
    for (int h : row) mpz_divexact_ui(dim.get_mpz_t(), dim.get_mpz_t(), static_cast<unsigned long>(h));
  return dim;
}

std::vector<KRectBlock> krect_decompose(const Partition& p, int k) {
  if (k < 1) fail("krect_decompose: k must be >= 1");
  std::vector<KRectBlock> blocks;
  const auto& rows = p.rows();
  std::size_t j = rows.size();
  for (std::size_t start = 0; start < j; start += static_cast<std::size_t>(k)) {
    // Last row of the group, 0 when the group is padded.
    std::size_t last = start + static_cast<std::size_t>(k) - 1;
    int a_last = last < j ? rows[last] : 0;
    KRectBlock b;
    b.h = a_last / k;
    std::vector<int> nu;
    for (std::size_t i = start; i < start + static_cast<std::size_t>(k) && i < j; ++i)
      nu.push_back(rows[i] - static_cast<int>(b.h) * k);
    b.nu = Partition(std::move(nu));
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::vector<Partition> finish_split(const std::vector<long long>& parts) {
  if (parts.empty()) fail("finish_split: at least one part required");
  for (long long n : parts)
    if (n <= 0) fail("finish_split: all parts must be positive");
  std::vector<Partition> out;
  long long next_col = 1;
  for (long long budget : parts) {
    std::vector<int> cols;
    while (next_col <= budget) {
      cols.push_back(static_cast<int>(next_col));
      budget -= next_col;
      ++next_col;
    }
    if (budget > 0) cols.push_back(static_cast<int>(budget));
    out.push_back(conjugate(Partition::from_parts(std::move(cols))));
  }
  return out;
}

HatDecomposition hat_decompose(const Partition& p) {
  if (p.empty()) fail("hat_decompose: partition must be nonempty");
  int a1 = p.rows()[0];
  int a2 = p.row(1);
  int b1 = p.num_rows();
  int target = std::min(a1, std::max(a2, b1));
  std::vector<int> rows = p.rows();
  rows[0] = target;
  return {Partition(std::move(rows)), static_cast<long long>(a1 - target)};
}

}  // namespace kron
