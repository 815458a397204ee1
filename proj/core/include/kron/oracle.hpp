#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "kron/characters.hpp"
#include "kron/partition.hpp"

namespace kron {

// The set of distinct irreducible constituents of a representation of S_n.
struct Support {
  int n = 0;
  std::set<Partition> members;

  bool operator==(const Support&) const = default;
  std::string to_string() const;
};

// The reducible standard representation tau_n = (n) + (n-1,1) as a support.
Support standard_rep_support(int n);

struct OracleConfig {
  int coefficient_cap = 20;   // single Kronecker / tensor-support evaluations
  int product_cap = 14;       // iterated support products
  int enumeration_cap = kDefaultEnumerationCap;
  int threads = 1;
};

struct MinPowerResult {
  enum class Kind { Found, ExceedsTMax, Never };
  Kind kind = Kind::Never;
  int t = 0;                 // valid when kind == Found
  Support stabilized;        // valid when kind == Never
  std::string to_string() const;
};

// Brute-force ground truth for Kronecker positivity questions, backed by
// exact character tables. All queries are pure; tensor-support pairs are
// memoized per n.
class KroneckerOracle {
 public:
  explicit KroneckerOracle(OracleConfig config = {},
                           std::shared_ptr<CharacterTableCache> tables = nullptr);

  const OracleConfig& config() const { return config_; }

  mpz_class kronecker(const Partition& l, const Partition& m, const Partition& v);

  // Multiplicity of the trivial representation in the tensor product of all
  // entries; requires at least 3 of equal size.
  mpz_class extended_kronecker(const std::vector<Partition>& ls);

  Support tensor_support(const Partition& l, const Partition& m);

  using Factor = std::variant<Partition, Support>;
  Support product_support(const std::vector<Factor>& factors);

  bool covers(const Support& s);
  bool saxl_check(const Partition& l);
  MinPowerResult min_cover_power(const Partition& l, int t_max);

  // Dvir bound: every member of l tensor m has at most ht(l)*ht(m) rows.
  bool height_bound_check(const Partition& l, const Partition& m);

  std::shared_ptr<const CharacterTable> table(int n);

 private:
  mpz_class extended_from_table(const CharacterTable& table,
                                const std::vector<std::size_t>& irrep_indices);

  OracleConfig config_;
  std::shared_ptr<CharacterTableCache> tables_;
  std::mutex memo_mutex_;
  std::map<std::pair<Partition, Partition>, Support> support_memo_;
};

// Empirical audit of the covering exponent: for each n, the largest value of
// t_min(lambda) * log dim(lambda) / (n log n) over lambda of dimension > 1,
// together with the achieving lambda.
struct ConstantAuditRow {
  int n = 0;
  Partition best;
  int t_min = 0;
  double ratio = 0.0;
};
std::vector<ConstantAuditRow> constant_audit(int n_min, int n_max, KroneckerOracle& oracle,
                                             int t_max = 64);

}  // namespace kron
