#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kron/partition.hpp"

namespace kron {

// Raised when a requested computation exceeds a configured cap.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Conjugacy class of S_n, labeled by its cycle type.
struct ClassLabel {
  Partition cycle_type;
  bool operator==(const ClassLabel&) const = default;
};

inline constexpr int kDefaultEnumerationCap = 60;
inline constexpr int kDefaultTableCap = 20;

// All partitions of n in reverse-lexicographic order; count is p(n).
std::vector<Partition> partitions_of(int n, int cap = kDefaultEnumerationCap);

// Number of partitions of n (exact, via the pentagonal-number recurrence).
mpz_class partition_count(int n);

// Centralizer order z_rho = prod_i i^{m_i} m_i!; the class size is n!/z_rho.
mpz_class class_order(const ClassLabel& rho);

// Character value chi^lambda(rho) by the Murnaghan-Nakayama rule: strip off
// border strips matching the cycles largest-first, memoized on
// (remaining shape, cycles consumed).
long long character(const Partition& lambda, const ClassLabel& rho);

// Exact character table of S_n. Irreps and classes both run in
// reverse-lexicographic order; values[i][j] = chi^{irreps[i]}(classes[j]).
struct CharacterTable {
  int n = 0;
  std::vector<Partition> irreps;
  std::vector<ClassLabel> classes;
  std::vector<mpz_class> class_orders;
  std::vector<std::vector<long long>> values;

  long long value(std::size_t irrep, std::size_t cls) const { return values[irrep][cls]; }
  std::optional<std::size_t> irrep_index(const Partition& p) const;

  // Exact orthogonality, integer form (multiplied through by n!).
  bool row_orthogonal() const;
  bool column_orthogonal() const;
};

CharacterTable build_character_table(int n, int threads = 1, int cap = kDefaultTableCap);

// Length-prefixed text cache, one file per n. Bit-exact round trip.
std::string serialize_character_table(const CharacterTable& table);
CharacterTable deserialize_character_table(const std::string& text);

// Disk-backed provider. A corrupt or mismatched cache file is rebuilt with a
// warning on the given stream. Thread-safe.
class CharacterTableCache {
 public:
  explicit CharacterTableCache(std::filesystem::path dir = {}, int threads = 1,
                               int cap = kDefaultTableCap, std::ostream* warnings = nullptr);

  std::shared_ptr<const CharacterTable> get(int n);
  std::filesystem::path file_for(int n) const;
  int cap() const { return cap_; }

 private:
  std::filesystem::path dir_;
  int threads_;
  int cap_;
  std::ostream* warnings_;
  std::mutex mutex_;
  std::map<int, std::shared_ptr<const CharacterTable>> loaded_;
};

}  // namespace kron
