#include "kron/characters.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "kron/parallel.hpp"

namespace kron {

namespace {

constexpr std::string_view kCacheMagic = "kronchar";
constexpr int kCacheVersion = 1;

struct MemoKey {
  Partition shape;
  std::size_t consumed;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    return PartitionHash{}(k.shape) * 1000003u + k.consumed;
  }
};

using Memo = std::unordered_map<MemoKey, long long, MemoKeyHash>;

std::vector<long long> beta_set(const Partition& p) {
  const auto& rows = p.rows();
  std::vector<long long> betas(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    betas[i] = rows[i] + static_cast<long long>(rows.size() - 1 - i);
  return betas;
}

Partition from_beta_set(std::vector<long long> betas) {
  std::sort(betas.begin(), betas.end(), std::greater<long long>());
  std::vector<int> rows;
  rows.reserve(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i)
    rows.push_back(static_cast<int>(betas[i] - static_cast<long long>(betas.size() - 1 - i)));
  return Partition(std::move(rows));
}

// Border-strip recursion over the beta set. cycles are sorted descending and
// consumed in order; sign of a strip is (-1)^(rows spanned - 1), i.e. the
// parity of occupied betas crossed.
long long mn_value(const Partition& shape, const std::vector<int>& cycles,
                   std::size_t consumed, Memo& memo) {
  if (consumed == cycles.size()) return shape.empty() ? 1 : 0;
  MemoKey key{shape, consumed};
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  int c = cycles[consumed];
  std::vector<long long> betas = beta_set(shape);
  long long total = 0;
  for (std::size_t j = 0; j < betas.size(); ++j) {
    long long target = betas[j] - c;
    if (target < 0) continue;
    bool occupied = false;
    int crossed = 0;
    for (std::size_t t = 0; t < betas.size(); ++t) {
      if (t == j) continue;
      if (betas[t] == target) { occupied = true; break; }
      if (betas[t] > target && betas[t] < betas[j]) ++crossed;
    }
    if (occupied) continue;
    std::vector<long long> next = betas;
    next[j] = target;
    long long sub = mn_value(from_beta_set(std::move(next)), cycles, consumed + 1, memo);
    total += (crossed % 2 == 0) ? sub : -sub;
  }
  memo.emplace(std::move(key), total);
  return total;
}

std::vector<int> cycles_desc(const Partition& rho) {
  std::vector<int> cycles = rho.rows();  // already weakly decreasing
  return cycles;
}

[[noreturn]] void parse_fail(const std::string& what) {
  throw std::runtime_error("character table cache: " + what);
}

}  // namespace

std::vector<Partition> partitions_of(int n, int cap) {
  if (n < 0) throw std::invalid_argument("partitions_of: n must be nonnegative");
  if (n > cap) throw resource_limit_error("partitions_of: n exceeds enumeration cap");
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur{n};
  while (true) {
    out.push_back(Partition(cur));
    // Find the rightmost part > 1, decrement it, and redistribute that part
    // plus the trailing ones greedily; yields reverse-lexicographic order.
    std::size_t k = cur.size();
    while (k > 0 && cur[k - 1] == 1) --k;
    if (k == 0) break;
    int new_part = cur[k - 1] - 1;
    long long rest = static_cast<long long>(cur.size() - k) + cur[k - 1];
    cur.resize(k - 1);
    while (rest > 0) {
      int take = static_cast<int>(std::min<long long>(new_part, rest));
      cur.push_back(take);
      rest -= take;
    }
  }
  return out;
}

mpz_class partition_count(int n) {
  if (n < 0) throw std::invalid_argument("partition_count: n must be nonnegative");
  // Euler's pentagonal-number recurrence.
  std::vector<mpz_class> p(static_cast<std::size_t>(n) + 1);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    mpz_class total = 0;
    for (int k = 1;; ++k) {
      long long g1 = static_cast<long long>(k) * (3 * k - 1) / 2;
      long long g2 = static_cast<long long>(k) * (3 * k + 1) / 2;
      if (g1 > m && g2 > m) break;
      bool plus = (k % 2 == 1);
      if (g1 <= m) plus ? total += p[static_cast<std::size_t>(m - g1)]
                        : total -= p[static_cast<std::size_t>(m - g1)];
      if (g2 <= m) plus ? total += p[static_cast<std::size_t>(m - g2)]
                        : total -= p[static_cast<std::size_t>(m - g2)];
    }
    p[static_cast<std::size_t>(m)] = total;
  }
  return p[static_cast<std::size_t>(n)];
}

mpz_class class_order(const ClassLabel& rho) {
  mpz_class z = 1;
  const auto& rows = rho.cycle_type.rows();
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && rows[j] == rows[i]) ++j;
    unsigned long mult = static_cast<unsigned long>(j - i);
    mpz_class power, fact;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(rows[i]), mult);
    mpz_fac_ui(fact.get_mpz_t(), mult);
    z *= power * fact;
    i = j;
  }
  return z;
}

long long character(const Partition& lambda, const ClassLabel& rho) {
  if (lambda.size() != rho.cycle_type.size())
    throw std::invalid_argument("character: irrep and class sizes differ");
  Memo memo;
  return mn_value(lambda, cycles_desc(rho.cycle_type), 0, memo);
}

std::optional<std::size_t> CharacterTable::irrep_index(const Partition& p) const {
  auto it = std::lower_bound(irreps.begin(), irreps.end(), p);
  if (it != irreps.end() && *it == p) return static_cast<std::size_t>(it - irreps.begin());
  return std::nullopt;
}

bool CharacterTable::row_orthogonal() const {
  mpz_class nfact;
  mpz_fac_ui(nfact.get_mpz_t(), static_cast<unsigned long>(n));
  std::size_t count = irreps.size();
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      mpz_class sum = 0;
      for (std::size_t c = 0; c < count; ++c) {
        mpz_class class_size = nfact / class_orders[c];
        sum += class_size * static_cast<long>(values[a][c]) * static_cast<long>(values[b][c]);
      }
      if (sum != (a == b ? nfact : mpz_class(0))) return false;
    }
  }
  return true;
}

bool CharacterTable::column_orthogonal() const {
  std::size_t count = classes.size();
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t d = c; d < count; ++d) {
      mpz_class sum = 0;
      for (std::size_t a = 0; a < irreps.size(); ++a)
        sum += mpz_class(static_cast<long>(values[a][c])) * static_cast<long>(values[a][d]);
      if (sum != (c == d ? class_orders[c] : mpz_class(0))) return false;
    }
  }
  return true;
}

CharacterTable build_character_table(int n, int threads, int cap) {
  if (n < 0) throw std::invalid_argument("build_character_table: n must be nonnegative");
  if (n > cap) throw resource_limit_error("build_character_table: n exceeds table cap");
  CharacterTable table;
  table.n = n;
  table.irreps = partitions_of(n, std::max(n, kDefaultEnumerationCap));
  table.classes.reserve(table.irreps.size());
  for (const auto& p : table.irreps) table.classes.push_back(ClassLabel{p});
  table.class_orders.reserve(table.classes.size());
  for (const auto& c : table.classes) table.class_orders.push_back(class_order(c));

  std::size_t rows = table.irreps.size();
  table.values.assign(rows, std::vector<long long>(rows, 0));
  // One memo per class: subshapes recur across irreps for a fixed cycle
  // list, which is where the sharing pays off. Deterministic regardless of
  // thread count.
  parallel_for(0, static_cast<std::int64_t>(rows), threads, [&](std::int64_t cls) {
    Memo memo;
    std::vector<int> cycles = cycles_desc(table.classes[static_cast<std::size_t>(cls)].cycle_type);
    for (std::size_t i = 0; i < rows; ++i)
      table.values[i][static_cast<std::size_t>(cls)] =
          mn_value(table.irreps[i], cycles, 0, memo);
  });
  return table;
}

std::string serialize_character_table(const CharacterTable& table) {
  std::ostringstream os;
  os << kCacheMagic << ' ' << kCacheVersion << '\n';
  os << "n " << table.n << '\n';
  os << "count " << table.irreps.size() << '\n';
  os << "irreps\n";
  for (const auto& p : table.irreps) os << p.to_string() << '\n';
  os << "classes\n";
  for (const auto& c : table.classes) os << c.cycle_type.to_string() << '\n';
  os << "zorders\n";
  for (const auto& z : table.class_orders) os << z.get_str() << '\n';
  os << "values\n";
  for (const auto& row : table.values) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ' ';
      os << row[j];
    }
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

CharacterTable deserialize_character_table(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto next_line = [&]() -> std::string {
    if (!std::getline(is, line)) parse_fail("unexpected end of file");
    return line;
  };
  {
    std::istringstream header(next_line());
    std::string magic;
    int version = 0;
    header >> magic >> version;
    if (magic != kCacheMagic) parse_fail("bad magic");
    if (version != kCacheVersion) parse_fail("unsupported version");
  }
  CharacterTable table;
  {
    std::istringstream l(next_line());
    std::string tag;
    l >> tag >> table.n;
    if (tag != "n" || table.n < 0) parse_fail("bad n line");
  }
  std::size_t count = 0;
  {
    std::istringstream l(next_line());
    std::string tag;
    l >> tag >> count;
    if (tag != "count") parse_fail("bad count line");
  }
  if (mpz_class(static_cast<unsigned long>(count)) != partition_count(table.n))
    parse_fail("count does not match p(n)");
  if (next_line() != "irreps") parse_fail("expected irreps section");
  for (std::size_t i = 0; i < count; ++i) table.irreps.push_back(Partition::parse(next_line()));
  if (next_line() != "classes") parse_fail("expected classes section");
  for (std::size_t i = 0; i < count; ++i)
    table.classes.push_back(ClassLabel{Partition::parse(next_line())});
  if (next_line() != "zorders") parse_fail("expected zorders section");
  for (std::size_t i = 0; i < count; ++i) {
    mpz_class z;
    if (z.set_str(next_line(), 10) != 0) parse_fail("bad z order");
    table.class_orders.push_back(z);
  }
  if (next_line() != "values") parse_fail("expected values section");
  table.values.assign(count, std::vector<long long>(count, 0));
  for (std::size_t i = 0; i < count; ++i) {
    std::istringstream l(next_line());
    for (std::size_t j = 0; j < count; ++j)
      if (!(l >> table.values[i][j])) parse_fail("bad value row");
    std::string extra;
    if (l >> extra) parse_fail("trailing data in value row");
  }
  if (next_line() != "end") parse_fail("missing end marker");
  for (std::size_t i = 0; i < count; ++i) {
    if (table.irreps[i].size() != table.n) parse_fail("irrep of wrong size");
    if (table.classes[i].cycle_type.size() != table.n) parse_fail("class of wrong size");
  }
  return table;
}

CharacterTableCache::CharacterTableCache(std::filesystem::path dir, int threads, int cap,
                                         std::ostream* warnings)
    : dir_(std::move(dir)), threads_(threads), cap_(cap), warnings_(warnings) {}

std::filesystem::path CharacterTableCache::file_for(int n) const {
  return dir_ / ("chartable_n" + std::to_string(n) + ".kct");
}

std::shared_ptr<const CharacterTable> CharacterTableCache::get(int n) {
  if (n > cap_) throw resource_limit_error("character table: n exceeds cap");
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto it = loaded_.find(n); it != loaded_.end()) return it->second;

  if (!dir_.empty()) {
    std::ifstream in(file_for(n));
    if (in) {
      std::ostringstream buffer;
      buffer << in.rdbuf();
      try {
        auto table = std::make_shared<CharacterTable>(deserialize_character_table(buffer.str()));
        if (table->n != n) throw std::runtime_error("cache file is for a different n");
        loaded_[n] = table;
        return table;
      } catch (const std::exception& e) {
        if (warnings_)
          *warnings_ << "warning: rebuilding character table cache for n=" << n << " ("
                     << e.what() << ")\n";
      }
    }
  }

  auto table = std::make_shared<CharacterTable>(build_character_table(n, threads_, cap_));
  if (!dir_.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    std::ofstream out(file_for(n), std::ios::binary | std::ios::trunc);
    if (out) out << serialize_character_table(*table);
  }
  loaded_[n] = table;
  return table;
}

}  // namespace kron
