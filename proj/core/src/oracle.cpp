#include "kron/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kron {

namespace {

int common_size(const std::vector<Partition>& ps) {
  if (ps.empty()) throw std::invalid_argument("expected at least one partition");
  long long n = ps[0].size();
  for (const auto& p : ps)
    if (p.size() != n) throw std::invalid_argument("partitions must have equal size");
  return static_cast<int>(n);
}

}  // namespace

std::string Support::to_string() const {
  std::string out;
  for (const auto& p : members) {
    out += p.to_string();
    out += '\n';
  }
  return out;
}

Support standard_rep_support(int n) {
  if (n < 2) throw std::invalid_argument("standard_rep_support: n must be >= 2");
  Support s;
  s.n = n;
  s.members.insert(trivial_shape(n));
  s.members.insert(Partition({n - 1, 1}));
  return s;
}

std::string MinPowerResult::to_string() const {
  switch (kind) {
    case Kind::Found: return std::to_string(t);
    case Kind::ExceedsTMax: return "exceeds t_max";
    case Kind::Never: return "never (support stabilized)";
  }
  return {};
}

KroneckerOracle::KroneckerOracle(OracleConfig config,
                                 std::shared_ptr<CharacterTableCache> tables)
    : config_(config), tables_(std::move(tables)) {
  if (!tables_)
    tables_ = std::make_shared<CharacterTableCache>(std::filesystem::path{}, config_.threads,
                                                    config_.coefficient_cap);
}

std::shared_ptr<const CharacterTable> KroneckerOracle::table(int n) {
  return tables_->get(n);
}

mpz_class KroneckerOracle::extended_from_table(const CharacterTable& table,
                                               const std::vector<std::size_t>& irrep_indices) {
  // n! * g = sum over classes of |class| * prod_i chi^{lambda_i}(class);
  // the division at the end is exact.
  mpz_class nfact;
  mpz_fac_ui(nfact.get_mpz_t(), static_cast<unsigned long>(table.n));
  mpz_class total = 0;
  mpz_class term;
  for (std::size_t c = 0; c < table.classes.size(); ++c) {
    term = nfact / table.class_orders[c];
    for (std::size_t idx : irrep_indices) term *= static_cast<long>(table.values[idx][c]);
    total += term;
  }
  mpz_class g;
  mpz_divexact(g.get_mpz_t(), total.get_mpz_t(), nfact.get_mpz_t());
  return g;
}

mpz_class KroneckerOracle::extended_kronecker(const std::vector<Partition>& ls) {
  if (ls.size() < 3)
    throw std::invalid_argument("extended_kronecker: need at least 3 partitions");
  int n = common_size(ls);
  if (n > config_.coefficient_cap)
    throw resource_limit_error("extended_kronecker: size exceeds oracle cap");
  auto table = tables_->get(n);
  std::vector<std::size_t> idx;
  idx.reserve(ls.size());
  for (const auto& p : ls) {
    auto i = table->irrep_index(p);
    if (!i) throw std::invalid_argument("extended_kronecker: partition not found in table");
    idx.push_back(*i);
  }
  return extended_from_table(*table, idx);
}

mpz_class KroneckerOracle::kronecker(const Partition& l, const Partition& m,
                                     const Partition& v) {
  return extended_kronecker({l, m, v});
}

Support KroneckerOracle::tensor_support(const Partition& l, const Partition& m) {
  int n = common_size({l, m});
  if (n > config_.coefficient_cap)
    throw resource_limit_error("tensor_support: size exceeds oracle cap");
  auto key = std::minmax(l, m);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    if (auto it = support_memo_.find(key); it != support_memo_.end()) return it->second;
  }

  auto table = tables_->get(n);
  auto li = table->irrep_index(l), mi = table->irrep_index(m);
  if (!li || !mi) throw std::invalid_argument("tensor_support: partition not found in table");
  Support s;
  s.n = n;
  for (std::size_t vi = 0; vi < table->irreps.size(); ++vi) {
    if (extended_from_table(*table, {*li, *mi, vi}) > 0)
      s.members.insert(table->irreps[vi]);
  }
  std::lock_guard<std::mutex> lock(memo_mutex_);
  support_memo_.emplace(key, s);
  return s;
}

Support KroneckerOracle::product_support(const std::vector<Factor>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_support: no factors");
  auto as_support = [](const Factor& f) -> Support {
    if (std::holds_alternative<Support>(f)) return std::get<Support>(f);
    const Partition& p = std::get<Partition>(f);
    Support s;
    s.n = static_cast<int>(p.size());
    s.members.insert(p);
    return s;
  };
  Support acc = as_support(factors[0]);
  if (acc.n > config_.product_cap)
    throw resource_limit_error("product_support: size exceeds product cap");
  for (std::size_t i = 1; i < factors.size(); ++i) {
    Support next = as_support(factors[i]);
    if (next.n != acc.n) throw std::invalid_argument("product_support: size mismatch");
    Support merged;
    merged.n = acc.n;
    for (const auto& a : acc.members) {
      for (const auto& b : next.members) {
        Support pair = tensor_support(a, b);
        merged.members.insert(pair.members.begin(), pair.members.end());
      }
    }
    acc = std::move(merged);
  }
  return acc;
}

bool KroneckerOracle::covers(const Support& s) {
  if (s.n > config_.enumeration_cap)
    throw resource_limit_error("covers: size exceeds enumeration cap");
  auto all = partitions_of(s.n, config_.enumeration_cap);
  if (s.members.size() != all.size()) return false;
  for (const auto& p : all)
    if (!s.members.count(p)) return false;
  return true;
}

bool KroneckerOracle::saxl_check(const Partition& l) {
  return covers(tensor_support(l, l));
}

MinPowerResult KroneckerOracle::min_cover_power(const Partition& l, int t_max) {
  if (t_max < 1) throw std::invalid_argument("min_cover_power: t_max must be >= 1");
  int n = static_cast<int>(l.size());
  if (n > config_.product_cap)
    throw resource_limit_error("min_cover_power: size exceeds product cap");

  std::size_t full = partitions_of(n, config_.enumeration_cap).size();
  Support current;
  current.n = n;
  current.members.insert(l);
  // Supports of the even and odd power sequences are separately monotone
  // (tensoring twice more can only grow the support, since l (x) l contains
  // the trivial representation). Once both parities repeat without covering,
  // no further power can cover.
  std::vector<Support> history{current};
  for (int t = 1; t <= t_max; ++t) {
    if (current.members.size() == full && covers(current)) {
      MinPowerResult r;
      r.kind = MinPowerResult::Kind::Found;
      r.t = t;
      return r;
    }
    Support next = product_support({current, l});
    history.push_back(next);
    std::size_t steps = history.size();
    if (steps >= 4 && history[steps - 1] == history[steps - 3] &&
        history[steps - 2] == history[steps - 4]) {
      MinPowerResult r;
      r.kind = MinPowerResult::Kind::Never;
      r.stabilized = history[steps - 2];  // support at the last inspected power
      return r;
    }
    current = std::move(next);
  }
  MinPowerResult r;
  r.kind = MinPowerResult::Kind::ExceedsTMax;
  return r;
}

bool KroneckerOracle::height_bound_check(const Partition& l, const Partition& m) {
  Support s = tensor_support(l, m);
  long long bound = static_cast<long long>(l.num_rows()) * m.num_rows();
  for (const auto& v : s.members)
    if (v.num_rows() > bound) return false;
  return true;
}

std::vector<ConstantAuditRow> constant_audit(int n_min, int n_max, KroneckerOracle& oracle,
                                             int t_max) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("constant_audit: bad range");
  std::vector<ConstantAuditRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    ConstantAuditRow best;
    best.n = n;
    double n_log_n = n * std::log(static_cast<double>(n));
    for (const auto& l : partitions_of(n)) {
      mpz_class dim = dimension(l);
      if (dim <= 1) continue;
      MinPowerResult r = oracle.min_cover_power(l, t_max);
      if (r.kind != MinPowerResult::Kind::Found)
        throw std::runtime_error("constant_audit: covering power not found for " +
                                 l.to_string() + " (" + r.to_string() + ")");
      double ratio = r.t * std::log(dim.get_d()) / n_log_n;
      if (ratio > best.ratio) {
        best.ratio = ratio;
        best.best = l;
        best.t_min = r.t;
      }
    }
    rows.push_back(std::move(best));
  }
  return rows;
}

}  // namespace kron
