#include "kron/certificate.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kron {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_relation(const Relation& r) {
  if (r.size() < 3) fail("relation needs at least 3 entries");
  for (const auto& p : r)
    if (p.size() != r[0].size()) fail("relation entries must have equal size");
}

Partition trivial_or_empty(long long n) {
  return n == 0 ? Partition() : trivial_shape(static_cast<int>(n));
}

Partition column_or_empty(long long n) {
  return n == 0 ? Partition() : column_shape(static_cast<int>(n));
}

CertPtr make_axiom(Relation relation, Rule rule, std::optional<int> verified_n) {
  auto cert = std::make_shared<Certificate>();
  cert->conclusion = std::move(relation);
  cert->rule = rule;
  cert->verified_n = verified_n;
  return cert;
}

// Reorders a 3-entry axiom into an arbitrary entry order.
CertPtr permuted(const CertPtr& c, std::vector<int> perm) { return permute(c, std::move(perm)); }

}  // namespace

long long relation_size(const Relation& r) { return r.empty() ? 0 : r[0].size(); }

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::AxiomOracle: return "axiom-oracle";
    case Rule::AxiomSymmetricCube: return "axiom-symmetric-cube";
    case Rule::AxiomTrivialPair: return "axiom-trivial-pair";
    case Rule::CombineHsum: return "combine-hsum";
    case Rule::CombineVsum: return "combine-vsum";
    case Rule::ConjugatePair: return "conjugate-pair";
    case Rule::Permute: return "permute";
  }
  return "?";
}

bool Certificate::equal_tree(const Certificate& other) const {
  if (conclusion != other.conclusion || rule != other.rule ||
      conj_indices != other.conj_indices || pair_i != other.pair_i ||
      pair_j != other.pair_j || permutation != other.permutation ||
      verified_n != other.verified_n || children.size() != other.children.size())
    return false;
  for (std::size_t i = 0; i < children.size(); ++i)
    if (!children[i]->equal_tree(*other.children[i])) return false;
  return true;
}

CertPtr axiom_trivial_pair(const Partition& l) {
  return make_axiom({l, l, trivial_or_empty(l.size())}, Rule::AxiomTrivialPair,
                    static_cast<int>(l.size()));
}

CertPtr axiom_symmetric_cube(const Partition& l, KroneckerOracle* oracle) {
  if (conjugate(l) != l) fail("axiom_symmetric_cube: partition must be symmetric");
  std::optional<int> verified;
  if (oracle && l.size() <= oracle->config().coefficient_cap) {
    if (oracle->extended_kronecker({l, l, l}) <= 0)
      throw std::runtime_error("axiom_symmetric_cube: oracle reports zero coefficient");
    verified = static_cast<int>(l.size());
  }
  return make_axiom({l, l, l}, Rule::AxiomSymmetricCube, verified);
}

CertPtr axiom_oracle(Relation relation, KroneckerOracle& oracle) {
  check_relation(relation);
  if (oracle.extended_kronecker(relation) <= 0)
    throw std::runtime_error("axiom_oracle: relation has zero coefficient");
  int n = static_cast<int>(relation_size(relation));
  return make_axiom(std::move(relation), Rule::AxiomOracle, n);
}

CertPtr combine_hsum(const CertPtr& a, const CertPtr& b) {
  if (!a || !b) fail("combine_hsum: null certificate");
  if (a->conclusion.size() != b->conclusion.size())
    fail("combine_hsum: arity mismatch");
  auto cert = std::make_shared<Certificate>();
  cert->rule = Rule::CombineHsum;
  cert->children = {a, b};
  cert->conclusion.reserve(a->conclusion.size());
  for (std::size_t i = 0; i < a->conclusion.size(); ++i)
    cert->conclusion.push_back(hsum(a->conclusion[i], b->conclusion[i]));
  return cert;
}

CertPtr combine_vsum(const CertPtr& a, const CertPtr& b, const std::set<int>& conj_indices) {
  if (!a || !b) fail("combine_vsum: null certificate");
  if (a->conclusion.size() != b->conclusion.size())
    fail("combine_vsum: arity mismatch");
  if (conj_indices.size() % 2 != 0)
    fail("combine_vsum: vertical sums require an even number of conjugated positions; "
         "vertically adding an odd set of entries does not preserve positivity");
  for (int i : conj_indices)
    if (i < 0 || i >= static_cast<int>(a->conclusion.size()))
      fail("combine_vsum: conjugation index out of range");
  auto cert = std::make_shared<Certificate>();
  cert->rule = Rule::CombineVsum;
  cert->children = {a, b};
  cert->conj_indices.assign(conj_indices.begin(), conj_indices.end());
  for (std::size_t i = 0; i < a->conclusion.size(); ++i) {
    bool vertical = conj_indices.count(static_cast<int>(i)) > 0;
    cert->conclusion.push_back(vertical ? vsum(a->conclusion[i], b->conclusion[i])
                                        : hsum(a->conclusion[i], b->conclusion[i]));
  }
  return cert;
}

CertPtr conjugate_pair(const CertPtr& a, int i, int j) {
  if (!a) fail("conjugate_pair: null certificate");
  int k = static_cast<int>(a->conclusion.size());
  if (i == j || i < 0 || j < 0 || i >= k || j >= k)
    fail("conjugate_pair: indices must be distinct and in range");
  auto cert = std::make_shared<Certificate>();
  cert->rule = Rule::ConjugatePair;
  cert->children = {a};
  cert->pair_i = std::min(i, j);
  cert->pair_j = std::max(i, j);
  cert->conclusion = a->conclusion;
  cert->conclusion[static_cast<std::size_t>(i)] = conjugate(a->conclusion[static_cast<std::size_t>(i)]);
  cert->conclusion[static_cast<std::size_t>(j)] = conjugate(a->conclusion[static_cast<std::size_t>(j)]);
  return cert;
}

CertPtr permute(const CertPtr& a, std::vector<int> permutation) {
  if (!a) fail("permute: null certificate");
  std::size_t k = a->conclusion.size();
  if (permutation.size() != k) fail("permute: permutation length mismatch");
  std::vector<bool> seen(k, false);
  for (int p : permutation) {
    if (p < 0 || p >= static_cast<int>(k) || seen[static_cast<std::size_t>(p)])
      fail("permute: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  auto cert = std::make_shared<Certificate>();
  cert->rule = Rule::Permute;
  cert->children = {a};
  cert->permutation = std::move(permutation);
  cert->conclusion.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    cert->conclusion.push_back(a->conclusion[static_cast<std::size_t>(cert->permutation[i])]);
  return cert;
}

// --- Lemma builders ------------------------------------------------------

CertPtr lemma_rectcube(int a, int b, int c, KroneckerOracle& oracle) {
  if (a < 1 || b < 1 || c < 0) fail("lemma_rectcube: need a,b >= 1 and c >= 0");
  CertPtr acc = axiom_symmetric_cube(rect(a, a), &oracle);
  for (int copy = 1; copy < b; ++copy)
    acc = combine_hsum(acc, axiom_symmetric_cube(rect(a, a), &oracle));
  if (c > 0) acc = combine_hsum(acc, axiom_trivial_pair(rect(c, a)));
  return acc;
}

CertPtr lemma_rectsquare(int x, int y, int z, KroneckerOracle& oracle) {
  if (x < 1 || y < 1 || z < 1) fail("lemma_rectsquare: parameters must be >= 1");
  // c(Rect(x,x), Rect(x,x), 1^{x^2}): conjugate the trivial strip out of the
  // trivial pair; Rect(x,x) is symmetric so the first two entries persist.
  CertPtr base = conjugate_pair(axiom_trivial_pair(rect(x, x)), 1, 2);
  CertPtr row = base;
  for (int copy = 1; copy < y * z; ++copy) row = combine_hsum(row, base);
  CertPtr acc = row;
  for (int copy = 1; copy < z; ++copy) acc = combine_vsum(acc, row, {0, 1});
  return acc;
}

std::pair<CertPtr, Partition> lemma_squarecube(int k, KroneckerOracle& oracle) {
  if (k < 1) fail("lemma_squarecube: k must be >= 1");
  Partition square22 = rect(2, 2);
  Partition row4 = trivial_shape(4);
  CertPtr with_row = axiom_oracle({square22, square22, square22, row4}, oracle);
  CertPtr with_square = axiom_oracle({square22, square22, square22, square22}, oracle);

  auto strip_relation = [&](int j) {
    // j copies of (4) and k-j copies of (2,2): fourth entry (2k+2j, 2k-2j).
    CertPtr acc;
    for (int t = 0; t < j; ++t) acc = acc ? combine_hsum(acc, with_row) : with_row;
    for (int t = 0; t < k - j; ++t) acc = acc ? combine_hsum(acc, with_square) : with_square;
    return acc;
  };

  CertPtr acc;
  for (int j = 1; j <= k; ++j) {
    CertPtr rel = strip_relation(j);
    acc = acc ? combine_vsum(acc, rel, {0, 1, 2, 3}) : rel;
  }
  return {acc, acc->conclusion[3]};
}

CertPtr lemma_hookidempotent(int a, int b, KroneckerOracle& oracle) {
  if (a < 1 || b < 1) fail("lemma_hookidempotent: parameters must be >= 1");
  int hi = std::max(a, b), lo = std::min(a, b);
  // Hook(lo,lo) is symmetric; pad its cube with a trivial strip.
  CertPtr acc = axiom_symmetric_cube(hook(lo, lo), &oracle);
  if (hi > lo) acc = combine_hsum(acc, axiom_trivial_pair(trivial_shape(hi - lo)));
  if (a >= b) return acc;
  // Conjugate the first two entries back to Hook(a,b).
  return conjugate_pair(acc, 0, 1);
}

CertPtr lemma_hooksquare(int x, int y, int m) {
  if (m < 1 || x < m || y < m) fail("lemma_hooksquare: need x >= m, y >= m, m >= 1");
  if (m == 1) return axiom_trivial_pair(hook(x, y));
  // c(1^{m-1}, 1_{m-1}, 1^{m-1}) and its mirror.
  Partition col = column_or_empty(m - 1);
  CertPtr left = conjugate_pair(axiom_trivial_pair(col), 1, 2);
  CertPtr right = permuted(left, {1, 0, 2});
  CertPtr acc = combine_hsum(left, right);  // c(Hook(m,m-1), Hook(m,m-1), Rect(2,m-1))
  if (x > m) acc = combine_hsum(acc, axiom_trivial_pair(trivial_shape(x - m)));
  // Vertical strip on the first two entries, horizontal on the third.
  CertPtr strip = axiom_trivial_pair(column_shape(y - m + 1));
  return combine_vsum(acc, strip, {0, 1});
}

CertPtr lemma_pieri(const Partition& mu, int k, PieriVariant variant) {
  if (k < 1) fail("lemma_pieri: k must be >= 1");
  CertPtr body = permuted(axiom_trivial_pair(mu), {2, 0, 1});  // c(1_{|mu|}, mu, mu)
  if (variant == PieriVariant::TwoRow) {
    if (mu.size() < k) fail("lemma_pieri: two-row variant needs |mu| >= k");
    CertPtr strip = axiom_trivial_pair(trivial_shape(k));      // c(1_k, 1_k, 1_k)
    return combine_vsum(body, strip, {0, 2});
  }
  // c(1^k, 1_k, 1^k)
  CertPtr strip = conjugate_pair(axiom_trivial_pair(column_shape(k)), 1, 2);
  return combine_hsum(body, strip);
}

std::pair<CertPtr, Partition> lemma_neartensor(const Partition& l, const Partition& lt,
                                               KroneckerOracle& oracle) {
  if (l.size() != lt.size()) fail("lemma_neartensor: sizes differ");
  long long n = l.size();
  long long d = blockwise_distance(l, lt);
  if (2 * d > n) fail("lemma_neartensor: distance exceeds n/2");
  if (d == 0) return {axiom_trivial_pair(l), Partition()};
  if (n > oracle.config().coefficient_cap)
    throw resource_limit_error("lemma_neartensor: size exceeds oracle cap");
  for (const auto& theta : partitions_of(static_cast<int>(2 * d))) {
    Relation candidate{l, lt, hsum(trivial_or_empty(n - 2 * d), theta)};
    if (oracle.extended_kronecker(candidate) > 0)
      return {axiom_oracle(std::move(candidate), oracle), theta};
  }
  // The covering lemma guarantees some theta exists.
  throw std::logic_error("lemma_neartensor: no theta found; oracle and theory disagree");
}

CertPtr lemma_nearsharedrows(const Partition& l, const Partition& lt, int r,
                             const Partition& nu_choice, KroneckerOracle& oracle) {
  if (r < 1) fail("lemma_nearsharedrows: r must be >= 1");
  if (shared_dist_rows({l, lt}) < r)
    fail("lemma_nearsharedrows: fewer than r shared distinct row lengths");

  // The r largest shared lengths form the staircase-bearing part.
  std::set<int, std::greater<int>> shared;
  {
    std::set<int> a(l.rows().begin(), l.rows().end());
    for (int len : lt.rows())
      if (a.count(len)) shared.insert(len);
  }
  std::vector<int> chosen;
  for (int len : shared) {
    chosen.push_back(len);
    if (static_cast<int>(chosen.size()) == r) break;
  }

  auto [chi, gamma] = staircase_decompose(l, r, chosen);
  auto [chi_t, gamma_t] = staircase_decompose(lt, r, chosen);
  if (gamma != gamma_t) throw std::logic_error("lemma_nearsharedrows: shared rows disagree");

  Partition rho = staircase(r);
  if (nu_choice.size() != rho.size())
    fail("lemma_nearsharedrows: nu_choice must have the staircase size");
  if (!oracle.tensor_support(rho, rho).members.count(nu_choice))
    fail("lemma_nearsharedrows: nu_choice is not in the staircase tensor square");

  long long d = blockwise_distance(chi, chi_t);
  long long m = l.size() - 2 * d - rho.size();
  if (m < 0) fail("lemma_nearsharedrows: m would be negative");

  CertPtr staircase_part = axiom_oracle({rho, rho, nu_choice}, oracle);
  CertPtr middle = gamma.empty()
                       ? staircase_part
                       : combine_hsum(staircase_part, axiom_trivial_pair(gamma));
  if (chi.empty() && chi_t.empty()) return middle;
  auto [near, theta] = lemma_neartensor(chi, chi_t, oracle);
  (void)theta;
  return combine_vsum(near, middle, {0, 1});
}

// --- Verification --------------------------------------------------------

namespace {

struct Verifier {
  KroneckerOracle& oracle;
  VerifyMode mode;
  VerifyReport report;

  void structural_failure(const std::string& path, const std::string& msg) {
    report.structural_ok = false;
    report.failures.push_back({path, msg});
  }

  void visit(const Certificate& node, const std::string& path) {
    const Relation& r = node.conclusion;
    if (r.size() < 3) {
      structural_failure(path, "relation has fewer than 3 entries");
      return;
    }
    for (const auto& p : r)
      if (p.size() != r[0].size()) {
        structural_failure(path, "relation entries differ in size");
        return;
      }

    switch (node.rule) {
      case Rule::AxiomTrivialPair: {
        if (r.size() != 3 || r[0] != r[1] || r[2] != trivial_or_empty(r[0].size()))
          structural_failure(path, "not of the form c(l, l, 1_n)");
        break;
      }
      case Rule::AxiomSymmetricCube: {
        if (r.size() != 3 || r[0] != r[1] || r[0] != r[2] || conjugate(r[0]) != r[0])
          structural_failure(path, "not a symmetric tensor cube");
        else if (mode != VerifyMode::Structural)
          check_axiom_positive(node, path);
        break;
      }
      case Rule::AxiomOracle: {
        if (!node.children.empty())
          structural_failure(path, "axiom with children");
        else if (mode != VerifyMode::Structural)
          check_axiom_positive(node, path);
        break;
      }
      case Rule::CombineHsum: {
        if (node.children.size() != 2 ||
            node.children[0]->conclusion.size() != r.size() ||
            node.children[1]->conclusion.size() != r.size()) {
          structural_failure(path, "combine-hsum needs two children of matching arity");
          break;
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (r[i] != hsum(node.children[0]->conclusion[i], node.children[1]->conclusion[i])) {
            structural_failure(path, "entry " + std::to_string(i) + " is not the horizontal sum");
            break;
          }
        }
        break;
      }
      case Rule::CombineVsum: {
        if (node.children.size() != 2 ||
            node.children[0]->conclusion.size() != r.size() ||
            node.children[1]->conclusion.size() != r.size()) {
          structural_failure(path, "combine-vsum needs two children of matching arity");
          break;
        }
        if (node.conj_indices.size() % 2 != 0) {
          structural_failure(path, "odd number of vertically summed positions");
          break;
        }
        std::set<int> conj(node.conj_indices.begin(), node.conj_indices.end());
        if (conj.size() != node.conj_indices.size()) {
          structural_failure(path, "repeated conjugation index");
          break;
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
          const Partition& a = node.children[0]->conclusion[i];
          const Partition& b = node.children[1]->conclusion[i];
          Partition expect = conj.count(static_cast<int>(i)) ? vsum(a, b) : hsum(a, b);
          if (r[i] != expect) {
            structural_failure(path, "entry " + std::to_string(i) + " has the wrong sum");
            break;
          }
        }
        break;
      }
      case Rule::ConjugatePair: {
        if (node.children.size() != 1 || node.pair_i == node.pair_j || node.pair_i < 0 ||
            node.pair_j >= static_cast<int>(r.size()) ||
            node.children[0]->conclusion.size() != r.size()) {
          structural_failure(path, "bad conjugate-pair node");
          break;
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
          bool flip = static_cast<int>(i) == node.pair_i || static_cast<int>(i) == node.pair_j;
          Partition expect = flip ? conjugate(node.children[0]->conclusion[i])
                                  : node.children[0]->conclusion[i];
          if (r[i] != expect) {
            structural_failure(path, "entry " + std::to_string(i) + " not conjugated correctly");
            break;
          }
        }
        break;
      }
      case Rule::Permute: {
        if (node.children.size() != 1 || node.permutation.size() != r.size() ||
            node.children[0]->conclusion.size() != r.size()) {
          structural_failure(path, "bad permute node");
          break;
        }
        std::vector<bool> seen(r.size(), false);
        bool ok = true;
        for (int p : node.permutation) {
          if (p < 0 || p >= static_cast<int>(r.size()) || seen[static_cast<std::size_t>(p)]) {
            ok = false;
            break;
          }
          seen[static_cast<std::size_t>(p)] = true;
        }
        if (!ok) {
          structural_failure(path, "not a permutation");
          break;
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (r[i] != node.children[0]->conclusion[static_cast<std::size_t>(node.permutation[i])]) {
            structural_failure(path, "entry " + std::to_string(i) + " does not match permutation");
            break;
          }
        }
        break;
      }
    }

    for (std::size_t i = 0; i < node.children.size(); ++i)
      visit(*node.children[i], path + ".child[" + std::to_string(i) + "]");
  }

  void check_axiom_positive(const Certificate& node, const std::string& path) {
    long long n = relation_size(node.conclusion);
    if (n > oracle.config().coefficient_cap) {
      report.unverified.push_back({path, "leaf size exceeds oracle cap"});
      return;
    }
    if (oracle.extended_kronecker(node.conclusion) <= 0) {
      report.leaves_ok = false;
      report.failures.push_back({path, "oracle reports zero coefficient for leaf"});
    }
  }
};

}  // namespace

bool VerifyReport::passed(VerifyMode mode) const {
  if (!structural_ok) return false;
  if (mode == VerifyMode::Structural) return true;
  if (!leaves_ok) return false;
  if (mode == VerifyMode::Full && root_positive.has_value() && !*root_positive) return false;
  return true;
}

std::string VerifyReport::to_string() const {
  std::ostringstream os;
  os << "structural: " << (structural_ok ? "ok" : "FAILED") << '\n';
  os << "leaves: " << (leaves_ok ? "ok" : "FAILED") << '\n';
  if (root_positive.has_value())
    os << "root oracle check: " << (*root_positive ? "positive" : "ZERO") << '\n';
  for (const auto& f : failures) os << "failure at " << f.path << ": " << f.message << '\n';
  for (const auto& u : unverified) os << "unverified: " << u.path << ": " << u.message << '\n';
  return os.str();
}

VerifyReport verify_certificate(const Certificate& cert, VerifyMode mode,
                                KroneckerOracle& oracle) {
  Verifier v{oracle, mode, {}};
  v.visit(cert, "root");
  if (mode == VerifyMode::Full && v.report.structural_ok) {
    long long n = relation_size(cert.conclusion);
    if (n > oracle.config().coefficient_cap) {
      v.report.unverified.push_back({"root", "conclusion size exceeds oracle cap"});
    } else {
      v.report.root_positive = oracle.extended_kronecker(cert.conclusion) > 0;
    }
  }
  return v.report;
}

// --- Serialization -------------------------------------------------------

namespace {

constexpr std::string_view kCertMagic = "kroncert";
constexpr int kCertVersion = 1;

void collect_postorder(const CertPtr& node, std::vector<CertPtr>& order,
                       std::map<const Certificate*, std::size_t>& index) {
  if (index.count(node.get())) return;
  for (const auto& child : node->children) collect_postorder(child, order, index);
  index[node.get()] = order.size();
  order.push_back(node);
}

std::string join_ints(const std::vector<int>& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::vector<int> split_ints(const std::string& text, const std::string& where) {
  std::vector<int> out;
  if (text == "-") return out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ','))
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail(where + ": bad integer list '" + text + "'");
    }
  return out;
}

}  // namespace

std::string serialize_certificate(const Certificate& cert) {
  // Wrap in a non-owning shared_ptr for the traversal only.
  CertPtr root(&cert, [](const Certificate*) {});
  std::vector<CertPtr> order;
  std::map<const Certificate*, std::size_t> index;
  collect_postorder(root, order, index);

  std::ostringstream os;
  os << kCertMagic << ' ' << kCertVersion << '\n';
  os << "nodes " << order.size() << '\n';
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Certificate& node = *order[i];
    os << i << ' ' << rule_name(node.rule);
    if (!node.children.empty()) {
      os << " children ";
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        if (c) os << ',';
        os << index.at(node.children[c].get());
      }
    }
    switch (node.rule) {
      case Rule::CombineVsum:
        os << " conj " << join_ints(node.conj_indices);
        break;
      case Rule::ConjugatePair:
        os << " pair " << node.pair_i << ',' << node.pair_j;
        break;
      case Rule::Permute:
        os << " perm " << join_ints(node.permutation);
        break;
      default:
        break;
    }
    os << " entries ";
    for (std::size_t e = 0; e < node.conclusion.size(); ++e) {
      if (e) os << '|';
      os << node.conclusion[e].to_string();
    }
    if (node.rule == Rule::AxiomOracle || node.rule == Rule::AxiomSymmetricCube ||
        node.rule == Rule::AxiomTrivialPair) {
      if (node.verified_n)
        os << " checked " << *node.verified_n;
      else
        os << " unchecked";
    }
    os << '\n';
  }
  os << "root " << order.size() - 1 << '\n';
  return os.str();
}

CertPtr deserialize_certificate(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> std::string {
    if (!std::getline(is, line)) fail("certificate: unexpected end of input at line " +
                                      std::to_string(line_no + 1));
    ++line_no;
    return line;
  };
  auto here = [&] { return " (line " + std::to_string(line_no) + ")"; };

  {
    std::istringstream header(next_line());
    std::string magic;
    int version = -1;
    header >> magic >> version;
    if (magic != kCertMagic) fail("certificate: bad magic" + here());
    if (version != kCertVersion)
      fail("certificate: unsupported schema version " + std::to_string(version) + here());
  }
  std::size_t count = 0;
  {
    std::istringstream l(next_line());
    std::string tag;
    if (!(l >> tag >> count) || tag != "nodes" || count == 0)
      fail("certificate: bad nodes line" + here());
  }

  std::vector<std::shared_ptr<Certificate>> nodes(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::istringstream l(next_line());
    std::size_t idx;
    std::string rule_tag;
    if (!(l >> idx >> rule_tag) || idx != i)
      fail("certificate: bad node index" + here());
    auto node = std::make_shared<Certificate>();
    if (rule_tag == "axiom-oracle") node->rule = Rule::AxiomOracle;
    else if (rule_tag == "axiom-symmetric-cube") node->rule = Rule::AxiomSymmetricCube;
    else if (rule_tag == "axiom-trivial-pair") node->rule = Rule::AxiomTrivialPair;
    else if (rule_tag == "combine-hsum") node->rule = Rule::CombineHsum;
    else if (rule_tag == "combine-vsum") node->rule = Rule::CombineVsum;
    else if (rule_tag == "conjugate-pair") node->rule = Rule::ConjugatePair;
    else if (rule_tag == "permute") node->rule = Rule::Permute;
    else fail("certificate: unknown rule '" + rule_tag + "'" + here());

    std::string token;
    bool saw_entries = false;
    while (l >> token) {
      if (token == "children") {
        std::string list;
        if (!(l >> list)) fail("certificate: missing children list" + here());
        for (int c : split_ints(list, "certificate children" + here())) {
          if (c < 0 || static_cast<std::size_t>(c) >= i)
            fail("certificate: child index out of range" + here());
          node->children.push_back(nodes[static_cast<std::size_t>(c)]);
        }
      } else if (token == "conj") {
        std::string list;
        if (!(l >> list)) fail("certificate: missing conj list" + here());
        node->conj_indices = split_ints(list, "certificate conj" + here());
      } else if (token == "pair") {
        std::string list;
        if (!(l >> list)) fail("certificate: missing pair" + here());
        auto xs = split_ints(list, "certificate pair" + here());
        if (xs.size() != 2) fail("certificate: pair needs two indices" + here());
        node->pair_i = xs[0];
        node->pair_j = xs[1];
      } else if (token == "perm") {
        std::string list;
        if (!(l >> list)) fail("certificate: missing perm list" + here());
        node->permutation = split_ints(list, "certificate perm" + here());
      } else if (token == "entries") {
        std::string blob;
        if (!(l >> blob)) fail("certificate: missing entries" + here());
        std::istringstream es(blob);
        std::string one;
        while (std::getline(es, one, '|')) node->conclusion.push_back(Partition::parse(one));
        saw_entries = true;
      } else if (token == "checked") {
        int n;
        if (!(l >> n)) fail("certificate: bad checked value" + here());
        node->verified_n = n;
      } else if (token == "unchecked") {
        node->verified_n = std::nullopt;
      } else {
        fail("certificate: unexpected token '" + token + "'" + here());
      }
    }
    if (!saw_entries) fail("certificate: node without entries" + here());
    nodes[i] = std::move(node);
  }
  std::size_t root_idx = 0;
  {
    std::istringstream l(next_line());
    std::string tag;
    if (!(l >> tag >> root_idx) || tag != "root" || root_idx >= count)
      fail("certificate: bad root line" + here());
  }
  return nodes[root_idx];
}

}  // namespace kron
