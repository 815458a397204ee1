#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kron/oracle.hpp"
#include "kron/partition.hpp"

namespace kron {

// A Kronecker relation c(lambda_1, ..., lambda_k): the claim that the
// k-fold tensor product contains the trivial representation, i.e. the
// extended Kronecker coefficient is positive. k >= 3, all sizes equal.
using Relation = std::vector<Partition>;

long long relation_size(const Relation& r);

enum class Rule {
  AxiomOracle,        // positivity checked by the brute-force oracle
  AxiomSymmetricCube, // c(l,l,l) for symmetric l
  AxiomTrivialPair,   // c(l,l,1_n)
  CombineHsum,        // semigroup property, componentwise horizontal sum
  CombineVsum,        // vertical sum on an even set of positions, hsum elsewhere
  ConjugatePair,      // conjugate two entries
  Permute,            // reorder entries
};

std::string_view rule_name(Rule r);

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

// An immutable proof tree for a Kronecker relation. Axiom leaves record the
// size at which they were oracle-checked; a missing value marks a
// cited-lemma leaf that was not verifiable at its size.
struct Certificate {
  Relation conclusion;
  Rule rule = Rule::AxiomOracle;
  std::vector<CertPtr> children;

  std::vector<int> conj_indices;       // CombineVsum
  int pair_i = -1, pair_j = -1;        // ConjugatePair
  std::vector<int> permutation;        // Permute
  std::optional<int> verified_n;       // axiom leaves

  bool equal_tree(const Certificate& other) const;
};

// --- Combinators ---------------------------------------------------------

CertPtr axiom_trivial_pair(const Partition& l);

// Requires l symmetric; oracle-verified when the size is within cap,
// otherwise left as an unverified cited leaf.
CertPtr axiom_symmetric_cube(const Partition& l, KroneckerOracle* oracle = nullptr);

// Verifies positivity immediately; throws if the oracle reports zero.
CertPtr axiom_oracle(Relation relation, KroneckerOracle& oracle);

CertPtr combine_hsum(const CertPtr& a, const CertPtr& b);
CertPtr combine_vsum(const CertPtr& a, const CertPtr& b, const std::set<int>& conj_indices);
CertPtr conjugate_pair(const CertPtr& a, int i, int j);
CertPtr permute(const CertPtr& a, std::vector<int> permutation);

// --- Lemma builders ------------------------------------------------------

// c(Rect(ab+c,a), Rect(ab+c,a), Rect(ab,a) +_H 1_{ac}); c may be 0.
CertPtr lemma_rectcube(int a, int b, int c, KroneckerOracle& oracle);

// c(Rect(xyz,xz), Rect(xyz,xz), Rect(yz^2,x^2)).
CertPtr lemma_rectsquare(int x, int y, int z, KroneckerOracle& oracle);

// 4-entry relation c(Rect(2k,2k) x3, witness); the witness is the vertical
// sum of (2k+2j, 2k-2j) for j = 1..k, with 2k-1 distinct row lengths.
std::pair<CertPtr, Partition> lemma_squarecube(int k, KroneckerOracle& oracle);

// c(Hook(a,b), Hook(a,b), Hook(max(a,b), min(a,b))).
CertPtr lemma_hookidempotent(int a, int b, KroneckerOracle& oracle);

// c(Hook(x,y), Hook(x,y), Rect(2,m-1) +_H 1_{x+y-2m+1}) for x,y >= m >= 1.
CertPtr lemma_hooksquare(int x, int y, int m);

enum class PieriVariant { TwoRow, Hook };

// TwoRow: c((n-k,k), mu +_H 1_k, mu +_V 1_k), needs |mu| >= k.
// Hook:   c(Hook(n-k+1,k), mu +_H 1_k, mu +_H 1^k).   (n = |mu| + k)
CertPtr lemma_pieri(const Partition& mu, int k, PieriVariant variant);

// Finds theta of size 2d with c(l, lt, 1_{n-2d} +_H theta) by exhaustive
// oracle search, d = blockwise distance; requires d <= n/2 and n within cap.
std::pair<CertPtr, Partition> lemma_neartensor(const Partition& l, const Partition& lt,
                                               KroneckerOracle& oracle);

// c(l, lt, 1_m +_H theta +_H nu) for nu in the staircase tensor square,
// assembled from the shared-staircase decomposition; m = n - 2d' - r(r+1)/2
// where d' is the distance of the leftover parts.
CertPtr lemma_nearsharedrows(const Partition& l, const Partition& lt, int r,
                             const Partition& nu_choice, KroneckerOracle& oracle);

// --- Verification --------------------------------------------------------

enum class VerifyMode { Structural, Leaves, Full };

struct VerifyIssue {
  std::string path;
  std::string message;
};

struct VerifyReport {
  bool structural_ok = true;
  bool leaves_ok = true;
  std::optional<bool> root_positive;    // set in Full mode when within cap
  std::vector<VerifyIssue> failures;
  std::vector<VerifyIssue> unverified;  // over-cap leaves (and root)

  bool passed(VerifyMode mode) const;
  std::string to_string() const;
};

VerifyReport verify_certificate(const Certificate& cert, VerifyMode mode,
                                KroneckerOracle& oracle);

// --- Serialization -------------------------------------------------------

// Structured text, schema "kroncert 1": nodes in DFS post-order with child
// references by index. Bit-exact round trip.
std::string serialize_certificate(const Certificate& cert);

// Throws std::invalid_argument naming the offending line on malformed input.
CertPtr deserialize_certificate(const std::string& text);

}  // namespace kron
