#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "kron/certificate.hpp"
#include "kron/rng.hpp"

using namespace kron;

namespace {

Partition P(const char* text) { return Partition::parse(text); }

bool fully_verifies(const CertPtr& cert, KroneckerOracle& oracle) {
  auto report = verify_certificate(*cert, VerifyMode::Full, oracle);
  return report.passed(VerifyMode::Full) && report.root_positive.value_or(false);
}

}  // namespace

TEST_CASE("axioms") {
  KroneckerOracle oracle;
  auto pair = axiom_trivial_pair(P("[2,1]"));
  CHECK(pair->conclusion == Relation{P("[2,1]"), P("[2,1]"), P("[3]")});
  CHECK(fully_verifies(pair, oracle));

  auto for_row = axiom_trivial_pair(P("[5]"));
  CHECK(for_row->conclusion == Relation{P("[5]"), P("[5]"), P("[5]")});

  auto standard = axiom_trivial_pair(P("[4,1]"));
  CHECK(oracle.extended_kronecker(standard->conclusion) == 1);

  auto cube = axiom_symmetric_cube(P("[2,1]"), &oracle);
  CHECK(cube->conclusion == Relation{P("[2,1]"), P("[2,1]"), P("[2,1]")});
  CHECK(cube->verified_n == 3);
  CHECK(fully_verifies(cube, oracle));
  CHECK_THROWS_AS(axiom_symmetric_cube(P("[3,1]"), &oracle), std::invalid_argument);

  auto unit = axiom_symmetric_cube(P("[1]"), &oracle);
  CHECK(unit->conclusion == Relation{P("[1]"), P("[1]"), P("[1]")});

  // Rect(2,2) is symmetric.
  auto square = axiom_symmetric_cube(rect(2, 2), &oracle);
  CHECK(fully_verifies(square, oracle));

  // Over-cap symmetric cube is kept as an unverified cited leaf.
  OracleConfig small_cap;
  small_cap.coefficient_cap = 3;
  KroneckerOracle capped(small_cap);
  auto large = axiom_symmetric_cube(rect(3, 3), &capped);
  CHECK_FALSE(large->verified_n.has_value());
  auto report = verify_certificate(*large, VerifyMode::Leaves, capped);
  CHECK(report.passed(VerifyMode::Leaves));
  CHECK(report.unverified.size() == 1);

  CHECK_THROWS(axiom_oracle({P("[2]"), P("[1,1]"), P("[2]")}, oracle));  // zero coefficient
}

TEST_CASE("semigroup combination, figure case") {
  KroneckerOracle oracle;
  // c((3,2,1),(6),(3,2,1)) as a reordered trivial pair.
  auto left = permute(axiom_trivial_pair(P("[3,2,1]")), {0, 2, 1});
  CHECK(left->conclusion == Relation{P("[3,2,1]"), P("[6]"), P("[3,2,1]")});
  // c((4),(1,1,1,1),(1,1,1,1)) by conjugating the trivial pair of (4).
  auto right = conjugate_pair(axiom_trivial_pair(P("[4]")), 1, 2);
  CHECK(right->conclusion == Relation{P("[4]"), P("[1,1,1,1]"), P("[1,1,1,1]")});

  auto combined = combine_hsum(left, right);
  CHECK(combined->conclusion == Relation{P("[7,2,1]"), P("[7,1,1,1]"), P("[4,3,2,1]")});
  CHECK(fully_verifies(combined, oracle));

  // Identity element.
  auto empty = axiom_trivial_pair(Partition());
  CHECK(combine_hsum(combined, empty)->conclusion == combined->conclusion);

  auto unit = axiom_trivial_pair(P("[1]"));
  CHECK(combine_hsum(unit, unit)->conclusion == Relation{P("[2]"), P("[2]"), P("[2]")});
}

TEST_CASE("vertical combination parity rule") {
  KroneckerOracle oracle;
  auto unit = axiom_trivial_pair(P("[1]"));
  // Vertically adding all three entries is exactly the alternating-square
  // counterexample and must be rejected.
  CHECK_THROWS_AS(combine_vsum(unit, unit, {0, 1, 2}), std::invalid_argument);

  // Empty conjugation set degenerates to the horizontal sum.
  auto none = combine_vsum(unit, unit, {});
  CHECK(none->conclusion == combine_hsum(unit, unit)->conclusion);

  auto both = combine_vsum(unit, unit, {0, 1});
  CHECK(both->conclusion == Relation{P("[1,1]"), P("[1,1]"), P("[2]")});
  CHECK(fully_verifies(both, oracle));
}

TEST_CASE("conjugate pair") {
  KroneckerOracle oracle;
  auto pair = axiom_trivial_pair(P("[2,1]"));
  auto twisted = conjugate_pair(pair, 1, 2);
  CHECK(twisted->conclusion == Relation{P("[2,1]"), P("[2,1]"), P("[1,1,1]")});
  CHECK(fully_verifies(twisted, oracle));
  auto back = conjugate_pair(twisted, 1, 2);
  CHECK(back->conclusion == pair->conclusion);
  CHECK_THROWS_AS(conjugate_pair(pair, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(conjugate_pair(pair, 0, 5), std::invalid_argument);
}

TEST_CASE("rectangle cube lemma") {
  KroneckerOracle oracle;
  auto single = lemma_rectcube(2, 1, 0, oracle);
  CHECK(single->conclusion == Relation{P("[2,2]"), P("[2,2]"), P("[2,2]")});
  CHECK(fully_verifies(single, oracle));

  auto doubled = lemma_rectcube(2, 2, 0, oracle);
  CHECK(doubled->conclusion == Relation{P("[4,4]"), P("[4,4]"), P("[4,4]")});
  CHECK(fully_verifies(doubled, oracle));

  auto padded = lemma_rectcube(2, 1, 1, oracle);
  CHECK(padded->conclusion == Relation{P("[3,3]"), P("[3,3]"), P("[4,2]")});
  CHECK(fully_verifies(padded, oracle));
}

TEST_CASE("rectangle square lemma") {
  KroneckerOracle oracle;
  auto unit = lemma_rectsquare(1, 1, 1, oracle);
  CHECK(unit->conclusion == Relation{P("[1]"), P("[1]"), P("[1]")});

  auto tall = lemma_rectsquare(2, 1, 1, oracle);
  CHECK(tall->conclusion == Relation{P("[2,2]"), P("[2,2]"), P("[1,1,1,1]")});
  CHECK(fully_verifies(tall, oracle));

  auto figure = lemma_rectsquare(2, 3, 1, oracle);
  CHECK(figure->conclusion ==
        Relation{rect(6, 2), rect(6, 2), rect(3, 4)});
  CHECK(fully_verifies(figure, oracle));

  auto with_z = lemma_rectsquare(1, 1, 2, oracle);
  CHECK(with_z->conclusion == Relation{rect(2, 2), rect(2, 2), rect(4, 1)});
  CHECK(fully_verifies(with_z, oracle));
}

TEST_CASE("square cube lemma") {
  KroneckerOracle oracle;
  auto [one, w1] = lemma_squarecube(1, oracle);
  CHECK(one->conclusion == Relation{P("[2,2]"), P("[2,2]"), P("[2,2]"), P("[4]")});
  CHECK(w1 == P("[4]"));
  CHECK(dist_rows(w1) == 1);
  CHECK(fully_verifies(one, oracle));

  auto [three, w3] = lemma_squarecube(3, oracle);
  CHECK(three->conclusion[0] == rect(6, 6));
  CHECK(w3 == P("[12,10,8,4,2]"));
  CHECK(w3.size() == 36);

  for (int k = 1; k <= 6; ++k) {
    auto [cert, witness] = lemma_squarecube(k, oracle);
    CHECK(witness.size() == 4LL * k * k);
    CHECK(dist_rows(witness) == 2 * k - 1);
    CHECK(cert->conclusion[0] == rect(2 * k, 2 * k));
    CHECK(verify_certificate(*cert, VerifyMode::Leaves, oracle).passed(VerifyMode::Leaves));
  }
}

TEST_CASE("hook idempotent lemma") {
  KroneckerOracle oracle;
  auto square = lemma_hookidempotent(2, 2, oracle);
  CHECK(square->conclusion == Relation{P("[2,1]"), P("[2,1]"), P("[2,1]")});
  CHECK(fully_verifies(square, oracle));

  auto row = lemma_hookidempotent(4, 1, oracle);
  CHECK(row->conclusion == Relation{P("[4]"), P("[4]"), P("[4]")});

  auto wide = lemma_hookidempotent(3, 2, oracle);
  CHECK(wide->conclusion == Relation{P("[3,1]"), P("[3,1]"), P("[3,1]")});
  CHECK(fully_verifies(wide, oracle));

  // Transposed case conjugates back to Hook(a,b) with a < b.
  auto tall = lemma_hookidempotent(2, 3, oracle);
  CHECK(tall->conclusion == Relation{P("[2,1,1]"), P("[2,1,1]"), P("[3,1]")});
  CHECK(fully_verifies(tall, oracle));
}

TEST_CASE("hook square lemma") {
  KroneckerOracle oracle;
  auto degenerate = lemma_hooksquare(4, 3, 1);
  CHECK(degenerate->conclusion == Relation{P("[4,1,1]"), P("[4,1,1]"), P("[6]")});
  CHECK(fully_verifies(degenerate, oracle));

  auto small = lemma_hooksquare(3, 2, 2);
  CHECK(small->conclusion == Relation{P("[3,1]"), P("[3,1]"), P("[4]")});
  CHECK(fully_verifies(small, oracle));

  auto bigger = lemma_hooksquare(4, 4, 3);
  CHECK(bigger->conclusion == Relation{P("[4,1,1,1]"), P("[4,1,1,1]"), P("[5,2]")});
  CHECK(fully_verifies(bigger, oracle));

  auto core = lemma_hooksquare(3, 3, 3);
  CHECK(core->conclusion == Relation{P("[3,1,1]"), P("[3,1,1]"), P("[3,2]")});
  CHECK(fully_verifies(core, oracle));

  CHECK_THROWS_AS(lemma_hooksquare(2, 3, 3), std::invalid_argument);
}

TEST_CASE("pieri lemma") {
  KroneckerOracle oracle;
  auto figure = lemma_pieri(P("[3,2,1]"), 4, PieriVariant::Hook);
  CHECK(figure->conclusion == Relation{P("[7,1,1,1]"), P("[7,2,1]"), P("[4,3,2,1]")});
  CHECK(fully_verifies(figure, oracle));

  auto two_row = lemma_pieri(P("[2]"), 2, PieriVariant::TwoRow);
  CHECK(two_row->conclusion == Relation{P("[2,2]"), P("[4]"), P("[2,2]")});
  CHECK(fully_verifies(two_row, oracle));

  auto tiny = lemma_pieri(P("[1]"), 1, PieriVariant::TwoRow);
  CHECK(tiny->conclusion == Relation{P("[1,1]"), P("[2]"), P("[1,1]")});
  CHECK(fully_verifies(tiny, oracle));

  CHECK_THROWS_AS(lemma_pieri(P("[1]"), 2, PieriVariant::TwoRow), std::invalid_argument);
}

TEST_CASE("near tensor lemma") {
  KroneckerOracle oracle;
  auto [same, theta0] = lemma_neartensor(P("[3,2]"), P("[3,2]"), oracle);
  CHECK(theta0.empty());
  CHECK(same->conclusion == Relation{P("[3,2]"), P("[3,2]"), P("[5]")});

  auto [near, theta1] = lemma_neartensor(P("[3,2]"), P("[4,1]"), oracle);
  CHECK(theta1.size() == 2);
  CHECK(near->conclusion[2] == hsum(P("[3]"), theta1));
  CHECK(fully_verifies(near, oracle));

  auto [small, theta2] = lemma_neartensor(P("[2,1,1]"), P("[2,2]"), oracle);
  CHECK(theta2.size() == 2);
  CHECK(fully_verifies(small, oracle));

  // d((3), 1^3) = 2 exceeds n/2.
  CHECK_THROWS_AS(lemma_neartensor(P("[3]"), P("[1,1,1]"), oracle), std::invalid_argument);
}

TEST_CASE("near shared rows lemma") {
  KroneckerOracle oracle;
  // Identical staircases: reduces to a staircase tensor-square member.
  Partition rho3 = staircase(3);
  for (const auto& nu : oracle.tensor_support(rho3, rho3).members) {
    auto cert = lemma_nearsharedrows(rho3, rho3, 3, nu, oracle);
    CHECK(cert->conclusion == Relation{rho3, rho3, nu});
    CHECK(fully_verifies(cert, oracle));
  }

  // Shared single row length.
  auto cert = lemma_nearsharedrows(P("[4,2,1]"), P("[4,3]"), 1, P("[1]"), oracle);
  CHECK(cert->conclusion[0] == P("[4,2,1]"));
  CHECK(cert->conclusion[1] == P("[4,3]"));
  CHECK(cert->conclusion[2] == P("[6,1]"));
  CHECK(fully_verifies(cert, oracle));

  CHECK_THROWS_AS(lemma_nearsharedrows(P("[4]"), P("[1,1,1,1]"), 1, P("[1]"), oracle),
                  std::invalid_argument);
}

TEST_CASE("figure pair certificate, structural with over-cap root") {
  KroneckerOracle oracle;  // default cap 20: leaves at sizes 15 and 6 verify, root at 26 cannot
  Partition l = P("[8,7,4,3,3,1]"), lt = P("[7,7,5,3,3,1]");
  auto cert = lemma_nearsharedrows(l, lt, 3, P("[4,2]"), oracle);
  CHECK(cert->conclusion[0] == l);
  CHECK(cert->conclusion[1] == lt);
  CHECK(relation_size(cert->conclusion) == 26);
  auto report = verify_certificate(*cert, VerifyMode::Full, oracle);
  CHECK(report.structural_ok);
  CHECK(report.leaves_ok);
  CHECK_FALSE(report.root_positive.has_value());
  CHECK(report.unverified.size() == 1);  // only the root is over cap
  CHECK(report.passed(VerifyMode::Full));
}

TEST_CASE("verification rejects tampering") {
  KroneckerOracle oracle;
  auto good = combine_hsum(axiom_trivial_pair(P("[2,1]")), axiom_trivial_pair(P("[2]")));
  CHECK(verify_certificate(*good, VerifyMode::Full, oracle).passed(VerifyMode::Full));

  auto tampered = std::make_shared<Certificate>(*good);
  tampered->conclusion[0] = P("[3,2]");  // no longer the componentwise hsum
  auto report = verify_certificate(*tampered, VerifyMode::Structural, oracle);
  CHECK_FALSE(report.passed(VerifyMode::Structural));
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].path == "root");

  // Tampering below the root is reported with its path.
  auto deep = std::make_shared<Certificate>(*good);
  auto bad_child = std::make_shared<Certificate>(*good->children[0]);
  bad_child->conclusion[2] = P("[2,1]");
  deep->children[0] = bad_child;
  auto deep_report = verify_certificate(*deep, VerifyMode::Structural, oracle);
  CHECK_FALSE(deep_report.passed(VerifyMode::Structural));
  bool found = false;
  for (const auto& f : deep_report.failures)
    if (f.path == "root.child[0]") found = true;
  CHECK(found);
}

TEST_CASE("serialization round trip") {
  KroneckerOracle oracle;
  auto cert = lemma_pieri(P("[3,2,1]"), 4, PieriVariant::Hook);
  std::string text = serialize_certificate(*cert);
  auto parsed = deserialize_certificate(text);
  CHECK(parsed->equal_tree(*cert));
  CHECK(serialize_certificate(*parsed) == text);
  CHECK(verify_certificate(*parsed, VerifyMode::Full, oracle).passed(VerifyMode::Full));

  // Unsupported schema version.
  std::string bumped = text;
  bumped.replace(bumped.find("kroncert 1"), 10, "kroncert 2");
  CHECK_THROWS_WITH_AS(deserialize_certificate(bumped),
                       doctest::Contains("unsupported schema version"),
                       std::invalid_argument);

  // Malformed node line mentions its location.
  std::string broken = text;
  broken.replace(broken.find("entries"), 7, "entrees");
  CHECK_THROWS_AS(deserialize_certificate(broken), std::invalid_argument);
}

TEST_CASE("randomized semigroup soundness, smoke") {
  KroneckerOracle oracle;
  Rng rng(17);
  auto random_partition_of = [&](int n) {
    auto parts = partitions_of(n);
    return parts[rng.below(parts.size())];
  };
  int built = 0;
  while (built < 60) {
    int n1 = 1 + static_cast<int>(rng.below(3));
    int n2 = 1 + static_cast<int>(rng.below(3));
    Partition a = random_partition_of(n1), b = random_partition_of(n1);
    Partition c = random_partition_of(n2), d = random_partition_of(n2);
    Support sab = oracle.tensor_support(a, b);
    Support scd = oracle.tensor_support(c, d);
    auto pick = [&](const Support& s) {
      auto it = s.members.begin();
      std::advance(it, static_cast<long>(rng.below(s.members.size())));
      return *it;
    };
    auto leaf1 = axiom_oracle({a, b, pick(sab)}, oracle);
    auto leaf2 = axiom_oracle({c, d, pick(scd)}, oracle);
    CertPtr combined;
    switch (rng.below(4)) {
      case 0: combined = combine_hsum(leaf1, leaf2); break;
      case 1: combined = combine_vsum(leaf1, leaf2, {0, 1}); break;
      case 2: combined = combine_vsum(leaf1, leaf2, {0, 2}); break;
      default: combined = combine_vsum(leaf1, leaf2, {1, 2}); break;
    }
    CHECK(oracle.extended_kronecker(combined->conclusion) > 0);
    ++built;
  }
}
