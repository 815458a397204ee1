#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "kron/characters.hpp"
#include "kron/partition.hpp"

using namespace kron;

namespace {

Partition P(const char* text) { return Partition::parse(text); }

int sign_of_class(const Partition& cycle_type) {
  int transpositions = static_cast<int>(cycle_type.size()) - cycle_type.num_rows();
  return transpositions % 2 == 0 ? 1 : -1;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("kron_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("partition enumeration") {
  auto zero = partitions_of(0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].empty());

  auto four = partitions_of(4);
  REQUIRE(four.size() == 5);
  CHECK(four[0] == P("[4]"));
  CHECK(four[4] == P("[1,1,1,1]"));

  CHECK(partitions_of(10).size() == 42);
  // Cross-check the enumeration count against the recurrence for a range.
  for (int n = 0; n <= 25; ++n)
    CHECK(mpz_class(static_cast<unsigned long>(partitions_of(n).size())) == partition_count(n));

  CHECK_THROWS_AS(partitions_of(100), resource_limit_error);
  CHECK_THROWS_AS(partitions_of(-1), std::invalid_argument);
}

TEST_CASE("class orders") {
  CHECK(class_order({P("[1,1,1]")}) == 6);
  CHECK(class_order({P("[2,1]")}) == 2);
  CHECK(class_order({P("[3]")}) == 3);
  CHECK(class_order({Partition()}) == 1);

  // Class sizes n!/z sum to n!.
  for (int n = 1; n <= 8; ++n) {
    mpz_class nfact, total = 0;
    mpz_fac_ui(nfact.get_mpz_t(), static_cast<unsigned long>(n));
    for (const auto& rho : partitions_of(n)) total += nfact / class_order({rho});
    CHECK(total == nfact);
  }
}

TEST_CASE("single character values") {
  CHECK(character(P("[2,1]"), {P("[1,1,1]")}) == 2);
  CHECK(character(P("[2,1]"), {P("[3]")}) == -1);
  CHECK(character(P("[2,1]"), {P("[2,1]")}) == 0);
  CHECK_THROWS_AS(character(P("[2,1]"), {P("[4]")}), std::invalid_argument);

  for (int n = 1; n <= 8; ++n) {
    Partition trivial = trivial_shape(n);
    Partition sign = column_shape(n);
    for (const auto& rho : partitions_of(n)) {
      CHECK(character(trivial, {rho}) == 1);
      CHECK(character(sign, {rho}) == sign_of_class(rho));
    }
  }
}

TEST_CASE("character tables") {
  auto t1 = build_character_table(1);
  REQUIRE(t1.irreps.size() == 1);
  CHECK(t1.values[0][0] == 1);

  auto t3 = build_character_table(3);
  REQUIRE(t3.irreps.size() == 3);
  // Classes in order (1,1,1), (2,1), (3); irreps (3), (2,1), (1,1,1).
  CHECK(t3.classes[2].cycle_type == P("[1,1,1]"));
  CHECK(t3.classes[1].cycle_type == P("[2,1]"));
  CHECK(t3.classes[0].cycle_type == P("[3]"));
  auto row = [&](const char* irrep) {
    auto idx = t3.irrep_index(P(irrep));
    REQUIRE(idx.has_value());
    return t3.values[*idx];
  };
  auto cls = [&](const char* cycle) {
    for (std::size_t c = 0; c < t3.classes.size(); ++c)
      if (t3.classes[c].cycle_type == P(cycle)) return c;
    FAIL("class not found");
    return std::size_t{0};
  };
  CHECK(row("[3]")[cls("[1,1,1]")] == 1);
  CHECK(row("[2,1]")[cls("[1,1,1]")] == 2);
  CHECK(row("[2,1]")[cls("[2,1]")] == 0);
  CHECK(row("[2,1]")[cls("[3]")] == -1);
  CHECK(row("[1,1,1]")[cls("[2,1]")] == -1);

  auto t8 = build_character_table(8);
  CHECK(t8.row_orthogonal());
  CHECK(t8.column_orthogonal());

  // Conjugation twists by the sign character.
  for (int n = 1; n <= 10; ++n) {
    auto t = build_character_table(n);
    for (std::size_t i = 0; i < t.irreps.size(); ++i) {
      auto ci = t.irrep_index(conjugate(t.irreps[i]));
      REQUIRE(ci.has_value());
      for (std::size_t c = 0; c < t.classes.size(); ++c)
        CHECK(t.values[*ci][c] == t.values[i][c] * sign_of_class(t.classes[c].cycle_type));
    }
  }

  // Identity column equals hook-length dimensions.
  for (int n = 1; n <= 12; ++n) {
    auto t = build_character_table(n);
    std::size_t identity = t.classes.size() - 1;  // 1^n is last in canonical order
    CHECK(t.classes[identity].cycle_type == column_shape(n));
    for (std::size_t i = 0; i < t.irreps.size(); ++i)
      CHECK(mpz_class(static_cast<long>(t.values[i][identity])) == dimension(t.irreps[i]));
  }

  CHECK_THROWS_AS(build_character_table(25), resource_limit_error);
}

TEST_CASE("parallel build matches single-threaded") {
  auto serial = build_character_table(8, 1);
  auto parallel = build_character_table(8, 2);
  CHECK(serial.values == parallel.values);
}

TEST_CASE("cache round trip and recovery") {
  TempDir dir;
  std::ostringstream warnings;
  CharacterTableCache cache(dir.path, 1, kDefaultTableCap, &warnings);

  auto fresh = cache.get(6);
  CHECK(fresh->n == 6);
  REQUIRE(std::filesystem::exists(cache.file_for(6)));

  // A second cache instance must read back bit-identical content.
  std::string on_disk;
  {
    std::ifstream in(cache.file_for(6), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    on_disk = buf.str();
  }
  CHECK(on_disk == serialize_character_table(*fresh));
  auto parsed = deserialize_character_table(on_disk);
  CHECK(parsed.values == fresh->values);
  CHECK(serialize_character_table(parsed) == on_disk);

  CharacterTableCache reader(dir.path, 1, kDefaultTableCap, &warnings);
  auto loaded = reader.get(6);
  CHECK(loaded->values == fresh->values);
  CHECK(warnings.str().empty());

  // Corrupt file: rebuilt with a warning, and the file is restored.
  {
    std::ofstream out(cache.file_for(6), std::ios::binary | std::ios::trunc);
    out << "kronchar 1\nn 6\ngarbage\n";
  }
  CharacterTableCache recover(dir.path, 1, kDefaultTableCap, &warnings);
  auto rebuilt = recover.get(6);
  CHECK(rebuilt->values == fresh->values);
  CHECK(warnings.str().find("rebuilding") != std::string::npos);
  {
    std::ifstream in(cache.file_for(6), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == on_disk);
  }

  // Version bump is rejected as corrupt.
  std::string bumped = on_disk;
  bumped.replace(bumped.find("kronchar 1"), 10, "kronchar 9");
  CHECK_THROWS(deserialize_character_table(bumped));
}
