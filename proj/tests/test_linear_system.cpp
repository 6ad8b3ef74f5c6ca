#include <doctest.h>

#include <random>

#include "seshadri/errors.hpp"
#include "seshadri/linear_system.hpp"

using namespace seshadri;

TEST_CASE("canonicalize merges, drops zeros and sorts by multiplicity") {
  const LinearSystem s = canonicalize({{1, 7}, {1, 0}, {3, 2}}, 8);
  REQUIRE(s.blocks().size() == 2);
  CHECK(s.blocks()[0] == Block{3, 2});
  CHECK(s.blocks()[1] == Block{1, 7});
  CHECK(s.text() == "d: 8; mults: 2^3, 7^1");

  const LinearSystem merged = canonicalize({{1, 3}, {1, 4}}, 4);
  REQUIRE(merged.blocks().size() == 1);
  CHECK(merged.blocks()[0] == Block{1, 7});

  CHECK(canonicalize({{0, 5}, {2, 0}}, 3).blocks().empty());
}

TEST_CASE("canonicalize rejects negative input") {
  CHECK_THROWS_AS(canonicalize({}, -1), InvalidInput);
  CHECK_THROWS_AS(canonicalize({{-1, 2}}, 3), InvalidInput);
  CHECK_THROWS_AS(canonicalize({{2, -2}}, 3), InvalidInput);
}

TEST_CASE("canonicalization is idempotent and preserves dimensions") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> small(0, 6);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Block> raw;
    const int len = small(rng);
    for (int i = 0; i < len; ++i) raw.push_back({small(rng), small(rng)});
    const Integer degree = small(rng) * 3;
    const LinearSystem once = canonicalize(raw, degree);
    std::vector<Block> again = once.blocks();
    std::shuffle(again.begin(), again.end(), rng);
    CHECK(canonicalize(again, degree) == once);
    CHECK(canonicalize(once.blocks(), degree) == once);

    Integer conditions = 0;
    for (const auto& b : raw) conditions += b.count * b.multiplicity * (b.multiplicity + 1) / 2;
    CHECK(conditions_count(once) == conditions);
    CHECK(virtual_dimension(once) == degree * (degree + 3) / 2 - conditions);
    for (std::size_t i = 1; i < once.blocks().size(); ++i)
      CHECK(once.blocks()[i - 1].multiplicity > once.blocks()[i].multiplicity);
  }
}

TEST_CASE("virtual and expected dimension") {
  CHECK(virtual_dimension(LinearSystem(1, {})) == 2);
  CHECK(virtual_dimension(LinearSystem::homogeneous(2, 2, 2)) == -1);
  CHECK(virtual_dimension(LinearSystem::homogeneous(35, 10, 11)) == 5);

  CHECK(expected_dimension(LinearSystem::homogeneous(1, 3, 1)) == -1);
  CHECK(expected_dimension(LinearSystem::homogeneous(2, 2, 2)) == -1);
  CHECK(expected_dimension(LinearSystem::homogeneous(10, 12, 2)) == 29);
  CHECK(expected_dimension(LinearSystem::homogeneous(3, 5, 5)) == -1);
}

TEST_CASE("conditions count") {
  CHECK(conditions_count(LinearSystem::homogeneous(4, 7, 1)) == 7);
  CHECK(conditions_count(LinearSystem::homogeneous(35, 10, 11)) == 660);
  CHECK(conditions_count(canonicalize({{3, 2}, {1, 7}}, 8)) == 19);
  CHECK(coefficient_count(35) == 666);
}

TEST_CASE("large integers stay exact") {
  const Integer big("1000000000000000000000");
  const LinearSystem s = LinearSystem::homogeneous(big, 1, 1);
  CHECK(virtual_dimension(s) == big * (big + 3) / 2 - 1);
}

TEST_CASE("parse_system") {
  CHECK(parse_system("d: 35; mults: 10^11") == LinearSystem::homogeneous(35, 10, 11));
  CHECK(parse_system("d: 8; mults: 1^7, 1^0, 3^2") == canonicalize({{7, 1}, {2, 3}}, 8));
  CHECK(parse_system("  d:8;mults:3^2 ,1^7 ") == canonicalize({{2, 3}, {7, 1}}, 8));
  CHECK(parse_system("d: 8") == LinearSystem(8, {}));
  CHECK(parse_system("d: 8;") == LinearSystem(8, {}));
  CHECK(parse_system("d: 8; mults:") == LinearSystem(8, {}));

  CHECK_THROWS_AS(parse_system("d: -1; mults: 2^2"), InvalidInput);
  CHECK_THROWS_AS(parse_system("d: 3; mults: 2^-2"), InvalidInput);
  CHECK_THROWS_AS(parse_system("d 3"), InvalidInput);
  CHECK_THROWS_AS(parse_system("d: 3; mults: 2"), InvalidInput);
  CHECK_THROWS_AS(parse_system("d: 3; mults: 2^2,"), InvalidInput);
  try {
    parse_system("d: 3; mults: 2^x");
    FAIL("expected a syntax error");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("position 15") != std::string::npos);
  }
}

TEST_CASE("text round-trips through the parser") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> small(0, 9);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Block> raw;
    for (int i = small(rng) % 4; i > 0; --i) raw.push_back({small(rng), small(rng)});
    const LinearSystem s(small(rng) * 2, raw);
    CHECK(parse_system(s.text()) == s);
  }
}
