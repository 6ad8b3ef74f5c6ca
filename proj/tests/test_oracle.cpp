#include <doctest.h>

#include <random>

#include "seshadri/errors.hpp"
#include "seshadri/oracle.hpp"

using namespace seshadri;

namespace {

LinearSystem sys(int d, int n, int m) { return LinearSystem::homogeneous(d, n, m); }

Integer binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Rank over Q of the conditions matrix at integer points, by fraction-valued
// elimination. Only meant for tiny systems.
std::size_t exact_rank(const LinearSystem& s, std::uint64_t seed) {
  const int d = static_cast<int>(s.degree());
  std::vector<std::pair<int, int>> monomials;
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; i + j <= d; ++j) monomials.emplace_back(i, j);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-1000, 1000);
  std::vector<std::vector<Rational>> rows;
  for (const auto& block : s.blocks()) {
    const int m = static_cast<int>(block.multiplicity);
    for (int p = 0; p < static_cast<int>(block.count); ++p) {
      const Integer x = coord(rng), y = coord(rng);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; a + b < m; ++b) {
          std::vector<Rational> row;
          for (const auto& [i, j] : monomials) {
            Integer v = binom(i, a) * binom(j, b);
            if (v != 0) v *= boost::multiprecision::pow(x, i - a) * boost::multiprecision::pow(y, j - b);
            row.emplace_back(v);
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < monomials.size() && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < monomials.size(); ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("matrix shapes") {
  const auto points = sample_points(2, kDefaultPrime, 7);
  auto m = build_conditions_matrix(sys(2, 2, 2), points, kDefaultPrime);
  CHECK(m.rows() == 6);
  CHECK(m.cols() == 6);
  m = build_conditions_matrix(sys(1, 2, 1), points, kDefaultPrime);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);

  const auto report = actual_dimension(sys(35, 10, 11));
  CHECK(report.rows == 660);
  CHECK(report.cols == 666);
}

TEST_CASE("matrix input errors") {
  const std::vector<FieldPoint> same{{3, 4}, {3, 4}};
  CHECK_THROWS_AS(build_conditions_matrix(sys(2, 2, 1), same, kDefaultPrime), InvalidInput);
  const std::vector<FieldPoint> one{{3, 4}};
  CHECK_THROWS_AS(build_conditions_matrix(sys(2, 2, 1), one, kDefaultPrime), InvalidInput);
}

TEST_CASE("rank mod p") {
  ModMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  CHECK(rank_mod_p(m, 7) == 1);
  m(1, 1) = 5;
  CHECK(rank_mod_p(m, 7) == 2);
  // 1*5 - 2*6 = -7 vanishes mod 7 only.
  m(1, 0) = 6;
  CHECK(rank_mod_p(m, 7) == 1);
  CHECK(rank_mod_p(m, 11) == 2);
}

TEST_CASE("known actual dimensions") {
  struct Case {
    LinearSystem system;
    int actual;
    int expected;
  };
  const Case cases[] = {
      {sys(2, 2, 2), 0, -1},
      {sys(1, 2, 1), 0, 0},
      {sys(6, 9, 2), 0, 0},
      {sys(5, 8, 2), -1, -1},
      {sys(4, 5, 2), 0, -1},
      {sys(3, 2, 2), 3, 3},
      {sys(6, 3, 3), 9, 9},
      {sys(4, 6, 2), -1, -1},
      {sys(2, 7, 1), -1, -1},
      {sys(10, 12, 2), 29, 29},
      {sys(8, 12, 2), 8, 8},
      {LinearSystem::quasi_homogeneous(5, 3, 3, 2), 5, 5},
      {LinearSystem::quasi_homogeneous(10, 8, 3, 2), 20, 20},
      {LinearSystem::quasi_homogeneous(8, 7, 4, 2), 4, 4},
      {LinearSystem::quasi_homogeneous(4, 3, 4, 1), 4, 4},
      {LinearSystem::quasi_homogeneous(6, 4, 2, 2), 11, 11},
      {LinearSystem::quasi_homogeneous(8, 6, 2, 3), 11, 11},
      {sys(29, 10, 9), 14, 14},
  };
  for (const auto& c : cases) {
    CAPTURE(c.system.notation());
    const auto report = actual_dimension(c.system);
    CHECK(report.actual_dim_estimate == c.actual);
    CHECK(report.expected_dim == c.expected);
    CHECK(report.agrees_with_expected == (c.actual == c.expected));
    CHECK(speciality_check(c.system) == (c.actual > c.expected));
  }
}

TEST_CASE("headline system") {
  const auto report = actual_dimension(sys(35, 10, 11));
  CHECK(report.rank_max == 660);
  CHECK(report.actual_dim_estimate == 5);
  CHECK(report.nonspecial_certified());
  CHECK(report.semantics() == "non-special certified");
  CHECK(report.reference() == "oracle:p=2147483647;seed=1;trials=3;rank=660/660x666");
}

TEST_CASE("argument checks") {
  OracleOptions bad;
  bad.prime = 2147483646;
  CHECK_THROWS_AS(actual_dimension(sys(3, 2, 2), bad), InvalidInput);
  bad.prime = 4294967311ULL;
  CHECK_THROWS_AS(actual_dimension(sys(3, 2, 2), bad), InvalidInput);
  bad.prime = 7;
  CHECK_THROWS_AS(actual_dimension(sys(10, 12, 2), bad), InvalidInput);
  OracleOptions none;
  none.trials = 0;
  CHECK_THROWS_AS(actual_dimension(sys(3, 2, 2), none), InvalidInput);
}

TEST_CASE("determinism") {
  OracleOptions options;
  options.seed = 42;
  const auto a = to_json(actual_dimension(sys(12, 11, 3), options));
  const auto b = to_json(actual_dimension(sys(12, 11, 3), options));
  CHECK(a == b);
  options.threads = 3;
  CHECK(to_json(actual_dimension(sys(12, 11, 3), options)) == a);

  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
  CHECK(sample_points(5, kDefaultPrime, 9) == sample_points(5, kDefaultPrime, 9));
}

TEST_CASE("report records its inputs") {
  OracleOptions options;
  options.prime = 1000003;
  options.trials = 2;
  options.seed = 5;
  const auto report = actual_dimension(sys(6, 9, 2), options);
  CHECK(report.prime == 1000003);
  CHECK(report.trials == 2);
  CHECK(report.seeds.size() == 2);
  CHECK(report.ranks.size() == 2);
  const auto json = to_json(report);
  CHECK(json["system"] == "d: 6; mults: 9^2");
  CHECK(json.contains("semantics"));
}

TEST_CASE("exact rank agrees with the modular rank for small degrees") {
  std::uint64_t seed = 1;
  for (int d = 1; d <= 4; ++d) {
    for (int n = 1; n <= 6; ++n) {
      for (int m = 1; m <= d; ++m) {
        const auto s = sys(d, n, m);
        CAPTURE(s.notation());
        CHECK(actual_dimension(s).rank_max == exact_rank(s, seed++));
      }
    }
  }
  CHECK(actual_dimension(LinearSystem::quasi_homogeneous(4, 3, 4, 1)).rank_max ==
        exact_rank(LinearSystem::quasi_homogeneous(4, 3, 4, 1), 99));
}
