#include <doctest.h>

#include "seshadri/errors.hpp"
#include "seshadri/nagata.hpp"
#include "seshadri/surfaces.hpp"

using namespace seshadri;

namespace {

BoundResult search(int r, int d_max, Backend backend) {
  MemoCache cache;
  BoundSearchOptions options;
  options.backend = backend;
  return certified_lower_bound_search(r, d_max, options, cache);
}

}  // namespace

TEST_CASE("maximal uniform multiplicity") {
  CHECK(max_uniform_multiplicity(35, 10) == 11);
  CHECK(max_uniform_multiplicity(1, 1) == 1);
  CHECK(max_uniform_multiplicity(0, 5) == 0);
  CHECK_THROWS_AS(max_uniform_multiplicity(-1, 5), InvalidInput);
  CHECK_THROWS_AS(max_uniform_multiplicity(5, 0), InvalidInput);
}

TEST_CASE("m(d, r) is the largest admissible multiplicity") {
  for (int r = 1; r <= 16; ++r) {
    for (int d = 1; d <= 300; ++d) {
      const Integer m = max_uniform_multiplicity(d, r);
      CHECK(r * m * (m + 1) <= d * (d + 3));
      CHECK(d * (d + 3) < r * (m + 1) * (m + 2));
    }
  }
}

TEST_CASE("m(d, r)/d approaches 1/sqrt(r)") {
  const Integer d = 10000, r = 10;
  const Integer m = max_uniform_multiplicity(d, r);
  // (m/d)^2 r <= 1 + 3/d and ((m+1)/d)^2 r > 1.
  CHECK(m * m * r * d <= d * d * (d + 3));
  CHECK((m + 1) * (m + 1) * r > d * d);
}

TEST_CASE("backend names") {
  CHECK(parse_backend("oracle") == Backend::Oracle);
  CHECK(parse_backend("recursion") == Backend::Recursion);
  CHECK(parse_backend("both") == Backend::Both);
  CHECK(to_string(Backend::Both) == "both");
  CHECK_THROWS_AS(parse_backend("magic"), InvalidInput);
}

TEST_CASE("bound search scope") {
  MemoCache cache;
  CHECK_THROWS_AS(certified_lower_bound_search(9, 30, {}, cache), OutOfScope);
  CHECK_THROWS_AS(certified_lower_bound_search(10, 0, {}, cache), InvalidInput);
}

TEST_CASE("oracle bound below degree 30") {
  const auto result = search(10, 30, Backend::Oracle);
  CHECK(result.lower_bound == Rational(8, 29));
  CHECK(result.lower_bound < Rational(2, 7));
  REQUIRE(result.witness.has_value());
  CHECK(result.witness->degree == 29);
  CHECK(result.witness->multiplicity == 8);
  CHECK(result.certified_by == "oracle");
  REQUIRE(result.oracle_report.has_value());
  CHECK(result.oracle_report->nonspecial_certified());
  CHECK(check_bound_consistency(result));

  const auto json = to_json(result);
  CHECK(json["lower_bound"] == "8/29");
  CHECK(json["witness"]["d"] == 29);
  CHECK(json["consistent"] == true);
}

TEST_CASE("recursion bound carries a verifiable certificate") {
  const auto result = search(10, 30, Backend::Recursion);
  CHECK(result.lower_bound == Rational(7, 29));
  REQUIRE(result.certificate);
  CHECK(verify_certificate(*result.certificate).valid);
  CHECK(result.certificate_ref == "certificate:" + result.certificate->hash);
  CHECK(result.certificate->system == LinearSystem::homogeneous(29, 10, 8));
  CHECK(check_bound_consistency(result));

  const auto both = search(10, 30, Backend::Both);
  CHECK(both.lower_bound == Rational(8, 29));
}

TEST_CASE("bound search is monotone in the degree cap") {
  Rational previous = 0;
  MemoCache cache;
  BoundSearchOptions options;
  options.backend = Backend::Recursion;
  for (int d_max = 3; d_max <= 27; d_max += 4) {
    const auto result = certified_lower_bound_search(11, d_max, options, cache);
    CHECK(result.lower_bound >= previous);
    CHECK(nef_square_check(11, result.lower_bound));
    previous = result.lower_bound;
  }
}

TEST_CASE("consistency check") {
  BoundResult forged;
  forged.r = 10;
  forged.lower_bound = Rational(1, 3);
  forged.witness = BoundWitness{3, 1};
  CHECK_FALSE(check_bound_consistency(forged));

  BoundResult zero;
  zero.r = 10;
  CHECK(check_bound_consistency(zero));

  BoundResult good;
  good.r = 10;
  good.lower_bound = Rational(2, 7);
  good.witness = BoundWitness{35, 10};
  CHECK(check_bound_consistency(good));

  // A witness whose system has negative expected dimension.
  BoundResult bad_witness;
  bad_witness.r = 10;
  bad_witness.lower_bound = Rational(2, 7);
  bad_witness.witness = BoundWitness{7, 2};
  CHECK_FALSE(check_bound_consistency(bad_witness));
}

TEST_CASE("target table") {
  const auto t3 = barkowski_targets(3);
  REQUIRE(t3.rows.size() == 7);
  const Rational ratios[] = {Rational(7, 2), Rational(7, 2), Rational(11, 3), Rational(23, 6)};
  const Rational eps[] = {Rational(2, 7), Rational(2, 7), Rational(3, 11), Rational(6, 23)};
  for (int i = 0; i < 4; ++i) {
    CHECK(t3.rows[i].r == 10 + i);
    CHECK(*t3.rows[i].sqrt_r_over_a == ratios[i]);
    CHECK(t3.rows[i].eps_target == eps[i]);
  }
  CHECK(t3.fallback == Rational(1, 4));
  for (std::size_t i = 4; i < 7; ++i) {
    CHECK_FALSE(t3.rows[i].sqrt_r_over_a.has_value());
    CHECK(t3.rows[i].eps_target == Rational(1, 4));
  }
  CHECK(t3.rows[4].r == 14);
  CHECK(t3.scope_note.empty());

  const auto t1 = barkowski_targets(1);
  REQUIRE(t1.rows.size() == 4);
  CHECK(t1.rows[3].r == 5);
  CHECK(t1.rows[0].eps_target == Rational(2, 3));
  CHECK(t1.rows[1].eps_target == Rational(2, 3));
  CHECK(t1.rows[2].eps_target == Rational(3, 5));
  CHECK(t1.rows[3].eps_target == Rational(6, 11));
  CHECK_FALSE(t1.scope_note.empty());

  const auto t4 = barkowski_targets(4);
  CHECK(t4.rows[0].eps_target == Rational(2, 9));
  CHECK(t4.rows[2].eps_target == Rational(3, 14));
  CHECK(t4.rows[3].eps_target == Rational(6, 29));
  CHECK(t4.fallback == Rational(1, 5));
  CHECK(t4.rows.size() == 9);

  CHECK_THROWS_AS(barkowski_targets(0), InvalidInput);
}

TEST_CASE("targets never exceed the upper bound") {
  // s = 1 is outside the range where the table applies: 2/3 at r = 3 fails.
  CHECK_FALSE(nef_square_check(3, barkowski_targets(1).rows[1].eps_target));
  for (int s = 2; s <= 30; ++s) {
    for (const auto& row : barkowski_targets(s).rows) CHECK(nef_square_check(row.r, row.eps_target));
  }
}
