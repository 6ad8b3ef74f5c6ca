#include "seshadri/classification.hpp"

#include "seshadri/errors.hpp"

namespace seshadri {

std::string rules::table_row(int points) { return "table-n" + std::to_string(points); }

std::string to_string(SpecialityVerdict::Tag tag) {
  switch (tag) {
    case SpecialityVerdict::Tag::NonSpecial:
      return "NonSpecial";
    case SpecialityVerdict::Tag::Special:
      return "Special";
    case SpecialityVerdict::Tag::OutOfTableScope:
      return "OutOfTableScope";
  }
  return "OutOfTableScope";
}

namespace {

struct SpecialRange {
  int points;
  Rational low_factor;   // low_factor * m <= d
  Rational high_slope;   // d <= high_slope * m + high_offset
  Rational high_offset;
};

const SpecialRange kSpecialRows[] = {
    {2, Rational(1), Rational(2), Rational(-2)},
    {3, Rational(3, 2), Rational(2), Rational(-2)},
    {5, Rational(2), Rational(5, 2), Rational(-1)},
    {6, Rational(12, 5), Rational(5, 2), Rational(-1)},
    {7, Rational(21, 8), Rational(8, 3), Rational(-2, 3)},
    {8, Rational(48, 17), Rational(17, 6), Rational(-1, 3)},
};

}  // namespace

SpecialityVerdict classify_homogeneous_upto9(const Integer& degree, const Integer& points,
                                             const Integer& multiplicity) {
  if (points < 1 || points > 9) return SpecialityVerdict::silent_verdict();
  if (degree < 0 || multiplicity < 1) throw PreconditionError("table lookup needs d >= 0 and m >= 1");
  const Rational d(degree);
  const Rational m(multiplicity);
  for (const auto& row : kSpecialRows) {
    if (points != row.points) continue;
    if (row.low_factor * m <= d && d <= row.high_slope * m + row.high_offset)
      return {SpecialityVerdict::Tag::Special, rules::table_row(row.points), false};
  }
  return {SpecialityVerdict::Tag::NonSpecial, rules::kTableAbsent, false};
}

SpecialityVerdict multiplicity_one_rule(const LinearSystem& system) {
  if (!system.has_points()) return {SpecialityVerdict::Tag::NonSpecial, rules::kNoPoints, true};
  if (system.max_multiplicity() <= 1) return {SpecialityVerdict::Tag::NonSpecial, rules::kMultOne, false};
  return SpecialityVerdict::silent_verdict();
}

std::optional<bool> is_nonempty_nonspecial(const LinearSystem& system, const SpecialityVerdict& verdict) {
  switch (verdict.tag) {
    case SpecialityVerdict::Tag::OutOfTableScope:
      return std::nullopt;
    case SpecialityVerdict::Tag::Special:
      return false;
    case SpecialityVerdict::Tag::NonSpecial:
      return expected_dimension(system) >= 0;
  }
  return std::nullopt;
}

}  // namespace seshadri
