#pragma once

#include <optional>
#include <string>

#include "seshadri/linear_system.hpp"

namespace seshadri {

namespace rules {
inline constexpr const char* kNoPoints = "no-points";
inline constexpr const char* kMultOne = "mult-one";
inline constexpr const char* kTableAbsent = "table-absent";
inline constexpr const char* kProp62 = "prop62";
inline constexpr const char* kCor63Prefix = "cor63+";
inline constexpr const char* kSplit = "cor34-split";

/// "table-n2", ..., "table-n8".
std::string table_row(int points);
}  // namespace rules

struct SpecialityVerdict {
  enum class Tag { NonSpecial, Special, OutOfTableScope };

  Tag tag = Tag::OutOfTableScope;
  std::string rule;
  /// Set when the rule itself guarantees a non-empty system.
  bool nonempty_certified = false;

  bool non_special() const noexcept { return tag == Tag::NonSpecial; }
  bool special() const noexcept { return tag == Tag::Special; }
  bool silent() const noexcept { return tag == Tag::OutOfTableScope; }

  static SpecialityVerdict silent_verdict() { return {}; }
};

std::string to_string(SpecialityVerdict::Tag tag);

/// Speciality of L_d(n^m) for n <= 9 from the complete classification of
/// special homogeneous systems on at most nine points. Row boundaries are
/// compared as exact rationals. n outside 1..9 yields OutOfTableScope.
SpecialityVerdict classify_homogeneous_upto9(const Integer& degree, const Integer& points,
                                             const Integer& multiplicity);

/// Non-special whenever all multiplicities are at most one.
SpecialityVerdict multiplicity_one_rule(const LinearSystem& system);

/// Non-empty and non-special: the verdict is NonSpecial and the expected
/// dimension is >= 0. std::nullopt when the verdict is OutOfTableScope.
std::optional<bool> is_nonempty_nonspecial(const LinearSystem& system, const SpecialityVerdict& verdict);

}  // namespace seshadri
