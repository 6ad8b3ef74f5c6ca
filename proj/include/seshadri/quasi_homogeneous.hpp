#pragma once

#include <optional>
#include <vector>

#include "seshadri/classification.hpp"
#include "seshadri/linear_system.hpp"

namespace seshadri {

/// d = q m + mu with 0 <= mu < m, and n = 2h + eps with eps in {0, 1}.
struct CremonaParams {
  Integer q;
  Integer mu;
  Integer h;
  Integer eps;
};

CremonaParams cremona_params(const Integer& degree, const Integer& points, const Integer& multiplicity);

/// One way of reading a system as L_d(1^{a}, n^m): a single point of
/// multiplicity `single` and n points of multiplicity m.
struct QuasiShape {
  enum class Kind {
    Cremona,    // a = d - m
    Reducible,  // a = d - m + 1
  };

  Kind kind;
  Integer degree;
  Integer single;
  Integer points;
  Integer multiplicity;

  bool operator==(const QuasiShape&) const = default;
};

/// All readings of `system` as L_d(1^{d-m}, n^m) or L_d(1^{d-m+1}, n^m) with
/// m >= 2 and n >= 1, in block order, Cremona shape first.
std::vector<QuasiShape> quasi_shapes(const LinearSystem& system);

/// L_d(1^{d-m}, n^m) with 2 <= m <= d is non-empty and non-special when
/// floor(d/m) > floor(n/2). Silent otherwise. Throws PreconditionError when
/// m or d are out of range.
SpecialityVerdict prop62_test(const Integer& degree, const Integer& points, const Integer& multiplicity);

/// Same test, after checking that `system` is exactly L_d(1^{d-m}, n^m).
SpecialityVerdict prop62_test(const LinearSystem& system, const Integer& points, const Integer& multiplicity);

/// L_d(1^{d-m+1}, n^m) -> L_{d-n}(1^{d-n-m+1}, n^{m-1}). Throws
/// RuleInapplicable when m < 2, n < 1, or a reduced parameter is negative.
LinearSystem cor63_reduce(const Integer& degree, const Integer& points, const Integer& multiplicity);

LinearSystem cor63_reduce(const LinearSystem& system, const Integer& points, const Integer& multiplicity);

/// Leaf rules that need no recursion: no points / multiplicity one, the
/// table for at most nine points, then the Cremona criterion.
SpecialityVerdict certify_base(const LinearSystem& system);

struct QuasiCertification {
  SpecialityVerdict verdict;
  std::optional<QuasiShape> shape;
  /// For reduction routes: the reduced system and how it was certified.
  std::optional<LinearSystem> reduced;
  SpecialityVerdict reduced_verdict;
};

/// Certifies a quasi-homogeneous system through the multiplicity-one rule,
/// the Cremona criterion, or one reduction step followed by a leaf rule.
/// A reduction only concludes when the reduced system is non-empty and
/// non-special.
QuasiCertification certify_quasi(const LinearSystem& system);

}  // namespace seshadri
