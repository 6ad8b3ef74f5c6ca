#include "seshadri/quasi_homogeneous.hpp"

#include "seshadri/errors.hpp"

namespace seshadri {

CremonaParams cremona_params(const Integer& degree, const Integer& points, const Integer& multiplicity) {
  if (multiplicity < 1) throw PreconditionError("Cremona parameters need m >= 1");
  if (points < 0 || degree < 0) throw PreconditionError("Cremona parameters need d, n >= 0");
  return {degree / multiplicity, degree % multiplicity, points / 2, points % 2};
}

std::vector<QuasiShape> quasi_shapes(const LinearSystem& system) {
  std::vector<QuasiShape> shapes;
  const Integer& d = system.degree();
  for (const auto kind : {QuasiShape::Kind::Cremona, QuasiShape::Kind::Reducible}) {
    for (const auto& block : system.blocks()) {
      const Integer& m = block.multiplicity;
      if (m < 2) continue;
      const Integer single = d - m + (kind == QuasiShape::Kind::Reducible ? 1 : 0);
      if (single < 0) continue;
      const Integer n = single == m ? Integer(block.count - 1) : block.count;
      if (n < 1) continue;
      if (LinearSystem::quasi_homogeneous(d, single, n, m) == system) shapes.push_back({kind, d, single, n, m});
    }
  }
  return shapes;
}

SpecialityVerdict prop62_test(const Integer& degree, const Integer& points, const Integer& multiplicity) {
  if (multiplicity < 2 || multiplicity > degree) throw PreconditionError("Cremona criterion needs 2 <= m <= d");
  if (points < 0) throw PreconditionError("Cremona criterion needs n >= 0");
  const CremonaParams params = cremona_params(degree, points, multiplicity);
  if (params.q > params.h) return {SpecialityVerdict::Tag::NonSpecial, rules::kProp62, true};
  return SpecialityVerdict::silent_verdict();
}

SpecialityVerdict prop62_test(const LinearSystem& system, const Integer& points, const Integer& multiplicity) {
  const Integer& d = system.degree();
  if (multiplicity < 2 || multiplicity > d) throw PreconditionError("Cremona criterion needs 2 <= m <= d");
  if (LinearSystem::quasi_homogeneous(d, d - multiplicity, points, multiplicity) != system)
    throw PreconditionError(system.notation() + " is not of the form L_d(1^{d-m}, n^m) with n=" + points.str() +
                            ", m=" + multiplicity.str());
  return prop62_test(d, points, multiplicity);
}

LinearSystem cor63_reduce(const Integer& degree, const Integer& points, const Integer& multiplicity) {
  if (multiplicity < 2) throw RuleInapplicable("reduction needs m >= 2");
  if (points < 1) throw RuleInapplicable("reduction needs n >= 1");
  const Integer reduced_degree = degree - points;
  const Integer reduced_single = degree - points - multiplicity + 1;
  if (reduced_degree < 0 || reduced_single < 0)
    throw RuleInapplicable("reduction of L_" + degree.str() + " with n=" + points.str() + ", m=" +
                           multiplicity.str() + " has negative parameters");
  return LinearSystem::quasi_homogeneous(reduced_degree, reduced_single, points, multiplicity - 1);
}

LinearSystem cor63_reduce(const LinearSystem& system, const Integer& points, const Integer& multiplicity) {
  const Integer& d = system.degree();
  const Integer single = d - multiplicity + 1;
  if (single < 0 || LinearSystem::quasi_homogeneous(d, single, points, multiplicity) != system)
    throw RuleInapplicable(system.notation() + " is not of the form L_d(1^{d-m+1}, n^m) with n=" + points.str() +
                           ", m=" + multiplicity.str());
  return cor63_reduce(d, points, multiplicity);
}

SpecialityVerdict certify_base(const LinearSystem& system) {
  if (auto verdict = multiplicity_one_rule(system); !verdict.silent()) return verdict;
  if (system.is_homogeneous()) {
    const Block& block = system.blocks().front();
    if (auto verdict = classify_homogeneous_upto9(system.degree(), block.count, block.multiplicity);
        !verdict.silent())
      return verdict;
  }
  for (const auto& shape : quasi_shapes(system)) {
    if (shape.kind != QuasiShape::Kind::Cremona || shape.multiplicity > shape.degree) continue;
    if (auto verdict = prop62_test(shape.degree, shape.points, shape.multiplicity); !verdict.silent())
      return verdict;
  }
  return SpecialityVerdict::silent_verdict();
}

QuasiCertification certify_quasi(const LinearSystem& system) {
  if (auto verdict = multiplicity_one_rule(system); !verdict.silent()) return {verdict, std::nullopt, {}, {}};
  const auto shapes = quasi_shapes(system);
  for (const auto& shape : shapes) {
    if (shape.kind != QuasiShape::Kind::Cremona || shape.multiplicity > shape.degree) continue;
    if (auto verdict = prop62_test(shape.degree, shape.points, shape.multiplicity); !verdict.silent())
      return {verdict, shape, {}, {}};
  }
  for (const auto& shape : shapes) {
    if (shape.kind != QuasiShape::Kind::Reducible) continue;
    if (shape.degree - shape.points < 0 || shape.degree - shape.points - shape.multiplicity + 1 < 0) continue;
    LinearSystem reduced = cor63_reduce(shape.degree, shape.points, shape.multiplicity);
    SpecialityVerdict reduced_verdict = certify_base(reduced);
    const bool usable = reduced_verdict.nonempty_certified || is_nonempty_nonspecial(reduced, reduced_verdict) == true;
    if (!reduced_verdict.non_special() || !usable) continue;
    SpecialityVerdict verdict{SpecialityVerdict::Tag::NonSpecial, rules::kCor63Prefix + reduced_verdict.rule, true};
    return {verdict, shape, std::move(reduced), reduced_verdict};
  }
  return {SpecialityVerdict::silent_verdict(), std::nullopt, {}, {}};
}

}  // namespace seshadri
