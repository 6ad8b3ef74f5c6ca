#include "seshadri/nagata.hpp"

#include <algorithm>
#include <future>

#include "seshadri/errors.hpp"
#include "seshadri/surfaces.hpp"

namespace seshadri {

Integer max_uniform_multiplicity(const Integer& degree, const Integer& r) {
  if (degree < 0) throw InvalidInput("degree must be >= 0");
  if (r < 1) throw InvalidInput("r must be >= 1");
  const Integer budget = degree * (degree + 3);
  // r m (m+1) <= d (d+3) forces m <= d + 1.
  Integer lo = 0;
  Integer hi = degree + 1;
  while (lo < hi) {
    const Integer mid = (lo + hi + 1) / 2;
    if (r * mid * (mid + 1) <= budget) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::string to_string(Backend backend) {
  switch (backend) {
    case Backend::Recursion:
      return "recursion";
    case Backend::Oracle:
      return "oracle";
    case Backend::Both:
      return "both";
  }
  return "oracle";
}

Backend parse_backend(std::string_view text) {
  if (text == "recursion") return Backend::Recursion;
  if (text == "oracle") return Backend::Oracle;
  if (text == "both") return Backend::Both;
  throw InvalidInput("unknown backend '" + std::string(text) + "' (expected recursion, oracle or both)");
}

namespace {

struct DegreeAttempt {
  std::optional<BoundWitness> witness;
  std::string certified_by;
  std::optional<OracleReport> report;
  CertificatePtr certificate;
  std::vector<std::string> notes;
};

DegreeAttempt certify_degree(const Integer& r, const Integer& d, const BoundSearchOptions& options,
                             MemoCache& cache) {
  DegreeAttempt attempt;
  const Integer top = max_uniform_multiplicity(d, r) - 1;
  for (Integer m = top; m >= 1; --m) {
    const LinearSystem system = LinearSystem::homogeneous(d, r, m + 1);
    CertificatePtr certificate;
    std::optional<OracleReport> report;
    bool by_recursion = false;
    bool by_oracle = false;
    if (options.backend != Backend::Oracle) {
      ProofOutcome outcome = prove(system, options.max_depth, cache, 1);
      if (outcome.certified()) {
        by_recursion = true;
        certificate = outcome.certificate;
      }
    }
    const bool need_oracle = options.backend == Backend::Oracle || (options.backend == Backend::Both);
    if (need_oracle) {
      OracleOptions oracle = options.oracle;
      oracle.threads = 1;
      report = actual_dimension(system, oracle);
      by_oracle = report->nonspecial_certified();
    }
    if (options.backend == Backend::Both && by_recursion && !by_oracle) {
      attempt.notes.push_back(system.notation() + ": recursion certificate but oracle saw a rank deficit; rejected");
      continue;
    }
    if (by_recursion || by_oracle) {
      attempt.witness = BoundWitness{d, m};
      attempt.certified_by = by_recursion && by_oracle ? "recursion+oracle" : (by_recursion ? "recursion" : "oracle");
      attempt.report = std::move(report);
      attempt.certificate = std::move(certificate);
      return attempt;
    }
  }
  return attempt;
}

}  // namespace

BoundResult certified_lower_bound_search(const Integer& r, const Integer& d_max, const BoundSearchOptions& options,
                                         MemoCache& cache) {
  if (r <= 9) throw OutOfScope("lower bounds from uniform systems need r > 9 points (got r = " + r.str() + ")");
  if (d_max < 1) throw InvalidInput("d_max must be >= 1");
  const std::int64_t last = to_int64(d_max, "d_max");

  std::vector<DegreeAttempt> attempts(static_cast<std::size_t>(last));
  const int workers = std::max(1, options.threads);
  for (std::int64_t start = 1; start <= last; start += workers) {
    const std::int64_t stop = std::min<std::int64_t>(last, start + workers - 1);
    if (workers == 1) {
      attempts[start - 1] = certify_degree(r, Integer(start), options, cache);
      continue;
    }
    std::vector<std::future<DegreeAttempt>> futures;
    for (std::int64_t d = start; d <= stop; ++d)
      futures.push_back(std::async(std::launch::async, [&, d] { return certify_degree(r, Integer(d), options, cache); }));
    for (std::int64_t d = start; d <= stop; ++d) attempts[d - 1] = futures[d - start].get();
  }

  BoundResult result;
  result.r = r;
  result.upper_radicand = r;
  for (auto& attempt : attempts) {
    for (auto& note : attempt.notes) result.notes.push_back(std::move(note));
    if (!attempt.witness) continue;
    const Rational ratio(attempt.witness->multiplicity, attempt.witness->degree);
    // Strict comparison keeps the smallest degree among equal ratios.
    if (!result.witness || ratio > result.lower_bound) {
      result.lower_bound = ratio;
      result.witness = attempt.witness;
      result.certified_by = attempt.certified_by;
      result.oracle_report = std::move(attempt.report);
      result.certificate = std::move(attempt.certificate);
    }
  }
  if (result.witness) {
    std::string ref;
    if (result.certificate) ref = "certificate:" + result.certificate->hash;
    if (result.oracle_report && result.oracle_report->nonspecial_certified())
      ref += (ref.empty() ? "" : ";") + result.oracle_report->reference();
    result.certificate_ref = ref;
  }
  return result;
}

bool check_bound_consistency(const BoundResult& result) {
  if (result.r < 1 || result.lower_bound < 0) return false;
  if (!nef_square_check(result.r, result.lower_bound)) return false;
  if (!result.witness) return result.lower_bound == 0;
  const auto& w = result.witness.value();
  if (w.degree < 1 || w.multiplicity < 1) return false;
  if (Rational(w.multiplicity, w.degree) != result.lower_bound) return false;
  return expected_dimension(LinearSystem::homogeneous(w.degree, result.r, w.multiplicity + 1)) >= 0;
}

nlohmann::json to_json(const BoundResult& result) {
  nlohmann::json json;
  json["r"] = result.r.str();
  json["lower_bound"] = to_string(result.lower_bound);
  if (result.witness) {
    const auto& w = *result.witness;
    json["witness"] = {{"d", to_int64(w.degree, "degree")},
                       {"m", to_int64(w.multiplicity, "multiplicity")},
                       {"system", LinearSystem::homogeneous(w.degree, result.r, w.multiplicity + 1).text()},
                       {"ratio", w.multiplicity.str() + "/" + w.degree.str()}};
  } else {
    json["witness"] = nullptr;
  }
  json["backend"] = result.certified_by;
  json["certificate_ref"] = result.certificate_ref;
  if (result.certificate) json["certificate"] = to_json(*result.certificate);
  if (result.oracle_report) json["oracle_report"] = to_json(*result.oracle_report);
  json["upper_bound_note"] = {{"statement", "eps <= " + result.upper_numerator.str() + "/sqrt(" +
                                                result.upper_radicand.str() + ")"},
                              {"numerator", result.upper_numerator.str()},
                              {"radicand", result.upper_radicand.str()}};
  json["consistent"] = check_bound_consistency(result);
  if (!result.notes.empty()) json["notes"] = result.notes;
  return json;
}

BarkowskiTarget barkowski_targets(const Integer& s) {
  if (s < 1) throw InvalidInput("s must be >= 1");
  BarkowskiTarget target;
  target.s = s;
  target.fallback = Rational(1, s + 1);
  const Rational base(s);
  const Rational table[] = {base + Rational(1, 2), base + Rational(1, 2), base + Rational(2, 3),
                            base + Rational(5, 6)};
  // For s = 1 the range 1..2s+1 stops short of the fourth table row.
  const std::int64_t last = std::max<std::int64_t>(4, to_int64(2 * s + 1, "2s+1"));
  for (std::int64_t offset = 1; offset <= last; ++offset) {
    BarkowskiRow row;
    row.offset = static_cast<int>(offset);
    row.r = s * s + offset;
    if (offset <= 4) {
      row.sqrt_r_over_a = table[offset - 1];
      row.eps_target = 1 / *row.sqrt_r_over_a;
    } else {
      row.eps_target = target.fallback;
    }
    target.rows.push_back(std::move(row));
  }
  if (s * s + 4 <= 9)
    target.scope_note = "rows with r <= 9 lie outside the range r > 9 where uniform systems give lower bounds";
  return target;
}

nlohmann::json to_json(const BarkowskiTarget& target) {
  nlohmann::json json;
  json["s"] = target.s.str();
  json["fallback"] = to_string(target.fallback);
  json["rows"] = nlohmann::json::array();
  for (const auto& row : target.rows) {
    nlohmann::json r;
    r["offset"] = row.offset;
    r["r"] = row.r.str();
    r["sqrt_r_over_a"] = row.sqrt_r_over_a ? nlohmann::json(to_string(*row.sqrt_r_over_a)) : nlohmann::json(nullptr);
    r["eps_target"] = to_string(row.eps_target);
    json["rows"].push_back(r);
  }
  if (!target.scope_note.empty()) json["scope_note"] = target.scope_note;
  return json;
}

}  // namespace seshadri
