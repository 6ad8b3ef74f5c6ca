#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seshadri/oracle.hpp"
#include "seshadri/prover.hpp"
#include "seshadri/rational.hpp"

namespace seshadri {

/// Largest m >= 0 with r m (m + 1) <= d (d + 3), i.e. the largest uniform
/// multiplicity for which L_d(r^m) has virtual dimension >= 0.
Integer max_uniform_multiplicity(const Integer& degree, const Integer& r);

enum class Backend { Recursion, Oracle, Both };

std::string to_string(Backend backend);
/// "recursion", "oracle" or "both"; throws InvalidInput otherwise.
Backend parse_backend(std::string_view text);

struct BoundWitness {
  Integer degree;
  /// The bound is multiplicity/degree; L_d(r^{m+1}) is the certified system.
  Integer multiplicity;
};

/// A certified lower bound eps(H; x_1..x_r) >= lower_bound, next to the upper
/// bound eps <= 1/sqrt(r) carried as the pair (1, r).
struct BoundResult {
  Integer r;
  Rational lower_bound = 0;
  std::optional<BoundWitness> witness;
  /// Which backend(s) certified the witness: "recursion", "oracle" or
  /// "recursion+oracle"; "none" without a witness.
  std::string certified_by = "none";
  std::string certificate_ref;
  std::optional<OracleReport> oracle_report;
  CertificatePtr certificate;
  Integer upper_numerator = 1;
  Integer upper_radicand;
  /// Diagnostics, e.g. recursion/oracle disagreements that were rejected.
  std::vector<std::string> notes;
};

struct BoundSearchOptions {
  Backend backend = Backend::Oracle;
  OracleOptions oracle;
  int max_depth = 64;
  int threads = 1;
};

/// For each d <= d_max: m := largest m with L_d(r^{m+1}) of expected
/// dimension >= 0, then try to certify L_d(r^{m+1}) non-special with the
/// chosen backend, lowering m on failure. Returns the best m/d, ties going
/// to the smaller d. Throws OutOfScope for r <= 9 and InvalidInput for
/// d_max < 1.
BoundResult certified_lower_bound_search(const Integer& r, const Integer& d_max, const BoundSearchOptions& options,
                                         MemoCache& cache);

/// Recomputes lower_bound^2 r <= 1, the witness ratio, and that the witness
/// system has expected dimension >= 0.
bool check_bound_consistency(const BoundResult& result);

nlohmann::json to_json(const BoundResult& result);

struct BarkowskiRow {
  int offset;
  Integer r;
  /// sqrt(r)/a from the table; the eps target is its reciprocal.
  std::optional<Rational> sqrt_r_over_a;
  Rational eps_target;
};

struct BarkowskiTarget {
  Integer s;
  /// Offsets 1..2s+1 (r = s^2 + offset); offsets 5.. use the fallback 1/(s+1).
  std::vector<BarkowskiRow> rows;
  Rational fallback;
  /// Set when the table rows fall at r <= 9, outside the bound theorem.
  std::string scope_note;
};

/// Throws InvalidInput for s < 1.
BarkowskiTarget barkowski_targets(const Integer& s);

nlohmann::json to_json(const BarkowskiTarget& target);

}  // namespace seshadri
