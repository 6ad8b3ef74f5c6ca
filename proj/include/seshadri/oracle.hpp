#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "seshadri/linear_system.hpp"

namespace seshadri {

inline constexpr std::uint64_t kDefaultPrime = 2147483647;  // 2^31 - 1

struct OracleOptions {
  std::uint64_t prime = kDefaultPrime;
  int trials = 3;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Affine point (x : y : 1) over GF(p).
struct FieldPoint {
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  bool operator==(const FieldPoint&) const = default;
};

/// Dense row-major matrix with entries in [0, p).
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

/// Rows: one per Hasse derivative D^{(a,b)} with a + b < m_i at each point
/// (points listed block by block, in the system's block order). Columns: the
/// monomials x^i y^j, i + j <= d, of the affine chart z = 1. Throws
/// InvalidInput on coincident points or a point count mismatch.
ModMatrix build_conditions_matrix(const LinearSystem& system, std::span<const FieldPoint> points,
                                  std::uint64_t prime);

/// Rank over GF(p) by Gaussian elimination; consumes its argument.
std::size_t rank_mod_p(ModMatrix matrix, std::uint64_t prime);

/// Pairwise distinct uniform points in the affine chart.
std::vector<FieldPoint> sample_points(std::size_t count, std::uint64_t prime, std::uint64_t stream_seed);

/// Seed of the RNG stream for one trial.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

struct OracleReport {
  LinearSystem system;
  std::uint64_t prime = kDefaultPrime;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> ranks;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank_max = 0;
  Integer actual_dim_estimate = -1;
  Integer expected_dim = -1;
  bool agrees_with_expected = false;

  /// A full-rank observation proves the conditions independent (or the
  /// system empty), hence non-special. A deficit in every trial is only
  /// probabilistic evidence of speciality.
  bool nonspecial_certified() const noexcept { return agrees_with_expected; }
  std::string semantics() const;
  /// Stable reference string used inside bound results.
  std::string reference() const;
};

nlohmann::json to_json(const OracleReport& report);

/// Throws InvalidInput when the prime is not a prime below 2^32, is not
/// larger than 2 d N^2 (N = number of points), when trials < 1, or when the
/// matrix would be unreasonably large.
OracleReport actual_dimension(const LinearSystem& system, const OracleOptions& options = {});

/// True (special) iff the estimated actual dimension exceeds the expected one.
bool speciality_check(const LinearSystem& system, const OracleOptions& options = {});

}  // namespace seshadri
