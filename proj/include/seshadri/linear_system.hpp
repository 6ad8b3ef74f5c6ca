#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "seshadri/rational.hpp"

namespace seshadri {

/// `count` general points, each imposing multiplicity at least `multiplicity`.
struct Block {
  Integer multiplicity;
  Integer count;

  bool operator==(const Block&) const = default;
};

/// A plane linear system L_d(n_1^{m_1}, ..., n_k^{m_k}) of degree-d curves
/// with multiplicity >= m_i at n_i general points.
///
/// Instances are always canonical: blocks sorted by strictly decreasing
/// multiplicity, no repeated multiplicity, no zero multiplicity or count.
/// Multiplicities above the degree are allowed.
class LinearSystem {
 public:
  LinearSystem() = default;

  /// Merges equal multiplicities, drops zero entries and sorts.
  /// Throws InvalidInput on a negative degree, multiplicity or count.
  LinearSystem(Integer degree, std::vector<Block> raw);

  /// L_d(n^m).
  static LinearSystem homogeneous(const Integer& degree, const Integer& count, const Integer& multiplicity);

  /// L_d(1^{a}, n^m): one point of multiplicity `single`, `count` points of
  /// multiplicity `multiplicity`.
  static LinearSystem quasi_homogeneous(const Integer& degree, const Integer& single, const Integer& count,
                                        const Integer& multiplicity);

  const Integer& degree() const noexcept { return degree_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  bool has_points() const noexcept { return !blocks_.empty(); }
  bool is_homogeneous() const noexcept { return blocks_.size() == 1; }
  Integer point_count() const;
  Integer max_multiplicity() const;

  /// Canonical text "d: 8; mults: 1^7, 3^2" (count^multiplicity, blocks by
  /// decreasing multiplicity). A system without points serializes as "d: 8".
  std::string text() const;

  /// Human notation "L_8(1^7, 3^2)".
  std::string notation() const;

  bool operator==(const LinearSystem&) const = default;

 private:
  Integer degree_ = 0;
  std::vector<Block> blocks_;
};

LinearSystem canonicalize(std::vector<Block> raw, const Integer& degree);

/// d(d+3)/2 - sum n_i m_i (m_i + 1) / 2, unclamped.
Integer virtual_dimension(const LinearSystem& system);

/// max(-1, virtual_dimension).
Integer expected_dimension(const LinearSystem& system);

/// sum n_i m_i (m_i + 1) / 2.
Integer conditions_count(const LinearSystem& system);

/// (d + 1)(d + 2) / 2 coefficients of a ternary form of degree d.
Integer coefficient_count(const Integer& degree);

/// Parses "d: <int>; mults: <n>^<m>(, <n>^<m>)*" where n^m means n points of
/// multiplicity m. "mults" may be omitted or empty for a system without
/// points. Throws InvalidInput naming the offending position.
LinearSystem parse_system(std::string_view text);

}  // namespace seshadri
