#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "seshadri/rational.hpp"

namespace seshadri {

enum class SurfaceKind {
  BlownPlane,    // P^2 blown up in r points: H, E_1..E_r
  BlownProduct,  // C_1 x C_2 blown up in r points: F_1, F_2, E_1..E_r
};

/// Exact-rational divisor class.
///   BlownPlane:   h H - sum e_i E_i           coefficients (h; e_1..e_r)
///   BlownProduct: a F_1 + b F_2 - sum e_i E_i coefficients (a, b; e_1..e_r)
class DivisorClass {
 public:
  static DivisorClass plane(Rational h, std::vector<Rational> exceptional);
  static DivisorClass product(Rational a, Rational b, std::vector<Rational> exceptional);

  SurfaceKind kind() const noexcept { return kind_; }
  std::size_t exceptional_count() const noexcept { return exceptional_.size(); }
  const std::vector<Rational>& base() const noexcept { return base_; }
  const std::vector<Rational>& exceptional() const noexcept { return exceptional_; }

  /// Same surface (kind and number of blown-up points).
  bool same_surface(const DivisorClass& other) const noexcept;

  /// Throws InvalidInput when the surfaces differ.
  DivisorClass operator+(const DivisorClass& other) const;
  DivisorClass operator*(const Rational& scalar) const;

  /// "P2[r=2]: 1H - 1/3E1 - 1/3E2", "Prod[r=1]: 3F1 + 4F2 - 2E1".
  std::string text() const;

  bool operator==(const DivisorClass&) const = default;

 private:
  DivisorClass(SurfaceKind kind, std::vector<Rational> base, std::vector<Rational> exceptional)
      : kind_(kind), base_(std::move(base)), exceptional_(std::move(exceptional)) {}

  SurfaceKind kind_ = SurfaceKind::BlownPlane;
  std::vector<Rational> base_;
  std::vector<Rational> exceptional_;
};

/// Intersection pairing. BlownPlane: H^2 = 1, E_i^2 = -1, other products 0.
/// BlownProduct: F_1^2 = F_2^2 = 0, F_1 F_2 = 1, E_i^2 = -1, other products 0.
/// Throws InvalidInput on a surface mismatch.
Rational intersect(const DivisorClass& lhs, const DivisorClass& rhs);

Rational self_intersection(const DivisorClass& divisor);

/// Parses "P2[r=10]: 1H - 2/7*(E1..E10)" or "Prod[r=3]: 3F1+4F2-2E1-2E2-2E3".
/// Terms are [sign] [coefficient[*]] symbol, where symbol is H, F1, F2, Ei or
/// a parenthesized group "(E1..E10)" / "(E1+E2+E3)". Throws InvalidInput.
DivisorClass parse_divisor(std::string_view text);

/// Seshadri constant of a_F1 + b_F2 at any point of C_1 x C_2: min(a, b).
/// Throws InvalidInput unless a, b > 0.
Integer seshadri_product(const Integer& a, const Integer& b);

struct ProductPolarization {
  Integer a;
  Integer b;
  std::vector<Integer> multiplicities;
};

struct SeshadriValue {
  Integer value;
  std::string caveat;
};

/// Seshadri constant of pi^* L - sum m_i E_i on C_1 x C_2 blown up in n
/// points, at a point y off the fibres through the blown-up points.
/// Requires 0 < m_i < min(a, b) and sum m_i <= max(a, b); otherwise throws
/// HypothesisViolated naming the failed inequality. Point positions are not
/// modelled; the position hypotheses are returned as the caveat.
SeshadriValue seshadri_blownup_product(const ProductPolarization& polarization);

inline constexpr const char* kBoundedMultiplicity = "0 < m_i < min(a,b)";
inline constexpr const char* kBoundedSum = "Σ m_i ≤ max(a,b)";

/// (H - eps sum_{i<=r} E_i)^2 >= 0, i.e. eps^2 r <= 1. Only the necessary
/// self-intersection condition for nefness. Throws InvalidInput if eps < 0
/// or r < 1.
bool nef_square_check(const Integer& r, const Rational& eps);

/// H - eps (E_1 + ... + E_r) on BlownPlane(r).
DivisorClass uniform_plane_class(std::size_t r, const Rational& eps);

}  // namespace seshadri
