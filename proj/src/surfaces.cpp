#include "seshadri/surfaces.hpp"

#include <algorithm>
#include <cctype>

#include "seshadri/errors.hpp"

namespace seshadri {

DivisorClass DivisorClass::plane(Rational h, std::vector<Rational> exceptional) {
  return DivisorClass(SurfaceKind::BlownPlane, {std::move(h)}, std::move(exceptional));
}

DivisorClass DivisorClass::product(Rational a, Rational b, std::vector<Rational> exceptional) {
  return DivisorClass(SurfaceKind::BlownProduct, {std::move(a), std::move(b)}, std::move(exceptional));
}

bool DivisorClass::same_surface(const DivisorClass& other) const noexcept {
  return kind_ == other.kind_ && exceptional_.size() == other.exceptional_.size();
}

DivisorClass DivisorClass::operator+(const DivisorClass& other) const {
  if (!same_surface(other)) throw InvalidInput("divisor classes live on different surfaces");
  DivisorClass sum = *this;
  for (std::size_t i = 0; i < base_.size(); ++i) sum.base_[i] += other.base_[i];
  for (std::size_t i = 0; i < exceptional_.size(); ++i) sum.exceptional_[i] += other.exceptional_[i];
  return sum;
}

DivisorClass DivisorClass::operator*(const Rational& scalar) const {
  DivisorClass scaled = *this;
  for (auto& c : scaled.base_) c *= scalar;
  for (auto& c : scaled.exceptional_) c *= scalar;
  return scaled;
}

namespace {

void append_term(std::string& out, const Rational& coefficient, const std::string& symbol, bool negate) {
  const Rational c = negate ? Rational(-coefficient) : coefficient;
  if (c == 0) return;
  if (out.empty()) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  out += to_string(Rational(c < 0 ? Rational(-c) : c)) + symbol;
}

}  // namespace

std::string DivisorClass::text() const {
  std::string terms;
  if (kind_ == SurfaceKind::BlownPlane) {
    append_term(terms, base_[0], "H", false);
  } else {
    append_term(terms, base_[0], "F1", false);
    append_term(terms, base_[1], "F2", false);
  }
  for (std::size_t i = 0; i < exceptional_.size(); ++i)
    append_term(terms, exceptional_[i], "E" + std::to_string(i + 1), true);
  if (terms.empty()) terms = "0";
  const std::string prefix = kind_ == SurfaceKind::BlownPlane ? "P2" : "Prod";
  return prefix + "[r=" + std::to_string(exceptional_.size()) + "]: " + terms;
}

Rational intersect(const DivisorClass& lhs, const DivisorClass& rhs) {
  if (!lhs.same_surface(rhs)) throw InvalidInput("cannot intersect classes on different surfaces");
  Rational total = 0;
  if (lhs.kind() == SurfaceKind::BlownPlane) {
    total = lhs.base()[0] * rhs.base()[0];
  } else {
    total = lhs.base()[0] * rhs.base()[1] + lhs.base()[1] * rhs.base()[0];
  }
  for (std::size_t i = 0; i < lhs.exceptional_count(); ++i) total -= lhs.exceptional()[i] * rhs.exceptional()[i];
  return total;
}

Rational self_intersection(const DivisorClass& divisor) { return intersect(divisor, divisor); }

// ---------------------------------------------------------------------------

namespace {

class DivisorParser {
 public:
  explicit DivisorParser(std::string_view text) : text_(text) {}

  DivisorClass parse() {
    skip();
    SurfaceKind kind;
    if (take("P2")) {
      kind = SurfaceKind::BlownPlane;
    } else if (take("Prod")) {
      kind = SurfaceKind::BlownProduct;
    } else {
      fail("expected 'P2' or 'Prod'");
    }
    expect("[");
    expect("r");
    expect("=");
    const std::size_t r = static_cast<std::size_t>(to_int64(unsigned_integer(), "r"));
    expect("]");
    expect(":");
    r_ = r;
    std::vector<Rational> base(kind == SurfaceKind::BlownPlane ? 1 : 2, Rational(0));
    std::vector<Rational> exceptional(r, Rational(0));

    bool first = true;
    while (true) {
      skip();
      if (at_end()) {
        if (first) fail("expected a term");
        break;
      }
      Rational sign = 1;
      if (take("+")) {
        if (first) fail("unexpected '+'");
      } else if (take("-")) {
        sign = -1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      skip();
      Rational coefficient = 1;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        coefficient = rational();
        skip();
        take("*");
        skip();
      }
      coefficient *= sign;
      if (take("(")) {
        group(kind, coefficient, exceptional);
      } else {
        symbol(kind, coefficient, base, exceptional);
      }
      first = false;
    }
    if (kind == SurfaceKind::BlownPlane) return DivisorClass::plane(base[0], std::move(exceptional));
    return DivisorClass::product(base[0], base[1], std::move(exceptional));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool take(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!take(token)) fail("expected '" + std::string(token) + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("divisor syntax error at position " + std::to_string(pos_) + ": " + what + " in '" +
                       std::string(text_) + "'");
  }

  Integer unsigned_integer() {
    skip();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return parse_integer(text_.substr(start, pos_ - start));
  }

  Rational rational() {
    const Integer num = unsigned_integer();
    if (!at_end() && peek() == '/') {
      ++pos_;
      const Integer den = unsigned_integer();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  std::size_t exceptional_index() {
    const std::int64_t i = to_int64(unsigned_integer(), "exceptional index");
    if (i < 1 || static_cast<std::size_t>(i) > r_) fail("exceptional index out of range 1.." + std::to_string(r_));
    return static_cast<std::size_t>(i - 1);
  }

  void symbol(SurfaceKind kind, const Rational& coefficient, std::vector<Rational>& base,
              std::vector<Rational>& exceptional) {
    if (kind == SurfaceKind::BlownPlane && take("H")) {
      base[0] += coefficient;
    } else if (kind == SurfaceKind::BlownProduct && take("F1")) {
      base[0] += coefficient;
    } else if (kind == SurfaceKind::BlownProduct && take("F2")) {
      base[1] += coefficient;
    } else if (take("E")) {
      exceptional[exceptional_index()] -= coefficient;
    } else {
      fail(kind == SurfaceKind::BlownPlane ? "expected H or Ei" : "expected F1, F2 or Ei");
    }
  }

  // "(E1..E10)" or "(E1+E2+E3)", closing parenthesis included.
  void group(SurfaceKind, const Rational& coefficient, std::vector<Rational>& exceptional) {
    expect("E");
    const std::size_t first = exceptional_index();
    if (take("..")) {
      expect("E");
      const std::size_t last = exceptional_index();
      if (last < first) fail("empty range");
      for (std::size_t i = first; i <= last; ++i) exceptional[i] -= coefficient;
    } else {
      exceptional[first] -= coefficient;
      while (take("+")) {
        expect("E");
        exceptional[exceptional_index()] -= coefficient;
      }
    }
    expect(")");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t r_ = 0;
};

}  // namespace

DivisorClass parse_divisor(std::string_view text) { return DivisorParser(text).parse(); }

// ---------------------------------------------------------------------------

Integer seshadri_product(const Integer& a, const Integer& b) {
  if (a <= 0 || b <= 0) throw InvalidInput("product polarization needs a > 0 and b > 0");
  return std::min(a, b);
}

SeshadriValue seshadri_blownup_product(const ProductPolarization& p) {
  if (p.a <= 0 || p.b <= 0) throw InvalidInput("product polarization needs a > 0 and b > 0");
  const Integer low = std::min(p.a, p.b);
  const Integer high = std::max(p.a, p.b);
  Integer sum = 0;
  for (std::size_t i = 0; i < p.multiplicities.size(); ++i) {
    const Integer& m = p.multiplicities[i];
    if (m <= 0 || m >= low)
      throw HypothesisViolated(kBoundedMultiplicity, "m_" + std::to_string(i + 1) + " = " + m.str() +
                                                         ", min(a,b) = " + low.str());
    sum += m;
  }
  if (sum > high)
    throw HypothesisViolated(kBoundedSum, "Σ m_i = " + sum.str() + " > max(a,b) = " + high.str());
  return {low,
          "valid when no two blown-up points share a horizontal or vertical fibre and y lies on no fibre "
          "through a blown-up point"};
}

bool nef_square_check(const Integer& r, const Rational& eps) {
  if (r < 1) throw InvalidInput("r must be >= 1");
  if (eps < 0) throw InvalidInput("eps must be >= 0");
  return eps * eps * Rational(r) <= 1;
}

DivisorClass uniform_plane_class(std::size_t r, const Rational& eps) {
  return DivisorClass::plane(Rational(1), std::vector<Rational>(r, eps));
}

}  // namespace seshadri
