#include "seshadri/linear_system.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "seshadri/errors.hpp"

namespace seshadri {

LinearSystem::LinearSystem(Integer degree, std::vector<Block> raw) : degree_(std::move(degree)) {
  if (degree_ < 0) throw InvalidInput("negative degree " + degree_.str());
  std::map<Integer, Integer, std::greater<>> merged;
  for (auto& block : raw) {
    if (block.multiplicity < 0) throw InvalidInput("negative multiplicity " + block.multiplicity.str());
    if (block.count < 0) throw InvalidInput("negative point count " + block.count.str());
    if (block.multiplicity == 0 || block.count == 0) continue;
    merged[block.multiplicity] += block.count;
  }
  blocks_.reserve(merged.size());
  for (auto& [multiplicity, count] : merged) blocks_.push_back({multiplicity, count});
}

LinearSystem LinearSystem::homogeneous(const Integer& degree, const Integer& count, const Integer& multiplicity) {
  return LinearSystem(degree, {{multiplicity, count}});
}

LinearSystem LinearSystem::quasi_homogeneous(const Integer& degree, const Integer& single, const Integer& count,
                                             const Integer& multiplicity) {
  return LinearSystem(degree, {{single, 1}, {multiplicity, count}});
}

Integer LinearSystem::point_count() const {
  Integer total = 0;
  for (const auto& block : blocks_) total += block.count;
  return total;
}

Integer LinearSystem::max_multiplicity() const { return blocks_.empty() ? Integer(0) : blocks_.front().multiplicity; }

std::string LinearSystem::text() const {
  std::string out = "d: " + degree_.str();
  if (blocks_.empty()) return out;
  out += "; mults: ";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ", ";
    out += blocks_[i].count.str() + "^" + blocks_[i].multiplicity.str();
  }
  return out;
}

std::string LinearSystem::notation() const {
  std::string out = "L_" + degree_.str();
  if (blocks_.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ", ";
    out += blocks_[i].count.str() + "^" + blocks_[i].multiplicity.str();
  }
  return out + ")";
}

LinearSystem canonicalize(std::vector<Block> raw, const Integer& degree) { return LinearSystem(degree, std::move(raw)); }

Integer conditions_count(const LinearSystem& system) {
  Integer total = 0;
  for (const auto& block : system.blocks()) total += block.count * block.multiplicity * (block.multiplicity + 1) / 2;
  return total;
}

Integer virtual_dimension(const LinearSystem& system) {
  const Integer& d = system.degree();
  return d * (d + 3) / 2 - conditions_count(system);
}

Integer expected_dimension(const LinearSystem& system) {
  Integer v = virtual_dimension(system);
  return v < -1 ? Integer(-1) : v;
}

Integer coefficient_count(const Integer& degree) { return (degree + 1) * (degree + 2) / 2; }

namespace {

class SystemParser {
 public:
  explicit SystemParser(std::string_view text) : text_(text) {}

  LinearSystem parse() {
    skip_space();
    expect_word("d");
    expect(':');
    const Integer degree = number("degree");
    std::vector<Block> blocks;
    skip_space();
    if (at_end()) return LinearSystem(degree, {});
    expect(';');
    skip_space();
    if (at_end()) return LinearSystem(degree, {});
    expect_word("mults");
    expect(':');
    skip_space();
    if (!at_end()) {
      while (true) {
        const Integer count = number("point count");
        expect('^');
        const Integer multiplicity = number("multiplicity");
        blocks.push_back({multiplicity, count});
        skip_space();
        if (at_end()) break;
        expect(',');
      }
    }
    return LinearSystem(degree, std::move(blocks));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("syntax error at position " + std::to_string(pos_) + ": " + what + " in '" +
                       std::string(text_) + "'");
  }

  void expect(char c) {
    skip_space();
    if (at_end() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) fail("expected '" + std::string(word) + "'");
    pos_ += word.size();
  }

  Integer number(const char* what) {
    skip_space();
    if (!at_end() && text_[pos_] == '-') fail(std::string("negative ") + what);
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return parse_integer(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LinearSystem parse_system(std::string_view text) { return SystemParser(text).parse(); }

}  // namespace seshadri
