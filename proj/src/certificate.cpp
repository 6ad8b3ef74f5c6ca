#include "seshadri/certificate.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <limits>

#include "seshadri/classification.hpp"
#include "seshadri/errors.hpp"

namespace seshadri {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::string hex;
  hex.reserve(2 * length);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string certificate_digest(const Certificate& certificate) {
  std::string text = "system=" + certificate.system.text() + "\nrule=" + certificate.rule + "\nwitness=";
  bool first = true;
  for (const auto& [key, value] : certificate.witness) {
    if (!first) text += ",";
    text += key + ":" + value.str();
    first = false;
  }
  text += "\nchildren=";
  for (std::size_t i = 0; i < certificate.children.size(); ++i) {
    if (i) text += ",";
    text += certificate.children[i] ? certificate.children[i]->hash : std::string("null");
  }
  text += "\n";
  return sha256_hex(text);
}

CertificatePtr make_certificate(LinearSystem system, std::string rule, std::map<std::string, Integer> witness,
                                std::vector<CertificatePtr> children) {
  auto node = std::make_shared<Certificate>();
  node->system = std::move(system);
  node->rule = std::move(rule);
  node->witness = std::move(witness);
  node->children = std::move(children);
  node->hash = certificate_digest(*node);
  return node;
}

namespace {

nlohmann::json integer_json(const Integer& value) {
  if (value <= std::numeric_limits<std::int64_t>::max() && value >= std::numeric_limits<std::int64_t>::min())
    return static_cast<std::int64_t>(value);
  return value.str();
}

Integer integer_from_json(const nlohmann::json& json) {
  if (json.is_number_integer()) return Integer(json.get<std::int64_t>());
  if (json.is_string()) return parse_integer(json.get<std::string>());
  throw InvalidInput("witness values must be integers");
}

}  // namespace

nlohmann::json to_json(const Certificate& certificate) {
  nlohmann::json json;
  json["system"] = certificate.system.text();
  json["rule"] = certificate.rule;
  if (!certificate.witness.empty()) {
    nlohmann::json witness = nlohmann::json::object();
    for (const auto& [key, value] : certificate.witness) witness[key] = integer_json(value);
    json["witness"] = witness;
  }
  json["children"] = nlohmann::json::array();
  for (const auto& child : certificate.children) json["children"].push_back(to_json(*child));
  json["hash"] = certificate.hash;
  return json;
}

CertificatePtr certificate_from_json(const nlohmann::json& json) {
  if (!json.is_object()) throw InvalidInput("certificate node must be a JSON object");
  for (const char* field : {"system", "rule", "hash"}) {
    if (!json.contains(field) || !json[field].is_string())
      throw InvalidInput(std::string("certificate node lacks string field '") + field + "'");
  }
  auto node = std::make_shared<Certificate>();
  node->system = parse_system(json["system"].get<std::string>());
  node->rule = json["rule"].get<std::string>();
  node->hash = json["hash"].get<std::string>();
  if (json.contains("witness")) {
    if (!json["witness"].is_object()) throw InvalidInput("certificate witness must be an object");
    for (const auto& [key, value] : json["witness"].items()) node->witness[key] = integer_from_json(value);
  }
  if (json.contains("children")) {
    if (!json["children"].is_array()) throw InvalidInput("certificate children must be an array");
    for (const auto& child : json["children"]) node->children.push_back(certificate_from_json(child));
  }
  return node;
}

// ---------------------------------------------------------------------------
// Verification. Deliberately shares nothing with the proving code beyond the
// LinearSystem value type: every rule's side conditions are restated here in
// integer arithmetic.

namespace {

struct Verifier {
  std::string diagnostic;

  bool fail(const Certificate& node, const std::string& why) {
    diagnostic = node.system.notation() + " [" + node.rule + "]: " + why;
    return false;
  }

  static Integer edim(const LinearSystem& system) {
    const Integer& d = system.degree();
    Integer conditions = 0;
    for (const auto& block : system.blocks())
      conditions += block.count * block.multiplicity * (block.multiplicity + 1) / 2;
    const Integer v = d * (d + 3) / 2 - conditions;
    return v < -1 ? Integer(-1) : v;
  }

  // True when (d, n, m) lies in a row of the special table.
  static bool in_special_row(const Integer& d, const Integer& n, const Integer& m) {
    if (n == 2) return m <= d && d <= 2 * m - 2;
    if (n == 3) return 3 * m <= 2 * d && d <= 2 * m - 2;
    if (n == 5) return 2 * m <= d && 2 * d <= 5 * m - 2;
    if (n == 6) return 12 * m <= 5 * d && 2 * d <= 5 * m - 2;
    if (n == 7) return 21 * m <= 8 * d && 3 * d <= 8 * m - 2;
    if (n == 8) return 48 * m <= 17 * d && 6 * d <= 17 * m - 2;
    return false;
  }

  static bool same_multiset(const LinearSystem& system, const Integer& degree,
                            const std::vector<std::pair<Integer, Integer>>& mult_count) {
    if (system.degree() != degree) return false;
    std::map<Integer, Integer> expected;
    for (const auto& [m, n] : mult_count) {
      if (m > 0 && n > 0) expected[m] += n;
    }
    std::map<Integer, Integer> actual;
    for (const auto& block : system.blocks()) actual[block.multiplicity] += block.count;
    return expected == actual;
  }

  bool witness_keys(const Certificate& node, std::initializer_list<const char*> keys) {
    if (node.witness.size() != keys.size()) return fail(node, "unexpected witness fields");
    for (const char* key : keys) {
      if (!node.witness.count(key)) return fail(node, std::string("missing witness '") + key + "'");
    }
    return true;
  }

  bool arity(const Certificate& node, std::size_t expected) {
    if (node.children.size() != expected)
      return fail(node, "expected " + std::to_string(expected) + " children, found " +
                            std::to_string(node.children.size()));
    for (const auto& child : node.children) {
      if (!child) return fail(node, "null child");
    }
    return true;
  }

  bool leaf(const Certificate& node) {
    const auto& system = node.system;
    const std::string& rule = node.rule;
    if (rule == rules::kNoPoints) {
      if (!witness_keys(node, {}) || !arity(node, 0)) return false;
      if (system.has_points()) return fail(node, "system has points");
      return true;
    }
    if (rule == rules::kMultOne) {
      if (!witness_keys(node, {}) || !arity(node, 0)) return false;
      if (!system.has_points()) return fail(node, "system has no points");
      for (const auto& block : system.blocks()) {
        if (block.multiplicity > 1) return fail(node, "multiplicity " + block.multiplicity.str() + " > 1");
      }
      return true;
    }
    if (rule == rules::kTableAbsent) {
      if (!witness_keys(node, {}) || !arity(node, 0)) return false;
      if (system.blocks().size() != 1) return fail(node, "table applies to homogeneous systems only");
      const Integer& n = system.blocks().front().count;
      const Integer& m = system.blocks().front().multiplicity;
      if (n < 1 || n > 9) return fail(node, "table covers at most nine points");
      if (in_special_row(system.degree(), n, m)) return fail(node, "system lies in a special row of the table");
      return true;
    }
    if (rule == rules::kProp62) {
      if (!witness_keys(node, {"n", "m"}) || !arity(node, 0)) return false;
      const Integer& d = system.degree();
      const Integer& n = node.witness.at("n");
      const Integer& m = node.witness.at("m");
      if (m < 2 || m > d) return fail(node, "needs 2 <= m <= d");
      if (n < 0) return fail(node, "negative n");
      if (!same_multiset(system, d, {{d - m, 1}, {m, n}})) return fail(node, "system is not L_d(1^{d-m}, n^m)");
      if (!(d / m > n / 2)) return fail(node, "q > h fails");
      return true;
    }
    return fail(node, "unknown leaf rule");
  }

  bool check(const Certificate& node) {
    if (certificate_digest(node) != node.hash) return fail(node, "hash mismatch");
    const std::string& rule = node.rule;
    const auto& system = node.system;
    const std::string cor63 = rules::kCor63Prefix;

    if (rule.rfind(cor63, 0) == 0) {
      if (!witness_keys(node, {"n", "m"}) || !arity(node, 1)) return false;
      const Integer& d = system.degree();
      const Integer& n = node.witness.at("n");
      const Integer& m = node.witness.at("m");
      if (m < 2 || n < 1) return fail(node, "needs m >= 2 and n >= 1");
      if (d - n < 0 || d - n - m + 1 < 0) return fail(node, "reduced parameters negative");
      if (!same_multiset(system, d, {{d - m + 1, 1}, {m, n}})) return fail(node, "system is not L_d(1^{d-m+1}, n^m)");
      const Certificate& child = *node.children.front();
      if (!same_multiset(child.system, d - n, {{d - n - m + 1, 1}, {m - 1, n}}))
        return fail(node, "child is not L_{d-n}(1^{d-n-m+1}, n^{m-1})");
      const std::string tail = rule.substr(cor63.size());
      if (child.rule != tail) return fail(node, "child rule '" + child.rule + "' does not match '" + tail + "'");
      if (tail != rules::kNoPoints && tail != rules::kMultOne && tail != rules::kTableAbsent && tail != rules::kProp62)
        return fail(node, "reduced system must be certified by a leaf rule");
      if (edim(child.system) < 0) return fail(node, "reduced system is empty");
      return check(child);
    }

    if (rule == rules::kSplit) {
      if (!witness_keys(node, {"k", "b"}) || !arity(node, 2)) return false;
      if (system.blocks().size() != 1) return fail(node, "split applies to homogeneous systems only");
      const Integer& d = system.degree();
      const Integer& n = system.blocks().front().count;
      const Integer& m = system.blocks().front().multiplicity;
      const Integer& k = node.witness.at("k");
      const Integer& b = node.witness.at("b");
      if (!(0 < k && k < d)) return fail(node, "needs 0 < k < d");
      if (!(0 < b && b < n)) return fail(node, "needs 0 < b < n");
      const Certificate& first = *node.children[0];
      const Certificate& second = *node.children[1];
      if (!same_multiset(first.system, d - k - 1, {{m, n - b}}))
        return fail(node, "first child is not L_{d-k-1}((n-b)^m)");
      if (!same_multiset(second.system, d, {{d - k + 1, 1}, {m, b}}))
        return fail(node, "second child is not L_d(1^{d-k+1}, b^m)");
      if (edim(first.system) < 0) return fail(node, "first child is empty");
      if (edim(second.system) < 0) return fail(node, "second child is empty");
      return check(first) && check(second);
    }

    return leaf(node);
  }
};

}  // namespace

VerifyResult verify_certificate(const Certificate& certificate) {
  Verifier verifier;
  const bool ok = verifier.check(certificate);
  return {ok, ok ? std::string() : verifier.diagnostic};
}

}  // namespace seshadri
