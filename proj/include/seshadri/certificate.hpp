#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "seshadri/linear_system.hpp"

namespace seshadri {

struct Certificate;
using CertificatePtr = std::shared_ptr<const Certificate>;

/// Proof tree for non-speciality of `system`. Nodes are immutable once built
/// and may be shared between trees.
///
/// Rules and their witnesses:
///   no-points, mult-one, table-absent   leaves, no witness
///   prop62                              leaf, witness {n, m}
///   cor63+<leaf rule>                   witness {n, m}, one child (the reduced system)
///   cor34-split                         witness {k, b}, two children
struct Certificate {
  LinearSystem system;
  std::string rule;
  std::map<std::string, Integer> witness;
  std::vector<CertificatePtr> children;
  /// SHA-256 (hex) over the canonical serialization, see certificate_digest().
  std::string hash;
};

/// Builds a node and stamps its hash.
CertificatePtr make_certificate(LinearSystem system, std::string rule, std::map<std::string, Integer> witness = {},
                                std::vector<CertificatePtr> children = {});

/// Hash of the node's canonical serialization: system text, rule, witness
/// entries in key order and the children's stored hashes.
std::string certificate_digest(const Certificate& certificate);

std::string sha256_hex(std::string_view data);

nlohmann::json to_json(const Certificate& certificate);

/// Throws InvalidInput on structurally malformed JSON. Hashes are kept as
/// read, so tampering is caught by verify_certificate.
CertificatePtr certificate_from_json(const nlohmann::json& json);

struct VerifyResult {
  bool valid = false;
  std::string diagnostic;

  explicit operator bool() const noexcept { return valid; }
};

/// Re-checks every node against its rule from scratch: side conditions,
/// child shapes and non-emptiness of children where required, and hashes.
VerifyResult verify_certificate(const Certificate& certificate);

}  // namespace seshadri
