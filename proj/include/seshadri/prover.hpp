#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "seshadri/certificate.hpp"
#include "seshadri/linear_system.hpp"

namespace seshadri {

struct ProofOutcome {
  enum class Tag { Certified, SpecialByTable, Empty, Unknown };

  Tag tag = Tag::Unknown;
  /// Certified: non-empty and non-special. Empty: non-special with
  /// expected dimension -1.
  CertificatePtr certificate;
  /// SpecialByTable: the table row id.
  std::string special_rule;
  /// Unknown: the depth budget the search ran with, and whether the stated
  /// rules were exhausted without ever hitting that budget.
  int depth_reached = 0;
  bool exhaustive = false;

  bool certified() const noexcept { return tag == Tag::Certified; }
  bool decided() const noexcept { return tag != Tag::Unknown; }
};

std::string to_string(ProofOutcome::Tag tag);
nlohmann::json to_json(const ProofOutcome& outcome);
/// Throws InvalidInput on malformed JSON.
ProofOutcome outcome_from_json(const nlohmann::json& json);

/// Concurrent memo table keyed by canonical system text.
///
/// Decided outcomes are insert-once (first writer wins) and never change.
/// Unknown outcomes remember the depth budget they were abandoned at and are
/// only served to queries with no larger budget; a deeper query replaces them.
class MemoCache {
 public:
  MemoCache() = default;
  MemoCache(const MemoCache& other);
  MemoCache& operator=(const MemoCache& other);

  std::optional<ProofOutcome> lookup(const std::string& key, int depth) const;
  void insert(const std::string& key, const ProofOutcome& outcome);

  std::size_t size() const;
  /// Snapshot in key order.
  std::map<std::string, ProofOutcome> entries() const;

  bool operator==(const MemoCache& other) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, ProofOutcome> entries_;
};

struct CacheLoadResult {
  MemoCache cache;
  std::vector<std::string> warnings;
};

/// One JSON object per line: {"system": ..., "outcome": ..., "hash": ...}.
/// Missing or unreadable files give an empty cache plus a warning; corrupt
/// lines (bad JSON, hash mismatch, certificate that fails verification) are
/// skipped with a diagnostic.
CacheLoadResult cache_load(const std::filesystem::path& path);

/// Writes entries in key order; throws std::runtime_error when the file
/// cannot be written.
void cache_store(const MemoCache& cache, const std::filesystem::path& path);

std::string cache_line(const std::string& key, const ProofOutcome& outcome);

struct ProverOptions {
  int max_depth = 64;
  /// Worker cap for the outermost split search.
  int threads = 1;
};

/// Recursive non-speciality prover built on the splitting rule
///   L_{d-k-1}((n-b)^m) and L_d(1^{d-k+1}, b^m) non-empty non-special
///   => L_d(n^m) non-empty non-special
/// with the multiplicity-one rule, the classification of at most nine
/// points and the quasi-homogeneous rules as base cases.
class Prover {
 public:
  Prover(MemoCache& cache, ProverOptions options = {}) : cache_(cache), options_(options) {}

  /// Tries, in order: cache, multiplicity one, the table, quasi-homogeneous
  /// rules, then the split search for homogeneous systems. Deterministic
  /// regardless of thread count.
  ProofOutcome prove(const LinearSystem& system);

  /// Candidate pairs (k, b) in lexicographic order; returns the first pair
  /// whose two subsystems are certified non-empty and non-special.
  ProofOutcome split_search(const Integer& degree, const Integer& points, const Integer& multiplicity);

 private:
  struct Attempt {
    ProofOutcome outcome;
    bool truncated = false;
  };

  Attempt prove_at(const LinearSystem& system, int depth, bool top_level);
  Attempt split_at(const Integer& degree, const Integer& points, const Integer& multiplicity, int depth,
                   bool top_level);

  MemoCache& cache_;
  ProverOptions options_;
};

ProofOutcome prove(const LinearSystem& system, int max_depth, MemoCache& cache, int threads = 1);

}  // namespace seshadri
