#include "seshadri/prover.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include "seshadri/classification.hpp"
#include "seshadri/errors.hpp"
#include "seshadri/quasi_homogeneous.hpp"

namespace seshadri {

std::string to_string(ProofOutcome::Tag tag) {
  switch (tag) {
    case ProofOutcome::Tag::Certified:
      return "certified";
    case ProofOutcome::Tag::SpecialByTable:
      return "special";
    case ProofOutcome::Tag::Empty:
      return "empty";
    case ProofOutcome::Tag::Unknown:
      return "unknown";
  }
  return "unknown";
}

nlohmann::json to_json(const ProofOutcome& outcome) {
  nlohmann::json json;
  json["tag"] = to_string(outcome.tag);
  switch (outcome.tag) {
    case ProofOutcome::Tag::Certified:
    case ProofOutcome::Tag::Empty:
      json["certificate"] = to_json(*outcome.certificate);
      break;
    case ProofOutcome::Tag::SpecialByTable:
      json["rule"] = outcome.special_rule;
      break;
    case ProofOutcome::Tag::Unknown:
      json["depth_reached"] = outcome.depth_reached;
      json["exhaustive"] = outcome.exhaustive;
      break;
  }
  return json;
}

ProofOutcome outcome_from_json(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("tag") || !json["tag"].is_string())
    throw InvalidInput("outcome must be an object with a string 'tag'");
  const std::string tag = json["tag"].get<std::string>();
  ProofOutcome outcome;
  if (tag == "certified" || tag == "empty") {
    outcome.tag = tag == "certified" ? ProofOutcome::Tag::Certified : ProofOutcome::Tag::Empty;
    if (!json.contains("certificate")) throw InvalidInput("outcome lacks a certificate");
    outcome.certificate = certificate_from_json(json["certificate"]);
  } else if (tag == "special") {
    outcome.tag = ProofOutcome::Tag::SpecialByTable;
    if (!json.contains("rule") || !json["rule"].is_string()) throw InvalidInput("special outcome lacks a rule");
    outcome.special_rule = json["rule"].get<std::string>();
  } else if (tag == "unknown") {
    outcome.tag = ProofOutcome::Tag::Unknown;
    if (!json.contains("depth_reached") || !json["depth_reached"].is_number_integer())
      throw InvalidInput("unknown outcome lacks depth_reached");
    outcome.depth_reached = json["depth_reached"].get<int>();
    outcome.exhaustive = json.value("exhaustive", false);
  } else {
    throw InvalidInput("unknown outcome tag '" + tag + "'");
  }
  return outcome;
}

// ---------------------------------------------------------------------------

MemoCache::MemoCache(const MemoCache& other) : entries_(other.entries()) {}

MemoCache& MemoCache::operator=(const MemoCache& other) {
  if (this != &other) {
    auto snapshot = other.entries();
    std::unique_lock lock(mutex_);
    entries_ = std::move(snapshot);
  }
  return *this;
}

std::optional<ProofOutcome> MemoCache::lookup(const std::string& key, int depth) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  const ProofOutcome& hit = it->second;
  if (hit.tag == ProofOutcome::Tag::Unknown && !hit.exhaustive && depth > hit.depth_reached) return std::nullopt;
  return hit;
}

void MemoCache::insert(const std::string& key, const ProofOutcome& outcome) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key, outcome);
  if (inserted) return;
  ProofOutcome& held = it->second;
  if (held.decided() || held.exhaustive) return;
  if (outcome.decided() || outcome.exhaustive || outcome.depth_reached > held.depth_reached) held = outcome;
}

std::size_t MemoCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::map<std::string, ProofOutcome> MemoCache::entries() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

bool MemoCache::operator==(const MemoCache& other) const {
  const auto mine = entries();
  const auto theirs = other.entries();
  if (mine.size() != theirs.size()) return false;
  for (auto a = mine.begin(), b = theirs.begin(); a != mine.end(); ++a, ++b) {
    if (a->first != b->first || to_json(a->second) != to_json(b->second)) return false;
  }
  return true;
}

std::string cache_line(const std::string& key, const ProofOutcome& outcome) {
  const nlohmann::json body = to_json(outcome);
  nlohmann::json line;
  line["system"] = key;
  line["outcome"] = body;
  line["hash"] = sha256_hex(key + "\n" + body.dump());
  return line.dump();
}

CacheLoadResult cache_load(const std::filesystem::path& path) {
  CacheLoadResult result;
  std::error_code ec;
  std::ifstream in(path);
  if (!in || std::filesystem::is_directory(path, ec)) {
    result.warnings.push_back("cannot read cache file " + path.string() + "; starting with an empty cache");
    return result;
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    try {
      const auto json = nlohmann::json::parse(line);
      if (!json.is_object() || !json.contains("system") || !json.contains("outcome") || !json.contains("hash"))
        throw InvalidInput("missing fields");
      const std::string key = json["system"].get<std::string>();
      if (parse_system(key).text() != key) throw InvalidInput("system text is not canonical");
      if (sha256_hex(key + "\n" + json["outcome"].dump()) != json["hash"].get<std::string>())
        throw InvalidInput("hash mismatch");
      ProofOutcome outcome = outcome_from_json(json["outcome"]);
      if (outcome.certificate) {
        if (outcome.certificate->system.text() != key) throw InvalidInput("certificate is for another system");
        if (auto verdict = verify_certificate(*outcome.certificate); !verdict)
          throw InvalidInput("certificate rejected: " + verdict.diagnostic);
      }
      result.cache.insert(key, outcome);
    } catch (const std::exception& e) {
      result.warnings.push_back(where + "skipped corrupt entry (" + e.what() + ")");
    }
  }
  return result;
}

void cache_store(const MemoCache& cache, const std::filesystem::path& path) {
  std::ostringstream body;
  for (const auto& [key, outcome] : cache.entries()) body << cache_line(key, outcome) << '\n';
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write cache file " + path.string());
  out << body.str();
  if (!out) throw std::runtime_error("failed writing cache file " + path.string());
}

// ---------------------------------------------------------------------------

namespace {

ProofOutcome from_certificate(const LinearSystem& system, CertificatePtr certificate) {
  ProofOutcome outcome;
  outcome.tag = expected_dimension(system) >= 0 ? ProofOutcome::Tag::Certified : ProofOutcome::Tag::Empty;
  outcome.certificate = std::move(certificate);
  return outcome;
}

ProofOutcome unknown(int depth, bool exhaustive) {
  ProofOutcome outcome;
  outcome.tag = ProofOutcome::Tag::Unknown;
  outcome.depth_reached = depth;
  outcome.exhaustive = exhaustive;
  return outcome;
}

std::map<std::string, Integer> shape_witness(const QuasiShape& shape) {
  return {{"n", shape.points}, {"m", shape.multiplicity}};
}

/// Certificate for a verdict of certify_base; nullptr when it is silent or special.
CertificatePtr leaf_certificate(const LinearSystem& system, const SpecialityVerdict& verdict) {
  if (!verdict.non_special()) return nullptr;
  if (verdict.rule != rules::kProp62) return make_certificate(system, verdict.rule);
  for (const auto& shape : quasi_shapes(system)) {
    if (shape.kind != QuasiShape::Kind::Cremona || shape.multiplicity > shape.degree) continue;
    if (prop62_test(shape.degree, shape.points, shape.multiplicity).non_special())
      return make_certificate(system, rules::kProp62, shape_witness(shape));
  }
  return nullptr;
}

}  // namespace

ProofOutcome Prover::prove(const LinearSystem& system) {
  return prove_at(system, std::max(0, options_.max_depth), true).outcome;
}

ProofOutcome Prover::split_search(const Integer& degree, const Integer& points, const Integer& multiplicity) {
  if (points < 2 || multiplicity < 2 || degree < 2)
    throw PreconditionError("split search needs n >= 2, m >= 2 and d >= 2");
  return split_at(degree, points, multiplicity, std::max(0, options_.max_depth), true).outcome;
}

Prover::Attempt Prover::prove_at(const LinearSystem& system, int depth, bool top_level) {
  const std::string key = system.text();
  if (auto hit = cache_.lookup(key, depth)) return {*hit, false};

  Attempt attempt;
  if (auto verdict = multiplicity_one_rule(system); verdict.non_special()) {
    attempt.outcome = from_certificate(system, make_certificate(system, verdict.rule));
  } else if (auto table = system.is_homogeneous() ? classify_homogeneous_upto9(system.degree(),
                                                                               system.blocks().front().count,
                                                                               system.blocks().front().multiplicity)
                                                  : SpecialityVerdict::silent_verdict();
             !table.silent()) {
    if (table.special()) {
      attempt.outcome.tag = ProofOutcome::Tag::SpecialByTable;
      attempt.outcome.special_rule = table.rule;
    } else {
      attempt.outcome = from_certificate(system, make_certificate(system, table.rule));
    }
  } else if (auto quasi = certify_quasi(system); quasi.verdict.non_special()) {
    CertificatePtr certificate;
    if (!quasi.reduced) {
      certificate = make_certificate(system, quasi.verdict.rule, shape_witness(*quasi.shape));
    } else {
      auto child = leaf_certificate(*quasi.reduced, quasi.reduced_verdict);
      certificate = make_certificate(system, quasi.verdict.rule, shape_witness(*quasi.shape), {child});
    }
    attempt.outcome = from_certificate(system, std::move(certificate));
  } else if (system.is_homogeneous() && system.degree() >= 2 && system.blocks().front().count >= 2 &&
             system.blocks().front().multiplicity >= 2) {
    if (depth <= 0) {
      attempt = {unknown(depth, false), true};
    } else {
      const Block& block = system.blocks().front();
      attempt = split_at(system.degree(), block.count, block.multiplicity, depth, top_level);
    }
  } else {
    attempt.outcome = unknown(depth, true);
  }

  if (attempt.outcome.decided()) {
    if (!attempt.truncated) cache_.insert(key, attempt.outcome);
  } else {
    cache_.insert(key, attempt.outcome);
  }
  return attempt;
}

Prover::Attempt Prover::split_at(const Integer& degree, const Integer& points, const Integer& multiplicity,
                                 int depth, bool top_level) {
  const std::int64_t d = to_int64(degree, "degree");
  const std::int64_t n = to_int64(points, "point count");
  const LinearSystem root = LinearSystem::homogeneous(degree, points, multiplicity);

  struct Candidate {
    std::int64_t k;
    std::int64_t b;
    LinearSystem first;
    CertificatePtr second;
  };

  bool truncated = false;
  auto certify_second = [&](const LinearSystem& second) -> CertificatePtr {
    Attempt a = prove_at(second, depth - 1, false);
    truncated = truncated || a.truncated;
    return a.outcome.certified() ? a.outcome.certificate : nullptr;
  };

  // Cheap filters first, then the non-recursive second child; what remains
  // needs a recursive proof of the first child.
  std::vector<Candidate> candidates;
  for (std::int64_t k = 1; k < d; ++k) {
    for (std::int64_t b = 1; b < n; ++b) {
      LinearSystem first = LinearSystem::homogeneous(degree - k - 1, points - b, multiplicity);
      if (virtual_dimension(first) < 0) continue;
      LinearSystem second = LinearSystem::quasi_homogeneous(degree, degree - k + 1, b, multiplicity);
      if (virtual_dimension(second) < 0 || second == root) continue;
      if (auto cert = certify_second(second)) candidates.push_back({k, b, std::move(first), std::move(cert)});
    }
  }

  auto finish = [&](const Candidate& c, CertificatePtr first_cert) {
    auto node = make_certificate(root, rules::kSplit, {{"k", Integer(c.k)}, {"b", Integer(c.b)}},
                                 {std::move(first_cert), c.second});
    return Attempt{from_certificate(root, std::move(node)), truncated};
  };

  const int workers = top_level ? std::max(1, options_.threads) : 1;
  for (std::size_t start = 0; start < candidates.size(); start += workers) {
    const std::size_t stop = std::min(candidates.size(), start + workers);
    std::vector<Attempt> results(stop - start);
    if (workers == 1) {
      results[0] = prove_at(candidates[start].first, depth - 1, false);
    } else {
      // Workers fill private copies of the cache. Only the copies of
      // candidates a sequential scan would have reached are merged back, so
      // the shared cache ends up the same for every thread count.
      std::vector<MemoCache> scratch(stop - start, cache_);
      std::vector<std::future<Attempt>> futures;
      for (std::size_t i = start; i < stop; ++i)
        futures.push_back(std::async(std::launch::async, [this, &candidates, &scratch, start, i, depth] {
          Prover worker(scratch[i - start], {options_.max_depth, 1});
          return worker.prove_at(candidates[i].first, depth - 1, false);
        }));
      for (std::size_t i = start; i < stop; ++i) results[i - start] = futures[i - start].get();
      for (std::size_t i = start; i < stop; ++i) {
        for (const auto& [key, outcome] : scratch[i - start].entries()) cache_.insert(key, outcome);
        if (results[i - start].outcome.certified()) break;
      }
    }
    for (std::size_t i = start; i < stop; ++i) {
      const Attempt& r = results[i - start];
      if (r.outcome.certified()) return finish(candidates[i], r.outcome.certificate);
      truncated = truncated || r.truncated;
    }
  }
  return {unknown(depth, !truncated), truncated};
}

ProofOutcome prove(const LinearSystem& system, int max_depth, MemoCache& cache, int threads) {
  Prover prover(cache, {max_depth, threads});
  return prover.prove(system);
}

}  // namespace seshadri
