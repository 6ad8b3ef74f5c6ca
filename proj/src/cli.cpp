#include "seshadri/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "seshadri/certificate.hpp"
#include "seshadri/classification.hpp"
#include "seshadri/errors.hpp"
#include "seshadri/linear_system.hpp"
#include "seshadri/nagata.hpp"
#include "seshadri/oracle.hpp"
#include "seshadri/prover.hpp"
#include "seshadri/quasi_homogeneous.hpp"
#include "seshadri/surfaces.hpp"

namespace seshadri::cli {

namespace {

using nlohmann::json;

struct GlobalFlags {
  int threads = 1;
  bool deterministic = false;
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void stamp(json& document, const GlobalFlags& flags) {
  if (!flags.deterministic) document["generated_at"] = timestamp();
}

void emit(std::ostream& out, const json& document, const std::string& path = {}) {
  const std::string text = document.dump(2) + "\n";
  if (!path.empty()) {
    std::ofstream file(path, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + path);
    file << text;
  }
  out << text;
}

std::string resolve_cache_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SESHADRI_CACHE"); env && *env) return env;
  return {};
}

MemoCache open_cache(const std::string& path, std::ostream& err) {
  if (path.empty()) return {};
  if (!std::filesystem::exists(path)) return {};
  auto loaded = cache_load(path);
  for (const auto& warning : loaded.warnings) err << "warning: " << warning << "\n";
  return std::move(loaded.cache);
}

json verdict_json(const LinearSystem& system, const SpecialityVerdict& verdict) {
  json document;
  document["system"] = system.text();
  document["verdict"] = to_string(verdict.tag);
  document["rule"] = verdict.rule.empty() ? json(nullptr) : json(verdict.rule);
  const auto nonempty = verdict.nonempty_certified ? std::optional<bool>(true) : is_nonempty_nonspecial(system, verdict);
  document["nonempty_nonspecial"] = nonempty ? json(*nonempty) : json(nullptr);
  document["expected_dimension"] = expected_dimension(system).str();
  return document;
}

SpecialityVerdict classify(const LinearSystem& system) {
  if (auto v = multiplicity_one_rule(system); !v.silent()) return v;
  if (system.is_homogeneous()) {
    const Block& block = system.blocks().front();
    if (auto v = classify_homogeneous_upto9(system.degree(), block.count, block.multiplicity); !v.silent()) return v;
  }
  return certify_quasi(system).verdict;
}

std::vector<Integer> parse_multiplicity_list(const std::string& text) {
  std::vector<Integer> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first == std::string::npos) throw InvalidInput("empty multiplicity in '" + text + "'");
    values.push_back(parse_integer(item.substr(first, last - first + 1)));
  }
  return values;
}

CertificatePtr extract_certificate(const json& document) {
  if (document.contains("outcome") && document["outcome"].is_object() && document["outcome"].contains("certificate"))
    return certificate_from_json(document["outcome"]["certificate"]);
  if (document.contains("certificate") && document["certificate"].is_object())
    return certificate_from_json(document["certificate"]);
  return certificate_from_json(document);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-speciality certificates for plane linear systems and Seshadri constant bounds", "seshadri"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  GlobalFlags flags;
  app.add_option("--threads", flags.threads, "Worker cap")->check(CLI::Range(1, 256));
  app.add_flag("--deterministic", flags.deterministic, "Omit timestamps from JSON output");

  std::string system_text;
  std::string cache_flag;
  std::string out_path;
  int max_depth = 64;
  OracleOptions oracle;

  auto* dim = app.add_subcommand("dim", "Virtual and expected dimension of a system");
  dim->add_option("system", system_text, "e.g. \"d: 35; mults: 10^11\" (count^multiplicity)")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Speciality verdict from the non-recursive rules");
  classify_cmd->add_option("system", system_text)->required();

  auto* prove_cmd = app.add_subcommand("prove", "Prove non-speciality and emit a certificate");
  prove_cmd->add_option("system", system_text)->required();
  prove_cmd->add_option("--max-depth", max_depth)->check(CLI::NonNegativeNumber);
  prove_cmd->add_option("--cache", cache_flag, "JSON-lines memo file (default: $SESHADRI_CACHE)");
  prove_cmd->add_option("--out", out_path, "Also write the JSON to this file");

  std::string certificate_path;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate produced by prove");
  verify_cmd->add_option("file", certificate_path)->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Interpolation rank of a system over GF(p)");
  oracle_cmd->add_option("system", system_text)->required();
  auto add_oracle_flags = [&](CLI::App* cmd) {
    cmd->add_option("--prime", oracle.prime, "Field modulus (default 2147483647)");
    cmd->add_option("--trials", oracle.trials)->check(CLI::PositiveNumber);
    cmd->add_option("--seed", oracle.seed);
  };
  add_oracle_flags(oracle_cmd);

  std::string lhs_text;
  std::string rhs_text;
  auto* intersect_cmd = app.add_subcommand("intersect", "Intersection number of two divisor classes");
  intersect_cmd->add_option("lhs", lhs_text, "e.g. \"Prod[r=3]: 3F1+4F2-2E1-2E2-2E3\"")->required();
  intersect_cmd->add_option("rhs", rhs_text, "Defaults to lhs (self-intersection)");

  std::string a_text;
  std::string b_text;
  std::string mults_text;
  auto* seshadri_cmd = app.add_subcommand("seshadri", "Seshadri constant on a (blown-up) product of curves");
  seshadri_cmd->add_option("--a", a_text)->required();
  seshadri_cmd->add_option("--b", b_text)->required();
  seshadri_cmd->add_option("--mults", mults_text, "Comma-separated multiplicities of the blown-up points");

  std::string r_text;
  std::string dmax_text;
  std::string backend_text = "oracle";
  auto* bound_cmd = app.add_subcommand("bound", "Certified lower bound for eps(H; x_1..x_r)");
  bound_cmd->add_option("--r", r_text)->required();
  bound_cmd->add_option("--dmax", dmax_text)->required();
  bound_cmd->add_option("--backend", backend_text, "recursion | oracle | both");
  bound_cmd->add_option("--cache", cache_flag);
  bound_cmd->add_option("--out", out_path);
  bound_cmd->add_option("--max-depth", max_depth)->check(CLI::NonNegativeNumber);
  add_oracle_flags(bound_cmd);

  std::string s_text;
  bool table_json = false;
  auto* table_cmd = app.add_subcommand("table", "Target ratios for r = s^2+1 .. (s+1)^2");
  table_cmd->add_option("--s", s_text)->required();
  table_cmd->add_flag("--json", table_json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (dim->parsed()) {
      const LinearSystem system = parse_system(system_text);
      json document;
      document["system"] = system.text();
      document["virtual_dimension"] = virtual_dimension(system).str();
      document["expected_dimension"] = expected_dimension(system).str();
      document["conditions"] = conditions_count(system).str();
      document["coefficients"] = coefficient_count(system.degree()).str();
      emit(out, document);
      return kExitOk;
    }

    if (classify_cmd->parsed()) {
      const LinearSystem system = parse_system(system_text);
      emit(out, verdict_json(system, classify(system)));
      return kExitOk;
    }

    if (prove_cmd->parsed()) {
      const LinearSystem system = parse_system(system_text);
      const std::string cache_path = resolve_cache_path(cache_flag);
      MemoCache cache = open_cache(cache_path, err);
      const ProofOutcome outcome = prove(system, max_depth, cache, flags.threads);
      json document;
      document["system"] = system.text();
      document["outcome"] = to_json(outcome);
      if (outcome.certificate) document["verified"] = verify_certificate(*outcome.certificate).valid;
      stamp(document, flags);
      if (!cache_path.empty()) cache_store(cache, cache_path);
      emit(out, document, out_path);
      return outcome.decided() ? kExitOk : kExitUnknown;
    }

    if (verify_cmd->parsed()) {
      std::ifstream in(certificate_path);
      if (!in) throw InvalidInput("cannot read " + certificate_path);
      json parsed;
      try {
        parsed = json::parse(in);
      } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
      }
      json document;
      VerifyResult result;
      try {
        const CertificatePtr certificate = extract_certificate(parsed);
        result = verify_certificate(*certificate);
        document["system"] = certificate->system.text();
        document["hash"] = certificate->hash;
      } catch (const InvalidInput& e) {
        result = {false, e.what()};
      }
      document["valid"] = result.valid;
      if (!result.valid) document["diagnostic"] = result.diagnostic;
      emit(out, document);
      return result.valid ? kExitOk : kExitError;
    }

    if (oracle_cmd->parsed()) {
      const LinearSystem system = parse_system(system_text);
      oracle.threads = flags.threads;
      emit(out, to_json(actual_dimension(system, oracle)));
      return kExitOk;
    }

    if (intersect_cmd->parsed()) {
      const DivisorClass lhs = parse_divisor(lhs_text);
      const DivisorClass rhs = rhs_text.empty() ? lhs : parse_divisor(rhs_text);
      json document;
      document["lhs"] = lhs.text();
      document["rhs"] = rhs.text();
      document["value"] = to_string(intersect(lhs, rhs));
      emit(out, document);
      return kExitOk;
    }

    if (seshadri_cmd->parsed()) {
      const Integer a = parse_integer(a_text);
      const Integer b = parse_integer(b_text);
      json document;
      document["a"] = a.str();
      document["b"] = b.str();
      if (mults_text.empty()) {
        document["value"] = seshadri_product(a, b).str();
      } else {
        const ProductPolarization polarization{a, b, parse_multiplicity_list(mults_text)};
        document["mults"] = json::array();
        for (const auto& m : polarization.multiplicities) document["mults"].push_back(m.str());
        try {
          const SeshadriValue value = seshadri_blownup_product(polarization);
          document["value"] = value.value.str();
          document["caveat"] = value.caveat;
        } catch (const HypothesisViolated& e) {
          document["error"] = "hypothesis-violated";
          document["inequality"] = e.inequality();
          document["message"] = e.what();
          emit(out, document);
          return kExitError;
        }
      }
      emit(out, document);
      return kExitOk;
    }

    if (bound_cmd->parsed()) {
      BoundSearchOptions options;
      options.backend = parse_backend(backend_text);
      options.oracle = oracle;
      options.max_depth = max_depth;
      options.threads = flags.threads;
      const std::string cache_path = resolve_cache_path(cache_flag);
      MemoCache cache = open_cache(cache_path, err);
      const BoundResult result =
          certified_lower_bound_search(parse_integer(r_text), parse_integer(dmax_text), options, cache);
      json document = to_json(result);
      document["search"] = {{"dmax", dmax_text}, {"backend_requested", to_string(options.backend)}};
      stamp(document, flags);
      if (!cache_path.empty()) cache_store(cache, cache_path);
      emit(out, document, out_path);
      return kExitOk;
    }

    if (table_cmd->parsed()) {
      const BarkowskiTarget target = barkowski_targets(parse_integer(s_text));
      if (table_json) {
        emit(out, to_json(target));
        return kExitOk;
      }
      out << "s = " << target.s << "\n";
      out << "offset  r    sqrt(r)/a  eps target\n";
      for (const auto& row : target.rows) {
        out << std::left << std::setw(8) << row.offset << std::setw(5) << row.r.str() << std::setw(11)
            << (row.sqrt_r_over_a ? to_string(*row.sqrt_r_over_a) : std::string("-")) << to_string(row.eps_target)
            << "\n";
      }
      if (2 * target.s + 1 >= 5)
        out << "fallback " << to_string(target.fallback) << " for offsets 5.." << (2 * target.s + 1) << "\n";
      if (!target.scope_note.empty()) out << "note: " << target.scope_note << "\n";
      return kExitOk;
    }
  } catch (const HypothesisViolated& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace seshadri::cli
