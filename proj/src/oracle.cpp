#include "seshadri/oracle.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>
#include <utility>

#include "seshadri/errors.hpp"

namespace seshadri {

namespace {

constexpr std::size_t kMaxEntries = 64u * 1024u * 1024u;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

std::vector<FieldPoint> sample_points(std::size_t count, std::uint64_t prime, std::uint64_t stream_seed) {
  std::mt19937_64 engine(stream_seed);
  // Rejection sampling keeps the draw uniform and identical on every platform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % prime;
  auto draw = [&] {
    while (true) {
      const std::uint64_t v = engine();
      if (v < limit) return v % prime;
    }
  };
  std::vector<FieldPoint> points;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  points.reserve(count);
  while (points.size() < count) {
    FieldPoint p{draw(), draw()};
    if (seen.insert({p.x, p.y}).second) points.push_back(p);
  }
  return points;
}

ModMatrix build_conditions_matrix(const LinearSystem& system, std::span<const FieldPoint> points,
                                  std::uint64_t prime) {
  const std::int64_t d = to_int64(system.degree(), "degree");
  if (to_int64(system.point_count(), "point count") != static_cast<std::int64_t>(points.size()))
    throw InvalidInput("expected " + system.point_count().str() + " points, got " + std::to_string(points.size()));
  {
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (const auto& p : points) {
      if (!seen.insert({p.x % prime, p.y % prime}).second) throw InvalidInput("coincident points");
    }
  }
  const std::size_t rows = static_cast<std::size_t>(to_int64(conditions_count(system), "condition count"));
  const std::size_t cols = static_cast<std::size_t>((d + 1) * (d + 2) / 2);
  if (rows * cols > kMaxEntries) throw InvalidInput("conditions matrix too large");

  // Binomials C(i, a) mod p for i <= d.
  std::vector<std::vector<std::uint64_t>> binom(d + 1, std::vector<std::uint64_t>(d + 1, 0));
  for (std::int64_t i = 0; i <= d; ++i) {
    binom[i][0] = 1 % prime;
    for (std::int64_t a = 1; a <= i; ++a) binom[i][a] = (binom[i - 1][a - 1] + (a < i ? binom[i - 1][a] : 0)) % prime;
  }

  ModMatrix matrix(rows, cols);
  std::size_t row = 0;
  std::size_t point_index = 0;
  std::vector<std::uint64_t> xpow(d + 1), ypow(d + 1);
  for (const auto& block : system.blocks()) {
    const std::int64_t mult = to_int64(block.multiplicity, "multiplicity");
    const std::int64_t count = to_int64(block.count, "count");
    for (std::int64_t copy = 0; copy < count; ++copy, ++point_index) {
      const FieldPoint& p = points[point_index];
      xpow[0] = ypow[0] = 1 % prime;
      for (std::int64_t e = 1; e <= d; ++e) {
        xpow[e] = xpow[e - 1] * (p.x % prime) % prime;
        ypow[e] = ypow[e - 1] * (p.y % prime) % prime;
      }
      for (std::int64_t a = 0; a < mult; ++a) {
        for (std::int64_t b = 0; a + b < mult; ++b, ++row) {
          std::size_t col = 0;
          for (std::int64_t i = 0; i <= d; ++i) {
            for (std::int64_t j = 0; i + j <= d; ++j, ++col) {
              if (i < a || j < b) continue;
              matrix(row, col) = binom[i][a] * binom[j][b] % prime * xpow[i - a] % prime * ypow[j - b] % prime;
            }
          }
        }
      }
    }
  }
  return matrix;
}

std::size_t rank_mod_p(ModMatrix matrix, std::uint64_t prime) {
  const std::size_t rows = matrix.rows();
  const std::size_t cols = matrix.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && matrix(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      auto a = matrix.row(pivot);
      auto b = matrix.row(rank);
      std::swap_ranges(a.begin() + col, a.end(), b.begin() + col);
    }
    auto pivot_row = matrix.row(rank);
    const std::uint64_t inv = pow_mod(pivot_row[col], prime - 2, prime);
    for (std::size_t c = col; c < cols; ++c) pivot_row[c] = pivot_row[c] * inv % prime;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      auto target = matrix.row(r);
      const std::uint64_t factor = target[col];
      if (factor == 0) continue;
      const std::uint64_t neg = prime - factor;
      for (std::size_t c = col; c < cols; ++c) target[c] = (target[c] + neg * pivot_row[c]) % prime;
    }
    ++rank;
  }
  return rank;
}

std::string OracleReport::semantics() const {
  if (agrees_with_expected) return "non-special certified";
  return "special with probability >= 1 - " + std::to_string(trials) + "*(" + std::to_string(rows) + "/" +
         std::to_string(prime) + ") heuristic";
}

std::string OracleReport::reference() const {
  return "oracle:p=" + std::to_string(prime) + ";seed=" + std::to_string(seed) + ";trials=" + std::to_string(trials) +
         ";rank=" + std::to_string(rank_max) + "/" + std::to_string(rows) + "x" + std::to_string(cols);
}

nlohmann::json to_json(const OracleReport& report) {
  nlohmann::json json;
  json["system"] = report.system.text();
  json["prime"] = report.prime;
  json["trials"] = report.trials;
  json["seed"] = report.seed;
  json["seeds"] = report.seeds;
  json["ranks"] = report.ranks;
  json["rows"] = report.rows;
  json["cols"] = report.cols;
  json["rank_max"] = report.rank_max;
  json["actual_dim_estimate"] = to_int64(report.actual_dim_estimate, "dimension");
  json["expected_dimension"] = to_int64(report.expected_dim, "dimension");
  json["agrees_with_expected"] = report.agrees_with_expected;
  json["semantics"] = report.semantics();
  return json;
}

OracleReport actual_dimension(const LinearSystem& system, const OracleOptions& options) {
  if (options.trials < 1) throw InvalidInput("trials must be >= 1");
  if (options.prime >= (std::uint64_t{1} << 32) || !is_prime(options.prime))
    throw InvalidInput("modulus must be a prime below 2^32");
  const Integer n_points = system.point_count();
  if (Integer(options.prime) <= 2 * system.degree() * n_points * n_points)
    throw InvalidInput("prime " + std::to_string(options.prime) + " is too small for " + system.notation());

  OracleReport report;
  report.system = system;
  report.prime = options.prime;
  report.trials = options.trials;
  report.seed = options.seed;
  report.rows = static_cast<std::size_t>(to_int64(conditions_count(system), "condition count"));
  report.cols = static_cast<std::size_t>(to_int64(coefficient_count(system.degree()), "coefficient count"));
  for (int t = 0; t < options.trials; ++t) report.seeds.push_back(trial_seed(options.seed, t));

  const std::size_t n = static_cast<std::size_t>(to_int64(n_points, "point count"));
  auto run_trial = [&](int t) {
    const auto points = sample_points(n, options.prime, report.seeds[t]);
    return rank_mod_p(build_conditions_matrix(system, points, options.prime), options.prime);
  };
  report.ranks.assign(options.trials, 0);
  const int workers = std::max(1, std::min(options.threads, options.trials));
  if (workers == 1) {
    for (int t = 0; t < options.trials; ++t) report.ranks[t] = run_trial(t);
  } else {
    for (int start = 0; start < options.trials; start += workers) {
      std::vector<std::future<std::size_t>> futures;
      for (int t = start; t < std::min(options.trials, start + workers); ++t)
        futures.push_back(std::async(std::launch::async, run_trial, t));
      for (int t = start; t < std::min(options.trials, start + workers); ++t) report.ranks[t] = futures[t - start].get();
    }
  }
  report.rank_max = *std::max_element(report.ranks.begin(), report.ranks.end());
  const Integer estimate = Integer(report.cols) - 1 - Integer(report.rank_max);
  report.actual_dim_estimate = estimate < -1 ? Integer(-1) : estimate;
  report.expected_dim = expected_dimension(system);
  report.agrees_with_expected = report.actual_dim_estimate == report.expected_dim;
  return report;
}

bool speciality_check(const LinearSystem& system, const OracleOptions& options) {
  const OracleReport report = actual_dimension(system, options);
  return report.actual_dim_estimate > report.expected_dim;
}

}  // namespace seshadri
