#include "offo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace offo {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::uint64_t cell_seed(std::uint64_t master, const std::string& variant,
                        const std::string& problem, double level, int rep) {
  std::uint64_t h = mix(master);
  h = mix(h ^ fnv1a(variant));
  h = mix(h ^ fnv1a(problem));
  h = mix(h ^ std::bit_cast<std::uint64_t>(level));
  return mix(h ^ static_cast<std::uint64_t>(rep));
}

bool success(double final_gnorm, std::optional<double> final_f,
             std::optional<double> f_ref) {
  if (final_gnorm <= 1e-6) return true;
  require(f_ref.has_value(), ErrorCode::MissingReference,
          "success: no reference value to compare against");
  if (!final_f || !std::isfinite(*final_f)) return false;
  const double fr = *f_ref;
  const double f = *final_f;
  if (std::abs(fr) < 1e-7) return std::abs(f) <= 1e-7;
  return std::abs(f - fr) / std::abs(fr) <= 1e-7;
}

BenchResults run_matrix(
    const BenchConfig& config,
    const std::function<void(std::size_t, std::size_t)>& progress) {
  require(!config.variants.empty(), ErrorCode::InvalidParameter,
          "bench: no variants");
  require(!config.noise_levels.empty(), ErrorCode::InvalidParameter,
          "bench: no noise levels");
  require(config.reps >= 1, ErrorCode::InvalidParameter, "bench: reps must be >= 1");
  for (const auto& v : config.variants) {
    const auto& tags = variant_tags();
    require(std::find(tags.begin(), tags.end(), v) != tags.end(),
            ErrorCode::InvalidParameter, "bench: unknown variant '" + v + "'");
  }
  for (double level : config.noise_levels) {
    require(level >= 0.0 && std::isfinite(level), ErrorCode::InvalidParameter,
            "bench: noise levels must be finite and >= 0");
  }
  const std::vector<Problem> problems = load_suite(config.problems);

  BenchResults out;
  out.variants = config.variants;
  out.noise_levels = config.noise_levels;
  out.reps = config.reps;
  for (const auto& p : problems) out.problems.push_back(p.name);

  struct Cell {
    std::size_t problem;
    CellResult result;
  };
  std::vector<Cell> cells;
  for (double level : config.noise_levels) {
    const int reps = level == 0.0 ? 1 : config.reps;
    for (const auto& v : config.variants) {
      for (std::size_t p = 0; p < problems.size(); ++p) {
        for (int r = 0; r < reps; ++r) {
          Cell c{p, {}};
          c.result.variant = v;
          c.result.problem = problems[p].name;
          c.result.noise_level = level;
          c.result.rep = r;
          cells.push_back(std::move(c));
        }
      }
    }
  }

  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mutex;
  const auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      CellResult& res = cells[i].result;
      const Problem& problem = problems[cells[i].problem];
      RunConfig rc = config_for_variant(res.variant);
      rc.max_iter = config.max_iter;
      rc.eps = config.eps;
      rc.noise = res.noise_level;
      rc.seed = cell_seed(config.seed, res.variant, res.problem,
                          res.noise_level, res.rep);
      RunRecord rec = run(problem, rc);
      finalize(rec, problem);
      res.status = rec.status;
      res.evals = rec.evals;
      res.final_gnorm = rec.final_gnorm;
      res.final_f = rec.final_f;
      res.violations = rec.violations;
      res.success = rec.status != RunStatus::OverflowFailure &&
                    success(rec.final_gnorm, rec.final_f, problem.f_ref);
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(finished, cells.size());
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, cells.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  out.runs.reserve(cells.size());
  for (auto& c : cells) out.runs.push_back(std::move(c.result));
  return out;
}

std::vector<std::string> incomparable_problems(const BenchResults& results) {
  std::map<std::string, std::vector<double>> finals;
  for (const auto& r : results.runs) {
    if (r.noise_level == 0.0 && r.success && r.final_f) {
      finals[r.problem].push_back(*r.final_f);
    }
  }
  std::vector<std::string> out;
  for (const auto& name : results.problems) {
    const auto it = finals.find(name);
    if (it == finals.end()) continue;
    const auto& fs = it->second;
    bool differ = false;
    for (std::size_t a = 0; a < fs.size() && !differ; ++a) {
      for (std::size_t b = a + 1; b < fs.size() && !differ; ++b) {
        const double scale = std::max({1.0, std::abs(fs[a]), std::abs(fs[b])});
        differ = std::abs(fs[a] - fs[b]) > 1e-3 * scale;
      }
    }
    if (differ) out.push_back(name);
  }
  return out;
}

double ProfileCurve::theta(double t) const {
  if (ratios.empty()) return 0.0;
  const auto count = std::count_if(ratios.begin(), ratios.end(),
                                   [t](double r) { return r <= t; });
  return static_cast<double>(count) / static_cast<double>(ratios.size());
}

std::vector<ProfileCurve> profiles(const BenchResults& results) {
  const auto excluded = incomparable_problems(results);
  const auto skip = [&](const std::string& p) {
    return std::find(excluded.begin(), excluded.end(), p) != excluded.end();
  };
  // Instance key: (level, problem, rep) -> per-variant cost.
  std::map<std::tuple<double, std::string, int>, std::map<std::string, double>> cost;
  for (const auto& r : results.runs) {
    if (skip(r.problem)) continue;
    cost[{r.noise_level, r.problem, r.rep}][r.variant] =
        r.success ? static_cast<double>(std::max<long>(1, r.evals)) : kInf;
  }
  std::vector<ProfileCurve> out;
  for (double level : results.noise_levels) {
    for (const auto& v : results.variants) {
      ProfileCurve curve;
      curve.variant = v;
      curve.noise_level = level;
      for (const auto& [key, per_variant] : cost) {
        if (std::get<0>(key) != level) continue;
        const auto it = per_variant.find(v);
        if (it == per_variant.end()) continue;
        double best = kInf;
        for (const auto& [name, c] : per_variant) best = std::min(best, c);
        curve.ratios.push_back(std::isfinite(it->second) ? it->second / best : kInf);
      }
      std::sort(curve.ratios.begin(), curve.ratios.end());
      out.push_back(std::move(curve));
    }
  }
  return out;
}

double profile_area(const ProfileCurve& curve, PiScale scale) {
  if (curve.ratios.empty()) return 0.0;
  constexpr double tmax = 50.0;
  double area = 0.0;
  for (double r : curve.ratios) {
    if (!(r < tmax)) continue;
    const double start = std::max(1.0, r);
    area += scale == PiScale::Linear ? (tmax - start)
                                     : std::log(tmax) - std::log(start);
  }
  const double norm = scale == PiScale::Linear ? tmax : std::log(tmax);
  return area / (norm * static_cast<double>(curve.ratios.size()));
}

std::vector<VariantStats> aggregate(const BenchResults& results, PiScale scale) {
  require(!results.runs.empty() && !results.variants.empty(),
          ErrorCode::EmptyResults, "aggregate: no runs");
  const auto curves = profiles(results);
  std::vector<VariantStats> out;
  for (const auto& curve : curves) {
    VariantStats s;
    s.variant = curve.variant;
    s.noise_level = curve.noise_level;
    s.pi = profile_area(curve, scale);
    for (const auto& r : results.runs) {
      if (r.variant != s.variant || r.noise_level != s.noise_level) continue;
      ++s.attempts;
      if (r.success) ++s.successes;
    }
    s.rho = s.attempts > 0 ? 100.0 * static_cast<double>(s.successes) /
                                 static_cast<double>(s.attempts)
                           : 0.0;
    out.push_back(s);
  }
  return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write '" + path + "'");
  out << std::setprecision(10);
  return out;
}

}  // namespace

void write_results_csv(const BenchResults& results, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "variant,problem,noise_level,rep,status,evals,final_gnorm,final_f,success\n";
  for (const auto& r : results.runs) {
    out << r.variant << ',' << r.problem << ',' << r.noise_level << ',' << r.rep
        << ',' << to_string(r.status) << ',' << r.evals << ',' << r.final_gnorm
        << ',';
    if (r.final_f) out << *r.final_f; else out << "nan";
    out << ',' << (r.success ? 1 : 0) << '\n';
  }
  require(static_cast<bool>(out), ErrorCode::Io, "write failed: '" + path + "'");
}

void write_stats_csv(const std::vector<VariantStats>& stats,
                     const std::string& path) {
  std::ofstream out = open_out(path);
  out << "variant,noise_level,pi,rho\n";
  for (const auto& s : stats) {
    out << s.variant << ',' << s.noise_level << ',' << s.pi << ',' << s.rho << '\n';
  }
  require(static_cast<bool>(out), ErrorCode::Io, "write failed: '" + path + "'");
}

}  // namespace offo
