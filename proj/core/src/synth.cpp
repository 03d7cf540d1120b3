#include "pathplan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pathplan/engine.hpp"
#include "pathplan/parallel.hpp"

namespace pathplan {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  // largest multiple of n that fits, everything above it is redrawn
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::string> relation_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("r" + std::to_string(i));
  return out;
}

Catalog gen_catalog(const SynthConfig& cfg) {
  Rng rng(cfg.seed);
  auto rels = relation_names(cfg.relations);
  Catalog catalog;
  for (int i = 0; i < cfg.functions; ++i) {
    PathFunction f;
    f.name = "f" + std::to_string(i);
    do {
      f.skeleton.clear();
      auto len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_length)));
      for (int k = 0; k < len; ++k) {
        Atom a;
        a.relation = rels[rng.below(rels.size())];
        a.inverse = cfg.allow_inverse && rng.below(2) == 1;
        f.skeleton.push_back(a);
      }
    } while (pivot_count(f.skeleton) > 1);
    f.outputs = {f.length()};
    catalog.add(std::move(f));
  }
  return catalog;
}

const char* to_string(Approach a) {
  switch (a) {
    case Approach::EqRewriting: return "eqRewriting";
    case Approach::Susie: return "susie";
    case Approach::Smart: return "smart";
    case Approach::WeaklySmart: return "weaklySmart";
  }
  return "?";
}

const std::vector<Approach>& all_approaches() {
  static const std::vector<Approach> v{Approach::EqRewriting, Approach::Susie, Approach::Smart,
                                       Approach::WeaklySmart};
  return v;
}

PointResult answered_fractions(const Catalog& catalog, const std::vector<std::string>& relations,
                               const std::vector<Approach>& approaches,
                               std::chrono::milliseconds timeout) {
  using clock = std::chrono::steady_clock;
  PointResult res;
  std::map<Approach, std::size_t> hits;
  for (const auto& rel : relations) {
    for (bool inv : {false, true}) {
      AtomicQuery q{Atom{rel, inv}, "a"};
      QueryOutcome out;
      out.query = q.relation.str();
      const auto begin = clock::now();
      for (Approach a : approaches) {
        const auto t0 = clock::now();
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(timeout - (t0 - begin));
        SearchOptions opts;
        opts.timeout = std::max(left, std::chrono::milliseconds(1));
        SearchStats st;
        bool ok = false;
        if (catalog.empty()) {
          ok = false;
        } else if (a == Approach::EqRewriting) {
          ok = has_trivial_equivalent_rewriting(q, catalog);
        } else if (a == Approach::Susie) {
          ok = !susie_plans(q, catalog).empty();
        } else if (a == Approach::Smart) {
          ok = find_one_smart(q, catalog, opts, &st).has_value();
        } else {
          ok = find_one_weakly_smart(q, catalog, opts, &st).has_value();
        }
        if (st.timed_out) out.timeout = true;
        out.answered[a] = ok;
        out.ms[a] = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        if (ok) ++hits[a];
      }
      out.total_ms = std::chrono::duration<double, std::milli>(clock::now() - begin).count();
      if (out.timeout) ++res.timeouts;
      res.queries.push_back(std::move(out));
    }
  }
  const double n = static_cast<double>(res.queries.size());
  for (Approach a : approaches) res.fraction[a] = n > 0 ? static_cast<double>(hits[a]) / n : 0.0;
  return res;
}

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0;
  p = std::clamp(p, 0.0, 1.0);
  std::sort(v.begin(), v.end());
  double idx = p * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(idx));
  auto hi = static_cast<std::size_t>(std::ceil(idx));
  double frac = idx - static_cast<double>(lo);
  return v[lo] * (1 - frac) + v[hi] * frac;
}

SweepResult sweep(const SweepConfig& cfg) {
  SweepResult result;
  result.config = cfg;
  std::vector<int> values;
  for (int v = cfg.min; v <= cfg.max; v += std::max(1, cfg.step)) values.push_back(v);

  struct Job {
    std::size_t point;
    int seed;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < values.size(); ++p)
    for (int s = 0; s < cfg.seeds; ++s) jobs.push_back({p, s});
  std::vector<PointResult> outcomes(jobs.size());

  parallel_for(jobs.size(), [&](std::size_t j) {
    const int value = values[jobs[j].point];
    SynthConfig sc;
    sc.relations = cfg.axis == Axis::Relations ? value : cfg.fixed;
    sc.functions = cfg.axis == Axis::Functions ? value : cfg.fixed;
    sc.max_length = cfg.max_length;
    sc.seed = mix_seed(mix_seed(cfg.base_seed, static_cast<std::uint64_t>(value)),
                       static_cast<std::uint64_t>(jobs[j].seed));
    Catalog catalog = gen_catalog(sc);
    outcomes[j] = answered_fractions(catalog, relation_names(sc.relations), cfg.approaches, cfg.timeout);
  });

  for (std::size_t p = 0; p < values.size(); ++p) {
    SweepPoint pt;
    pt.axis_value = values[p];
    std::map<Approach, std::vector<double>> fr, ms;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].point != p) continue;
      const auto& o = outcomes[j];
      for (auto [a, f] : o.fraction) fr[a].push_back(f);
      for (const auto& q : o.queries) {
        pt.query_ms.push_back(q.total_ms);
        for (auto [a, t] : q.ms) ms[a].push_back(t);
      }
      pt.queries += o.queries.size();
      pt.timeouts += o.timeouts;
    }
    for (auto& [a, v] : fr) {
      double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
      double var = 0;
      for (double x : v) var += (x - mean) * (x - mean);
      pt.fraction[a] = mean;
      pt.stddev[a] = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
    }
    for (auto& [a, v] : ms) {
      pt.median_ms[a] = percentile(v, 0.5);
      pt.p95_ms[a] = percentile(v, 0.95);
    }
    result.points.push_back(std::move(pt));
  }
  return result;
}

namespace {
std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    double mean = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = mean;
    i = j + 1;
  }
  return r;
}
}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return 0;
  auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "axisValue,approach,fractionAnswered,medianMs,p95Ms\n";
  os.setf(std::ios::fixed);
  for (const auto& p : r.points) {
    for (Approach a : r.config.approaches) {
      os.precision(4);
      os << p.axis_value << ',' << to_string(a) << ',' << p.fraction.at(a) << ',';
      os.precision(3);
      os << p.median_ms.at(a) << ',' << p.p95_ms.at(a) << '\n';
    }
  }
  return os.str();
}

}  // namespace pathplan
