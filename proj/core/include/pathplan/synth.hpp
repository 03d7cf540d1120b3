#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pathplan/catalog.hpp"

namespace pathplan {

// std::mt19937_64 is fully specified by the standard; ranges are reduced by
// rejection sampling (not std::uniform_int_distribution, whose algorithm is
// left to the library), so catalogs are the same everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finaliser, used to derive per-job seeds
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

struct SynthConfig {
  int relations = 10;
  int functions = 30;
  int max_length = 3;
  std::uint64_t seed = 1;
  bool allow_inverse = true;
};

std::vector<std::string> relation_names(int n);  // r0..r(n-1)

// Function lengths uniform in 1..max_length, atoms uniform over relations and
// orientations, output = last position. Skeletons that turn around more than
// once are drawn again.
Catalog gen_catalog(const SynthConfig& cfg);

enum class Approach { EqRewriting, Susie, Smart, WeaklySmart };
const char* to_string(Approach a);
const std::vector<Approach>& all_approaches();

struct QueryOutcome {
  std::string query;
  std::map<Approach, bool> answered;
  std::map<Approach, double> ms;
  double total_ms = 0;
  bool timeout = false;
};

struct PointResult {
  std::map<Approach, double> fraction;
  std::vector<QueryOutcome> queries;
  std::size_t timeouts = 0;
};

// Both orientations of every relation in `relations` are asked.
PointResult answered_fractions(const Catalog& catalog, const std::vector<std::string>& relations,
                               const std::vector<Approach>& approaches,
                               std::chrono::milliseconds timeout = std::chrono::milliseconds(2000));

enum class Axis { Relations, Functions };

struct SweepConfig {
  Axis axis = Axis::Relations;
  int fixed = 30;
  int min = 4, max = 20, step = 2;
  int seeds = 20;
  int max_length = 3;
  std::uint64_t base_seed = 1;
  std::vector<Approach> approaches = all_approaches();
  std::chrono::milliseconds timeout{2000};
};

struct SweepPoint {
  int axis_value = 0;
  std::map<Approach, double> fraction;  // mean over seeds
  std::map<Approach, double> stddev;
  std::map<Approach, double> median_ms, p95_ms;
  std::vector<double> query_ms;  // end-to-end per query, all seeds
  std::size_t queries = 0;
  std::size_t timeouts = 0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepPoint> points;
};

SweepResult sweep(const SweepConfig& cfg);

// Spearman rank correlation, ties get their mean rank.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

double percentile(std::vector<double> v, double p);  // p in [0, 1], linear interpolation

std::string sweep_csv(const SweepResult& r);

}  // namespace pathplan
