#include "mech/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "mech/auctions.hpp"
#include "mech/benchmarks.hpp"
#include "mech/equilibrium.hpp"
#include "mech/instance.hpp"
#include "mech/numeric.hpp"

namespace mech {

CostDistribution distribution_by_name(std::string_view name) {
  if (name == "uniform01") return CostDistribution::Uniform01;
  if (name == "exp1-normalized") return CostDistribution::Exp1Normalized;
  throw UnknownDistribution("unknown cost distribution: " + std::string(name));
}

std::string to_string(CostDistribution dist) {
  switch (dist) {
    case CostDistribution::Uniform01:
      return "uniform01";
    case CostDistribution::Exp1Normalized:
      return "exp1-normalized";
  }
  return "?";
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t n, std::uint64_t replication,
                       std::uint64_t stream) {
  std::uint64_t z = base;
  for (std::uint64_t v : {n, replication, stream}) {
    z += 0x9e3779b97f4a7c15ull + v;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
  }
  return z;
}

namespace {

// Uniform double in [0,1) from the top 53 bits; the engine's output sequence
// is pinned by the standard, so draws are reproducible everywhere.
double next_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double sample_cost_value(CostDistribution dist, std::mt19937_64& engine) {
  for (;;) {
    const double u = next_unit(engine);
    switch (dist) {
      case CostDistribution::Uniform01:
        if (u > 0.0) return u;
        break;
      case CostDistribution::Exp1Normalized: {
        if (u == 0.0) break;  // -log(0) overflows
        const double x = -std::log(u);
        if (x > 0.0 && x < 1.0) return x;
        break;
      }
    }
  }
}

}  // namespace

std::vector<Rational> sample_costs(CostDistribution dist, int n, std::uint64_t seed) {
  if (n < 1) throw Error("sample_costs needs n >= 1");
  std::mt19937_64 engine(seed);
  std::vector<Rational> costs;
  costs.reserve(n);
  for (int i = 0; i < n; ++i) {
    costs.push_back(rational_from_double(sample_cost_value(dist, engine)));
  }
  return costs;
}

Instance sample_instance_paired(CostDistribution dist, int n, std::uint64_t seed) {
  std::vector<Rational> costs = sample_costs(dist, n, mix_seed(seed, 0, 0, 0));
  std::sort(costs.begin(), costs.end());

  std::mt19937_64 engine(mix_seed(seed, 0, 0, 1));
  std::vector<Rational> times;
  times.reserve(n);
  for (int i = 0; i < n; ++i) {
    times.push_back(rational_from_double(10.0 * next_unit(engine)));
  }
  std::sort(times.begin(), times.end(), std::greater<>());

  std::vector<AgentType> agents;
  agents.reserve(n);
  for (int i = 0; i < n; ++i) {
    agents.push_back(AgentType{Money(costs[i]), TimePoint(times[i])});
  }
  return make_instance(std::move(agents), TimePoint(Rational(10)));
}

TheoreticalBounds theoretical_bounds(int kstar) {
  if (kstar < 1) throw Error("theoretical_bounds needs kstar >= 1");
  const double inv_e = std::exp(-1.0);
  TheoreticalBounds bounds;
  bounds.lower_eq = 0.5;
  bounds.lower_harm = std::max(0.0, 1.0 - inv_e - 8.0 / kstar);
  bounds.upper = 1.0 - std::exp(-(1.0 + std::exp(2.0) / (2.0 * kstar)));
  return bounds;
}

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.replications < 1) throw Error("experiment needs replications >= 1");
  if (config.n_start < 1 || config.n_end > 10000 || config.n_start > config.n_end) {
    throw Error("experiment n range must lie within [1, 10000]");
  }
  if (config.n_step < 1) throw Error("experiment needs n_step >= 1");
}

std::vector<int> sweep_sizes(const ExperimentConfig& config) {
  std::vector<int> sizes;
  for (int n = config.n_start; n <= config.n_end; n += config.n_step) sizes.push_back(n);
  return sizes;
}

// Experiment 1 instances: sampled costs with dummy strictly-descending times
// (times never enter the Equal/Harmonic equilibrium computation).
Instance exp1_instance(CostDistribution dist, int n, std::uint64_t seed) {
  std::vector<Rational> costs = sample_costs(dist, n, seed);
  std::sort(costs.begin(), costs.end());
  std::vector<AgentType> agents;
  agents.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rational dummy_time(n - i, n);
    dummy_time.canonicalize();
    agents.push_back(AgentType{Money(costs[i]), TimePoint(std::move(dummy_time))});
  }
  return make_instance(std::move(agents), TimePoint(Rational(1)));
}

// The proven per-row guarantees, checked exactly: 2 l_eq >= k* and
// l_harm + 8 >= (1 - 1/e) k* with a certified upper bound on 1/e.
void check_row_bounds(const Instance& instance, int kstar, int eq_count, int harm_count) {
  if (2 * eq_count < kstar) {
    throw GuaranteeViolation("equal-rule bound violated: 2*" + std::to_string(eq_count) + " < " +
                                 std::to_string(kstar),
                             serialize_instance(instance));
  }
  const Rational harm_floor = (1 - inv_e_upper()) * kstar;
  if (Rational(harm_count + 8) < harm_floor) {
    throw GuaranteeViolation("harmonic-rule bound violated: " + std::to_string(harm_count) +
                                 " participants for k*=" + std::to_string(kstar),
                             serialize_instance(instance));
  }
}

struct RowBuild {
  ExperimentRow row;
  ParticipationSet harm;
};

RowBuild base_row(const Instance& instance, int n, int replication) {
  RowBuild build;
  ExperimentRow& row = build.row;
  row.n = n;
  row.replication = replication;
  row.kstar = decentralization_factor(instance);

  const ParticipationSet eq = solve_equal(instance);
  build.harm = solve_harmonic(instance);
  row.participants_eq = eq.size();
  row.participants_harm = build.harm.size();
  check_row_bounds(instance, row.kstar, row.participants_eq, row.participants_harm);

  row.ratio_eq = static_cast<double>(row.participants_eq) / row.kstar;
  row.ratio_harm = static_cast<double>(row.participants_harm) / row.kstar;
  const TheoreticalBounds bounds = theoretical_bounds(row.kstar);
  row.bound_lower = bounds.lower_eq;
  row.bound_harm = bounds.lower_harm;
  row.bound_upper = bounds.upper;
  return build;
}

const Rational& fastest_true_time(const Instance& instance, const std::vector<int>& members) {
  const Rational* fastest = nullptr;
  for (int i : members) {
    if (!fastest || instance.time(i) < *fastest) fastest = &instance.time(i);
  }
  return *fastest;
}

}  // namespace

ExperimentTable run_decentralization_experiment(const ExperimentConfig& config) {
  validate_config(config);
  ExperimentTable table;
  for (int n : sweep_sizes(config)) {
    for (int rep = 0; rep < config.replications; ++rep) {
      const Instance instance =
          exp1_instance(config.distribution, n, mix_seed(config.base_seed, n, rep, 0));
      table.rows.push_back(base_row(instance, n, rep).row);
    }
  }
  return table;
}

ExperimentTable run_efficiency_experiment(const ExperimentConfig& config) {
  validate_config(config);
  ExperimentTable table;
  for (int n : sweep_sizes(config)) {
    for (int rep = 0; rep < config.replications; ++rep) {
      const Instance instance =
          sample_instance_paired(config.distribution, n, mix_seed(config.base_seed, n, rep, 0));
      RowBuild build = base_row(instance, n, rep);
      ExperimentRow& row = build.row;

      const ParticipationSet& harm = build.harm;
      const Rational harm_fastest = fastest_true_time(instance, harm.members);
      row.fastest_harm = to_double(harm_fastest);

      // I-GSP allocates min(k, k*) - 1 agents, so target one above the
      // harmonic count when k* allows it.
      const int ell = harm.size();
      const int k = std::min(ell + 1, row.kstar);
      if (k >= 2) {
        const AuctionResult result = igsp(truthful_bids(instance), k);
        row.count_mismatch = static_cast<int>(result.allocated.size()) != ell;
        if (!result.allocated.empty()) {
          const Rational igsp_fastest = fastest_true_time(instance, result.allocated);
          row.fastest_igsp = to_double(igsp_fastest);
          if (!row.count_mismatch && igsp_fastest > harm_fastest) {
            throw GuaranteeViolation(
                "I-GSP fastest time exceeded the harmonic equilibrium's on a matched row",
                serialize_instance(instance));
          }
        }
      } else {
        row.count_mismatch = true;
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

namespace {

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(12) << value;
  return out.str();
}

void append_row(std::ostringstream& out, const ExperimentRow& row) {
  out << row.n << ',' << row.replication << ',' << row.kstar << ',' << row.participants_eq << ','
      << row.participants_harm << ',' << format_double(row.ratio_eq) << ','
      << format_double(row.ratio_harm) << ',' << format_double(row.bound_lower) << ','
      << format_double(row.bound_harm) << ',' << format_double(row.bound_upper) << ',';
  if (row.fastest_harm) out << format_double(*row.fastest_harm);
  out << ',';
  if (row.fastest_igsp) out << format_double(*row.fastest_igsp);
  out << ',' << (row.count_mismatch ? 1 : 0) << '\n';
}

}  // namespace

std::string to_csv(const ExperimentTable& table) {
  std::ostringstream out;
  out << "n,replication,kstar,participants_eq,participants_harm,ratio_eq,ratio_harm,"
         "bound_lower,bound_harm,bound_upper,fastest_harm,fastest_igsp,count_mismatch\n";
  for (const ExperimentRow& row : table.rows) append_row(out, row);

  // Trailing per-n averages, replication column labelled "avg".
  for (size_t start = 0; start < table.rows.size();) {
    size_t stop = start;
    while (stop < table.rows.size() && table.rows[stop].n == table.rows[start].n) ++stop;
    const double count = static_cast<double>(stop - start);

    double kstar = 0, eq = 0, harm = 0, ratio_eq = 0, ratio_harm = 0;
    double lower = 0, lower_harm = 0, upper = 0, mismatch = 0;
    double fastest_harm = 0, fastest_igsp = 0;
    int harm_rows = 0, igsp_rows = 0;
    for (size_t i = start; i < stop; ++i) {
      const ExperimentRow& row = table.rows[i];
      kstar += row.kstar;
      eq += row.participants_eq;
      harm += row.participants_harm;
      ratio_eq += row.ratio_eq;
      ratio_harm += row.ratio_harm;
      lower += row.bound_lower;
      lower_harm += row.bound_harm;
      upper += row.bound_upper;
      mismatch += row.count_mismatch ? 1 : 0;
      if (row.fastest_harm) {
        fastest_harm += *row.fastest_harm;
        ++harm_rows;
      }
      if (row.fastest_igsp) {
        fastest_igsp += *row.fastest_igsp;
        ++igsp_rows;
      }
    }
    out << table.rows[start].n << ",avg," << format_double(kstar / count) << ','
        << format_double(eq / count) << ',' << format_double(harm / count) << ','
        << format_double(ratio_eq / count) << ',' << format_double(ratio_harm / count) << ','
        << format_double(lower / count) << ',' << format_double(lower_harm / count) << ','
        << format_double(upper / count) << ',';
    if (harm_rows > 0) out << format_double(fastest_harm / harm_rows);
    out << ',';
    if (igsp_rows > 0) out << format_double(fastest_igsp / igsp_rows);
    out << ',' << format_double(mismatch / count) << '\n';
    start = stop;
  }
  return out.str();
}

void write_csv(const ExperimentTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write CSV file: " + path);
  out << to_csv(table);
}

}  // namespace mech
