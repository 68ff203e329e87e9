// market-mech: command line front end for the market mechanism library.
//
//   gen      generate instances (random or adversarial witnesses)
//   bench    decentralization factor, time guarantees, k-best sets
//   solve    pure Nash equilibria of the non-revelation rules
//   auction  revelation mechanisms and IC/IR audits
//   exp1     decentralization experiment (equal vs harmonic rule)
//   exp2     efficiency experiment (harmonic rule vs I-GSP)

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mech/auctions.hpp"
#include "mech/benchmarks.hpp"
#include "mech/equilibrium.hpp"
#include "mech/harness.hpp"
#include "mech/instance.hpp"
#include "mech/numeric.hpp"
#include "mech/rules.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw mech::Error("cannot open output file: " + out_path);
  out << text;
}

std::string describe_set_original(const mech::Instance& inst, const std::vector<int>& members) {
  // Report members in the caller's original numbering (1-based).
  std::vector<int> original;
  for (int canonical : members) original.push_back(inst.to_original()[canonical] + 1);
  std::sort(original.begin(), original.end());
  std::ostringstream out;
  for (size_t i = 0; i < original.size(); ++i) {
    if (i > 0) out << ' ';
    out << original[i];
  }
  return out.str();
}

std::string metrics_suffix(const mech::Instance& inst, const mech::ParticipationSet& s) {
  const auto profile = mech::ActionProfile::truthful(inst, s);
  std::vector<mech::Money> zero(inst.size());
  const auto outcome = mech::Outcome::from_profile(inst, profile, std::move(zero));
  const auto metrics = mech::outcome_metrics(inst, outcome);
  std::ostringstream out;
  out << "participants=" << metrics.participant_count
      << " ratio=" << mech::format_rational(metrics.decentralization_ratio);
  out << " fastest=";
  if (metrics.fastest_time) {
    out << mech::format_rational(metrics.fastest_time->value());
  } else {
    out << "none";
  }
  out << " efficiency=";
  if (metrics.efficiency_class) {
    out << mech::format_rational(*metrics.efficiency_class);
  } else {
    out << "none";
  }
  return out.str();
}

mech::RewardRule rule_from_flags(const std::string& name, const std::string& buckets_path,
                                 int k) {
  if (name == "fast") return mech::RewardRule::fast();
  if (name == "equal") return mech::RewardRule::equal();
  if (name == "harmonic") return mech::RewardRule::harmonic();
  if (name == "best-set") {
    if (buckets_path.empty()) throw mech::Error("--rule best-set requires --buckets");
    return mech::RewardRule::best_set(mech::BucketScheme::load(buckets_path), k);
  }
  throw mech::Error("unknown rule: " + name);
}

int run_gen(const std::string& witness, const std::string& dist_name, int n,
            std::uint64_t seed, bool paired, const std::string& out_path) {
  mech::Instance inst = [&] {
    if (!witness.empty()) return mech::adversarial_instance(witness);
    const auto dist = mech::distribution_by_name(dist_name);
    if (paired) return mech::sample_instance_paired(dist, n, seed);
    std::vector<mech::Rational> costs = mech::sample_costs(dist, n, seed);
    std::sort(costs.begin(), costs.end());
    std::vector<mech::AgentType> agents;
    for (int i = 0; i < n; ++i) {
      mech::Rational t(n - i, n);
      t.canonicalize();
      agents.push_back({mech::Money(costs[i]), mech::TimePoint(std::move(t))});
    }
    return mech::make_instance(std::move(agents), mech::TimePoint(mech::Rational(1)));
  }();
  write_output(mech::serialize_instance(inst), out_path);
  return 0;
}

int run_bench(const std::string& instance_path, const std::string& alpha_text, int k,
              const std::string& out_path) {
  const mech::Instance inst = mech::load_instance(instance_path);
  const int kstar = mech::decentralization_factor(inst);
  std::ostringstream out;
  out << "kstar " << kstar << "\n";

  if (!alpha_text.empty()) {
    const mech::Rational alpha = mech::parse_rational(alpha_text);
    out << "time_guarantee " << alpha_text << " "
        << mech::format_rational(mech::time_guarantee(inst, alpha).value()) << "\n";
  } else {
    for (int j = 1; j <= kstar; ++j) {
      mech::Rational alpha(j, kstar);
      alpha.canonicalize();
      out << "time_guarantee " << mech::format_rational(alpha) << " "
          << mech::format_rational(mech::time_guarantee(inst, alpha).value()) << "\n";
    }
  }
  if (k > 0) {
    out << "k_best_set " << k << " " << describe_set_original(inst, mech::k_best_set(inst, k))
        << "\n";
  }
  write_output(out.str(), out_path);
  return 0;
}

int run_solve(const std::string& rule_name, const std::string& instance_path, bool oracle,
              int k, const std::string& buckets_path, const std::string& out_path) {
  const mech::Instance inst = mech::load_instance(instance_path);
  const mech::RewardRule rule = rule_from_flags(rule_name, buckets_path, k);
  std::ostringstream out;

  auto emit = [&](const mech::ParticipationSet& s) {
    out << "equilibrium [" << describe_set_original(inst, s.members) << "] "
        << metrics_suffix(inst, s) << "\n";
  };

  if (oracle) {
    const auto report = mech::enumerate_equilibria(rule, inst);
    for (const auto& s : report.equilibria) emit(s);
    if (report.worst) {
      out << "worst [" << describe_set_original(inst, report.worst->members) << "]\n";
    }
    out << "uniform_size " << (report.uniform_size ? "true" : "false") << "\n";
  } else {
    switch (rule.kind()) {
      case mech::RewardRule::Kind::Equal:
        emit(mech::solve_equal(inst));
        break;
      case mech::RewardRule::Kind::Harmonic:
        emit(mech::solve_harmonic(inst));
        break;
      case mech::RewardRule::Kind::BestSet:
        emit(mech::solve_best_set(inst, *rule.scheme(), k));
        break;
      case mech::RewardRule::Kind::Fast: {
        // The fastest affordable agent; confirmed by enumeration.
        const auto report = mech::enumerate_equilibria(rule, inst);
        for (const auto& s : report.equilibria) emit(s);
        break;
      }
    }
  }
  write_output(out.str(), out_path);
  return 0;
}

int run_auction(const std::string& mechanism, const std::string& instance_path, int k,
                const std::string& audit, const std::string& out_path) {
  const mech::Instance inst = mech::load_instance(instance_path);
  const std::optional<int> k_opt = mechanism == "igsp" ? std::optional<int>(k) : std::nullopt;
  const mech::Mechanism mech_fn = mech::mechanism_by_name(mechanism, k_opt);

  std::ostringstream out;
  const auto result = mech_fn(mech::truthful_bids(inst));
  out << "agent,cost,time,allocated,reward\n";
  for (int i = 0; i < inst.size(); ++i) {
    out << inst.to_original()[i] + 1 << ',' << mech::format_rational(inst.cost(i)) << ','
        << mech::format_rational(inst.time(i)) << ',' << (result.is_allocated(i) ? 1 : 0) << ','
        << mech::format_rational(result.rewards[i].value()) << "\n";
  }
  if (result.inverted) out << "# inversion detected: nothing allocated\n";

  if (audit == "ir") {
    const auto violations = mech::audit_ir(mech_fn, inst);
    out << "audit,agent,reward,cost\n";
    for (const auto& v : violations) {
      out << "ir," << inst.to_original()[v.agent] + 1 << ','
          << mech::format_rational(v.reward.value()) << ','
          << mech::format_rational(v.cost.value()) << "\n";
    }
    if (violations.empty()) out << "# audit ir: no violations\n";
  } else if (audit == "ic") {
    const auto violations = mech::audit_ic(mech_fn, inst);
    out << "audit,agent,reported_cost,reported_time,utility_truthful,utility_deviating\n";
    for (const auto& v : violations) {
      out << "ic," << inst.to_original()[v.agent] + 1 << ','
          << mech::format_rational(v.deviation.cost.value()) << ','
          << mech::format_rational(v.deviation.time.value()) << ','
          << mech::format_rational(v.utility_truthful) << ','
          << mech::format_rational(v.utility_deviating) << "\n";
    }
    if (violations.empty()) out << "# audit ic: no violations\n";
  } else if (!audit.empty()) {
    throw mech::Error("unknown audit: " + audit);
  }
  write_output(out.str(), out_path);
  return 0;
}

int run_experiment(bool efficiency, const std::string& dist_name, int n_start, int n_end,
                   int n_step, int replications, std::uint64_t seed,
                   const std::string& out_path) {
  mech::ExperimentConfig config;
  config.distribution = mech::distribution_by_name(dist_name);
  config.n_start = n_start;
  config.n_end = n_end;
  config.n_step = n_step;
  config.replications = replications;
  config.base_seed = seed;

  try {
    const auto table = efficiency ? mech::run_efficiency_experiment(config)
                                  : mech::run_decentralization_experiment(config);
    write_output(mech::to_csv(table), out_path);
  } catch (const mech::GuaranteeViolation& e) {
    // A proven bound failed on a sampled row; keep the instance for replay.
    const std::string replay =
        (out_path.empty() || out_path == "-" ? std::string("guarantee_violation")
                                             : out_path) +
        ".replay.txt";
    std::ofstream replay_out(replay);
    replay_out << e.instance_text;
    std::cerr << "error: " << e.what() << "\noffending instance written to " << replay << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mechanisms for decentralized computation markets"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  app.add_option("--out", out_path, "output file (default: stdout)")->capture_default_str();
  app.add_option("--seed", seed, "base random seed")->capture_default_str();
  app.add_option("--format", format, "output format (csv)")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string witness, dist_name = "uniform01";
  int gen_n = 10;
  bool paired = false;
  gen->add_option("--witness", witness,
                  "adversarial witness: half-half, two-thirds-one-third, "
                  "fast-expensive(k,eps,delta), overlap-pair(c1,c2)");
  gen->add_option("--dist", dist_name, "cost distribution: uniform01 | exp1-normalized")
      ->capture_default_str();
  gen->add_option("--n", gen_n, "number of agents")->capture_default_str();
  gen->add_flag("--paired", paired, "sample times Uniform[0,10) paired against sorted costs");

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark quantities of an instance");
  std::string bench_instance, alpha_text;
  int bench_k = 0;
  bench->add_option("--instance", bench_instance, "instance file")->required();
  bench->add_option("--alpha", alpha_text, "target decentralization in (0,1], e.g. 1/2");
  bench->add_option("--k", bench_k, "also print the k-best set for this k");

  // solve
  auto* solve = app.add_subcommand("solve", "pure Nash equilibria of a reward rule");
  std::string solve_rule = "equal", solve_instance, solve_buckets;
  bool oracle = false;
  int solve_k = 2;
  solve->add_option("--rule", solve_rule, "fast | equal | harmonic | best-set")
      ->capture_default_str();
  solve->add_option("--instance", solve_instance, "instance file")->required();
  solve->add_flag("--oracle", oracle, "enumerate all equilibria exhaustively");
  solve->add_option("--k", solve_k, "target size for the best-set rule")->capture_default_str();
  solve->add_option("--buckets", solve_buckets, "bucket scheme file for the best-set rule");

  // auction
  auto* auction = app.add_subcommand("auction", "revelation mechanisms and audits");
  std::string auction_mechanism = "igsp", auction_instance, audit;
  int auction_k = 3;
  auction->add_option("--mechanism", auction_mechanism, "inverse-k-price | igsp")
      ->capture_default_str();
  auction->add_option("--instance", auction_instance, "instance file")->required();
  auction->add_option("--k", auction_k, "I-GSP target parameter (k >= 2)")
      ->capture_default_str();
  auction->add_option("--audit", audit, "run an audit: ir | ic");

  // exp1 / exp2
  auto* exp1 = app.add_subcommand("exp1", "decentralization experiment (CSV)");
  auto* exp2 = app.add_subcommand("exp2", "efficiency experiment (CSV)");
  std::string exp_dist = "uniform01";
  int n_start = 1, n_end = 1000, n_step = 50, replications = 500;
  for (auto* exp : {exp1, exp2}) {
    exp->add_option("--dist", exp_dist, "uniform01 | exp1-normalized")->capture_default_str();
    exp->add_option("--n-start", n_start, "first instance size")->capture_default_str();
    exp->add_option("--n-end", n_end, "last instance size")->capture_default_str();
    exp->add_option("--n-step", n_step, "instance size step")->capture_default_str();
    exp->add_option("--replications", replications, "replications per size")
        ->capture_default_str();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(witness, dist_name, gen_n, seed, paired, out_path);
    if (bench->parsed()) return run_bench(bench_instance, alpha_text, bench_k, out_path);
    if (solve->parsed()) {
      return run_solve(solve_rule, solve_instance, oracle, solve_k, solve_buckets, out_path);
    }
    if (auction->parsed()) {
      return run_auction(auction_mechanism, auction_instance, auction_k, audit, out_path);
    }
    if (exp1->parsed()) {
      return run_experiment(false, exp_dist, n_start, n_end, n_step, replications, seed,
                            out_path);
    }
    if (exp2->parsed()) {
      return run_experiment(true, exp_dist, n_start, n_end, n_step, replications, seed,
                            out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
