#include "mech/equilibrium.hpp"

#include <algorithm>
#include <sstream>

#include "mech/benchmarks.hpp"
#include "mech/numeric.hpp"

namespace mech {

std::string NashViolation::describe() const {
  std::ostringstream out;
  out << "agent " << agent;
  if (deviation) {
    out << " gains by submitting at " << format_rational(deviation->value());
  } else {
    out << " gains by not submitting";
  }
  out << " (utility " << format_rational(utility_before) << " -> "
      << format_rational(utility_after) << ")";
  return out.str();
}

namespace {

// Earliest feasible submission time in each bucket at or after t, within the
// deadline. These are the only delay deviations worth checking: within a
// bucket the rule favors earlier submissions, and times outside every bucket
// are ineligible.
std::vector<TimePoint> bucket_delay_candidates(const BucketScheme& scheme,
                                               const Instance& instance, int agent) {
  const TimePoint& t = instance.agent(agent).time;
  std::vector<TimePoint> candidates;
  for (int j = 0; j < scheme.size(); ++j) {
    const Bucket& b = scheme.bucket(j);
    const TimePoint earliest = std::max(b.lo, t);
    const TimePoint latest = std::min(b.hi, instance.deadline());
    if (earliest > latest) continue;
    if (earliest == t) continue;  // the truthful action, handled separately
    candidates.push_back(earliest);
  }
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

void validate_participation(const Instance& instance, const ParticipationSet& s) {
  int prev = -1;
  for (int i : s.members) {
    if (i <= prev || i >= instance.size()) {
      throw Error("participation set must hold sorted unique canonical indices");
    }
    prev = i;
  }
}

}  // namespace

std::optional<NashViolation> pure_nash_violation(const RewardRule& rule,
                                                 const Instance& instance,
                                                 const ParticipationSet& s) {
  validate_participation(instance, s);
  const ActionProfile profile = ActionProfile::truthful(instance, s);
  const std::vector<Money> rewards = rule(instance, profile);
  const bool check_delays = rule.kind() == RewardRule::Kind::BestSet;

  std::vector<char> member(instance.size(), 0);
  for (int i : s.members) member[i] = 1;

  auto rewards_with_action = [&](int agent, const ActionProfile::Action& action) {
    std::vector<ActionProfile::Action> actions;
    actions.reserve(instance.size());
    for (int i = 0; i < instance.size(); ++i) actions.push_back(profile.action(i));
    actions[agent] = action;
    return rule(instance, ActionProfile(instance, std::move(actions)));
  };

  for (int i = 0; i < instance.size(); ++i) {
    const Rational& cost = instance.cost(i);
    if (member[i]) {
      const Rational utility = rewards[i].value() - cost;
      // Dropping out yields 0; an indifferent member keeps submitting.
      if (utility < 0) {
        return NashViolation{i, std::nullopt, utility, Rational(0)};
      }
      if (check_delays) {
        for (const TimePoint& when : bucket_delay_candidates(*rule.scheme(), instance, i)) {
          const Rational delayed = rewards_with_action(i, when)[i].value() - cost;
          if (delayed > utility) {
            return NashViolation{i, when, utility, delayed};
          }
        }
      }
    } else {
      // Joining with reward >= cost is a deviation: ties prefer submitting.
      const TimePoint truthful = instance.agent(i).time;
      const Rational joined = rewards_with_action(i, truthful)[i].value() - cost;
      if (joined >= 0) {
        return NashViolation{i, truthful, Rational(0), joined};
      }
      if (check_delays) {
        for (const TimePoint& when : bucket_delay_candidates(*rule.scheme(), instance, i)) {
          const Rational delayed = rewards_with_action(i, when)[i].value() - cost;
          if (delayed >= 0) {
            return NashViolation{i, when, Rational(0), delayed};
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool is_pure_nash(const RewardRule& rule, const Instance& instance, const ParticipationSet& s) {
  return !pure_nash_violation(rule, instance, s).has_value();
}

EquilibriumReport enumerate_equilibria(const RewardRule& rule, const Instance& instance,
                                       int max_n) {
  const int n = instance.size();
  if (n > max_n) {
    throw InstanceTooLarge("equilibrium enumeration capped at n <= " + std::to_string(max_n));
  }

  EquilibriumReport report;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    ParticipationSet s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.members.push_back(i);
    }
    if (is_pure_nash(rule, instance, s)) {
      if (!report.worst || s.size() < report.worst->size()) report.worst = s;
      report.equilibria.push_back(std::move(s));
    }
  }
  for (const auto& eq : report.equilibria) {
    if (eq.size() != report.equilibria.front().size()) {
      report.uniform_size = false;
      break;
    }
  }
  return report;
}

ParticipationSet solve_equal(const Instance& instance) {
  // Largest l with c_l <= 1/l. Costs ascend while 1/l descends, so the
  // predicate holds on a prefix of l values.
  int ell = 0;
  for (int i = 0; i < instance.size(); ++i) {
    if (instance.cost(i) > Rational(1, i + 1)) break;
    ell = i + 1;
  }
  ParticipationSet s;
  for (int i = 0; i < ell; ++i) s.members.push_back(i);
  return s;
}

namespace {

// Incremental state for the harmonic induction: members kept in rank order
// (submission time ascending, ties by index). The non-decreasing offsets
// m_1, m_2, ... are extended lazily; equilibria stay near (1-1/e)k*, far
// below n on realistic instances.
class HarmonicSolverState {
 public:
  explicit HarmonicSolverState(const Instance& instance) : instance_(instance) {}

  int size() const { return static_cast<int>(rank_order_.size()); }
  const std::vector<int>& rank_order() const { return rank_order_; }
  bool contains(int agent) const { return member_[agent] != 0; }

  // 0-based rank agent would occupy if inserted.
  int rank_if_joined(int agent) const {
    auto it = std::lower_bound(rank_order_.begin(), rank_order_.end(), agent,
                               [&](int a, int b) { return rank_less(a, b); });
    return static_cast<int>(it - rank_order_.begin());
  }

  // Reward of the (0-based) rank in a set of the given size.
  Rational reward(int set_size, int rank0) const {
    return Rational(1, offset(set_size) + rank0);
  }

  bool wants_to_join(int agent) const {
    const Rational r = reward(size() + 1, rank_if_joined(agent));
    return r >= instance_.cost(agent);  // indifferent agents prefer submitting
  }

  void insert(int agent) {
    rank_order_.insert(rank_order_.begin() + rank_if_joined(agent), agent);
    member_[agent] = 1;
  }

  void erase(int agent) {
    auto it = std::find(rank_order_.begin(), rank_order_.end(), agent);
    rank_order_.erase(it);
    member_[agent] = 0;
  }

  // Highest-cost member whose reward no longer covers her cost; ties go to
  // the slower time, then the higher canonical index.
  std::optional<int> find_underpaid() const {
    std::optional<int> worst;
    for (int rank0 = 0; rank0 < size(); ++rank0) {
      const int i = rank_order_[rank0];
      if (instance_.cost(i) <= reward(size(), rank0)) continue;
      if (!worst || evict_before(*worst, i)) worst = i;
    }
    return worst;
  }

  // Any member underpaid, or any outsider who wants in? Used for the final
  // verification sweep.
  bool stable() const {
    if (find_underpaid()) return false;
    for (int j = 0; j < instance_.size(); ++j) {
      if (!member_[j] && wants_to_join(j)) return false;
    }
    return true;
  }

  ParticipationSet result() const {
    ParticipationSet s;
    s.members = rank_order_;
    std::sort(s.members.begin(), s.members.end());
    return s;
  }

 private:
  int offset(int ell) const {
    while (static_cast<int>(offsets_.size()) < ell) {
      window_.push_back();
      while (window_.sum() > 1) {
        window_.pop_front();
        window_.push_back();
      }
      offsets_.push_back(static_cast<int>(window_.first()));
    }
    return offsets_[ell - 1];
  }

  bool rank_less(int a, int b) const {
    if (instance_.time(a) != instance_.time(b)) return instance_.time(a) < instance_.time(b);
    return a < b;
  }

  // Eviction priority: higher cost, then slower, then higher index.
  bool evict_before(int current, int candidate) const {
    if (instance_.cost(candidate) != instance_.cost(current)) {
      return instance_.cost(candidate) > instance_.cost(current);
    }
    if (instance_.time(candidate) != instance_.time(current)) {
      return instance_.time(candidate) > instance_.time(current);
    }
    return candidate > current;
  }

  const Instance& instance_;
  mutable HarmonicWindow window_;
  mutable std::vector<int> offsets_;
  std::vector<int> rank_order_;
  std::vector<char> member_ = std::vector<char>(instance_.size(), 0);
};

}  // namespace

ParticipationSet solve_harmonic(const Instance& instance) {
  HarmonicSolverState state(instance);

  // Induction over agents in canonical cost order. An arriving agent joins
  // exactly when the harmonic reward at her rank covers her cost; the join
  // may leave earlier members under-rewarded, in which case the highest-cost
  // underpaid member leaves.
  for (int agent = 0; agent < instance.size(); ++agent) {
    if (!state.wants_to_join(agent)) continue;
    state.insert(agent);
    while (auto underpaid = state.find_underpaid()) {
      state.erase(*underpaid);
    }
  }

  // The single-eviction argument leaves no loose ends on generic instances;
  // exact cost/time ties can in principle re-open a seat, so sweep to a
  // fixed point with a hard cap.
  long budget = 4L * instance.size() * (instance.size() + 1) + 16;
  while (!state.stable()) {
    if (--budget < 0) throw SolverError("harmonic equilibrium construction did not converge");
    for (int agent = 0; agent < instance.size(); ++agent) {
      if (!state.contains(agent) && state.wants_to_join(agent)) state.insert(agent);
      while (auto underpaid = state.find_underpaid()) {
        state.erase(*underpaid);
      }
    }
  }
  return state.result();
}

ParticipationSet solve_best_set(const Instance& instance, const BucketScheme& scheme, int k) {
  const int kstar = decentralization_factor(instance);
  if (k < 2 || k > kstar) {
    throw KOutOfRange("solve_best_set needs 2 <= k <= k*, got k=" + std::to_string(k) +
                      ", k*=" + std::to_string(kstar));
  }
  for (int i = 0; i < instance.size(); ++i) {
    const auto j = scheme.bucket_of(instance.agent(i).time);
    if (!j) {
      throw SchemeMismatch("agent " + std::to_string(i) + " lies in no bucket");
    }
    if (instance.agent(i).cost > scheme.bucket(*j).cost) {
      throw SchemeMismatch("agent " + std::to_string(i) + " is costlier than her bucket profile");
    }
  }

  const ActionProfile everyone = ActionProfile::all_truthful(instance);
  ParticipationSet s;
  s.members = best_set_selection(instance, everyone, scheme, k);
  return s;
}

}  // namespace mech
