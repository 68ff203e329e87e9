#pragma once

// Pure-Nash verification over participation sets, exhaustive equilibrium
// enumeration (the oracle), and the constructive solvers for the Equal,
// Harmonic and Best-Set rules.
//
// Equilibria are searched over participation sets with submission at the
// true completion time: under the Fast/Equal/Harmonic rules delaying only
// lowers an agent's rank and reward, and the Best-Set rule punishes delay
// into a slower bucket. Bucket-delay deviations change the inferred cost,
// so the checker tests them explicitly for the Best-Set rule.

#include <optional>
#include <string>
#include <vector>

#include "mech/rules.hpp"
#include "mech/types.hpp"

namespace mech {

struct NashViolation {
  int agent;                                // canonical index
  std::optional<TimePoint> deviation;       // submit at this time; disengaged = drop out
  Rational utility_before;
  Rational utility_after;

  std::string describe() const;
};

// Checks, for members: no gain from dropping out or (Best-Set) delaying into
// another bucket; for non-members: joining must be strictly unprofitable,
// because an indifferent agent prefers submitting. Returns the first
// violation in (agent, deviation time) order, or disengaged if s is a pure
// Nash equilibrium.
std::optional<NashViolation> pure_nash_violation(const RewardRule& rule,
                                                 const Instance& instance,
                                                 const ParticipationSet& s);

bool is_pure_nash(const RewardRule& rule, const Instance& instance, const ParticipationSet& s);

struct EquilibriumReport {
  std::vector<ParticipationSet> equilibria;  // ascending bitmask order
  std::optional<ParticipationSet> worst;     // minimum cardinality, first in order
  bool uniform_size = true;                  // all equilibria share one size
};

// Checks all 2^n participation sets. Throws InstanceTooLarge beyond max_n.
EquilibriumReport enumerate_equilibria(const RewardRule& rule, const Instance& instance,
                                       int max_n = 20);

// Largest prefix {1..l} of the canonical order with c_l <= 1/l; a pure Nash
// equilibrium of the Equal rule with at least k*/2 members.
ParticipationSet solve_equal(const Instance& instance);

// Constructive equilibrium of the Harmonic rule: processes agents in cost
// order, letting each join when adequately rewarded and evicting the
// highest-cost member the join leaves under-rewarded. The result is
// verified; at least (1 - 1/e)k* - 8 members.
ParticipationSet solve_harmonic(const Instance& instance);

// The k-best set under inferred bucket costs when everyone participates; the
// unique equilibrium of the Best-Set rule on scheme-consistent instances.
// Throws SchemeMismatch when some agent's time lies in no bucket or their
// cost exceeds the bucket profile.
ParticipationSet solve_best_set(const Instance& instance, const BucketScheme& scheme, int k);

}  // namespace mech
