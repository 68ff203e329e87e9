#pragma once

// Domain types for the compute-outsourcing market. The client's reward is
// normalized to 1; costs and rewards are Money, completion and submission
// times are TimePoint. Non-submission is represented by a disengaged
// optional, never by a numeric sentinel.

#include <optional>
#include <vector>

#include "mech/errors.hpp"
#include "mech/rational.hpp"

namespace mech {

// Non-negative amount in units of the client reward.
class Money {
 public:
  Money() : value_(0) {}
  explicit Money(Rational value) : value_(std::move(value)) {
    if (value_ < 0) throw Error("Money cannot be negative");
  }

  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

inline bool operator==(const Money& a, const Money& b) { return a.value() == b.value(); }
inline bool operator!=(const Money& a, const Money& b) { return !(a == b); }
inline bool operator<(const Money& a, const Money& b) { return a.value() < b.value(); }
inline bool operator<=(const Money& a, const Money& b) { return a.value() <= b.value(); }
inline bool operator>(const Money& a, const Money& b) { return b < a; }
inline bool operator>=(const Money& a, const Money& b) { return b <= a; }

// Non-negative abstract time.
class TimePoint {
 public:
  TimePoint() : value_(0) {}
  explicit TimePoint(Rational value) : value_(std::move(value)) {
    if (value_ < 0) throw Error("TimePoint cannot be negative");
  }

  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

inline bool operator==(const TimePoint& a, const TimePoint& b) { return a.value() == b.value(); }
inline bool operator!=(const TimePoint& a, const TimePoint& b) { return !(a == b); }
inline bool operator<(const TimePoint& a, const TimePoint& b) { return a.value() < b.value(); }
inline bool operator<=(const TimePoint& a, const TimePoint& b) { return a.value() <= b.value(); }
inline bool operator>(const TimePoint& a, const TimePoint& b) { return b < a; }
inline bool operator>=(const TimePoint& a, const TimePoint& b) { return b <= a; }

// An agent can pay `cost` to deliver a verified solution at `time`.
struct AgentType {
  Money cost;
  TimePoint time;
};

inline bool operator==(const AgentType& a, const AgentType& b) {
  return a.cost == b.cost && a.time == b.time;
}

// Validated set of agents plus deadline. Agents are stored in canonical
// order: cost ascending, ties broken by time descending, then by original
// index; to_original() maps canonical positions back to input positions.
class Instance {
 public:
  int size() const { return static_cast<int>(agents_.size()); }
  const std::vector<AgentType>& agents() const { return agents_; }
  const AgentType& agent(int canonical) const { return agents_[canonical]; }
  const Rational& cost(int canonical) const { return agents_[canonical].cost.value(); }
  const Rational& time(int canonical) const { return agents_[canonical].time.value(); }
  const TimePoint& deadline() const { return deadline_; }
  const std::vector<int>& to_original() const { return to_original_; }

 private:
  friend Instance make_instance(std::vector<AgentType> types, TimePoint deadline);
  Instance() = default;

  std::vector<AgentType> agents_;
  TimePoint deadline_;
  std::vector<int> to_original_;
};

inline bool operator==(const Instance& a, const Instance& b) {
  return a.agents() == b.agents() && a.deadline() == b.deadline() &&
         a.to_original() == b.to_original();
}

// Agents that submit solutions at their true times; everyone else plays
// "no submission". Members are sorted canonical indices.
struct ParticipationSet {
  std::vector<int> members;

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int i) const;
};

bool operator==(const ParticipationSet& a, const ParticipationSet& b);

// Per-agent submission time, or disengaged for non-participation. Indexed in
// the instance's canonical order.
class ActionProfile {
 public:
  using Action = std::optional<TimePoint>;

  // Validates a_i >= t_i and a_i <= deadline for every submitted action.
  ActionProfile(const Instance& instance, std::vector<Action> actions);

  // Members submit at their true times; non-members do not submit.
  static ActionProfile truthful(const Instance& instance, const ParticipationSet& s);
  static ActionProfile all_truthful(const Instance& instance);

  int size() const { return static_cast<int>(actions_.size()); }
  const Action& action(int i) const { return actions_[i]; }
  bool submitted(int i) const { return actions_[i].has_value(); }
  int submission_count() const;

 private:
  std::vector<Action> actions_;
};

// Result of applying a mechanism: who participated, who got paid what, and
// the earliest submission. Total rewards never exceed 1.
struct Outcome {
  std::vector<int> participants;          // canonical indices, sorted
  std::vector<Money> rewards;             // per agent; 0 for non-participants
  std::optional<TimePoint> fastest_time;  // disengaged when nobody submits

  // Participants are the profile's submitters, fastest_time their earliest
  // submission. Validates the reward feasibility invariants.
  static Outcome from_profile(const Instance& instance, const ActionProfile& profile,
                              std::vector<Money> rewards);

  Rational total_reward() const;
};

}  // namespace mech
