#pragma once

// The four non-revelation reward rules: committed maps from submission
// profiles to reward vectors. Rules read true types only through the profile
// (index bookkeeping aside), never an agent's private cost.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mech/types.hpp"

namespace mech {

// Whole reward to the earliest submission, ties to the lowest index.
std::vector<Money> reward_fastest(const Instance& instance, const ActionProfile& profile);

// 1/l to each of the l submitters.
std::vector<Money> reward_equal(const Instance& instance, const ActionProfile& profile);

// Minimal a >= 1 with 1/a + ... + 1/(a+ell-1) <= 1, evaluated exactly.
int harmonic_offset(int ell);

// m_1..m_max_ell in one incremental pass (the offsets are non-decreasing).
std::vector<int> harmonic_offsets(int max_ell);

// i-th fastest of l submitters gets 1/(harmonic_offset(l) + i - 1); ties in
// submission time rank lower indices first.
std::vector<Money> reward_harmonic(const Instance& instance, const ActionProfile& profile);

// Non-overlapping type structure: ordered (time interval, cost) profiles.
// Bucket 0 is the slowest and cheapest; costs strictly increase and every
// later interval lies strictly below the previous one.
struct Bucket {
  TimePoint lo;
  TimePoint hi;
  Money cost;
};

class BucketScheme {
 public:
  explicit BucketScheme(std::vector<Bucket> slowest_first);

  int size() const { return static_cast<int>(buckets_.size()); }
  const Bucket& bucket(int j) const { return buckets_[j]; }
  const std::vector<Bucket>& buckets() const { return buckets_; }

  // Index of the bucket whose interval contains t, or disengaged.
  std::optional<int> bucket_of(const TimePoint& t) const;
  // The bucket cost as the inferred cost of a submission at t.
  std::optional<Money> inferred_cost(const TimePoint& t) const;

  // One bucket per line, "t_lo t_hi cost", slowest (time-descending) first.
  static BucketScheme parse(std::istream& in);
  static BucketScheme load(const std::string& path);
  std::string serialize() const;

 private:
  std::vector<Bucket> buckets_;
};

// Best-Set rule: with at least k submissions, pay the k-best set of the
// inferred types their inferred costs; with fewer, pay as many cheapest
// submitters as the budget covers. Submissions outside every bucket are
// ineligible. Requires k >= 2.
std::vector<Money> reward_best_set(const Instance& instance, const ActionProfile& profile,
                                   const BucketScheme& scheme, int k);

// Members of the k-best selection for a profile with >= k eligible
// submissions (the set the rewards above pay). Exposed for the equilibrium
// solver.
std::vector<int> best_set_selection(const Instance& instance, const ActionProfile& profile,
                                    const BucketScheme& scheme, int k);

// Type-erased handle so the equilibrium machinery can treat the four rules
// uniformly.
class RewardRule {
 public:
  enum class Kind { Fast, Equal, Harmonic, BestSet };

  static RewardRule fast();
  static RewardRule equal();
  static RewardRule harmonic();
  static RewardRule best_set(BucketScheme scheme, int k);

  std::vector<Money> operator()(const Instance& instance, const ActionProfile& profile) const;

  Kind kind() const { return kind_; }
  const BucketScheme* scheme() const { return scheme_ ? &*scheme_ : nullptr; }
  int k() const { return k_; }
  std::string name() const;

 private:
  RewardRule(Kind kind, std::optional<BucketScheme> scheme, int k)
      : kind_(kind), scheme_(std::move(scheme)), k_(k) {}

  Kind kind_;
  std::optional<BucketScheme> scheme_;
  int k_ = 0;
};

struct MonotoneViolation {
  int ell;       // submitter count whose sorted rewards dropped below the next
  int position;  // 1-based position of the offending order statistic
};

// Checks the reward-monotone property on canonical all-at-deadline profiles:
// the i-th smallest reward with l submitters must be at least the i-th
// smallest with l+1. Returns the first violation, or disengaged.
std::optional<MonotoneViolation> check_reward_monotone(const RewardRule& rule,
                                                       const Instance& instance, int max_ell);

}  // namespace mech
