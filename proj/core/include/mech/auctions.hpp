#pragma once

// Revelation mechanisms: the inverse k-price auction and the Inverse
// Generalized Second Price auction (I-GSP), plus dominated-bid filtering,
// inversion detection and the IC/IR audit tooling.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mech/types.hpp"

namespace mech {

// A reported type: cost the agent asks to be covered, time she promises.
struct Bid {
  Money cost;
  TimePoint time;
};

inline bool operator==(const Bid& a, const Bid& b) { return a.cost == b.cost && a.time == b.time; }

struct AuctionResult {
  std::vector<int> allocated;   // indices into the bid vector, sorted
  std::vector<Money> rewards;   // per bid; 0 where not allocated
  bool inverted = false;        // I-GSP detected an inversion and refused to allocate

  bool is_allocated(int i) const;
  Rational total_reward() const;
};

// Bids strictly worse on both coordinates than some other bid can only arise
// from dishonest behavior; mechanisms ignore them. Ties survive.
struct FilterResult {
  std::vector<Bid> kept;
  std::vector<int> kept_indices;    // original positions of the kept bids
  std::vector<int> removed;         // original positions of the dropped bids
};
FilterResult filter_dominated(const std::vector<Bid>& bids);

// True iff some pair is strictly cheaper and strictly faster at once, i.e.
// the reported times fail to be non-increasing across strictly increasing
// costs. Equal costs are unconstrained.
bool detect_inversion(const std::vector<Bid>& bids);

// Allocates the k cheapest bids at the (k+1)-th price, k maximal with
// k * c_{k+1} <= 1; the price past the last bid is capped at the full
// reward. Dominated bids are ignored.
AuctionResult inverse_k_price(const std::vector<Bid>& bids);

// I-GSP: on inversion-free bids, allocates the k-2 cheapest agents at
// second-price rewards plus the costliest affordable agent, who receives the
// leftover budget. Inputs k above the reported k* are coerced down; an
// inversion voids the auction. Throws KTooSmall for k < 2.
AuctionResult igsp(const std::vector<Bid>& bids, int k);

using Mechanism = std::function<AuctionResult(const std::vector<Bid>&)>;

// Resolves "inverse-k-price" or "igsp" (the latter requires k).
Mechanism mechanism_by_name(const std::string& name, std::optional<int> k);

std::vector<Bid> truthful_bids(const Instance& instance);

struct IrViolation {
  int agent;  // canonical index
  Money reward;
  Money cost;
};

// Runs the mechanism on truthful bids and reports every allocated agent paid
// less than her cost. Empty for both paper mechanisms.
std::vector<IrViolation> audit_ir(const Mechanism& mechanism, const Instance& instance);
std::vector<IrViolation> audit_ir(const std::string& mechanism, const Instance& instance,
                                  std::optional<int> k);

struct IcViolation {
  int agent;      // canonical index
  Bid deviation;  // the profitable misreport
  Rational utility_truthful;
  Rational utility_deviating;
};

struct IcAuditOptions {
  Rational cost_step = Rational(1, 20);  // grid step over [0, 1]
  int max_n = 8;                         // enumeration cap
};

// Enumerates unilateral misreports per agent: costs over the grid plus all
// reported costs +- step, times over the true times at or after the agent's
// own plus the deadline. Reports every deviation with strictly higher
// utility than truth-telling; empty means IC held on the grid.
std::vector<IcViolation> audit_ic(const Mechanism& mechanism, const Instance& instance,
                                  const IcAuditOptions& options = {});
std::vector<IcViolation> audit_ic(const std::string& mechanism, const Instance& instance,
                                  std::optional<int> k, const IcAuditOptions& options = {});

}  // namespace mech
