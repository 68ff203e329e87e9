#pragma once

// Instance construction, the on-disk instance format, and the adversarial
// witness instances used by the tightness tests.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mech/types.hpp"

namespace mech {

// Canonicalizes and validates. Throws MonotonicityViolation if some agent is
// strictly costlier and strictly slower than another, Infeasible if no agent
// costs less than the unit reward, Error on nonpositive costs or times past
// the deadline.
Instance make_instance(std::vector<AgentType> types, TimePoint deadline);

// Text format: header line "deadline <T>", then one "cost time" line per
// agent, values as exact integer, fraction or decimal literals. Agents are
// listed in their original order.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

// Witness instances drawn from the impossibility proofs.
Instance witness_half_half(const Rational& deadline = Rational(1));
Instance witness_two_thirds_one_third(const Rational& deadline = Rational(1));
Instance witness_fast_expensive(int kstar, const Rational& eps, const Rational& delta,
                                const Rational& deadline = Rational(1));
Instance witness_overlap_pair(const Rational& c1, const Rational& c2,
                              const Rational& deadline = Rational(1));

// Name-keyed access for the CLI: "half-half", "two-thirds-one-third",
// "fast-expensive(5,1/100,1/10)", "overlap-pair(0.3,0.4)". Throws
// UnknownWitness for anything else.
Instance adversarial_instance(std::string_view name);

}  // namespace mech
