#include "mech/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mech {

// --- ParticipationSet / ActionProfile / Outcome ------------------------------

bool ParticipationSet::contains(int i) const {
  return std::binary_search(members.begin(), members.end(), i);
}

bool operator==(const ParticipationSet& a, const ParticipationSet& b) {
  return a.members == b.members;
}

ActionProfile::ActionProfile(const Instance& instance, std::vector<Action> actions)
    : actions_(std::move(actions)) {
  if (static_cast<int>(actions_.size()) != instance.size()) {
    throw Error("action profile size does not match instance");
  }
  for (int i = 0; i < instance.size(); ++i) {
    if (!actions_[i]) continue;
    if (*actions_[i] < instance.agent(i).time) {
      throw Error("action earlier than the agent's completion time");
    }
    if (*actions_[i] > instance.deadline()) {
      throw Error("action later than the deadline");
    }
  }
}

ActionProfile ActionProfile::truthful(const Instance& instance, const ParticipationSet& s) {
  std::vector<Action> actions(instance.size());
  for (int i : s.members) {
    if (i < 0 || i >= instance.size()) throw Error("participation set index out of range");
    actions[i] = instance.agent(i).time;
  }
  return ActionProfile(instance, std::move(actions));
}

ActionProfile ActionProfile::all_truthful(const Instance& instance) {
  std::vector<Action> actions(instance.size());
  for (int i = 0; i < instance.size(); ++i) actions[i] = instance.agent(i).time;
  return ActionProfile(instance, std::move(actions));
}

int ActionProfile::submission_count() const {
  int count = 0;
  for (const auto& a : actions_) count += a.has_value();
  return count;
}

Outcome Outcome::from_profile(const Instance& instance, const ActionProfile& profile,
                              std::vector<Money> rewards) {
  if (static_cast<int>(rewards.size()) != instance.size()) {
    throw Error("reward vector size does not match instance");
  }
  Outcome out;
  out.rewards = std::move(rewards);
  Rational total = 0;
  for (int i = 0; i < instance.size(); ++i) {
    if (profile.submitted(i)) {
      out.participants.push_back(i);
      if (!out.fastest_time || *profile.action(i) < *out.fastest_time) {
        out.fastest_time = profile.action(i);
      }
    } else if (out.rewards[i].value() != 0) {
      throw Error("non-participant received a reward");
    }
    total += out.rewards[i].value();
  }
  if (total > 1) throw Error("rewards exceed the unit budget");
  return out;
}

Rational Outcome::total_reward() const {
  Rational total = 0;
  for (const auto& r : rewards) total += r.value();
  return total;
}

// --- make_instance ------------------------------------------------------------

Instance make_instance(std::vector<AgentType> types, TimePoint deadline) {
  if (types.empty()) throw Error("instance needs at least one agent");

  for (const auto& t : types) {
    if (t.cost.value() <= 0) throw Error("agent cost must be positive");
    if (t.time > deadline) throw Error("agent time exceeds the deadline");
  }

  std::vector<int> order(types.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (types[a].cost != types[b].cost) return types[a].cost < types[b].cost;
    return types[a].time > types[b].time;  // equal costs: slowest first
  });

  Instance instance;
  instance.deadline_ = std::move(deadline);
  instance.agents_.reserve(types.size());
  for (int idx : order) instance.agents_.push_back(types[idx]);
  instance.to_original_ = std::move(order);

  // After sorting, the time sequence must be non-increasing: a later agent
  // with strictly higher cost and strictly larger time would be costlier yet
  // slower, which the model forbids. Within equal costs the sort already
  // ordered times descending.
  for (int i = 0; i + 1 < instance.size(); ++i) {
    if (instance.agents_[i + 1].time > instance.agents_[i].time) {
      throw MonotonicityViolation("costlier agent is slower: canonical positions " +
                                  std::to_string(i) + " and " + std::to_string(i + 1));
    }
  }

  if (instance.agents_.front().cost.value() >= 1) {
    throw Infeasible("no agent costs less than the unit reward");
  }
  return instance;
}

// --- text format ---------------------------------------------------------------

Instance parse_instance(std::istream& in) {
  std::string line;
  TimePoint deadline;
  bool have_deadline = false;
  std::vector<AgentType> types;

  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string head;
    if (!(row >> head)) continue;  // blank line
    if (head[0] == '#') continue;
    if (!have_deadline) {
      if (head != "deadline") throw ParseError("instance file must start with 'deadline <T>'");
      std::string value;
      if (!(row >> value)) throw ParseError("missing deadline value");
      deadline = TimePoint(parse_rational(value));
      have_deadline = true;
      continue;
    }
    std::string time_text;
    if (!(row >> time_text)) throw ParseError("agent line needs 'cost time': " + line);
    types.push_back(AgentType{Money(parse_rational(head)), TimePoint(parse_rational(time_text))});
    std::string extra;
    if (row >> extra) throw ParseError("trailing tokens on agent line: " + line);
  }
  if (!have_deadline) throw ParseError("missing 'deadline' header");
  if (types.empty()) throw ParseError("instance file lists no agents");
  return make_instance(std::move(types), std::move(deadline));
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  return parse_instance(in);
}

std::string serialize_instance(const Instance& instance) {
  // Emit agents in their original order so a parse round-trip reproduces the
  // permutation as well.
  std::vector<const AgentType*> original(instance.size());
  for (int canonical = 0; canonical < instance.size(); ++canonical) {
    original[instance.to_original()[canonical]] = &instance.agent(canonical);
  }
  std::ostringstream out;
  out << "deadline " << format_rational(instance.deadline().value()) << "\n";
  for (const AgentType* agent : original) {
    out << format_rational(agent->cost.value()) << " " << format_rational(agent->time.value())
        << "\n";
  }
  return out.str();
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file: " + path);
  out << serialize_instance(instance);
}

// --- adversarial witnesses ------------------------------------------------------

Instance witness_half_half(const Rational& deadline) {
  TimePoint t(deadline);
  return make_instance({{Money(Rational(1, 2)), t}, {Money(Rational(1, 2)), t}}, t);
}

Instance witness_two_thirds_one_third(const Rational& deadline) {
  TimePoint t(deadline);
  return make_instance({{Money(Rational(2, 3)), t}, {Money(Rational(1, 3)), t}}, t);
}

Instance witness_fast_expensive(int kstar, const Rational& eps, const Rational& delta,
                                const Rational& deadline) {
  if (kstar < 2) throw Error("fast-expensive witness needs kstar >= 2");
  if (eps <= 0 || eps * kstar >= 1) throw Error("fast-expensive witness needs 0 < eps < 1/kstar");
  if (delta <= 0 || delta >= deadline) {
    throw Error("fast-expensive witness needs 0 < delta < deadline");
  }
  std::vector<AgentType> types;
  for (int i = 0; i < kstar - 1; ++i) {
    types.push_back({Money(eps), TimePoint(deadline)});
  }
  const Rational expensive = 1 - Rational(kstar - 1) * eps;
  types.push_back({Money(expensive), TimePoint(delta)});
  return make_instance(std::move(types), TimePoint(deadline));
}

Instance witness_overlap_pair(const Rational& c1, const Rational& c2, const Rational& deadline) {
  if (c1 <= 0 || c2 <= 0 || c1 + c2 >= 1) {
    throw Error("overlap-pair witness needs positive costs with c1 + c2 < 1");
  }
  // Times are not pinned by the construction; keep the cheaper agent slower.
  const Rational half = deadline / 2;
  const bool first_cheaper = c1 <= c2;
  return make_instance({{Money(c1), TimePoint(first_cheaper ? deadline : half)},
                        {Money(c2), TimePoint(first_cheaper ? half : deadline)}},
                       TimePoint(deadline));
}

namespace {

std::vector<Rational> parse_witness_args(std::string_view args, std::string_view full) {
  std::vector<Rational> out;
  std::string current;
  for (char c : args) {
    if (c == ',') {
      out.push_back(parse_rational(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (current.find_first_not_of(" \t") == std::string::npos) {
    throw UnknownWitness("malformed witness arguments: " + std::string(full));
  }
  out.push_back(parse_rational(current));
  return out;
}

}  // namespace

Instance adversarial_instance(std::string_view name) {
  if (name == "half-half") return witness_half_half();
  if (name == "two-thirds-one-third") return witness_two_thirds_one_third();

  const auto open = name.find('(');
  if (open != std::string_view::npos && name.back() == ')') {
    const std::string_view base = name.substr(0, open);
    const std::string_view args = name.substr(open + 1, name.size() - open - 2);
    const std::vector<Rational> values = parse_witness_args(args, name);
    if (base == "fast-expensive") {
      if (values.size() != 3 || values[0].get_den() != 1 || !values[0].get_num().fits_sint_p()) {
        throw UnknownWitness("fast-expensive expects (kstar, eps, delta): " + std::string(name));
      }
      return witness_fast_expensive(static_cast<int>(values[0].get_num().get_si()), values[1],
                                    values[2]);
    }
    if (base == "overlap-pair") {
      if (values.size() != 2) {
        throw UnknownWitness("overlap-pair expects (c1, c2): " + std::string(name));
      }
      return witness_overlap_pair(values[0], values[1]);
    }
  }
  throw UnknownWitness("unknown witness: " + std::string(name));
}

}  // namespace mech
