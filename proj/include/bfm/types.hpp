#pragma once
// Core aliases: exact rational money, bitmask agent sets, error taxonomy.

#include <boost/multiprecision/cpp_int.hpp>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfm {

using BigInt = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;  // money, values, probabilities

using AgentId = int;
using AgentSet = std::uint32_t;  // agent i <-> bit i, least significant = agent 0

constexpr int kMaxAgents = 16;

// malformed user input (files, parameters)
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// structurally valid request outside what this build can compute (size guards,
// wrong valuation kind for an operation)
struct capability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline AgentSet bit(AgentId i) { return AgentSet{1} << i; }
inline bool contains(AgentSet s, AgentId i) { return (s >> i) & 1u; }
inline int set_size(AgentSet s) { return std::popcount(s); }
inline AgentSet full_set(int n) { return n == 0 ? 0 : (AgentSet{1} << n) - 1; }
inline int lowest_agent(AgentSet s) { return std::countr_zero(s); }
inline int highest_agent(AgentSet s) { return 31 - std::countl_zero(s); }

// Lexicographic order on the sorted element lists; for equal-size sets the one
// containing the lowest differing agent comes first.
inline bool lex_less(AgentSet a, AgentSet b) {
  if (a == b) return false;
  AgentSet d = a ^ b;
  return contains(a, lowest_agent(d));
}

// sums[m] = sum of per-agent values over members of m, for every mask
inline std::vector<Q> subset_sums(const std::vector<Q>& per_agent) {
  int n = static_cast<int>(per_agent.size());
  std::vector<Q> sums(std::size_t{1} << n);
  for (AgentSet m = 1; m < sums.size(); ++m)
    sums[m] = sums[m & (m - 1)] + per_agent[lowest_agent(m)];
  return sums;
}

inline std::string set_to_string(AgentSet s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < kMaxAgents; ++i)
    if (contains(s, i)) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

}  // namespace bfm
