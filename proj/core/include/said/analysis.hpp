#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>

namespace said {

// Exact arithmetic so the boundary case (equality in the in-sync
// condition) is decided consistently with the ">=".
using Rational = boost::rational<long long>;

struct SyncParams {
  Rational b_low;   // slowest downstream rate
  Rational b_high;  // fastest downstream rate
  std::int64_t cache_pkts = 0;
  std::int64_t flow_pkts = 1;
  int levels = 1;  // tree depth k
};

// In-sync condition at a single branching router: B_L/B_H >= 1 - C/F.
bool in_sync_predicate(const SyncParams& p);

// Maximum frontier gap between the slowest and fastest receiver,
// (1 - B_L/B_H) * F, in packets.
Rational max_gap(const Rational& b_low, const Rational& b_high, std::int64_t flow_pkts);

// Minimum allowed rate ratio across a k-level dissemination tree:
// (1 - C/F)^k. The exact form throws std::overflow_error when the rational
// power does not fit; the double form serves deep trees.
Rational min_rate_ratio_tree_exact(const Rational& c_over_f, int k);
double min_rate_ratio_tree(double c_over_f, int k);

enum class OracleMode { kSingleBranch, kTree };

// Independent discrete-time fluid check of the closed-form condition:
// integer frontiers advance at the receivers' rates, the upstream request
// frontier tracks the fastest receiver, and any packet is evicted once the
// frontier gap exceeds the cache. Returns true iff the gap never exceeds C
// at any router before the fast receiver completes.
// Tree mode derives the per-level ratio as the exact k-th root of
// B_L/B_H and throws std::invalid_argument when no exact root exists.
bool gap_oracle(const SyncParams& p, OracleMode mode);

std::optional<Rational> exact_kth_root(const Rational& r, int k);

}  // namespace said
