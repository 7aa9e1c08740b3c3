#include "said/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace said {

namespace {

long long checked_mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("rational power overflows");
  }
  return out;
}

// Single-branching fluid trace: both integer frontiers advance at their
// rates; the gap is inspected at every frontier event until the fast
// receiver finishes.
bool branch_in_sync(const Rational& b_low, const Rational& b_high, std::int64_t cache,
                    std::int64_t flow) {
  if (b_low == b_high) return true;
  std::int64_t n_low = 0;
  std::int64_t n_high = 0;
  while (n_high < flow) {
    const Rational t_low(n_low + 1, 1);
    const Rational t_high(n_high + 1, 1);
    const Rational next_low = t_low / b_low;
    const Rational next_high = t_high / b_high;
    if (next_high <= next_low) n_high++;
    if (next_low <= next_high) n_low++;
    if (n_high - n_low > cache) return false;
  }
  return true;
}

}  // namespace

bool in_sync_predicate(const SyncParams& p) {
  const Rational ratio = p.b_low / p.b_high;
  const Rational bound = Rational(1) - Rational(p.cache_pkts, p.flow_pkts);
  return ratio >= bound;
}

Rational max_gap(const Rational& b_low, const Rational& b_high, std::int64_t flow_pkts) {
  return (Rational(1) - b_low / b_high) * Rational(flow_pkts);
}

Rational min_rate_ratio_tree_exact(const Rational& c_over_f, int k) {
  if (k < 1) throw std::invalid_argument("tree depth must be >= 1");
  const Rational base = Rational(1) - c_over_f;
  Rational out(1);
  for (int i = 0; i < k; ++i) {
    out = Rational(checked_mul(out.numerator(), base.numerator()),
                   checked_mul(out.denominator(), base.denominator()));
  }
  return out;
}

double min_rate_ratio_tree(double c_over_f, int k) {
  return std::pow(1.0 - c_over_f, k);
}

std::optional<Rational> exact_kth_root(const Rational& r, int k) {
  if (k <= 0 || r < 0) return std::nullopt;
  if (k == 1) return r;
  auto int_root = [k](long long v) -> std::optional<long long> {
    if (v < 0) return std::nullopt;
    auto guess = static_cast<long long>(
        std::llround(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(k))));
    for (long long c = std::max<long long>(0, guess - 2); c <= guess + 2; ++c) {
      long long acc = 1;
      bool overflow = false;
      for (int i = 0; i < k; ++i) {
        if (__builtin_mul_overflow(acc, c, &acc)) {
          overflow = true;
          break;
        }
      }
      if (!overflow && acc == v) return c;
    }
    return std::nullopt;
  };
  const auto num = int_root(r.numerator());
  const auto den = int_root(r.denominator());
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

bool gap_oracle(const SyncParams& p, OracleMode mode) {
  if (mode == OracleMode::kSingleBranch) {
    return branch_in_sync(p.b_low, p.b_high, p.cache_pkts, p.flow_pkts);
  }
  const auto beta = exact_kth_root(p.b_low / p.b_high, p.levels);
  if (!beta) {
    throw std::invalid_argument("tree oracle needs an exact per-level ratio");
  }
  // Level i sees the fastest sub-tree at rate r_{i-1} and its slowest
  // immediate child at r_i = beta * r_{i-1}; every level must stay in-sync.
  Rational fast = p.b_high;
  for (int level = 0; level < p.levels; ++level) {
    const Rational slow = fast * (*beta);
    if (!branch_in_sync(slow, fast, p.cache_pkts, p.flow_pkts)) return false;
    fast = slow;
  }
  return true;
}

}  // namespace said
