#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "causal/parallel.hpp"
#include "causal/types.hpp"

namespace causal {

/// Terms per leaf block of the reduction tree. Fixed so that the tree shape
/// depends only on the term count, never on the worker count.
inline constexpr std::size_t kReductionBlock = 4096;

/// Pairwise (cascade) sum with a fixed split rule: halves at n / 2 down to
/// runs of at most 8 terms, which are summed left to right.
double pairwise_sum(std::span<const double> values) noexcept;

/// Neumaier-compensated left-to-right sum.
double compensated_sum(std::span<const double> values) noexcept;

/// Sums term(i) over [0, count). PairwiseDeterministic evaluates blocks of
/// kReductionBlock terms concurrently and combines the block partials with
/// pairwise_sum; SerialCompensated runs one Neumaier pass in index order.
/// Both give bit-identical results for any thread count.
template <class Term>
double reduce_sum(std::size_t count, Term&& term, Summation policy) {
  if (count == 0) return 0.0;
  if (policy == Summation::SerialCompensated) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = term(i);
      const double t = sum + v;
      if (std::abs(sum) >= std::abs(v))
        comp += (sum - t) + v;
      else
        comp += (v - t) + sum;
      sum = t;
    }
    return sum + comp;
  }

  const std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(count, lo + kReductionBlock);
    std::vector<double> buf(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) buf[i - lo] = term(i);
    partial[b] = pairwise_sum(buf);
  });
  return pairwise_sum(partial);
}

}  // namespace causal
