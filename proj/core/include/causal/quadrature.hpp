#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "causal/error.hpp"

namespace causal {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const noexcept { return static_cast<int>(nodes.size()); }
};

/// Newton iteration on P_n; results are cached per order and thread safe.
const GaussLegendreRule& gauss_legendre(int n);

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int panels = 0;
  long evaluations = 0;
};

/// Sorted, deduplicated panel edges for [a, b] with interior breakpoints.
/// Breakpoints outside (a, b) are dropped.
std::vector<double> panel_edges(double a, double b, std::span<const double> breakpoints);

template <class T, class F>
T integrate_panel(F&& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  T acc{};
  for (int i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

template <class T, class F>
T integrate_panels(F&& f, std::span<const double> edges, const GaussLegendreRule& rule) {
  T acc{};
  for (std::size_t p = 0; p + 1 < edges.size(); ++p)
    acc += integrate_panel<T>(f, edges[p], edges[p + 1], rule);
  return acc;
}

/// Fixed-order rule on every panel, repeated once at twice the order.
/// Returns the higher-order value; `error` is the difference of the two.
template <class T, class F>
QuadResult<T> integrate_with_doubling(F&& f, std::span<const double> edges, int order) {
  QuadResult<T> r;
  const T coarse = integrate_panels<T>(f, edges, gauss_legendre(order));
  r.value = integrate_panels<T>(f, edges, gauss_legendre(2 * order));
  r.error = std::abs(r.value - coarse);
  r.panels = edges.empty() ? 0 : static_cast<int>(edges.size()) - 1;
  r.evaluations = static_cast<long>(r.panels) * 3 * order;
  return r;
}

/// Globally adaptive Gauss-Legendre: every panel is estimated at `order` and
/// `2 * order`; the panel with the largest discrepancy is bisected until the
/// summed discrepancy meets max(abs_tol, rel_tol * |I|).
///
/// Throws QuadratureError once `max_panels` is reached.
template <class T, class F>
QuadResult<T> adaptive_gauss_legendre(F&& f, std::span<const double> initial_edges,
                                      double rel_tol, double abs_tol, int order = 16,
                                      int max_panels = 20000,
                                      const std::string& where = "adaptive_gauss_legendre") {
  struct Panel {
    double a, b;
    T value;
    double error;
    bool operator<(const Panel& o) const {
      if (error != o.error) return error < o.error;
      return a > o.a;  // deterministic tie break
    }
  };
  const auto& lo = gauss_legendre(order);
  const auto& hi = gauss_legendre(2 * order);
  QuadResult<T> r;
  auto make = [&](double a, double b) {
    const T c = integrate_panel<T>(f, a, b, lo);
    const T v = integrate_panel<T>(f, a, b, hi);
    r.evaluations += 3L * order;
    return Panel{a, b, v, std::abs(v - c)};
  };

  std::priority_queue<Panel> queue;
  for (std::size_t p = 0; p + 1 < initial_edges.size(); ++p)
    queue.push(make(initial_edges[p], initial_edges[p + 1]));

  auto totals = [&] {
    // Re-sum in a canonical order so the result is independent of heap layout.
    std::vector<Panel> all;
    auto copy = queue;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    T v{};
    double e = 0.0;
    for (const auto& p : all) {
      v += p.value;
      e += p.error;
    }
    return std::pair<T, double>{v, e};
  };

  T value{};
  double err = 0.0;
  {
    auto [v, e] = totals();
    value = v;
    err = e;
  }
  for (;;) {
    const double target = std::max(abs_tol, rel_tol * std::abs(value));
    if (err <= target || queue.empty()) break;
    if (static_cast<int>(queue.size()) >= max_panels) throw QuadratureError(where, err, target);
    const Panel worst = queue.top();
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) throw QuadratureError(where, err, target);
    const Panel left = make(worst.a, m);
    const Panel right = make(m, worst.b);
    value += (left.value + right.value) - worst.value;
    err += (left.error + right.error) - worst.error;
    queue.push(left);
    queue.push(right);
  }
  auto [v, e] = totals();
  r.value = v;
  r.error = e;
  r.panels = static_cast<int>(queue.size());
  return r;
}

}  // namespace causal
