#include "causal/detector_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "causal/error.hpp"
#include "causal/quadrature.hpp"

namespace causal {

void QubitState::validate(std::string_view field) const {
  const std::string f(field);
  std::vector<Issue> issues;
  if (!(std::isfinite(alpha) && std::isfinite(beta.real()) && std::isfinite(beta.imag()))) {
    issues.push_back({ErrorCode::NonFinite, f, "state entries must be finite"});
  } else {
    if (alpha < 0.0 || alpha > 1.0)
      issues.push_back({ErrorCode::InvalidState, f + ".alpha", "alpha must lie in [0, 1]"});
    if (std::norm(beta) > alpha * (1.0 - alpha))
      issues.push_back({ErrorCode::InvalidState, f + ".beta",
                        "|beta|^2 must not exceed alpha (1 - alpha)"});
  }
  if (!issues.empty()) throw Error(std::move(issues));
}

namespace {

using std::numbers::pi;

struct Weights {
  const QubitState& a;
  const QubitState& b;
  double wa, wb;

  double re_a(double t) const { return (a.beta * std::polar(1.0, wa * t)).real(); }

  // Entries (0,0) and (0,1) of M(t'); (1,0) = -(0,1), (1,1) = -(0,0).
  std::pair<Complex, Complex> m(double tp) const {
    const double im_b = (b.beta * std::polar(1.0, wb * tp)).imag();
    const Complex off = Complex(0.0, -1.0) * std::polar(1.0, -wb * tp) * (1.0 - 2.0 * b.alpha);
    return {Complex(-2.0 * im_b, 0.0), off};
  }
};

using Pair = std::pair<Complex, Complex>;

Pair scale(const Pair& p, double c) { return {c * p.first, c * p.second}; }

}  // namespace

SignalBlock signal_block(const DetectorSpec& A, const QubitState& sA, const DetectorSpec& B,
                         const QubitState& sB, const std::function<Complex(double)>& C,
                         const std::vector<double>& breakpoints, int order) {
  sA.validate("A.state");
  sB.validate("B.state");
  const Profile pa = switching_profile(A), pb = switching_profile(B);
  const Weights W{sA, sB, A.omega, B.omega};
  const double lam = 2.0 * A.coupling * B.coupling;
  const bool da = pa.kind == ProfileKind::Delta, db = pb.kind == ProfileKind::Delta;

  SignalBlock out;
  auto finish = [&](Complex m00, Complex m01) {
    out.m[0][0] = lam * m00;
    out.m[0][1] = lam * m01;
    out.m[1][0] = -out.m[0][1];
    out.m[1][1] = -out.m[0][0];
  };

  if (da && db) {
    const double s = pa.lo - pb.lo;
    const auto w = scale(W.m(pb.lo), pa.height * pb.height * W.re_a(pa.lo));
    const Complex c = C(s);
    finish(w.first * c, w.second * c);
    return out;
  }

  // Weight matrix as a function of s = t - t', without the commutator.
  double lo, hi;
  std::function<Pair(double, int)> weight;
  if (da) {
    lo = pa.lo - pb.hi;
    hi = pa.lo - pb.lo;
    weight = [&](double s, int) { return scale(W.m(pa.lo - s), pa.height * pb.height * W.re_a(pa.lo)); };
  } else if (db) {
    lo = pa.lo - pb.lo;
    hi = pa.hi - pb.lo;
    weight = [&](double s, int) { return scale(W.m(pb.lo), pa.height * pb.height * W.re_a(s + pb.lo)); };
  } else {
    lo = pa.lo - pb.hi;
    hi = pa.hi - pb.lo;
    const double freq = std::abs(A.omega) + std::abs(B.omega);
    weight = [&, freq](double s, int ord) {
      const double t0 = std::max(pb.lo, pa.lo - s), t1 = std::min(pb.hi, pa.hi - s);
      Pair acc{};
      if (!(t1 > t0)) return acc;
      const int panels = 1 + static_cast<int>(std::ceil((t1 - t0) * freq / pi));
      const auto& rule = gauss_legendre(ord);
      for (int p = 0; p < panels; ++p) {
        const double a = t0 + (t1 - t0) * p / panels, b = t0 + (t1 - t0) * (p + 1) / panels;
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < rule.size(); ++i) {
          const double tp = mid + half * rule.nodes[i];
          const auto m = scale(W.m(tp), half * rule.weights[i] * W.re_a(s + tp));
          acc.first += m.first;
          acc.second += m.second;
        }
      }
      return scale(acc, pa.height * pb.height);
    };
  }

  std::vector<double> br = breakpoints;
  if (!da && !db) {
    const double w = std::min(pa.hi - pa.lo, pb.hi - pb.lo);
    br.push_back(lo + w);
    br.push_back(hi - w);
  }
  const auto edges = panel_edges(lo, hi, br);
  auto pass = [&](int ord) {
    const auto& rule = gauss_legendre(ord);
    Pair acc{};
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double half = 0.5 * (edges[p + 1] - edges[p]), mid = 0.5 * (edges[p] + edges[p + 1]);
      for (int i = 0; i < rule.size(); ++i) {
        const double s = mid + half * rule.nodes[i];
        const Complex c = half * rule.weights[i] * C(s);
        const auto w = weight(s, ord);
        acc.first += w.first * c;
        acc.second += w.second * c;
      }
    }
    return acc;
  };
  const auto coarse = pass(order);
  const auto fine = pass(2 * order);
  finish(fine.first, fine.second);
  out.error = std::abs(lam) * std::max(std::abs(fine.first - coarse.first),
                                       std::abs(fine.second - coarse.second));
  return out;
}

SignalBlock signal_block(const Estimator& est, const DetectorSpec& A, const QubitState& sA,
                         const DetectorSpec& B, const QubitState& sB) {
  if (!check_nonoverlap(est.config().bc, A, B)) {
    throw Error(Issue{ErrorCode::OverlappingSupports, "detectors",
                      "A must switch off before B switches on, with disjoint smearing boxes"});
  }
  const double lo = A.t_on - B.t_off, hi = A.t_off - B.t_on;
  const auto br = est.time_breakpoints(A, B, lo, hi);
  auto C = [&](double s) { return est.smeared(A, B, s, 0.0).value; };
  return signal_block(A, sA, B, sB, C, br, est.config().quadrature_nodes());
}

SignalBlock signal_block(const BoundaryConfig& bc, const DetectorSpec& A, const QubitState& sA,
                         const DetectorSpec& B, const QubitState& sB,
                         const CommutatorOptions& opts) {
  return signal_block(Estimator(bc, opts), A, sA, B, sB);
}

double signal_magnitude(const SignalBlock& block) noexcept {
  // Largest eigenvalue of m^dagger m.
  const auto& m = block.m;
  double h00 = 0.0, h11 = 0.0;
  Complex h01{};
  for (int k = 0; k < 2; ++k) {
    h00 += std::norm(m[k][0]);
    h11 += std::norm(m[k][1]);
    h01 += std::conj(m[k][0]) * m[k][1];
  }
  const double tr = h00 + h11;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (h00 - h11) * (h00 - h11) + std::norm(h01)));
  return std::sqrt(std::max(0.0, 0.5 * tr + disc));
}

double hermiticity_defect(const SignalBlock& block) noexcept {
  double sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sum += std::norm(block.m[i][j] - std::conj(block.m[j][i]));
  return std::sqrt(sum);
}

}  // namespace causal
