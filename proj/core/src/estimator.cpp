#include "causal/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "causal/error.hpp"
#include "causal/parallel.hpp"
#include "causal/quadrature.hpp"

namespace causal {

Profile Profile::top_hat(double lo, double hi, double height) {
  return Profile{ProfileKind::TopHat, lo, hi, height};
}

Profile Profile::delta(double at, double mass) { return Profile{ProfileKind::Delta, at, at, mass}; }

double Profile::mass() const noexcept {
  return kind == ProfileKind::Delta ? height : height * (hi - lo);
}

double Profile::operator()(double x) const noexcept {
  if (kind == ProfileKind::Delta) return 0.0;
  return (x >= lo && x <= hi) ? height : 0.0;
}

Profile switching_profile(const DetectorSpec& d) {
  if (d.delta_switching()) return Profile::delta(d.t_on, d.switch_height.value_or(1.0));
  return Profile::top_hat(d.t_on, d.t_off, d.switch_height.value_or(1.0 / (d.t_off - d.t_on)));
}

Profile smearing_profile(const DetectorSpec& d, int axis, int dim) {
  const double c = d.center.at(static_cast<std::size_t>(axis));
  if (d.pointlike()) return Profile::delta(c, axis == 0 ? d.smear_height.value_or(1.0) : 1.0);
  double h = 1.0 / d.sigma;
  if (axis == 0 && d.smear_height) h = *d.smear_height * std::pow(d.sigma, dim - 1);
  return Profile::top_hat(c - 0.5 * d.sigma, c + 0.5 * d.sigma, h);
}

double DifferenceKernel::operator()(double s) const noexcept {
  if (point || s < knots[0] || s > knots[3]) return 0.0;
  if (s < knots[1]) return plateau * (s - knots[0]) / (knots[1] - knots[0]);
  if (s <= knots[2]) return plateau;
  return plateau * (knots[3] - s) / (knots[3] - knots[2]);
}

double DifferenceKernel::mass() const noexcept {
  if (point) return plateau;
  return plateau * ((knots[2] - knots[1]) + 0.5 * (knots[1] - knots[0]) +
                    0.5 * (knots[3] - knots[2]));
}

DifferenceKernel difference_kernel(const Profile& p, const Profile& q) {
  DifferenceKernel k;
  const bool pd = p.kind == ProfileKind::Delta, qd = q.kind == ProfileKind::Delta;
  if (pd && qd) {
    k.point = true;
    k.knots.fill(p.lo - q.lo);
    k.plateau = p.height * q.height;
  } else if (pd) {
    k.knots = {p.lo - q.hi, p.lo - q.hi, p.lo - q.lo, p.lo - q.lo};
    k.plateau = p.height * q.height;
  } else if (qd) {
    k.knots = {p.lo - q.lo, p.lo - q.lo, p.hi - q.lo, p.hi - q.lo};
    k.plateau = p.height * q.height;
  } else {
    const double w = std::min(p.hi - p.lo, q.hi - q.lo);
    k.knots = {p.lo - q.hi, p.lo - q.hi + w, p.hi - q.lo - w, p.hi - q.lo};
    k.plateau = p.height * q.height * w;
  }
  return k;
}

bool check_nonoverlap(const BoundaryConfig& bc, const DetectorSpec& A, const DetectorSpec& B) {
  validate_detector(A, bc.dim(), "A");
  validate_detector(B, bc.dim(), "B");
  if (!(A.t_off < B.t_on)) return false;
  const double reach = 0.5 * (A.sigma + B.sigma);
  for (int l = 0; l < bc.dim(); ++l) {
    double d = A.center[l] - B.center[l];
    if (bc.axes[l].kind == AxisKind::Periodic) d = std::remainder(d, *bc.axes[l].length);
    if (std::abs(d) > reach) return true;
  }
  return false;
}

namespace {

// v + m P for every integer m with the result strictly inside (lo, hi).
void push_images(std::vector<double>& out, double v, double P, double lo, double hi) {
  const double m0 = std::ceil((lo - v) / P);
  const double m1 = std::floor((hi - v) / P);
  for (double m = m0; m <= m1; m += 1.0) {
    const double x = v + m * P;
    if (x > lo && x < hi) out.push_back(x);
  }
}

std::vector<double> support_edges(const Profile& p) {
  if (p.kind == ProfileKind::Delta) return {p.lo};
  return {p.lo, p.hi};
}

// One integration dimension: either a point mass or a density over panels.
struct Dim {
  bool point = false;
  double at = 0.0;
  double mass = 0.0;
  std::vector<double> edges;
  std::function<double(double)> density;
};

using DimFn = std::function<Dim(int depth, const std::vector<double>& coords)>;

Complex tensor_integrate(int depth, int ndims, std::vector<double>& coords, const DimFn& dims,
                         const GaussLegendreRule& rule,
                         const std::function<Complex(const std::vector<double>&)>& leaf,
                         long& evals) {
  if (depth == ndims) {
    ++evals;
    return leaf(coords);
  }
  const Dim d = dims(depth, coords);
  if (d.point) {
    coords[depth] = d.at;
    return d.mass * tensor_integrate(depth + 1, ndims, coords, dims, rule, leaf, evals);
  }
  Complex acc{};
  for (std::size_t p = 0; p + 1 < d.edges.size(); ++p) {
    const double a = d.edges[p], b = d.edges[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Complex panel{};
    for (int i = 0; i < rule.size(); ++i) {
      const double x = mid + half * rule.nodes[i];
      coords[depth] = x;
      const double w = d.density(x);
      if (w == 0.0) continue;
      panel += rule.weights[i] * w * tensor_integrate(depth + 1, ndims, coords, dims, rule, leaf, evals);
    }
    acc += half * panel;
  }
  return acc;
}

bool ti_geometry(const BoundaryConfig& bc) {
  return std::all_of(bc.axes.begin(), bc.axes.end(), [](const AxisSpec& a) {
    return a.kind == AxisKind::Periodic || a.kind == AxisKind::Open;
  });
}

double min_length(const BoundaryConfig& bc) {
  double m = 0.0;
  for (const auto& a : bc.axes)
    if (a.length) m = m == 0.0 ? *a.length : std::min(m, *a.length);
  return m;
}

}  // namespace

Estimator::Estimator(CheckedConfig cfg) : engine_(std::move(cfg)) {}

Estimator::Estimator(const BoundaryConfig& bc, const CommutatorOptions& opts)
    : engine_(validate_config(bc, opts)) {}

SmearedResult Estimator::smeared_at_order(const DetectorSpec& A, const DetectorSpec& B, double t,
                                          double tp, int order) const {
  const auto& cfg = config();
  const int n = cfg.dim();
  const double s = t - tp;
  const auto& rule = gauss_legendre(order);
  SmearedResult r;
  std::vector<double> coords;
  DimFn dims;
  std::function<Complex(const std::vector<double>&)> leaf;
  std::vector<DifferenceKernel> kern;
  std::vector<Profile> prof;

  if (ti_geometry(cfg.bc)) {
    // Integrate over xi = x - x' against the per-axis difference kernels.
    for (int l = 0; l < n; ++l)
      kern.push_back(difference_kernel(smearing_profile(A, l, n), smearing_profile(B, l, n)));
    coords.assign(n, 0.0);
    dims = [&, s](int depth, const std::vector<double>&) {
      const auto& k = kern[depth];
      Dim d;
      if (k.point) {
        d.point = true;
        d.at = k.knots[0];
        d.mass = k.plateau;
        return d;
      }
      std::vector<double> br(k.knots.begin(), k.knots.end());
      if (n == 1) {
        const double L = *cfg.bc.axes[0].length;
        push_images(br, s, L, k.lo(), k.hi());
        push_images(br, -s, L, k.lo(), k.hi());
      }
      d.edges = panel_edges(k.lo(), k.hi(), br);
      d.density = [&k](double x) { return k(x); };
      return d;
    };
    leaf = [&, s](const std::vector<double>& xi) {
      return engine_(SpacetimeEvent{s, xi}, SpacetimeEvent{0.0, std::vector<double>(n, 0.0)}).value;
    };
  } else {
    // Iterate over A's box then B's box.
    for (int l = 0; l < n; ++l) prof.push_back(smearing_profile(A, l, n));
    for (int l = 0; l < n; ++l) prof.push_back(smearing_profile(B, l, n));
    coords.assign(2 * n, 0.0);
    const double P = n == 1 ? 2.0 * *cfg.bc.axes[0].length : 0.0;
    dims = [&, s, P](int depth, const std::vector<double>& c) {
      const auto& p = prof[depth];
      Dim d;
      if (p.kind == ProfileKind::Delta) {
        d.point = true;
        d.at = p.lo;
        d.mass = p.height;
        return d;
      }
      std::vector<double> br;
      if (n == 1) {
        // Light-cone reflections: x' = +-x +- s and, for x, the images of B's edges.
        const std::vector<double> refs = depth == 0 ? support_edges(prof[1]) : std::vector<double>{c[0]};
        for (double e : refs)
          for (double v : {e + s, e - s, -e + s, -e - s}) push_images(br, v, P, p.lo, p.hi);
      }
      d.edges = panel_edges(p.lo, p.hi, br);
      d.density = [&p](double x) { return p(x); };
      return d;
    };
    leaf = [&, t, tp](const std::vector<double>& c) {
      SpacetimeEvent a{t, std::vector<double>(c.begin(), c.begin() + n)};
      SpacetimeEvent b{tp, std::vector<double>(c.begin() + n, c.end())};
      return engine_(a, b).value;
    };
  }
  r.value = tensor_integrate(0, static_cast<int>(coords.size()), coords, dims, rule, leaf, r.evaluations);
  return r;
}

SmearedResult Estimator::smeared(const DetectorSpec& A, const DetectorSpec& B, double t,
                                 double tp) const {
  const int n = config().dim();
  validate_detector(A, n, "A");
  validate_detector(B, n, "B");
  const int order = config().quadrature_nodes();
  const auto coarse = smeared_at_order(A, B, t, tp, order);
  auto fine = smeared_at_order(A, B, t, tp, 2 * order);
  fine.error = std::abs(fine.value - coarse.value);
  fine.evaluations += coarse.evaluations;
  return fine;
}

std::vector<double> Estimator::time_breakpoints(const DetectorSpec& A, const DetectorSpec& B,
                                                double lo, double hi) const {
  std::vector<double> out;
  const auto& bc = config().bc;
  if (bc.dim() != 1) return out;
  const bool periodic = bc.axes[0].kind == AxisKind::Periodic;
  const double P = periodic ? *bc.axes[0].length : 2.0 * *bc.axes[0].length;
  for (double a : support_edges(smearing_profile(A, 0, 1)))
    for (double b : support_edges(smearing_profile(B, 0, 1))) {
      push_images(out, a - b, P, lo, hi);
      push_images(out, b - a, P, lo, hi);
      if (!periodic) {
        push_images(out, a + b, P, lo, hi);
        push_images(out, -a - b, P, lo, hi);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

EstimatorResult Estimator::operator()(const DetectorSpec& A, const DetectorSpec& B) const {
  const auto& cfg = config();
  if (!check_nonoverlap(cfg.bc, A, B)) {
    throw Error(Issue{ErrorCode::OverlappingSupports, "detectors",
                      "A must switch off before B switches on, with disjoint smearing boxes"});
  }
  const auto K = difference_kernel(switching_profile(A), switching_profile(B));
  EstimatorResult r;
  if (K.point) {
    const auto sm = smeared(A, B, K.knots[0], 0.0);
    r.integral = K.plateau * sm.value;
    r.error = std::abs(K.plateau) * sm.error;
    r.evaluations = sm.evaluations;
    r.value = std::abs(r.integral);
    return r;
  }

  std::vector<double> br(K.knots.begin(), K.knots.end());
  const auto tb = time_breakpoints(A, B, K.lo(), K.hi());
  br.insert(br.end(), tb.begin(), tb.end());
  if (cfg.dim() > 1) {
    const double h = min_length(cfg.bc) / 8.0;
    const int pieces = static_cast<int>(std::ceil((K.hi() - K.lo()) / h));
    for (int i = 1; i < pieces; ++i) br.push_back(K.lo() + (K.hi() - K.lo()) * i / pieces);
  }
  const auto edges = panel_edges(K.lo(), K.hi(), br);

  const int order = cfg.quadrature_nodes();
  auto pass = [&](int ord) {
    const auto& rule = gauss_legendre(ord);
    // Flatten (panel, node) so nodes can be evaluated concurrently.
    std::vector<double> s, w;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double half = 0.5 * (edges[p + 1] - edges[p]), mid = 0.5 * (edges[p] + edges[p + 1]);
      for (int i = 0; i < rule.size(); ++i) {
        s.push_back(mid + half * rule.nodes[i]);
        w.push_back(half * rule.weights[i]);
      }
    }
    std::vector<Complex> vals(s.size());
    std::vector<long> evals(s.size(), 0);
    parallel_for(s.size(), [&](std::size_t i) {
      const double k = K(s[i]);
      if (k == 0.0) return;
      const auto sm = smeared_at_order(A, B, s[i], 0.0, ord);
      vals[i] = w[i] * k * sm.value;
      evals[i] = sm.evaluations;
    });
    Complex acc{};
    long total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      acc += vals[i];
      total += evals[i];
    }
    return std::pair<Complex, long>{acc, total};
  };
  const auto [coarse, ec] = pass(order);
  const auto [fine, ef] = pass(2 * order);
  r.integral = fine;
  r.error = std::abs(fine - coarse);
  r.evaluations = ec + ef;
  r.value = std::abs(fine);
  return r;
}

SmearedResult smeared_commutator(const BoundaryConfig& bc, const DetectorSpec& A,
                                 const DetectorSpec& B, double t, double tp,
                                 const CommutatorOptions& opts) {
  return Estimator(bc, opts).smeared(A, B, t, tp);
}

EstimatorResult estimator_E(const BoundaryConfig& bc, const DetectorSpec& A, const DetectorSpec& B,
                            const CommutatorOptions& opts) {
  return Estimator(bc, opts)(A, B);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

EstimatorVsL estimator_vs_L(std::span<const double> Ls, double dx, std::span<const double> dts,
                            double dt_spacelike, double dt_timelike,
                            const CommutatorOptions& opts) {
  EstimatorVsL out;
  out.L.assign(Ls.begin(), Ls.end());
  out.dt.assign(dts.begin(), dts.end());
  out.dt_spacelike = dt_spacelike;
  out.dt_timelike = dt_timelike;
  CommutatorOptions o = opts;
  o.include_zero_mode = false;

  auto detector = [](double x, double t) {
    DetectorSpec d;
    d.center = {x};
    d.t_on = d.t_off = t;
    return d;
  };
  const auto A = detector(0.0, 0.0);
  for (double L : out.L) {
    const Estimator est(BoundaryConfig{{AxisSpec::periodic(L)}}, o);
    std::vector<double> curve;
    for (double t : out.dt) curve.push_back(est(A, detector(dx, t)).value);
    out.curves.push_back(std::move(curve));
    out.spacelike.push_back(est(A, detector(dx, dt_spacelike)).value);
    out.timelike.push_back(est(A, detector(dx, dt_timelike)).value);
  }
  out.fit_exponent = loglog_slope(out.L, out.spacelike);
  return out;
}

}  // namespace causal
