#include "causal_cli/runner.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "causal/commutator.hpp"
#include "causal/detector_dynamics.hpp"
#include "causal/error.hpp"
#include "causal/estimator.hpp"
#include "causal/parallel.hpp"

namespace causal::cli {

namespace {

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string engine_key(const Point& p) {
  std::ostringstream os;
  for (const auto& a : p.bc.axes)
    os << to_string(a.kind) << ':' << (a.length ? hex(*a.length) : "-") << ';';
  const auto& o = p.opts;
  os << '|' << (o.epsilon ? hex(*o.epsilon) : "-") << '|';
  for (int c : o.cutoff) os << c << ',';
  os << '|' << hex(o.open_cutoff) << '|' << o.include_zero_mode << '|' << hex(o.pv_epsilon) << '|'
     << static_cast<int>(o.summation) << '|' << o.lanczos_sigma << '|' << o.closed_form << '|'
     << o.quadrature_nodes << '|' << hex(o.quadrature_tolerance);
  return os.str();
}

SpacetimeEvent event_of(const DetectorSpec& d) { return {d.switch_mid(), d.center}; }

void fill(Row& r, Complex v, double abs) {
  r.value = v;
  r.abs = abs;
}

void evaluate_one(const Point& p, const Estimator& est, Quantity q, Row& r) {
  const auto& eng = est.engine();
  const auto ea = event_of(p.A), eb = event_of(p.B);
  switch (q) {
    case Quantity::Commutator:
    case Quantity::CommutatorOsc:
    case Quantity::CommutatorZeroMode: {
      const auto c = eng(eb, ea);
      const Complex v = q == Quantity::Commutator      ? c.value
                        : q == Quantity::CommutatorOsc ? c.parts.osc
                                                       : c.parts.zero_mode;
      fill(r, v, std::abs(v));
      r.modes_summed = c.diagnostics.modes_summed;
      r.error_estimate = c.diagnostics.error_estimate;
      return;
    }
    case Quantity::SmearedCommutator: {
      const auto c = est.smeared(p.A, p.B, p.A.switch_mid(), p.B.switch_mid());
      fill(r, c.value, std::abs(c.value));
      r.error_estimate = c.error;
      break;
    }
    case Quantity::Estimator: {
      const auto e = est(p.A, p.B);
      fill(r, e.integral, e.value);
      r.error_estimate = e.error;
      break;
    }
    case Quantity::SignalMagnitude: {
      const auto b = signal_block(est, p.A, *p.state_a, p.B, *p.state_b);
      const double m = signal_magnitude(b);
      fill(r, Complex(m, 0.0), m);
      r.error_estimate = b.error;
      break;
    }
    case Quantity::Reference: {
      // Value of the oscillator part when the zero mode alone is removed: i dt / V.
      const double v = (p.B.switch_mid() - p.A.switch_mid()) / p.bc.volume();
      fill(r, Complex(0.0, v), std::abs(v));
      return;
    }
  }
  r.modes_summed = eng(eb, ea).diagnostics.modes_summed;
}

}  // namespace

std::vector<OutputTable> evaluate(const Scenario& s) {
  const std::size_t ng = s.grid.size();
  const std::size_t total = s.series.size() * ng;

  std::vector<Point> points;
  points.reserve(total);
  for (std::size_t k = 0; k < s.series.size(); ++k)
    for (double v : s.grid) points.push_back(resolve_point(s, k, v));

  std::vector<std::shared_ptr<const Estimator>> est(total);
  std::map<std::string, std::shared_ptr<const Estimator>> cache;
  try {
    for (std::size_t i = 0; i < total; ++i) {
      auto& slot = cache[engine_key(points[i])];
      if (!slot) slot = std::make_shared<const Estimator>(points[i].bc, points[i].opts);
      est[i] = slot;
    }
  } catch (const causal::Error& e) {
    throw ComputeError(e.what());
  }

  std::vector<OutputTable> out(s.outputs.size());
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o].spec = s.outputs[o];
    out[o].rows.resize(total);
  }
  try {
    parallel_for(total, [&](std::size_t i) {
      for (std::size_t o = 0; o < out.size(); ++o) {
        Row& r = out[o].rows[i];
        r.series = s.series[i / ng].label;
        r.x = s.grid[i % ng];
        evaluate_one(points[i], *est[i], s.outputs[o].quantity, r);
      }
    });
  } catch (const causal::Error& e) {
    throw ComputeError(e.what());
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string q = "\"";
  for (char c : text) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string to_csv(const Scenario& s, const OutputTable& t) {
  std::string csv = "series," + csv_field(s.variable) + ",re,im,abs,modes_summed,error_estimate\n";
  for (const auto& r : t.rows) {
    csv += csv_field(r.series);
    for (double v : {r.x, r.value.real(), r.value.imag(), r.abs}) csv += ',' + format_number(v);
    csv += ',' + std::to_string(r.modes_summed) + ',' + format_number(r.error_estimate) + '\n';
  }
  return csv;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.parent_path() /
                   ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << content;
    f.flush();
    if (!f) throw ComputeError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ComputeError("cannot rename into " + path.string());
  }
}

std::vector<std::filesystem::path> run_scenario(const Scenario& s,
                                                const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ComputeError("cannot create " + out_dir.string() + ": " + ec.message());
  const auto tables = evaluate(s);
  std::vector<std::filesystem::path> files;
  for (const auto& t : tables) {
    files.push_back(out_dir / (s.name + "_" + t.spec.column + ".csv"));
    write_atomic(files.back(), to_csv(s, t));
  }
  files.push_back(out_dir / (s.name + ".json"));
  write_atomic(files.back(), resolved_json(s));
  return files;
}

}  // namespace causal::cli
