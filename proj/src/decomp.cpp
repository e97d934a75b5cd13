#include "eberlein/decomp.hpp"

#include <cmath>
#include <stdexcept>

namespace eberlein {

namespace {

// trapezoid integral of grid samples over [-r, r]
cplx window_integral(const GroupSpec& g, const std::vector<cplx>& f, double r) {
  const std::int64_t M = g.radius_steps();
  const std::int64_t k = std::min<std::int64_t>(M, static_cast<std::int64_t>(std::floor(r / g.step)));
  cplx acc = 0.0;
  for (std::int64_t j = -k; j <= k; ++j) acc += f[j + M];
  acc -= 0.5 * (f[-k + M] + f[k + M]);
  return g.haar * acc;
}

}  // namespace

std::pair<cplx, MeanTrace> van_hove_mean(const GroupSpec& g, const std::vector<cplx>& f,
                                         const VanHoveSequence& seq, int n_max) {
  if (f.size() != g.size()) throw std::invalid_argument("sample count mismatch");
  MeanTrace trace;
  if (g.kind == GroupSpec::Kind::finite) {
    cplx mean = haar_integrate(g, f) / (g.haar * static_cast<double>(g.size()));
    for (int n = 0; n < std::max(1, std::min<int>(n_max, 3)); ++n)
      trace.values.push_back({static_cast<double>(n + 1), mean});
    return {mean, trace};
  }
  const int count = std::min<int>(n_max, static_cast<int>(seq.radii.size()));
  if (count <= 0) throw std::invalid_argument("empty van Hove sequence");
  if (seq.radii[count - 1] > g.window + 1e-12)
    throw std::domain_error("window exhausted before n_max");
  for (int n = 0; n < count; ++n) {
    const double r = seq.radii[n];
    trace.values.push_back({r, window_integral(g, f, r) / (2.0 * r)});
  }
  const cplx mean = trace.values.back().second;
  if (trace.values.size() >= 3) {
    const auto& v = trace.values;
    const std::size_t n = v.size();
    const double d1 = std::abs(v[n - 1].second - v[n - 2].second);
    const double d2 = std::abs(v[n - 2].second - v[n - 3].second);
    double scale = 0.0;
    for (const auto& [r, m] : v) scale = std::max(scale, std::abs(m));
    if (scale > 0.0 && d1 > 0.5 * std::max(d2, 1e-14) && d1 > 1e-3 * scale)
      trace.converged = false;
  }
  return {mean, trace};
}

cplx fb_coefficient(const SemiMeasure& sm, const Point& chi, double freq_tol) {
  const GroupSpec& gd = sm.dual_measure().group;
  cplx acc = 0.0;
  for (const Atom& a : sm.dual_measure().atoms) {
    bool close = a.point.size() == chi.size();
    for (std::size_t j = 0; close && j < chi.size(); ++j) {
      double d = std::abs(a.point[j] - chi[j]);
      if (gd.kind == GroupSpec::Kind::finite)
        d = std::min(d, static_cast<double>(gd.orders[j]) - d);
      close = d <= freq_tol;
    }
    if (close) acc += a.weight;
  }
  return acc;
}

FBSeries fb_series(const SemiMeasure& sm) {
  FBSeries series;
  const ConcreteMeasure& nu = sm.dual_measure();
  for (const Atom& a : nu.atoms) series.entries.push_back({a.point, a.weight});
  ConcreteMeasure continuous = nu;
  continuous.atoms.clear();
  series.residual_bound = continuous.mass_bound();
  return series;
}

FBAverage fb_via_averaging(const SemiMeasure& sm, const K2Function& f, const Point& chi,
                           const VanHoveSequence& seq, int n_max) {
  const GroupSpec& g = sm.group();
  FBAverage out;
  out.lookup_target = fb_coefficient(sm, chi) * f.fourier(chi);

  if (g.kind == GroupSpec::Kind::finite) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < g.size(); ++i) pts.push_back(g.point(i));
    const auto conv = sm.convolve(f, pts);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      acc += std::conj(character_eval(g, chi, pts[i])) * conv[i];
    out.averaged = acc / static_cast<double>(g.size());
    out.trace.values.push_back({1.0, out.averaged});
    out.gap = std::abs(out.averaged - out.lookup_target);
    return out;
  }

  const int count = std::min<int>(n_max, static_cast<int>(seq.radii.size()));
  if (count <= 0) throw std::invalid_argument("empty van Hove sequence");
  const double r_max = seq.radii[count - 1];
  if (r_max > g.window + 1e-12) throw std::domain_error("window exhausted before n_max");

  // sample theta*f on the grid nodes of the largest averaging window
  const std::int64_t k_max = static_cast<std::int64_t>(std::floor(r_max / g.step));
  std::vector<double> ts;
  ts.reserve(2 * k_max + 1);
  for (std::int64_t j = -k_max; j <= k_max; ++j) ts.push_back(j * g.step);
  const auto conv = sm.convolve(f, ts);

  for (int n = 0; n < count; ++n) {
    const double r = seq.radii[n];
    const std::int64_t k = static_cast<std::int64_t>(std::floor(r / g.step));
    cplx acc = 0.0;
    for (std::int64_t j = -k; j <= k; ++j) {
      const double t = j * g.step;
      acc += std::conj(character_eval(g, chi, Point{t})) * conv[j + k_max];
    }
    acc -= 0.5 * (std::conj(character_eval(g, chi, Point{-k * g.step})) * conv[-k + k_max] +
                  std::conj(character_eval(g, chi, Point{k * g.step})) * conv[k + k_max]);
    out.trace.values.push_back({r, g.step * acc / (2.0 * r)});
  }
  out.averaged = out.trace.values.back().second;
  out.gap = std::abs(out.averaged - out.lookup_target);
  if (out.trace.values.size() >= 3) {
    const auto& v = out.trace.values;
    const std::size_t n = v.size();
    const double d_last = std::abs(v[n - 1].second - v[n - 2].second);
    const double d_first = std::abs(v[1].second - v[0].second);
    double scale = 0.0;
    for (const auto& [r, m] : v) scale = std::max(scale, std::abs(m));
    out.trace.converged = d_last <= 2.0 * d_first + 1e-12 * scale;
  }
  return out;
}

EberleinParts generalized_eberlein(const SemiMeasure& sm) {
  const SpectralParts parts = lebesgue_parts(sm.dual_measure());
  EberleinParts out{sm.with_dual(parts.pp), sm.with_dual(add(parts.ac, parts.sc)),
                    sm.with_dual(parts.ac), sm.with_dual(parts.sc)};
  return out;
}

EberleinParts eberlein(const SemiMeasure& sm) { return generalized_eberlein(sm); }

ProbeReport wap0_test(const SemiMeasure& sm) {
  ProbeReport report;
  report.tolerance = 0.0;
  const auto& atoms = sm.dual_measure().atoms;
  report.verdict = atoms.empty() ? ProbeReport::Verdict::pass : ProbeReport::Verdict::fail;
  for (const Atom& a : atoms) {
    std::string w = "atom at (";
    for (std::size_t j = 0; j < a.point.size(); ++j)
      w += (j ? "," : "") + std::to_string(a.point[j]);
    w += ")";
    report.witnesses.push_back(w);
  }
  report.note = atoms.empty() ? "no FB atoms: every Fourier-Bohr coefficient vanishes"
                              : "nonvanishing Fourier-Bohr coefficients found";
  return report;
}

std::vector<cplx> sap_projection(const GroupSpec& g, const std::vector<cplx>& f,
                                 const std::vector<Point>& freqs, const VanHoveSequence& seq,
                                 int n_max) {
  if (f.size() != g.size()) throw std::invalid_argument("sample count mismatch");
  std::vector<cplx> out(g.size(), cplx(0.0));
  for (const Point& chi : freqs) {
    std::vector<cplx> mod(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      mod[i] = std::conj(character_eval(g, chi, g.point(i))) * f[i];
    const auto [a, trace] = van_hove_mean(g, mod, seq, n_max);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += a * character_eval(g, chi, g.point(i));
  }
  return out;
}

}  // namespace eberlein
