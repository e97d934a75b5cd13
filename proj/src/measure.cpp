#include "eberlein/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eberlein {

namespace {

bool point_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool point_close(const Point& a, const Point& b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (std::abs(a[j] - b[j]) > tol) return false;
  return true;
}

void normalize_atoms(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
    if (point_close(x.point, y.point)) return std::arg(x.weight) < std::arg(y.weight);
    return point_less(x.point, y.point);
  });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && point_close(merged.back().point, a.point))
      merged.back().weight += a.weight;
    else
      merged.push_back(a);
  }
  std::erase_if(merged, [](const Atom& a) { return a.weight == cplx(0.0); });
  atoms = std::move(merged);
}

// linear interpolation of grid samples at an arbitrary point
cplx eval_samples(const GroupSpec& g, const std::vector<cplx>& f, const Point& p) {
  if (g.kind == GroupSpec::Kind::finite) return f[g.index_of(p)];
  const double t = p[0];
  if (std::abs(t) > g.window + 1e-12)
    throw std::domain_error("atom outside window: no interpolant available");
  const double u = std::clamp((t + g.window) / g.step, 0.0, double(g.size() - 1));
  const std::size_t i0 = static_cast<std::size_t>(std::floor(u));
  const double a = u - std::floor(u);
  if (i0 + 1 >= f.size()) return f.back();
  return (1.0 - a) * f[i0] + a * f[i0 + 1];
}

}  // namespace

ConcreteMeasure ConcreteMeasure::dirac(const GroupSpec& g, Point at, cplx weight) {
  ConcreteMeasure mu;
  mu.group = g;
  mu.atoms.push_back({std::move(at), weight});
  mu.normalize();
  return mu;
}

ConcreteMeasure ConcreteMeasure::from_density(const GroupSpec& g, std::vector<cplx> density) {
  if (density.size() != g.size()) throw std::invalid_argument("density size mismatch");
  ConcreteMeasure mu;
  mu.group = g;
  mu.ac_density = std::move(density);
  return mu;
}

ConcreteMeasure ConcreteMeasure::from_atoms(const GroupSpec& g, std::vector<Atom> atoms) {
  ConcreteMeasure mu;
  mu.group = g;
  mu.atoms = std::move(atoms);
  mu.normalize();
  return mu;
}

ConcreteMeasure ConcreteMeasure::haar_measure(const GroupSpec& g) {
  return from_density(g, std::vector<cplx>(g.size(), cplx(1.0)));
}

void ConcreteMeasure::normalize() {
  normalize_atoms(atoms);
  if (sc_part) normalize_atoms(sc_part->atoms);
}

bool ConcreteMeasure::is_zero(double tol) const {
  for (const Atom& a : atoms)
    if (std::abs(a.weight) > tol) return false;
  if (ac_density)
    for (const cplx& v : *ac_density)
      if (std::abs(v) > tol) return false;
  if (sc_part)
    for (const Atom& a : sc_part->atoms)
      if (std::abs(a.weight) > tol) return false;
  return true;
}

double ConcreteMeasure::mass_bound() const {
  double m = 0.0;
  for (const Atom& a : atoms) m += std::abs(a.weight);
  if (sc_part)
    for (const Atom& a : sc_part->atoms) m += std::abs(a.weight);
  if (ac_density) {
    double s = 0.0;
    for (const cplx& v : *ac_density) s += std::abs(v);
    m += group.haar * s;
  }
  return m;
}

ConcreteMeasure add(const ConcreteMeasure& a, const ConcreteMeasure& b) {
  if (!a.group.same_grid(b.group)) throw std::invalid_argument("group mismatch");
  ConcreteMeasure out = a;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  if (b.ac_density) {
    if (!out.ac_density) out.ac_density = std::vector<cplx>(a.group.size(), cplx(0.0));
    for (std::size_t i = 0; i < out.ac_density->size(); ++i)
      (*out.ac_density)[i] += (*b.ac_density)[i];
  }
  if (b.sc_part) {
    if (!out.sc_part) out.sc_part = ScApproximant{{}, b.sc_part->level};
    out.sc_part->atoms.insert(out.sc_part->atoms.end(), b.sc_part->atoms.begin(),
                              b.sc_part->atoms.end());
    out.sc_part->level = std::max(out.sc_part->level, b.sc_part->level);
  }
  out.normalize();
  return out;
}

ConcreteMeasure scale(const ConcreteMeasure& mu, cplx c) {
  ConcreteMeasure out = mu;
  for (Atom& a : out.atoms) a.weight *= c;
  if (out.ac_density)
    for (cplx& v : *out.ac_density) v *= c;
  if (out.sc_part)
    for (Atom& a : out.sc_part->atoms) a.weight *= c;
  return out;
}

namespace {

std::vector<cplx> shift_density(const GroupSpec& g, const std::vector<cplx>& d, const Point& t) {
  std::vector<cplx> out(d.size(), cplx(0.0));
  if (g.kind == GroupSpec::Kind::finite) {
    for (std::size_t i = 0; i < d.size(); ++i)
      out[i] = d[g.index_of(g.add(g.point(i), g.negate(t)))];
    return out;
  }
  const double steps = t[0] / g.step;
  const std::int64_t s = static_cast<std::int64_t>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(s)) > 1e-9)
    throw std::invalid_argument("density translation must land on the sampling grid");
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(d.size()); ++i) {
    const std::int64_t j = i - s;
    if (j >= 0 && j < static_cast<std::int64_t>(d.size())) out[i] = d[j];
  }
  return out;
}

std::vector<cplx> reflect_density(const GroupSpec& g, const std::vector<cplx>& d, bool conj) {
  std::vector<cplx> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const cplx v = d[g.index_of(g.negate(g.point(i)))];
    out[i] = conj ? std::conj(v) : v;
  }
  return out;
}

}  // namespace

ConcreteMeasure translate(const ConcreteMeasure& mu, const Point& t) {
  ConcreteMeasure out = mu;
  for (Atom& a : out.atoms) a.point = mu.group.add(a.point, t);
  if (out.sc_part)
    for (Atom& a : out.sc_part->atoms) a.point = mu.group.add(a.point, t);
  if (out.ac_density) out.ac_density = shift_density(mu.group, *mu.ac_density, t);
  out.normalize();
  return out;
}

ConcreteMeasure tilde(const ConcreteMeasure& mu) {
  ConcreteMeasure out = mu;
  for (Atom& a : out.atoms) {
    a.point = mu.group.negate(a.point);
    a.weight = std::conj(a.weight);
  }
  if (out.sc_part)
    for (Atom& a : out.sc_part->atoms) {
      a.point = mu.group.negate(a.point);
      a.weight = std::conj(a.weight);
    }
  if (out.ac_density) out.ac_density = reflect_density(mu.group, *mu.ac_density, true);
  out.normalize();
  return out;
}

ConcreteMeasure dagger(const ConcreteMeasure& mu) {
  ConcreteMeasure out = mu;
  for (Atom& a : out.atoms) a.point = mu.group.negate(a.point);
  if (out.sc_part)
    for (Atom& a : out.sc_part->atoms) a.point = mu.group.negate(a.point);
  if (out.ac_density) out.ac_density = reflect_density(mu.group, *mu.ac_density, false);
  out.normalize();
  return out;
}

ConcreteMeasure conjugate(const ConcreteMeasure& mu) {
  ConcreteMeasure out = mu;
  for (Atom& a : out.atoms) a.weight = std::conj(a.weight);
  if (out.sc_part)
    for (Atom& a : out.sc_part->atoms) a.weight = std::conj(a.weight);
  if (out.ac_density)
    for (cplx& v : *out.ac_density) v = std::conj(v);
  return out;
}

cplx pair(const ConcreteMeasure& mu, const std::vector<cplx>& f) {
  if (f.size() != mu.group.size()) throw std::invalid_argument("sample count mismatch");
  cplx acc = 0.0;
  for (const Atom& a : mu.atoms) acc += a.weight * eval_samples(mu.group, f, a.point);
  if (mu.sc_part)
    for (const Atom& a : mu.sc_part->atoms)
      acc += a.weight * eval_samples(mu.group, f, a.point);
  if (mu.ac_density) {
    std::vector<cplx> prod(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) prod[i] = (*mu.ac_density)[i] * f[i];
    acc += haar_integrate(mu.group, prod);
  }
  return acc;
}

cplx pair(const ConcreteMeasure& mu, const K2Function& f) { return pair(mu, f.samples()); }

ConcreteMeasure total_variation(const ConcreteMeasure& mu) {
  ConcreteMeasure out = mu;
  for (Atom& a : out.atoms) a.weight = std::abs(a.weight);
  if (out.sc_part)
    for (Atom& a : out.sc_part->atoms) a.weight = std::abs(a.weight);
  if (out.ac_density)
    for (cplx& v : *out.ac_density) v = std::abs(v);
  return out;
}

JordanHahnParts jordan_hahn(const ConcreteMeasure& mu) {
  JordanHahnParts p;
  p.pos_re.group = p.neg_re.group = p.pos_im.group = p.neg_im.group = mu.group;
  auto split = [](double v, ConcreteMeasure& pos, ConcreteMeasure& neg, auto&& emit) {
    if (v > 0.0)
      emit(pos, v);
    else if (v < 0.0)
      emit(neg, -v);
  };
  for (const Atom& a : mu.atoms) {
    auto emit = [&](ConcreteMeasure& m, double w) { m.atoms.push_back({a.point, w}); };
    split(a.weight.real(), p.pos_re, p.neg_re, emit);
    split(a.weight.imag(), p.pos_im, p.neg_im, emit);
  }
  if (mu.sc_part) {
    for (const Atom& a : mu.sc_part->atoms) {
      auto emit = [&](ConcreteMeasure& m, double w) {
        if (!m.sc_part) m.sc_part = ScApproximant{{}, mu.sc_part->level};
        m.sc_part->atoms.push_back({a.point, w});
      };
      split(a.weight.real(), p.pos_re, p.neg_re, emit);
      split(a.weight.imag(), p.pos_im, p.neg_im, emit);
    }
  }
  if (mu.ac_density) {
    const std::size_t n = mu.ac_density->size();
    for (std::size_t i = 0; i < n; ++i) {
      auto emit_at = [&](ConcreteMeasure& m, double w) {
        if (!m.ac_density) m.ac_density = std::vector<cplx>(n, cplx(0.0));
        (*m.ac_density)[i] = w;
      };
      split((*mu.ac_density)[i].real(), p.pos_re, p.neg_re, emit_at);
      split((*mu.ac_density)[i].imag(), p.pos_im, p.neg_im, emit_at);
    }
  }
  p.pos_re.normalize();
  p.neg_re.normalize();
  p.pos_im.normalize();
  p.neg_im.normalize();
  return p;
}

SpectralParts lebesgue_parts(const ConcreteMeasure& mu) {
  SpectralParts parts;
  parts.pp.group = parts.ac.group = parts.sc.group = mu.group;
  parts.pp.atoms = mu.atoms;
  parts.ac.ac_density = mu.ac_density;
  parts.sc.sc_part = mu.sc_part;
  return parts;
}

double norm_K(const ConcreteMeasure& mu, double k_lo, double k_hi) {
  if (k_lo > k_hi) throw std::invalid_argument("empty interval");
  const ConcreteMeasure tv = total_variation(mu);
  const GroupSpec& g = mu.group;
  double best = 0.0;
  if (g.kind == GroupSpec::Kind::finite) {
    // K = wrapped ball of radius k_hi; translation invariance makes the
    // supremum a plain maximum over the group
    for (std::size_t c = 0; c < g.size(); ++c) {
      const Point center = g.point(c);
      double m = 0.0;
      auto dist = [&](const Point& x) {
        double r = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
          double d = std::abs(x[j] - center[j]);
          d = std::min(d, static_cast<double>(g.orders[j]) - d);
          r = std::max(r, d);
        }
        return r;
      };
      for (const Atom& a : tv.atoms)
        if (dist(a.point) <= k_hi) m += a.weight.real();
      if (tv.sc_part)
        for (const Atom& a : tv.sc_part->atoms)
          if (dist(a.point) <= k_hi) m += a.weight.real();
      if (tv.ac_density)
        for (std::size_t i = 0; i < g.size(); ++i)
          if (dist(g.point(i)) <= k_hi) m += g.haar * (*tv.ac_density)[i].real();
      best = std::max(best, m);
    }
    return best;
  }
  if (k_hi - k_lo > 2.0 * g.window) throw std::invalid_argument("K exceeds the window");
  std::vector<std::pair<double, double>> masses;  // (coordinate, mass)
  for (const Atom& a : tv.atoms) masses.push_back({a.point[0], a.weight.real()});
  if (tv.sc_part)
    for (const Atom& a : tv.sc_part->atoms) masses.push_back({a.point[0], a.weight.real()});
  if (tv.ac_density)
    for (std::size_t i = 0; i < g.size(); ++i)
      if ((*tv.ac_density)[i] != cplx(0.0))
        masses.push_back({g.coord(i), g.haar * (*tv.ac_density)[i].real()});
  std::sort(masses.begin(), masses.end());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double lo = g.coord(i) + k_lo, hi = g.coord(i) + k_hi;
    auto first = std::lower_bound(masses.begin(), masses.end(), lo - 1e-12,
                                  [](const auto& p, double v) { return p.first < v; });
    double m = 0.0;
    for (auto it = first; it != masses.end() && it->first <= hi + 1e-12; ++it) m += it->second;
    best = std::max(best, m);
  }
  return best;
}

ConcreteMeasure fourier_transform_measure(const ConcreteMeasure& mu) {
  const GroupSpec& g = mu.group;
  const GroupSpec gd = dual(g);
  if (g.kind == GroupSpec::Kind::real_line && mu.ac_density) {
    const auto& d = *mu.ac_density;
    if (std::abs(d.front()) > 0.0 || std::abs(d.back()) > 0.0)
      throw std::domain_error(
          "transform of a window-clipped density: use semimeasure::from_dual or corpus closed "
          "forms");
  }
  // point masses of every component
  std::vector<Atom> masses = mu.atoms;
  if (mu.sc_part)
    masses.insert(masses.end(), mu.sc_part->atoms.begin(), mu.sc_part->atoms.end());
  std::vector<cplx> density(gd.size(), cplx(0.0));
  for (std::size_t j = 0; j < gd.size(); ++j) {
    const Point chi = gd.point(j);
    cplx acc = 0.0;
    for (const Atom& a : masses) acc += a.weight * std::conj(character_eval(g, chi, a.point));
    density[j] = acc;
  }
  if (mu.ac_density) {
    for (std::size_t j = 0; j < gd.size(); ++j) {
      const Point chi = gd.point(j);
      cplx acc = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const cplx v = (*mu.ac_density)[i];
        if (v == cplx(0.0)) continue;
        acc += v * std::conj(character_eval(g, chi, g.point(i)));
      }
      density[j] += g.haar * acc;
    }
  }
  if (g.kind == GroupSpec::Kind::finite) {
    // everything on a finite group is pure point: emit atoms with the Haar
    // mass folded in, so the Eberlein split of a lift stays on the strong
    // side, matching the measure-side decomposition
    double scale = 0.0;
    for (const cplx& v : density) scale = std::max(scale, std::abs(v));
    const double floor = 1e-13 * scale;  // roundoff of the character sums
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < gd.size(); ++j)
      if (std::abs(density[j]) > floor) atoms.push_back({gd.point(j), gd.haar * density[j]});
    return ConcreteMeasure::from_atoms(gd, std::move(atoms));
  }
  return ConcreteMeasure::from_density(gd, std::move(density));
}

ProbeReport weak_admissibility_probe(const ConcreteMeasure& nu,
                                     const std::vector<K2Function>& battery) {
  if (battery.empty()) throw std::invalid_argument("battery must not be empty");
  ProbeReport report;
  report.tolerance = 1e-6;
  const ConcreteMeasure tv = total_variation(nu);
  const GroupSpec& gd = nu.group;

  std::vector<double> radii;
  if (gd.kind == GroupSpec::Kind::finite) {
    radii = {1.0};
  } else {
    for (double r = gd.window / 8.0; r <= gd.window * 1.0000001; r *= 2.0) radii.push_back(r);
  }

  bool all_pass = true;
  std::vector<std::pair<double, double>> worst_trace;
  for (std::size_t bi = 0; bi < battery.size(); ++bi) {
    const K2Function& f = battery[bi];
    const auto fcheck = f.fourier_on_dual_grid(true);  // inverse transform on nu's grid
    std::vector<std::pair<double, double>> trace;
    for (double r : radii) {
      double acc = 0.0;
      for (const Atom& a : tv.atoms)
        if (gd.kind == GroupSpec::Kind::finite || std::abs(a.point[0]) <= r)
          acc += a.weight.real() * std::abs(f.fourier_inverse(a.point));
      if (tv.sc_part)
        for (const Atom& a : tv.sc_part->atoms)
          if (gd.kind == GroupSpec::Kind::finite || std::abs(a.point[0]) <= r)
            acc += a.weight.real() * std::abs(f.fourier_inverse(a.point));
      if (tv.ac_density)
        for (std::size_t i = 0; i < gd.size(); ++i)
          if (gd.kind == GroupSpec::Kind::finite || std::abs(gd.coord(i)) <= r)
            acc += gd.haar * (*tv.ac_density)[i].real() * std::abs(fcheck[i]);
      trace.push_back({r, acc});
    }
    const bool ok = trace_stabilized(trace, report.tolerance);
    if (!ok) {
      all_pass = false;
      report.witnesses.push_back("battery[" + std::to_string(bi) + "]");
      worst_trace = trace;
    } else if (worst_trace.empty()) {
      worst_trace = trace;
    }
  }
  report.trace = worst_trace;
  report.verdict = all_pass ? ProbeReport::Verdict::pass : ProbeReport::Verdict::fail;
  if (!all_pass) report.growth = fit_growth(report.trace);
  report.note = "truncated integrals of |inverse transforms| against |nu|";
  return report;
}

std::vector<K2Function> standard_battery(const GroupSpec& primal) {
  std::vector<K2Function> battery;
  if (primal.kind == GroupSpec::Kind::finite) {
    battery.push_back(K2Function::basis(primal, primal.index_of(primal.zero())));
    battery.push_back(K2Function::from_pair(CompactFunction::box(primal, 0.0, 1.0, 1.0),
                                            CompactFunction::box(primal, 0.0, 1.0, 1.0)));
    return battery;
  }
  // smooth pairs only: their transforms decay fast enough for the 1e-6
  // stabilization rule; slowly decaying members (tents) would need tail
  // extrapolation instead
  const double r = primal.window / 8.0;
  const auto bump = CompactFunction::bump(primal, 0.0, r, 1.0);
  const auto off = CompactFunction::bump(primal, r / 2.0, r, 1.0);
  const auto wide = CompactFunction::bump(primal, 0.0, 4.0 * r / 3.0, 1.0);
  battery.push_back(K2Function::from_pair(bump, bump));
  battery.push_back(K2Function::from_pair(off, bump));
  battery.push_back(K2Function::from_pair(wide, bump));
  return battery;
}

}  // namespace eberlein
