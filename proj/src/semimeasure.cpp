#include "eberlein/semimeasure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace eberlein {

namespace {

double edge_weight(const GroupSpec& g, std::size_t j) {
  if (g.kind != GroupSpec::Kind::real_line) return 1.0;
  return (j == 0 || j + 1 == g.size()) ? 0.5 : 1.0;
}

}  // namespace

SemiMeasure SemiMeasure::from_dual(GroupSpec primal, ConcreteMeasure nu) {
  if (!nu.group.same_grid(dual(primal)))
    throw std::invalid_argument("dual measure lives on the wrong grid");
  const auto report = weak_admissibility_probe(nu, standard_battery(primal));
  if (!report.passed()) {
    std::string msg = "not weakly admissible";
    if (!report.witnesses.empty()) msg += ": witness " + report.witnesses.front();
    throw std::domain_error(msg);
  }
  SemiMeasure sm;
  sm.primal_ = std::move(primal);
  sm.dual_ = std::move(nu);
  return sm;
}

SemiMeasure SemiMeasure::lift(const ConcreteMeasure& mu) {
  SemiMeasure sm = from_dual(mu.group, fourier_transform_measure(mu));
  sm.original_ = mu;
  if (mu.group.kind == GroupSpec::Kind::finite && mu.group.size() <= 512) {
    // restriction invariant: the lift evaluates like the measure it came from
    for (std::size_t i = 0; i < mu.group.size(); ++i) {
      const auto f = K2Function::basis(mu.group, i);
      if (std::abs(sm.evaluate(f) - pair(mu, f)) > 1e-9 * (1.0 + mu.mass_bound()))
        throw std::logic_error("lifted semi-measure does not restrict to the measure");
    }
  }
  return sm;
}

SemiMeasure SemiMeasure::lift_with_dual(ConcreteMeasure mu, ConcreteMeasure nu) {
  SemiMeasure sm = from_dual(mu.group, std::move(nu));
  sm.original_ = std::move(mu);
  return sm;
}

SemiMeasure SemiMeasure::with_dual(ConcreteMeasure nu) const {
  SemiMeasure sm;
  sm.primal_ = primal_;
  sm.dual_ = std::move(nu);
  sm.dual_.normalize();
  return sm;
}

std::pair<cplx, EvaluationTrace> SemiMeasure::evaluate_with_trace(const K2Function& f) const {
  if (!f.group().same_grid(primal_)) throw std::invalid_argument("group mismatch");
  const GroupSpec& gd = dual_.group;
  EvaluationTrace trace;

  if (gd.kind == GroupSpec::Kind::finite) {
    cplx value = 0.0;
    for (const Atom& a : dual_.atoms) value += a.weight * f.fourier_inverse(a.point);
    if (dual_.sc_part)
      for (const Atom& a : dual_.sc_part->atoms) value += a.weight * f.fourier_inverse(a.point);
    if (dual_.ac_density) {
      const auto fcheck = f.fourier_on_dual_grid(true);
      std::vector<cplx> prod(fcheck.size());
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = (*dual_.ac_density)[i] * fcheck[i];
      value += haar_integrate(gd, prod);
    }
    trace.partials.push_back({1.0, value});
    return {value, trace};
  }

  std::vector<double> radii;
  for (double r = gd.window / 8.0; r < gd.window * 0.9999; r *= 2.0) radii.push_back(r);
  radii.push_back(gd.window);

  std::optional<std::vector<cplx>> fcheck;
  if (dual_.ac_density) fcheck = f.fourier_on_dual_grid(true);
  cplx value = 0.0;
  std::vector<std::pair<double, double>> abs_trace;  // truncations of |finv| d|nu|
  for (double r : radii) {
    cplx acc = 0.0;
    double abs_acc = 0.0;
    auto take = [&](const cplx& w, const cplx& fv) {
      acc += w * fv;
      abs_acc += std::abs(w) * std::abs(fv);
    };
    for (const Atom& a : dual_.atoms)
      if (std::abs(a.point[0]) <= r) take(a.weight, f.fourier_inverse(a.point));
    if (dual_.sc_part)
      for (const Atom& a : dual_.sc_part->atoms)
        if (std::abs(a.point[0]) <= r) take(a.weight, f.fourier_inverse(a.point));
    if (fcheck) {
      for (std::size_t j = 0; j < fcheck->size(); ++j)
        if (std::abs(gd.coord(j)) <= r)
          take(gd.haar * edge_weight(gd, j) * (*dual_.ac_density)[j], (*fcheck)[j]);
    }
    value = acc;
    trace.partials.push_back({r, value});
    abs_trace.push_back({r, abs_acc});
  }

  // divergence guard, not an accuracy promise: the monotone truncations of
  // the absolute integral are exactly the integrability the representation
  // requires. K2 transforms decay at least like 1/xi^2, whose geometric tail
  // sits well under the threshold; genuine divergences are at least
  // logarithmic and keep full-size increments.
  trace.converged = trace_stabilized(abs_trace, 1e-1);
  return {value, trace};
}

cplx SemiMeasure::evaluate(const K2Function& f) const {
  auto [value, trace] = evaluate_with_trace(f);
  if (!trace.converged) throw std::runtime_error("evaluation did not converge");
  return value;
}

std::vector<cplx> SemiMeasure::convolve(const K2Function& f,
                                        const std::vector<double>& t_grid) const {
  std::vector<Point> pts;
  pts.reserve(t_grid.size());
  for (double t : t_grid) pts.push_back(Point{t});
  return convolve(f, pts);
}

std::vector<cplx> SemiMeasure::convolve(const K2Function& f,
                                        const std::vector<Point>& t_grid) const {
  if (!f.group().same_grid(primal_)) throw std::invalid_argument("group mismatch");
  std::vector<cplx> out(t_grid.size(), cplx(0.0));

  if (original_) {
    // primal route: (theta*f)(t) = <mu, T_t f^dagger> = (mu*f)(t)
    const ConcreteMeasure& mu = *original_;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const Point& t = t_grid[k];
      cplx acc = 0.0;
      auto atom_term = [&](const Atom& a) {
        const Point d = primal_.kind == GroupSpec::Kind::finite
                            ? primal_.add(t, primal_.negate(a.point))
                            : Point{t[0] - a.point[0]};
        if (primal_.kind == GroupSpec::Kind::real_line && std::abs(d[0]) > primal_.window)
          return;
        acc += a.weight * f.value_at(d);
      };
      for (const Atom& a : mu.atoms) atom_term(a);
      if (mu.sc_part)
        for (const Atom& a : mu.sc_part->atoms) atom_term(a);
      if (mu.ac_density) {
        cplx dacc = 0.0;
        for (std::size_t i = 0; i < mu.ac_density->size(); ++i) {
          const cplx rho = (*mu.ac_density)[i];
          if (rho == cplx(0.0)) continue;
          const Point d = primal_.kind == GroupSpec::Kind::finite
                              ? primal_.add(t, primal_.negate(primal_.point(i)))
                              : Point{t[0] - primal_.coord(i)};
          if (primal_.kind == GroupSpec::Kind::real_line && std::abs(d[0]) > primal_.window)
            continue;
          dacc += rho * edge_weight(primal_, i) * f.value_at(d);
        }
        acc += primal_.haar * dacc;
      }
      out[k] = acc;
    }
    return out;
  }

  // dual route: modulated integral against nu
  const GroupSpec& gd = dual_.group;
  std::vector<std::pair<Point, cplx>> point_masses;  // (chi, weight * fhat(chi))
  for (const Atom& a : dual_.atoms) point_masses.push_back({a.point, a.weight * f.fourier(a.point)});
  if (dual_.sc_part)
    for (const Atom& a : dual_.sc_part->atoms)
      point_masses.push_back({a.point, a.weight * f.fourier(a.point)});

  std::optional<std::vector<cplx>> weighted_density;
  if (dual_.ac_density) {
    const auto fhat = f.fourier_on_dual_grid(false);
    weighted_density = std::vector<cplx>(fhat.size());
    for (std::size_t j = 0; j < fhat.size(); ++j)
      (*weighted_density)[j] =
          gd.haar * edge_weight(gd, j) * (*dual_.ac_density)[j] * fhat[j];
  }

  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const Point& t = t_grid[k];
    cplx acc = 0.0;
    for (const auto& [chi, w] : point_masses) acc += w * character_eval(gd, chi, t);
    if (weighted_density) {
      if (gd.kind == GroupSpec::Kind::real_line) {
        const double tt = t[0];
        cplx phase = std::polar(1.0, -kTwoPi * gd.window * tt);  // xi = -L'
        const cplx rot = std::polar(1.0, kTwoPi * gd.step * tt);
        cplx dacc = 0.0;
        for (std::size_t j = 0; j < weighted_density->size(); ++j) {
          dacc += (*weighted_density)[j] * phase;
          phase *= rot;
        }
        acc += dacc;
      } else {
        for (std::size_t j = 0; j < weighted_density->size(); ++j)
          acc += (*weighted_density)[j] * character_eval(gd, gd.point(j), t);
      }
    }
    out[k] = acc;
  }
  return out;
}

std::vector<cplx> SemiMeasure::convolve_on_grid(const K2Function& f) const {
  std::vector<Point> pts;
  pts.reserve(primal_.size());
  for (std::size_t i = 0; i < primal_.size(); ++i) pts.push_back(primal_.point(i));
  return convolve(f, pts);
}

namespace {

ConcreteMeasure modulate(const ConcreteMeasure& nu, const GroupSpec& gd, const Point& t) {
  ConcreteMeasure out = nu;
  for (Atom& a : out.atoms) a.weight *= std::conj(character_eval(gd, a.point, t));
  if (out.sc_part)
    for (Atom& a : out.sc_part->atoms) a.weight *= std::conj(character_eval(gd, a.point, t));
  if (out.ac_density)
    for (std::size_t j = 0; j < out.ac_density->size(); ++j)
      (*out.ac_density)[j] *= std::conj(character_eval(gd, gd.point(j), t));
  return out;
}

}  // namespace

SemiMeasure SemiMeasure::translate(const Point& t) const {
  SemiMeasure sm = with_dual(modulate(dual_, dual_.group, t));
  if (original_) sm.original_ = eberlein::translate(*original_, t);
  return sm;
}

SemiMeasure SemiMeasure::translate(double t) const { return translate(Point{t}); }

SemiMeasure SemiMeasure::tilde() const {
  SemiMeasure sm = with_dual(conjugate(dual_));
  if (original_) sm.original_ = eberlein::tilde(*original_);
  return sm;
}

SemiMeasure SemiMeasure::dagger() const {
  SemiMeasure sm = with_dual(eberlein::dagger(dual_));
  if (original_) sm.original_ = eberlein::dagger(*original_);
  return sm;
}

double SemiMeasure::positivity_tolerance() const {
  double scale = 1.0;
  for (const Atom& a : dual_.atoms) scale = std::max(scale, std::abs(a.weight));
  if (dual_.sc_part)
    for (const Atom& a : dual_.sc_part->atoms) scale = std::max(scale, std::abs(a.weight));
  if (dual_.ac_density)
    for (const cplx& v : *dual_.ac_density) scale = std::max(scale, std::abs(v));
  const bool exact = primal_.kind == GroupSpec::Kind::finite;
  return (exact ? 1e-12 : 1e-6) * scale;
}

ProbeReport SemiMeasure::is_positive_definite(std::size_t battery_size,
                                              std::uint64_t seed) const {
  ProbeReport report;
  const double tol = positivity_tolerance();
  report.tolerance = tol;

  double min_weight = 0.0;
  double max_imag = 0.0;
  auto scan = [&](const Atom& a) {
    min_weight = std::min(min_weight, a.weight.real());
    max_imag = std::max(max_imag, std::abs(a.weight.imag()));
  };
  for (const Atom& a : dual_.atoms) scan(a);
  if (dual_.sc_part)
    for (const Atom& a : dual_.sc_part->atoms) scan(a);
  if (dual_.ac_density)
    for (const cplx& v : *dual_.ac_density) {
      min_weight = std::min(min_weight, v.real());
      max_imag = std::max(max_imag, std::abs(v.imag()));
    }
  const bool dual_positive = min_weight >= -tol && max_imag <= tol;

  // direct route through the evaluation path: theta(f * ~f) over a battery
  double direct_min = 0.0;
  std::size_t direct_witness = battery_size;
  const auto battery = random_battery(primal_, battery_size, seed);
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const auto g = eberlein::convolve(battery[i], battery[i].tilde());
    const cplx v = evaluate(g);
    if (v.real() < direct_min) {
      direct_min = v.real();
      direct_witness = i;
    }
  }
  const double direct_tol = std::max(tol, (primal_.kind == GroupSpec::Kind::finite ? 1e-9 : 1e-6) *
                                              (1.0 + dual_.mass_bound()));
  const bool direct_positive = direct_min >= -direct_tol;

  report.trace.push_back({static_cast<double>(battery.size()), direct_min});
  report.verdict = dual_positive ? ProbeReport::Verdict::pass : ProbeReport::Verdict::fail;
  if (!dual_positive) report.witnesses.push_back("negative dual weight");
  if (!direct_positive)
    report.witnesses.push_back("theta(f*~f) < 0 at battery[" + std::to_string(direct_witness) +
                               "]");
  if (dual_positive != direct_positive)
    report.note = "dual-side and direct checks disagree";
  else
    report.note = dual_positive ? "dual measure positive; direct battery check agrees"
                                : "negative dual weight; direct battery check agrees";
  return report;
}

std::array<SemiMeasure, 4> SemiMeasure::split_positive_definite() const {
  const JordanHahnParts parts = jordan_hahn(dual_);
  return {with_dual(parts.pos_re), with_dual(parts.neg_re), with_dual(parts.pos_im),
          with_dual(parts.neg_im)};
}

SemiMeasure add(const SemiMeasure& a, const SemiMeasure& b) {
  SemiMeasure sm = a.with_dual(add(a.dual_measure(), b.dual_measure()));
  return sm;
}

SemiMeasure scale(const SemiMeasure& sm, cplx c) {
  return sm.with_dual(scale(sm.dual_measure(), c));
}

std::vector<K2Function> random_battery(const GroupSpec& g, std::size_t count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<K2Function> battery;
  battery.reserve(count);

  if (g.kind == GroupSpec::Kind::finite) {
    std::uniform_int_distribution<std::size_t> node(0, g.size() - 1);
    for (std::size_t i = 0; i < count; ++i) {
      const int parts = 1 + static_cast<int>(rng() % 4);
      K2Function f = K2Function::basis(g, node(rng)).scaled(cplx(unit(rng) * 2 - 1, unit(rng) * 2 - 1));
      for (int p = 1; p < parts; ++p)
        f = f.plus(
            K2Function::basis(g, node(rng)).scaled(cplx(unit(rng) * 2 - 1, unit(rng) * 2 - 1)));
      battery.push_back(std::move(f));
    }
    return battery;
  }

  // supports stay inside |t| <= window/8 so f * ~f always fits the window
  const double span = g.window / 16.0;
  for (std::size_t i = 0; i < count; ++i) {
    const int parts = 1 + static_cast<int>(rng() % 4);
    std::optional<K2Function> f;
    for (int p = 0; p < parts; ++p) {
      const double c1 = (unit(rng) * 2 - 1) * span;
      const double c2 = (unit(rng) * 2 - 1) * span;
      const double r1 = g.window / 64.0 + unit(rng) * g.window / 48.0;
      const double r2 = g.window / 64.0 + unit(rng) * g.window / 48.0;
      const bool smooth = unit(rng) < 0.5;
      const auto a = smooth ? CompactFunction::bump(g, c1, r1, 1.0)
                            : CompactFunction::box(g, c1, r1, 1.0);
      const auto b = smooth ? CompactFunction::bump(g, c2, r2, 1.0)
                            : CompactFunction::box(g, c2, r2, 1.0);
      auto term = K2Function::from_pair(a, b).scaled(cplx(unit(rng) * 2 - 1, unit(rng) * 2 - 1));
      f = f ? f->plus(term) : term;
    }
    battery.push_back(std::move(*f));
  }
  return battery;
}

}  // namespace eberlein
