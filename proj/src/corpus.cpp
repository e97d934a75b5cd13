#include "eberlein/corpus.hpp"

#include <cmath>
#include <stdexcept>

namespace eberlein {

SemiMeasure heaviside(double window, double step) {
  const GroupSpec primal = GroupSpec::real_line(window, step);
  const GroupSpec gd = dual(primal);
  std::vector<cplx> density(gd.size(), cplx(0.0));
  for (std::size_t j = 0; j < gd.size(); ++j) {
    const double xi = gd.coord(j);
    if (xi > 0.0) density[j] = 1.0;
    if (std::abs(xi) < gd.step / 2.0) density[j] = 0.5;  // jump node carries half mass
  }
  return SemiMeasure::from_dual(primal, ConcreteMeasure::from_density(gd, std::move(density)));
}

SemiMeasure delta_t(double t, double window, double step) {
  const GroupSpec primal = GroupSpec::real_line(window, step);
  const GroupSpec gd = dual(primal);
  std::vector<cplx> density(gd.size());
  for (std::size_t j = 0; j < gd.size(); ++j)
    density[j] = std::polar(1.0, -kTwoPi * t * gd.coord(j));
  return SemiMeasure::lift_with_dual(ConcreteMeasure::dirac(primal, Point{t}),
                                     ConcreteMeasure::from_density(gd, std::move(density)));
}

SemiMeasure dirac_comb(double spacing, double window, double step) {
  if (spacing <= 0.0) throw std::invalid_argument("spacing must be positive");
  const GroupSpec primal = GroupSpec::real_line(window, step);
  const GroupSpec gd = dual(primal);
  std::vector<Atom> primal_atoms;
  for (std::int64_t n = static_cast<std::int64_t>(-window / spacing);
       n <= static_cast<std::int64_t>(window / spacing); ++n)
    if (std::abs(n * spacing) <= window) primal_atoms.push_back({Point{n * spacing}, 1.0});
  std::vector<Atom> dual_atoms;
  const double dual_spacing = 1.0 / spacing;
  for (std::int64_t m = static_cast<std::int64_t>(-gd.window / dual_spacing);
       m <= static_cast<std::int64_t>(gd.window / dual_spacing); ++m)
    if (std::abs(m * dual_spacing) <= gd.window)
      dual_atoms.push_back({Point{m * dual_spacing}, 1.0 / spacing});
  return SemiMeasure::lift_with_dual(ConcreteMeasure::from_atoms(primal, std::move(primal_atoms)),
                                     ConcreteMeasure::from_atoms(gd, std::move(dual_atoms)));
}

ConcreteMeasure weighted_comb(const GroupSpec& g, double alpha, int n_atoms) {
  if (g.kind != GroupSpec::Kind::real_line) throw std::invalid_argument("real line only");
  if (g.window < n_atoms + 1) throw std::domain_error("window too small");
  std::vector<Atom> atoms;
  atoms.reserve(2 * n_atoms + 1);
  for (int n = -n_atoms; n <= n_atoms; ++n)
    atoms.push_back({Point{static_cast<double>(n)}, std::polar(1.0, kTwoPi * alpha * n)});
  return ConcreteMeasure::from_atoms(g, std::move(atoms));
}

SemiMeasure weighted_comb_lift(double alpha, int n_atoms, double window, double step) {
  const GroupSpec primal = GroupSpec::real_line(window, step);
  const GroupSpec gd = dual(primal);
  const double count = 2.0 * n_atoms + 1.0;
  std::vector<cplx> density(gd.size());
  for (std::size_t j = 0; j < gd.size(); ++j) {
    const double x = alpha - gd.coord(j);
    const double s = std::sin(kPi * x);
    density[j] = std::abs(s) < 1e-14 ? count : std::sin(kPi * count * x) / s;
  }
  return SemiMeasure::lift_with_dual(weighted_comb(primal, alpha, n_atoms),
                                     ConcreteMeasure::from_density(gd, std::move(density)));
}

ConcreteMeasure sc_approximant_thue_morse(int level, const GroupSpec& g) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  if (g.kind == GroupSpec::Kind::real_line && g.window < 1.0)
    throw std::domain_error("window too small");
  const std::int64_t grid = std::int64_t(1) << (level + 1);
  ScApproximant sc;
  sc.level = level;
  for (std::int64_t j = 0; j < grid; ++j) {
    const double xi = static_cast<double>(j) / static_cast<double>(grid);
    double w = 1.0;
    for (int k = 0; k < level; ++k) w *= 1.0 - std::cos(kTwoPi * std::ldexp(xi, k));
    if (w == 0.0) continue;
    sc.atoms.push_back({Point{xi}, w / static_cast<double>(grid)});
  }
  ConcreteMeasure mu;
  mu.group = g;
  mu.sc_part = std::move(sc);
  mu.normalize();
  return mu;
}

SemiMeasure thue_morse_sc(int level, double window, double step) {
  const GroupSpec primal = GroupSpec::real_line(window, step);
  return SemiMeasure::from_dual(primal, sc_approximant_thue_morse(level, dual(primal)));
}

SemiMeasure finite_haar(std::int64_t n) {
  const GroupSpec g = GroupSpec::finite({n});
  return SemiMeasure::lift_with_dual(
      ConcreteMeasure::haar_measure(g),
      ConcreteMeasure::dirac(dual(g), Point{0.0}, 1.0));
}

SemiMeasure finite_comb(std::int64_t n, std::int64_t m) {
  if (n % m != 0) throw std::invalid_argument("index must divide the order");
  const GroupSpec g = GroupSpec::finite({n});
  std::vector<Atom> atoms;
  for (std::int64_t t = 0; t < n; t += m) atoms.push_back({Point{static_cast<double>(t)}, 1.0});
  std::vector<Atom> dual_atoms;  // annihilator of mZ_n = (n/m)Z_n, Poisson weight 1/m
  for (std::int64_t k = 0; k < n; k += n / m)
    dual_atoms.push_back({Point{static_cast<double>(k)}, 1.0 / static_cast<double>(m)});
  return SemiMeasure::lift_with_dual(ConcreteMeasure::from_atoms(g, std::move(atoms)),
                                     ConcreteMeasure::from_atoms(dual(g), std::move(dual_atoms)));
}

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;
    {
      CorpusEntry e;
      e.name = "heaviside";
      e.description = "half-line evaluation f -> int_0^inf finv; not a measure";
      e.build = [] { return heaviside(); };
      e.expected.positive_definite = true;
      e.expected.is_measure = false;
      e.expected.strong_zero = true;
      e.expected.null_sc_zero = true;
      v.push_back(std::move(e));
    }
    {
      CorpusEntry e;
      e.name = "delta0";
      e.description = "point mass at 0; dual side is Lebesgue";
      e.build = [] { return delta_t(0.0); };
      e.expected.positive_definite = true;
      e.expected.is_measure = true;
      e.expected.strong_zero = true;
      e.expected.null_sc_zero = true;
      v.push_back(std::move(e));
    }
    {
      CorpusEntry e;
      e.name = "delta_quarter";
      e.description = "point mass at 1/4; not positive definite";
      e.build = [] { return delta_t(0.25); };
      e.expected.positive_definite = false;
      e.expected.is_measure = true;
      e.expected.strong_zero = true;
      e.expected.null_sc_zero = true;
      v.push_back(std::move(e));
    }
    {
      CorpusEntry e;
      e.name = "dirac_comb";
      e.description = "unit comb; dual comb by Poisson summation";
      e.build = [] { return dirac_comb(1.0); };
      e.expected.positive_definite = true;
      e.expected.is_measure = true;
      // dual comb of spacing 1/a fills the dual window [-1/(2h), 1/(2h)]
      for (std::int64_t mfreq = -64; mfreq <= 64; ++mfreq)
        e.expected.fb_atoms.push_back({Point{static_cast<double>(mfreq)}, 1.0});
      e.expected.null_ac_zero = true;
      e.expected.null_sc_zero = true;
      v.push_back(std::move(e));
    }
    {
      CorpusEntry e;
      e.name = "weighted_comb";
      e.description = "truncated modulated comb; Dirichlet dual density";
      e.build = [] { return weighted_comb_lift(0.6180339887498949, 100); };
      e.expected.positive_definite = false;
      e.expected.is_measure = true;
      e.expected.strong_zero = true;
      e.expected.null_sc_zero = true;
      v.push_back(std::move(e));
    }
    {
      CorpusEntry e;
      e.name = "thue_morse_sc";
      e.description = "Riesz product approximant mounted as a tagged sc dual";
      e.build = [] { return thue_morse_sc(); };
      e.expected.positive_definite = true;
      e.expected.is_measure = true;
      e.expected.strong_zero = true;
      e.expected.null_ac_zero = true;
      v.push_back(std::move(e));
    }
    {
      CorpusEntry e;
      e.name = "finite_haar_z8";
      e.description = "Haar measure of Z_8; dual atom at 0";
      e.build = [] { return finite_haar(8); };
      e.expected.positive_definite = true;
      e.expected.is_measure = true;
      e.expected.fb_atoms.push_back({Point{0.0}, 1.0});
      e.expected.null_ac_zero = true;
      e.expected.null_sc_zero = true;
      v.push_back(std::move(e));
    }
    {
      CorpusEntry e;
      e.name = "finite_comb_z12";
      e.description = "subgroup comb 3Z_12; dual comb on the annihilator";
      e.build = [] { return finite_comb(12, 3); };
      e.expected.positive_definite = true;
      e.expected.is_measure = true;
      e.expected.fb_atoms.push_back({Point{0.0}, 1.0 / 3.0});
      e.expected.fb_atoms.push_back({Point{4.0}, 1.0 / 3.0});
      e.expected.fb_atoms.push_back({Point{8.0}, 1.0 / 3.0});
      e.expected.null_ac_zero = true;
      e.expected.null_sc_zero = true;
      v.push_back(std::move(e));
    }
    return v;
  }();
  return entries;
}

SemiMeasure corpus_build(const std::string& name) {
  for (const CorpusEntry& e : corpus_entries())
    if (e.name == name) return e.build();
  throw std::invalid_argument("unknown corpus entry: " + name);
}

}  // namespace eberlein
