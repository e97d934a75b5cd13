#include "doctest.h"

#include <cmath>
#include <random>

#include "eberlein/corpus.hpp"
#include "eberlein/decomp.hpp"

using namespace eberlein;

TEST_CASE("van Hove means") {
  const auto g = GroupSpec::real_line(64.0, 1.0 / 32.0);
  const auto seq = VanHoveSequence::doubling(4.0, 5, 64.0);

  SUBCASE("constants average to themselves at every level") {
    const std::vector<cplx> f(g.size(), cplx(2.5, -1.0));
    const auto [mean, trace] = van_hove_mean(g, f, seq, 5);
    for (const auto& [r, m] : trace.values) CHECK(std::abs(m - cplx(2.5, -1.0)) < 1e-12);
  }
  SUBCASE("plane waves decay like the closed-form integral") {
    const double alpha = 0.35;
    std::vector<cplx> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      f[i] = std::polar(1.0, kTwoPi * alpha * g.coord(i));
    const auto [mean, trace] = van_hove_mean(g, f, seq, 5);
    for (const auto& [r, m] : trace.values) {
      // oracle: (1/2r) int_{-r}^{r} e^{2 pi i a t} dt = sin(2 pi a r) / (2 pi a r)
      const double expect = std::sin(kTwoPi * alpha * r) / (kTwoPi * alpha * r);
      CHECK(std::abs(m - cplx(expect)) < 1e-3);
      CHECK(std::abs(m) <= 1.0 / (kTwoPi * alpha * r) + 1e-3);
    }
  }
  SUBCASE("trivial character on a finite group averages to one") {
    const auto gf = GroupSpec::finite({9});
    const std::vector<cplx> ones(gf.size(), cplx(1.0));
    const auto [mean, trace] = van_hove_mean(gf, ones, seq, 3);
    CHECK(std::abs(mean - cplx(1.0)) < 1e-12);
  }
  SUBCASE("window exhausted") {
    CHECK_THROWS_AS(van_hove_mean(g, std::vector<cplx>(g.size(), cplx(1.0)),
                                  VanHoveSequence::linear(32.0, 40.0, 3, 1e9), 3),
                    std::domain_error);
  }
}

TEST_CASE("fb_coefficient looks up dual atoms") {
  const auto primal = GroupSpec::real_line(8.0, 1.0 / 64.0);
  const auto gd = dual(primal);
  SUBCASE("single atom with weight three") {
    const auto sm =
        SemiMeasure::from_dual(primal, ConcreteMeasure::dirac(gd, Point{0.5}, 3.0));
    CHECK(std::abs(fb_coefficient(sm, Point{0.5}) - cplx(3.0)) < 1e-12);
    CHECK(std::abs(fb_coefficient(sm, Point{0.5 + 1e-3})) < 1e-12);
    CHECK(std::abs(fb_coefficient(sm, Point{0.5 + 1e-12}) - cplx(3.0)) < 1e-12);
  }
  SUBCASE("purely continuous duals have no coefficients") {
    std::vector<cplx> density(gd.size());
    for (std::size_t j = 0; j < gd.size(); ++j)
      density[j] = std::exp(-std::abs(gd.coord(j)));
    const auto sm = SemiMeasure::from_dual(primal, ConcreteMeasure::from_density(gd, density));
    CHECK(std::abs(fb_coefficient(sm, Point{0.0})) < 1e-15);
    CHECK(fb_series(sm).entries.empty());
    CHECK(fb_series(sm).residual_bound > 0.0);
  }
  SUBCASE("heaviside has an empty FB series") {
    const auto sm = heaviside(8.0, 1.0 / 64.0);
    CHECK(fb_series(sm).entries.empty());
    for (double xi : {0.0, 0.25, 1.0}) CHECK(std::abs(fb_coefficient(sm, Point{xi})) < 1e-15);
  }
}

TEST_CASE("fb averaging cross-checks the lookup") {
  SUBCASE("haar lift: both routes give the integral at chi = 0") {
    const auto sm = finite_haar(8);
    const auto g = sm.group();
    const auto f = random_battery(g, 1, 5)[0];
    const auto out = fb_via_averaging(sm, f, g.zero(), VanHoveSequence(), 1);
    CHECK(std::abs(out.averaged - f.integral()) < 1e-9);
    CHECK(out.gap < 1e-9);
  }
  SUBCASE("weighted comb: averaging approaches fhat at the comb frequency") {
    const double alpha = 0.6180339887498949;
    const auto sm = weighted_comb_lift(alpha, 100, 128.0, 1.0 / 32.0);
    const auto g = sm.group();
    const auto box = CompactFunction::box(g, 0.0, 0.25, 1.0);
    const auto f = K2Function::from_pair(box, box);
    const auto seq = VanHoveSequence::doubling(8.0, 4, 100.0);

    const auto at_alpha = fb_via_averaging(sm, f, Point{alpha}, seq, 4);
    // oracle: Dirichlet kernel of the truncated comb,
    //   m(r) = fhat(alpha) * (2*floor(r)+1) / (2r) + O(1/r)
    for (const auto& [r, m] : at_alpha.trace.values) {
      const double dirichlet = (2.0 * std::floor(r) + 1.0) / (2.0 * r);
      CHECK(std::abs(m - f.fourier(Point{alpha}) * dirichlet) < 0.6 / r);
    }
    CHECK(std::abs(at_alpha.averaged - f.fourier(Point{alpha})) < 0.05);

    const auto off = fb_via_averaging(sm, f, Point{alpha + 0.1}, seq, 4);
    // oracle: |D_r(0.1)| <= 1/sin(pi/10), so the mean is O(1/r)
    for (const auto& [r, m] : off.trace.values)
      CHECK(std::abs(m) <= std::abs(f.fourier(Point{alpha + 0.1})) /
                               (std::sin(kPi * 0.1) * 2.0 * r) + 0.6 / r);
    CHECK(std::abs(off.averaged) < 0.05);
  }
}

TEST_CASE("eberlein decomposition") {
  const auto primal = GroupSpec::real_line(8.0, 1.0 / 64.0);
  const auto gd = dual(primal);

  SUBCASE("tags route: atom + window lebesgue") {
    auto nu = ConcreteMeasure::dirac(gd, Point{0.0});
    std::vector<cplx> density(gd.size());
    for (std::size_t j = 0; j < gd.size(); ++j)
      density[j] = std::exp(-std::abs(gd.coord(j)) / 4.0);
    nu = add(nu, ConcreteMeasure::from_density(gd, density));
    const auto sm = SemiMeasure::from_dual(primal, nu);
    const auto parts = generalized_eberlein(sm);
    CHECK(parts.strong.dual_measure().atoms.size() == 1);
    CHECK_FALSE(parts.strong.dual_measure().ac_density.has_value());
    CHECK(parts.null_ac.dual_measure().ac_density.has_value());
    CHECK(parts.null_sc.dual_measure().is_zero());
    // strong + null reconstructs
    const auto f = random_battery(primal, 1, 3)[0];
    CHECK(std::abs(parts.strong.evaluate(f) + parts.null_part.evaluate(f) - sm.evaluate(f)) <
          1e-9);
  }
  SUBCASE("idempotence: the strong part has no null component") {
    const auto sm =
        SemiMeasure::from_dual(primal, ConcreteMeasure::dirac(gd, Point{1.0}, 2.0));
    const auto parts = generalized_eberlein(sm);
    const auto again = generalized_eberlein(parts.strong);
    CHECK(again.null_part.dual_measure().is_zero());
  }
  SUBCASE("linearity over random finite pairs") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto g = GroupSpec::finite({8});
    const auto gdf = dual(g);
    auto random_sm = [&] {
      std::vector<Atom> atoms;
      for (int i = 0; i < 3; ++i)
        atoms.push_back({gdf.point(rng() % 8), cplx(u(rng), u(rng))});
      std::vector<cplx> density(8);
      for (auto& v : density) v = cplx(u(rng), u(rng));
      auto nu = add(ConcreteMeasure::from_atoms(gdf, atoms),
                    ConcreteMeasure::from_density(gdf, density));
      return SemiMeasure::from_dual(g, nu);
    };
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_sm(), b = random_sm();
      const auto pa = generalized_eberlein(a), pb = generalized_eberlein(b);
      const auto psum = generalized_eberlein(add(a, b));
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto f = K2Function::basis(g, i);
        CHECK(std::abs(psum.strong.evaluate(f) - pa.strong.evaluate(f) - pb.strong.evaluate(f)) <
              1e-12);
        CHECK(std::abs(psum.null_ac.evaluate(f) - pa.null_ac.evaluate(f) -
                       pb.null_ac.evaluate(f)) < 1e-12);
      }
    }
  }
  SUBCASE("strong part keeps the full FB series, null part passes wap0") {
    auto nu = ConcreteMeasure::from_atoms(gd, {{Point{0.25}, cplx(1.0, 0.5)},
                                               {Point{-1.5}, 2.0}});
    std::vector<cplx> density(gd.size());
    for (std::size_t j = 0; j < gd.size(); ++j)
      density[j] = std::exp(-gd.coord(j) * gd.coord(j));
    nu = add(nu, ConcreteMeasure::from_density(gd, density));
    const auto sm = SemiMeasure::from_dual(primal, nu);
    const auto parts = generalized_eberlein(sm);
    const auto full = fb_series(sm), strong = fb_series(parts.strong);
    REQUIRE(full.entries.size() == strong.entries.size());
    for (std::size_t i = 0; i < full.entries.size(); ++i)
      CHECK(std::abs(full.entries[i].coefficient - strong.entries[i].coefficient) < 1e-15);
    CHECK(wap0_test(parts.null_part).passed());
    CHECK_FALSE(wap0_test(sm).passed());
    CHECK(wap0_test(sm).witnesses.size() == 2);
  }
}

TEST_CASE("strong-part convolution matches the Bohr projection of the full one") {
  // comb + ac noise: (theta_s * f) and the projection of theta * f onto the
  // comb frequencies drift together as the averaging window grows
  const auto primal = GroupSpec::real_line(64.0, 1.0 / 32.0);
  const auto gd = dual(primal);
  auto nu = ConcreteMeasure::from_atoms(
      gd, {{Point{0.0}, 1.0}, {Point{0.5}, 0.3}, {Point{-0.5}, 0.3}});
  std::vector<cplx> noise(gd.size());
  for (std::size_t j = 0; j < gd.size(); ++j)
    noise[j] = 0.4 * std::exp(-gd.coord(j) * gd.coord(j));
  nu = add(nu, ConcreteMeasure::from_density(gd, noise));
  const auto sm = SemiMeasure::from_dual(primal, nu);
  const auto strong = generalized_eberlein(sm).strong;

  const auto box = CompactFunction::box(primal, 0.0, 0.5, 1.0);
  const auto f = K2Function::from_pair(box, box);
  const auto full_conv = sm.convolve_on_grid(f);
  const auto strong_conv = strong.convolve_on_grid(f);
  const std::vector<Point> freqs{Point{0.0}, Point{0.5}, Point{-0.5}};

  auto gap_at = [&](double r) {
    const auto proj = sap_projection(primal, full_conv, freqs,
                                     VanHoveSequence::linear(r, 1.0, 1, 64.0), 1);
    double gap = 0.0;
    for (std::size_t i = 0; i < primal.size(); ++i)
      gap = std::max(gap, std::abs(proj[i] - strong_conv[i]));
    return gap;
  };
  const double coarse = gap_at(8.0), fine = gap_at(56.0);
  CHECK(fine < coarse);
  CHECK(fine < 0.05);
}

TEST_CASE("van Hove means are uniform in the window shift") {
  // spot check at three shifts: the shifted averages of a plane wave stay
  // within the O(1/r) envelope of the unshifted one
  const auto g = GroupSpec::real_line(64.0, 1.0 / 32.0);
  const double alpha = 0.35, r = 16.0;
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    f[i] = std::polar(1.0, kTwoPi * alpha * g.coord(i));
  auto shifted_mean = [&](double s) {
    cplx acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double t = g.coord(i);
      if (t < s - r || t > s + r) continue;
      acc += f[i];
      ++count;
    }
    (void)count;
    return g.haar * acc / (2.0 * r);
  };
  for (double s : {0.0, 0.7, -1.3, 2.1})
    CHECK(std::abs(shifted_mean(s)) <= 1.0 / (kTwoPi * alpha * r) + 0.05);
}

TEST_CASE("lifted finite measures decompose like measures") {
  // on a finite group every measure is fully periodic, so the measure-side
  // decomposition is all strong part; the lift must agree
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto g = GroupSpec::finite({10});
  std::vector<Atom> atoms;
  for (int i = 0; i < 4; ++i) atoms.push_back({g.point(rng() % 10), cplx(u(rng), u(rng))});
  const auto mu = ConcreteMeasure::from_atoms(g, atoms);
  const auto parts = generalized_eberlein(SemiMeasure::lift(mu));
  CHECK(parts.null_part.dual_measure().is_zero(1e-15));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto f = K2Function::basis(g, i);
    CHECK(std::abs(parts.strong.evaluate(f) - pair(mu, f)) < 1e-9);
  }
}

TEST_CASE("wap0 on thue-morse approximant: sc atoms are not FB atoms") {
  const auto sm = thue_morse_sc(3);
  CHECK(wap0_test(sm).passed());
  CHECK(fb_series(sm).entries.empty());
  CHECK(fb_series(sm).residual_bound == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sap projection") {
  const auto g = GroupSpec::real_line(64.0, 1.0 / 16.0);
  const auto seq = VanHoveSequence::doubling(8.0, 4, 64.0);
  SUBCASE("recovers a trig polynomial over its own frequencies") {
    std::vector<cplx> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double t = g.coord(i);
      f[i] = 3.0 + std::polar(1.0, kTwoPi * t);
    }
    const auto proj = sap_projection(g, f, {Point{0.0}, Point{1.0}}, seq, 4);
    double gap = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) gap = std::max(gap, std::abs(proj[i] - f[i]));
    CHECK(gap < 1.0 / 64.0 + 0.02);  // O(1/r_n)
  }
  SUBCASE("mean-zero signals project to zero without their frequencies") {
    std::vector<cplx> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      f[i] = std::polar(1.0, kTwoPi * 0.7 * g.coord(i));
    const auto proj = sap_projection(g, f, {}, seq, 4);
    for (const cplx& v : proj) CHECK(std::abs(v) < 1e-12);
  }
  SUBCASE("idempotent on trig polynomials") {
    std::vector<cplx> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double t = g.coord(i);
      f[i] = cplx(1.0, 0.5) + 2.0 * std::polar(1.0, kTwoPi * 0.5 * t);
    }
    const std::vector<Point> freqs{Point{0.0}, Point{0.5}};
    const auto once = sap_projection(g, f, freqs, seq, 4);
    const auto twice = sap_projection(g, once, freqs, seq, 4);
    double gap = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) gap = std::max(gap, std::abs(once[i] - twice[i]));
    CHECK(gap < 0.05);
  }
}
