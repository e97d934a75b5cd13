#pragma once

/**
 * Numerical decision procedures with evidence traces.
 *
 * Each probe replays one of the characterization results on finite data and
 * reports a verdict with the statistic trace that produced it:
 *
 *  - measure_probe: is a weakly admissible nu the transform of a measure?
 *    The reconstructions (Khat_n nu)inv are paired against the unit ball of
 *    C(K) (including the extremal phase witness, so the statistic is the
 *    local total variation); bounded traces say yes, growing traces say no.
 *  - translation_bounded_probe: sup of |(theta*f)(t)| over a unit-ball
 *    battery; a stable sup certifies (numerically) that the transform is
 *    U-nice, i.e. the transform of a translation bounded measure.
 *  - intertwining_check: (theta*f)*g vs theta*(f*g); every representable
 *    semi-measure must pass, so a failure flags an implementation defect.
 *  - boundedness_probe: empirical C_K in |theta(f)| <= C_K ||f||_inf over a
 *    battery supported in K, with the translated variant.
 *  - density_class_check: truncated L^p mass of a density on the dual with
 *    the Hausdorff-Young certificate replayed on a battery.
 *
 * Growth is fitted against the scale of the shrinking approximate identity
 * (2^n at level n), so bounded = constant, the marginal divergences read as
 * log, and genuine blow-ups read as power laws.
 */

#include <cstdint>
#include <vector>

#include "eberlein/funcspace.hpp"
#include "eberlein/measure.hpp"
#include "eberlein/probe_report.hpp"
#include "eberlein/semimeasure.hpp"

namespace eberlein {

/// Deterministic sample of the unit ball of K2 supported in (-u_half, u_half):
/// every member has sup norm <= 1 and support inside the neighborhood
/// (checked at construction).
struct UnitBallBattery {
  GroupSpec group;
  double u_half = 0.0;
  std::uint64_t seed = 0;
  std::vector<K2Function> functions;

  static UnitBallBattery make(const GroupSpec& g, double u_half, std::size_t count,
                              std::uint64_t seed);
};

/// Symmetric log-spaced coordinates h*2^(j/per_octave) up to t_max, plus 0.
std::vector<double> dyadic_grid(double h, double t_max, int per_octave);

/// Decides whether `nu` (on the dual group) is the Fourier transform of a
/// measure. Approximate identities shrink inside (-u_half, u_half) on the
/// primal side; the statistic is integrated over the span of `t_grid`.
ProbeReport measure_probe(const ConcreteMeasure& nu, double u_half, int n_max,
                          const std::vector<double>& t_grid);

ProbeReport translation_bounded_probe(const SemiMeasure& sm, const UnitBallBattery& battery,
                                      const std::vector<double>& t_grid);

ProbeReport intertwining_check(const SemiMeasure& sm,
                               const std::vector<std::pair<K2Function, K2Function>>& pairs);

/// Empirical bound max |theta(f)| / ||f||_inf over the battery and a few of
/// its translates; battery members must be supported in [k_lo, k_hi].
ProbeReport boundedness_probe(const SemiMeasure& sm, double k_lo, double k_hi,
                              const std::vector<K2Function>& battery);

/// Truncated integral of |h|^p on the dual group, p in [1,2]; pass means the
/// ac Eberlein component re-lifts to a measure. On a pass the Hausdorff-Young
/// chain |<h, (f*K_n)inv>| <= ||f||_p ||h||_p is replayed on a small battery
/// and any violation is reported as a witness.
ProbeReport density_class_check(const GroupSpec& dual_group, const std::vector<cplx>& h,
                                double p);

/// Almost periodic density route, taken only for densities given BY
/// CONSTRUCTION as trig polynomials: the coefficient sum of a finite
/// frequency list is finite, so the check passes with the computed sum.
ProbeReport trig_polynomial_density_check(const std::vector<std::pair<Point, cplx>>& coeffs);

/// (integral of |f|^p against the Haar weights)^(1/p).
double lp_norm(const GroupSpec& g, const std::vector<cplx>& f, double p);

}  // namespace eberlein
