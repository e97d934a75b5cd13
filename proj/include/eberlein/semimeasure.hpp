#pragma once

/**
 * Fourier transformable semi-measures.
 *
 * A semi-measure here is stored through its transform: a weakly admissible
 * measure nu on the dual group. That representation is lossless for the
 * Fourier transformable class (the transform is a bijection onto the weakly
 * admissible measures), and it is the only computable handle on functionals
 * that need not be continuous. Evaluation, convolution against K2 functions,
 * the symmetries, Bochner positivity and the four-way positive definite
 * split all act on the dual side; the primal formulas are kept as verified
 * cross-checks in the test suite.
 */

#include <array>
#include <optional>
#include <vector>

#include "eberlein/funcspace.hpp"
#include "eberlein/group.hpp"
#include "eberlein/measure.hpp"
#include "eberlein/probe_report.hpp"

namespace eberlein {

struct EvaluationTrace {
  std::vector<std::pair<double, cplx>> partials;  // (truncation radius, value)
  bool converged = true;
};

class SemiMeasure {
 public:
  /// Wrap a weakly admissible measure on the dual of `primal`. Runs the
  /// admissibility probe on the standard battery; throws
  /// "not weakly admissible" (with witness) when it fails.
  static SemiMeasure from_dual(GroupSpec primal, ConcreteMeasure nu);
  /// Restriction of a Fourier transformable measure to K2. The dual side is
  /// computed with fourier_transform_measure; the original is kept so the
  /// primal pairing stays available.
  static SemiMeasure lift(const ConcreteMeasure& mu);
  /// Wrap with an explicitly known transform (corpus closed forms).
  static SemiMeasure lift_with_dual(ConcreteMeasure mu, ConcreteMeasure nu);

  const GroupSpec& group() const { return primal_; }
  const ConcreteMeasure& dual_measure() const { return dual_; }
  const std::optional<ConcreteMeasure>& original() const { return original_; }
  bool lifted_from_measure() const { return original_.has_value(); }

  /// theta(f) = \int finv d(nu). Throws "evaluation did not converge" when
  /// the truncation tails fail to stabilize on the line.
  cplx evaluate(const K2Function& f) const;
  std::pair<cplx, EvaluationTrace> evaluate_with_trace(const K2Function& f) const;

  /// (theta*f)(t) = \int chi(t) fhat(chi) d(nu)(chi), one value per t.
  /// Lifted measures use the primal pairing (theta*f)(t) = <mu, T_t f dagger>,
  /// which agrees with the dual formula wherever both are computable.
  std::vector<cplx> convolve(const K2Function& f, const std::vector<double>& t_grid) const;
  std::vector<cplx> convolve(const K2Function& f, const std::vector<Point>& t_grid) const;
  /// Convolution sampled on the whole primal grid.
  std::vector<cplx> convolve_on_grid(const K2Function& f) const;

  SemiMeasure translate(const Point& t) const;  // dual side: modulation by conj(chi(t))
  SemiMeasure translate(double t) const;
  SemiMeasure tilde() const;   // dual side: conjugated weights
  SemiMeasure dagger() const;  // dual side: reflection
  SemiMeasure with_dual(ConcreteMeasure nu) const;

  /// Bochner check: the dual measure is positive (atoms, density and sc part
  /// up to the backend tolerance), plus a direct battery check
  /// theta(f * ~f) >= -tol recorded in the report.
  ProbeReport is_positive_definite(std::size_t battery_size = 64,
                                   std::uint64_t seed = 0x5eed0001u) const;

  /// theta = s1 - s2 + i(s3 - s4) with every part positive definite; the
  /// parts carry the Jordan-Hahn pieces of the dual measure.
  std::array<SemiMeasure, 4> split_positive_definite() const;

  /// Backend positivity slack: exact on finite groups, proportional to the
  /// local mass scale under quadrature.
  double positivity_tolerance() const;

 private:
  SemiMeasure() = default;
  GroupSpec primal_;
  ConcreteMeasure dual_;
  std::optional<ConcreteMeasure> original_;
};

SemiMeasure add(const SemiMeasure& a, const SemiMeasure& b);
SemiMeasure scale(const SemiMeasure& sm, cplx c);

/// Deterministic battery of K2 functions used by positivity checks: sums of
/// up to four random bumps/boxes, seeded for reproducibility.
std::vector<K2Function> random_battery(const GroupSpec& g, std::size_t count,
                                       std::uint64_t seed);

}  // namespace eberlein
