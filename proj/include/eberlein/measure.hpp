#pragma once

/**
 * Concrete Radon measures with tagged spectral components.
 *
 * A measure is stored as three tagged parts: an atom list (pure point), an
 * optional sampled density (absolutely continuous, relative to the group's
 * Haar weights), and an optional singular continuous approximant, which is a
 * labelled atom list that is never merged into the pure point part. The tag
 * is structural: no finite-resolution test can certify singular continuity,
 * so the library routes the component instead of detecting it.
 */

#include <optional>
#include <vector>

#include "eberlein/funcspace.hpp"
#include "eberlein/group.hpp"
#include "eberlein/probe_report.hpp"

namespace eberlein {

struct Atom {
  Point point;
  cplx weight;
};

struct ScApproximant {
  std::vector<Atom> atoms;
  int level = 0;
};

struct ConcreteMeasure {
  GroupSpec group;
  std::vector<Atom> atoms;
  std::optional<std::vector<cplx>> ac_density;  // samples on the grid
  std::optional<ScApproximant> sc_part;

  static ConcreteMeasure dirac(const GroupSpec& g, Point at, cplx weight = 1.0);
  static ConcreteMeasure from_density(const GroupSpec& g, std::vector<cplx> density);
  static ConcreteMeasure from_atoms(const GroupSpec& g, std::vector<Atom> atoms);
  /// Haar measure of the window: density identically one.
  static ConcreteMeasure haar_measure(const GroupSpec& g);

  /// Merge duplicate atoms, drop exact zeros, sort positions lexicographic
  /// (ties by weight phase). All constructors call this.
  void normalize();
  bool is_zero(double tol = 0.0) const;
  /// Sum of |weights| plus the integral of |density| over the window.
  double mass_bound() const;
};

ConcreteMeasure add(const ConcreteMeasure& a, const ConcreteMeasure& b);
ConcreteMeasure scale(const ConcreteMeasure& mu, cplx c);
ConcreteMeasure translate(const ConcreteMeasure& mu, const Point& t);
ConcreteMeasure tilde(const ConcreteMeasure& mu);   // conj after reflection
ConcreteMeasure dagger(const ConcreteMeasure& mu);  // reflection
ConcreteMeasure conjugate(const ConcreteMeasure& mu);

/// Riesz pairing <mu, f> for f sampled on the grid. Off-grid atoms evaluate f
/// by linear interpolation; atoms outside the window throw.
cplx pair(const ConcreteMeasure& mu, const std::vector<cplx>& f);
cplx pair(const ConcreteMeasure& mu, const K2Function& f);

/// Total variation: absolute weights and |density|, tags preserved.
ConcreteMeasure total_variation(const ConcreteMeasure& mu);

/// mu = pos_re - neg_re + i(pos_im - neg_im), all four positive, the two
/// splits orthogonal componentwise, |rho_j| <= |mu|.
struct JordanHahnParts {
  ConcreteMeasure pos_re, neg_re, pos_im, neg_im;
};
JordanHahnParts jordan_hahn(const ConcreteMeasure& mu);

/// Lebesgue decomposition by tag: atoms -> pp, density -> ac, tagged -> sc.
struct SpectralParts {
  ConcreteMeasure pp, ac, sc;
};
SpectralParts lebesgue_parts(const ConcreteMeasure& mu);

/// sup_t |mu|(t+K) over grid-sampled t for K = [k_lo, k_hi]; a lower bound
/// of the true supremum (t runs over the grid only).
double norm_K(const ConcreteMeasure& mu, double k_lo, double k_hi);

/// Fourier transform: exact on finite groups; on the line only measures of
/// finite mass inside the window (closed-form character sums). Everything
/// else must go through the semi-measure route.
ConcreteMeasure fourier_transform_measure(const ConcreteMeasure& mu);

/// Checks \int |inverse transform of f| d|nu| under increasing truncation
/// radii for every battery member; pass = stabilized tails.
ProbeReport weak_admissibility_probe(const ConcreteMeasure& nu,
                                     const std::vector<K2Function>& battery);

/// Default battery of smooth bumps on the primal group of `nu_group`'s dual,
/// used by the construction-time admissibility assertion.
std::vector<K2Function> standard_battery(const GroupSpec& primal_group);

}  // namespace eberlein
