#pragma once

/**
 * Almost periodicity machinery.
 *
 * Fourier-Bohr coefficients are read off the dual measure's atoms (that
 * lookup is exact for the representable class); the van Hove averaging route
 * exists as an independent verification that converges like O(1/r_n) and is
 * reported with its trace. The Eberlein decomposition theta = theta_s +
 * theta_0 and its generalized refinement theta_s + theta_0a + theta_0s are
 * computed on the dual side as the pp / ac / sc split of the transform.
 */

#include <utility>
#include <vector>

#include "eberlein/group.hpp"
#include "eberlein/measure.hpp"
#include "eberlein/probe_report.hpp"
#include "eberlein/semimeasure.hpp"

namespace eberlein {

struct FBSeries {
  struct Entry {
    Point chi;
    cplx coefficient;
  };
  std::vector<Entry> entries;   // exactly the dual atoms
  double residual_bound = 0.0;  // mass of the continuous dual part
};

struct MeanTrace {
  std::vector<std::pair<double, cplx>> values;  // (r_n or n, m_n)
  bool converged = true;
};

/// (1/|A_n|) \int_{A_n} f for the nested averaging sets; flags
/// non-convergence when the tail increments stop shrinking.
std::pair<cplx, MeanTrace> van_hove_mean(const GroupSpec& g, const std::vector<cplx>& f,
                                         const VanHoveSequence& seq, int n_max);

/// a_chi(theta): the dual atom mass at chi, 0 when no atom matches the
/// frequency within `freq_tol`.
cplx fb_coefficient(const SemiMeasure& sm, const Point& chi, double freq_tol = 1e-9);

FBSeries fb_series(const SemiMeasure& sm);

struct FBAverage {
  cplx averaged;       // van Hove average of conj(chi) * (theta*f)
  cplx lookup_target;  // a_chi(theta) * fhat(chi)
  double gap;          // |averaged - lookup_target|
  MeanTrace trace;
};

/// Averaging route for a_chi(theta*f), cross-checked against the lookup
/// route a_chi(theta) fhat(chi).
FBAverage fb_via_averaging(const SemiMeasure& sm, const K2Function& f, const Point& chi,
                           const VanHoveSequence& seq, int n_max);

struct EberleinParts {
  SemiMeasure strong;     // dual = pp part
  SemiMeasure null_part;  // dual = ac + sc
  SemiMeasure null_ac;
  SemiMeasure null_sc;
};

/// Dual-side Eberlein decomposition; parts sum back to the input
/// componentwise and are unique functions of the input.
EberleinParts eberlein(const SemiMeasure& sm);
/// Same split with the null part refined into ac and sc components.
EberleinParts generalized_eberlein(const SemiMeasure& sm);

/// Pass iff the dual measure has no atoms (every FB coefficient vanishes).
ProbeReport wap0_test(const SemiMeasure& sm);

/// Bohr polynomial sum_chi a_chi(f) chi(t) with coefficients from van Hove
/// means of conj(chi) f; the strong-part approximation of a sampled function.
std::vector<cplx> sap_projection(const GroupSpec& g, const std::vector<cplx>& f,
                                 const std::vector<Point>& freqs, const VanHoveSequence& seq,
                                 int n_max);

}  // namespace eberlein
