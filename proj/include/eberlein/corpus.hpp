#pragma once

/**
 * Canonical instances with known structure.
 *
 * Every entry records the properties the rest of the library must reproduce
 * (positivity, measure-ness, Fourier-Bohr atoms, which Eberlein parts are
 * occupied); the test suite asserts all of them against the live
 * implementation, so there are no dormant expectations.
 */

#include <functional>
#include <string>
#include <vector>

#include "eberlein/measure.hpp"
#include "eberlein/semimeasure.hpp"

namespace eberlein {

/// The half-line evaluation f -> int_0^inf finv(t) dt: positive definite,
/// semi-translation bounded and intertwining, but not a measure. Its dual
/// measure is Lebesgue restricted to [0, inf).
SemiMeasure heaviside(double window = 32.0, double step = 1.0 / 256.0);

/// Point mass at t, stored with its dual density exp(-2 pi i t xi).
SemiMeasure delta_t(double t, double window = 16.0, double step = 1.0 / 128.0);

/// Dirac comb of the given spacing; dual side is the reciprocal comb with
/// weight 1/spacing (Poisson summation, checked exactly on finite groups).
SemiMeasure dirac_comb(double spacing, double window = 16.0, double step = 1.0 / 128.0);

/// Finite weighted comb sum_{|n|<=n_atoms} e^{2 pi i alpha n} delta_n.
ConcreteMeasure weighted_comb(const GroupSpec& g, double alpha, int n_atoms);

/// The same comb as a semi-measure; the dual density is the closed-form
/// Dirichlet kernel centered at alpha.
SemiMeasure weighted_comb_lift(double alpha, int n_atoms, double window = 128.0,
                               double step = 1.0 / 32.0);

/// Level-l Riesz product atoms on the dyadic grid j / 2^(l+1) of [0,1),
/// tagged singular continuous; masses sum to one exactly.
ConcreteMeasure sc_approximant_thue_morse(int level, const GroupSpec& g);

/// Thue-Morse sc approximant mounted as the dual of a semi-measure.
SemiMeasure thue_morse_sc(int level = 4, double window = 8.0, double step = 1.0 / 64.0);

/// Lifted Haar measure of Z_n (dual = unit atom at 0).
SemiMeasure finite_haar(std::int64_t n = 8);

/// Lifted subgroup comb on Z_n with index m; dual comb on the annihilator.
SemiMeasure finite_comb(std::int64_t n = 12, std::int64_t m = 3);

struct ExpectedProperties {
  bool positive_definite = false;
  bool is_measure = false;  // measure_probe expectation
  std::vector<Atom> fb_atoms;
  bool strong_zero = false;
  bool null_ac_zero = false;
  bool null_sc_zero = false;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  std::function<SemiMeasure()> build;
  ExpectedProperties expected;
};

const std::vector<CorpusEntry>& corpus_entries();
SemiMeasure corpus_build(const std::string& name);

}  // namespace eberlein
