#pragma once

/**
 * The K2(G) test-function algebra.
 *
 * K2 membership is enforced by construction: a K2Function is a finite sum
 * sum_k c_k (g_k * h_k) of convolutions of compactly supported sampled
 * functions, together with the realized sample vector of that sum. The
 * involutions (tilde, dagger), translations, Fourier transforms, and the
 * positive definite approximate identities K_n = g_n * ~g_n are defined on
 * this representation. On finite groups K2(G) is every function (delta_0
 * generates); on the line the realized samples carry the usual quadrature
 * error budgets.
 */

#include <optional>
#include <vector>

#include "eberlein/group.hpp"

namespace eberlein {

/// Continuous compactly supported function, sampled on the group grid.
struct CompactFunction {
  GroupSpec group;
  std::vector<cplx> values;  // over the full grid; vanish outside support
  double support_lo = 0.0;   // real_line coordinate bounds of the support
  double support_hi = 0.0;

  /// Box indicator of [center-half_width, center+half_width], given height.
  static CompactFunction box(const GroupSpec& g, double center, double half_width, cplx height);
  /// Smooth bump height*exp(1 - 1/(1-((x-center)/radius)^2)) on the open ball.
  static CompactFunction bump(const GroupSpec& g, double center, double radius, cplx height);
  /// Triangle tent of the given half base, peak height at center.
  static CompactFunction tent(const GroupSpec& g, double center, double half_base, cplx height);
  /// Unit mass at one grid node (finite groups: the delta generator).
  static CompactFunction delta_node(const GroupSpec& g, std::size_t index);

  double sup_norm() const;
  CompactFunction scaled(cplx c) const;
};

class K2Function {
 public:
  struct Term {
    cplx coef;
    CompactFunction left;
    CompactFunction right;
  };

  /// Single-term element g*h realized by Haar-weighted discrete convolution.
  static K2Function from_pair(const CompactFunction& g, const CompactFunction& h);
  /// delta_x as delta_x * delta_0 (finite groups only).
  static K2Function basis(const GroupSpec& g, std::size_t index);

  const GroupSpec& group() const { return group_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<cplx>& samples() const { return samples_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

  K2Function scaled(cplx c) const;
  K2Function plus(const K2Function& other) const;
  K2Function tilde() const;   // conj(f(-x))
  K2Function dagger() const;  // f(-x)
  K2Function translate(const Point& t) const;
  K2Function translate(double t) const;  // real_line shortcut

  cplx value_at(const Point& t) const;  // linear interpolation between nodes
  cplx value_at(double t) const;
  double sup_norm() const;
  cplx integral() const;

  /// \int conj(chi) f dtheta_G — the exact DFT on finite groups.
  cplx fourier(const Point& chi) const;
  /// \int chi f dtheta_G = fourier at the conjugate character.
  cplx fourier_inverse(const Point& chi) const;
  /// fourier (or fourier_inverse) at every node of dual(group()).
  std::vector<cplx> fourier_on_dual_grid(bool inverse = false) const;

  /// Recompute the realized samples from the term list; throws if the
  /// mismatch exceeds `tol` (a defect on finite groups beyond 1e-9).
  void verify_realization(double tol) const;

 private:
  GroupSpec group_;
  std::vector<Term> terms_;
  std::vector<cplx> samples_;
  double lo_ = 0.0, hi_ = 0.0;

  friend K2Function convolve(const K2Function& f, const K2Function& g);
  friend K2Function from_parts(GroupSpec g, std::vector<Term> terms, std::vector<cplx> samples,
                               double lo, double hi);
};

/// Convolution inside K2; support bound is the Minkowski sum. Throws
/// "window too small" if the sum leaves the real_line window.
K2Function convolve(const K2Function& f, const K2Function& g);

/// Haar-weighted discrete convolution of raw sample vectors.
std::vector<cplx> convolve_samples(const GroupSpec& g, const std::vector<cplx>& a,
                                   const std::vector<cplx>& b);

/// K_n = g_n * ~g_n with supp(K_n) inside (-u_half, u_half), K_n >= 0 and
/// integral 1; supp(g_n) halves per step. Throws "resolution exhausted" when
/// the grid cannot resolve the requested level on the line.
K2Function approximate_identity(const GroupSpec& g, double u_half, int n);

}  // namespace eberlein
