#pragma once

/**
 * Concrete abelian group backends.
 *
 * Two families are supported:
 *   - finite products of cyclic groups Z_{n1} x ... x Z_{nk},
 *   - a truncated real line [-L, L] sampled with uniform step h.
 *
 * Every backend carries its own Haar weight per grid node, so the dual of a
 * group is again a GroupSpec and dual(dual(g)) == g holds on the encoding.
 * Quadrature, characters and van Hove averaging live here; everything else
 * in the library is parameterized by a GroupSpec.
 */

#include <complex>
#include <cstdint>
#include <vector>

namespace eberlein {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A point of the group (or of its dual): residue tuple on finite products,
/// one real coordinate on the line. Atom positions and dual frequencies are
/// allowed off the sampling grid; only densities live on the grid.
using Point = std::vector<double>;

struct GroupSpec {
  enum class Kind { finite, real_line };

  Kind kind = Kind::finite;
  std::vector<std::int64_t> orders;  // finite: cyclic orders n_j >= 1
  double window = 0.0;               // real_line: half width L > 0
  double step = 0.0;                 // real_line: grid step h > 0, L/h integral
  double haar = 1.0;                 // Haar mass per grid node

  static GroupSpec finite(std::vector<std::int64_t> orders, double haar = 1.0);
  static GroupSpec real_line(double window, double step);

  /// Number of grid nodes (finite: |G|).
  std::size_t size() const;
  /// real_line: number of grid steps from 0 to the window edge.
  std::int64_t radius_steps() const;

  Point point(std::size_t index) const;
  /// real_line helper: coordinate of node `index`.
  double coord(std::size_t index) const;
  /// Flat index of a grid point; throws if the point is off the grid.
  std::size_t index_of(const Point& t) const;
  /// True if `t` lies on the sampling grid (within `tol` for real_line).
  bool on_grid(const Point& t, double tol = 1e-9) const;

  Point add(const Point& a, const Point& b) const;
  Point negate(const Point& a) const;
  Point zero() const;

  bool same_grid(const GroupSpec& other) const;
  bool operator==(const GroupSpec& other) const;
};

/// Dual group. Finite products are self-dual with reciprocal Haar weight;
/// the windowed line maps to the reciprocal grid L' = 1/(2h), h' = 1/(2L).
GroupSpec dual(const GroupSpec& g);

/// chi(t); unit modulus for every chi in the dual and t in the group.
cplx character_eval(const GroupSpec& g, const Point& chi, const Point& t);

/// Integral against the group's Haar weights. real_line uses the composite
/// rectangle rule with trapezoid correction at the window edges.
cplx haar_integrate(const GroupSpec& g, const std::vector<cplx>& samples);

/// Nested averaging sets A_n. On finite groups every A_n is the whole group;
/// on the line A_n = [-r_n, r_n] with r_n strictly increasing toward L.
struct VanHoveSequence {
  std::vector<double> radii;

  static VanHoveSequence doubling(double r0, int count, double r_max);
  static VanHoveSequence linear(double r0, double dr, int count, double r_max);
  /// Boundary-to-bulk ratio of A_n for a compact of diameter `diam`.
  static double boundary_ratio(double diam, double r) { return diam / r; }
};

/// Uniform grid of `count` real coordinates covering [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

}  // namespace eberlein
