#include "eberlein/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eberlein {

namespace {

// Wrapped distance from 0 of a residue tuple, per coordinate maximum.
double wrapped_radius(const GroupSpec& g, const Point& t) {
  double r = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double n = static_cast<double>(g.orders[j]);
    const double d = std::min(t[j], n - t[j]);
    r = std::max(r, d);
  }
  return r;
}

CompactFunction profile(const GroupSpec& g, double center, double radius, cplx height,
                        double (*shape)(double)) {
  if (g.kind == GroupSpec::Kind::real_line &&
      (std::abs(center) + radius > g.window + 1e-12))
    throw std::domain_error("window too small");
  CompactFunction f;
  f.group = g;
  f.values.assign(g.size(), cplx(0.0));
  if (g.kind == GroupSpec::Kind::real_line) {
    f.support_lo = center - radius;
    f.support_hi = center + radius;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double u = (g.coord(i) - center) / radius;
      if (std::abs(u) <= 1.0) f.values[i] = height * shape(u);
    }
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double u = wrapped_radius(g, g.point(i)) / std::max(radius, 1e-300);
      if (u <= 1.0) f.values[i] = height * shape(u);
    }
  }
  return f;
}

double shape_box(double) { return 1.0; }
double shape_tent(double u) { return 1.0 - std::abs(u); }
double shape_bump(double u) {
  const double d = 1.0 - u * u;
  return d > 1e-12 ? std::exp(1.0 - 1.0 / d) : 0.0;
}

}  // namespace

CompactFunction CompactFunction::box(const GroupSpec& g, double center, double half_width,
                                     cplx height) {
  CompactFunction f = profile(g, center, half_width, height, shape_box);
  if (g.kind == GroupSpec::Kind::real_line) {
    // nodes landing exactly on the jump carry half mass, so plain Haar sums
    // of the indicator reproduce the interval length
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double u = std::abs((g.coord(i) - center) / half_width);
      if (std::abs(u - 1.0) < 1e-9) f.values[i] *= 0.5;
    }
  }
  return f;
}

CompactFunction CompactFunction::tent(const GroupSpec& g, double center, double half_base,
                                      cplx height) {
  return profile(g, center, half_base, height, shape_tent);
}

CompactFunction CompactFunction::bump(const GroupSpec& g, double center, double radius,
                                      cplx height) {
  return profile(g, center, radius, height, shape_bump);
}

CompactFunction CompactFunction::delta_node(const GroupSpec& g, std::size_t index) {
  CompactFunction f;
  f.group = g;
  f.values.assign(g.size(), cplx(0.0));
  f.values.at(index) = 1.0;
  if (g.kind == GroupSpec::Kind::real_line) f.support_lo = f.support_hi = g.coord(index);
  return f;
}

double CompactFunction::sup_norm() const {
  double m = 0.0;
  for (const cplx& v : values) m = std::max(m, std::abs(v));
  return m;
}

CompactFunction CompactFunction::scaled(cplx c) const {
  CompactFunction f = *this;
  for (cplx& v : f.values) v *= c;
  return f;
}

std::vector<cplx> convolve_samples(const GroupSpec& g, const std::vector<cplx>& a,
                                   const std::vector<cplx>& b) {
  const std::size_t n = g.size();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("sample count mismatch");
  std::vector<cplx> out(n, cplx(0.0));
  if (g.kind == GroupSpec::Kind::finite) {
    // cyclic convolution with the group's Haar mass per node
    std::vector<std::size_t> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = g.index_of(g.negate(g.point(i)));
    for (std::size_t t = 0; t < n; ++t) {
      cplx acc = 0.0;
      const Point pt = g.point(t);
      for (std::size_t s = 0; s < n; ++s) {
        if (a[s] == cplx(0.0)) continue;
        const std::size_t d = g.index_of(g.add(pt, g.point(neg[s])));
        acc += a[s] * b[d];
      }
      out[t] = g.haar * acc;
    }
    return out;
  }
  // real line: out[m] = h * sum_k a[k] b[m-k+M], restricted to nonzero bands
  const std::int64_t M = g.radius_steps();
  std::int64_t a_lo = 0, a_hi = -1, b_lo = 0, b_hi = -1;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != cplx(0.0)) { if (a_hi < 0) a_lo = i; a_hi = i; }
  for (std::size_t i = 0; i < n; ++i)
    if (b[i] != cplx(0.0)) { if (b_hi < 0) b_lo = i; b_hi = i; }
  if (a_hi < 0 || b_hi < 0) return out;
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(n); ++m) {
    const std::int64_t k_lo = std::max(a_lo, m + M - b_hi);
    const std::int64_t k_hi = std::min(a_hi, m + M - b_lo);
    cplx acc = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) acc += a[k] * b[m - k + M];
    out[m] = g.haar * acc;
  }
  return out;
}

K2Function from_parts(GroupSpec g, std::vector<K2Function::Term> terms, std::vector<cplx> samples,
                      double lo, double hi) {
  K2Function f;
  f.group_ = std::move(g);
  f.terms_ = std::move(terms);
  f.samples_ = std::move(samples);
  f.lo_ = lo;
  f.hi_ = hi;
  return f;
}

K2Function K2Function::from_pair(const CompactFunction& g, const CompactFunction& h) {
  if (!g.group.same_grid(h.group)) throw std::invalid_argument("group mismatch");
  double lo = 0.0, hi = 0.0;
  if (g.group.kind == GroupSpec::Kind::real_line) {
    lo = g.support_lo + h.support_lo;
    hi = g.support_hi + h.support_hi;
    if (lo < -g.group.window - 1e-12 || hi > g.group.window + 1e-12)
      throw std::domain_error("window too small");
  }
  std::vector<Term> terms{Term{cplx(1.0), g, h}};
  return from_parts(g.group, std::move(terms), convolve_samples(g.group, g.values, h.values), lo,
                    hi);
}

K2Function K2Function::basis(const GroupSpec& g, std::size_t index) {
  if (g.kind != GroupSpec::Kind::finite)
    throw std::invalid_argument("basis deltas exist on finite groups only");
  auto f = from_pair(CompactFunction::delta_node(g, index),
                     CompactFunction::delta_node(g, g.index_of(g.zero())));
  return f.scaled(1.0 / g.haar);  // realized samples = exact indicator of the node
}

K2Function K2Function::scaled(cplx c) const {
  K2Function f = *this;
  for (auto& t : f.terms_) t.coef *= c;
  for (auto& v : f.samples_) v *= c;
  return f;
}

K2Function K2Function::plus(const K2Function& other) const {
  if (!group_.same_grid(other.group_)) throw std::invalid_argument("group mismatch");
  K2Function f = *this;
  f.terms_.insert(f.terms_.end(), other.terms_.begin(), other.terms_.end());
  for (std::size_t i = 0; i < f.samples_.size(); ++i) f.samples_[i] += other.samples_[i];
  f.lo_ = std::min(lo_, other.lo_);
  f.hi_ = std::max(hi_, other.hi_);
  return f;
}

namespace {

CompactFunction reflect_compact(const CompactFunction& c, bool conjugate) {
  CompactFunction r = c;
  const GroupSpec& g = c.group;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t j = g.index_of(g.negate(g.point(i)));
    r.values[i] = conjugate ? std::conj(c.values[j]) : c.values[j];
  }
  if (g.kind == GroupSpec::Kind::real_line) {
    r.support_lo = -c.support_hi;
    r.support_hi = -c.support_lo;
  }
  return r;
}

}  // namespace

K2Function K2Function::tilde() const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_)
    terms.push_back({std::conj(t.coef), reflect_compact(t.left, true), reflect_compact(t.right, true)});
  std::vector<cplx> samples(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const std::size_t j = group_.index_of(group_.negate(group_.point(i)));
    samples[i] = std::conj(samples_[j]);
  }
  return from_parts(group_, std::move(terms), std::move(samples), -hi_, -lo_);
}

K2Function K2Function::dagger() const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_)
    terms.push_back({t.coef, reflect_compact(t.left, false), reflect_compact(t.right, false)});
  std::vector<cplx> samples(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i)
    samples[i] = samples_[group_.index_of(group_.negate(group_.point(i)))];
  return from_parts(group_, std::move(terms), std::move(samples), -hi_, -lo_);
}

K2Function K2Function::translate(const Point& t) const {
  if (group_.kind == GroupSpec::Kind::real_line) return translate(t[0]);
  std::vector<cplx> samples(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const Point p = group_.add(group_.point(i), group_.negate(t));  // f(x - t)
    samples[i] = samples_[group_.index_of(p)];
  }
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& tm : terms_) {
    CompactFunction left = tm.left;
    for (std::size_t i = 0; i < left.values.size(); ++i) {
      const Point p = group_.add(group_.point(i), group_.negate(t));
      left.values[i] = tm.left.values[group_.index_of(p)];
    }
    terms.push_back({tm.coef, std::move(left), tm.right});
  }
  return from_parts(group_, std::move(terms), std::move(samples), lo_, hi_);
}

K2Function K2Function::translate(double t) const {
  if (group_.kind != GroupSpec::Kind::real_line) return translate(Point{t});
  const double steps = t / group_.step;
  const std::int64_t s = static_cast<std::int64_t>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(s)) > 1e-9)
    throw std::invalid_argument("translation must land on the sampling grid");
  const double shift = s * group_.step;
  if (lo_ + shift < -group_.window - 1e-12 || hi_ + shift > group_.window + 1e-12)
    throw std::domain_error("window too small");
  const std::size_t n = samples_.size();
  auto shift_values = [&](const std::vector<cplx>& v) {
    std::vector<cplx> out(n, cplx(0.0));
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      const std::int64_t j = i - s;
      if (j >= 0 && j < static_cast<std::int64_t>(n)) out[i] = v[j];
    }
    return out;
  };
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& tm : terms_) {
    CompactFunction left = tm.left;
    left.values = shift_values(tm.left.values);
    left.support_lo += shift;
    left.support_hi += shift;
    terms.push_back({tm.coef, std::move(left), tm.right});
  }
  return from_parts(group_, std::move(terms), shift_values(samples_), lo_ + shift, hi_ + shift);
}

cplx K2Function::value_at(const Point& t) const {
  if (group_.kind == GroupSpec::Kind::finite) return samples_[group_.index_of(t)];
  return value_at(t[0]);
}

cplx K2Function::value_at(double t) const {
  const GroupSpec& g = group_;
  if (g.kind == GroupSpec::Kind::finite) return samples_[g.index_of(Point{t})];
  if (std::abs(t) > g.window) return 0.0;
  const double u = (t + g.window) / g.step;
  const std::size_t i0 = static_cast<std::size_t>(std::floor(u));
  const double a = u - std::floor(u);
  if (i0 + 1 >= samples_.size()) return samples_.back();
  return (1.0 - a) * samples_[i0] + a * samples_[i0 + 1];
}

double K2Function::sup_norm() const {
  double m = 0.0;
  for (const cplx& v : samples_) m = std::max(m, std::abs(v));
  return m;
}

cplx K2Function::integral() const {
  cplx s = 0.0;
  for (const cplx& v : samples_) s += v;
  return group_.haar * s;
}

cplx K2Function::fourier(const Point& chi) const {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i] == cplx(0.0)) continue;
    acc += std::conj(character_eval(group_, chi, group_.point(i))) * samples_[i];
  }
  return group_.haar * acc;
}

cplx K2Function::fourier_inverse(const Point& chi) const {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i] == cplx(0.0)) continue;
    acc += character_eval(group_, chi, group_.point(i)) * samples_[i];
  }
  return group_.haar * acc;
}

std::vector<cplx> K2Function::fourier_on_dual_grid(bool inverse) const {
  const GroupSpec d = dual(group_);
  std::vector<cplx> out(d.size());
  if (group_.kind == GroupSpec::Kind::finite) {
    for (std::size_t j = 0; j < d.size(); ++j)
      out[j] = inverse ? fourier_inverse(d.point(j)) : fourier(d.point(j));
    return out;
  }
  // support-restricted sum with an incremental phase rotation per node
  const std::int64_t M = group_.radius_steps();
  std::int64_t k_lo = 0, k_hi = -1;
  for (std::size_t i = 0; i < samples_.size(); ++i)
    if (samples_[i] != cplx(0.0)) { if (k_hi < 0) k_lo = i; k_hi = i; }
  if (k_hi < 0) return out;
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const double xi = d.coord(j);
    const double t0 = (k_lo - M) * group_.step;
    cplx phase = std::polar(1.0, sign * kTwoPi * xi * t0);
    const cplx rot = std::polar(1.0, sign * kTwoPi * xi * group_.step);
    cplx acc = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      acc += samples_[k] * phase;
      phase *= rot;
    }
    out[j] = group_.haar * acc;
  }
  return out;
}

void K2Function::verify_realization(double tol) const {
  std::vector<cplx> acc(group_.size(), cplx(0.0));
  for (const auto& t : terms_) {
    const auto conv = convolve_samples(group_, t.left.values, t.right.values);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t.coef * conv[i];
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) gap = std::max(gap, std::abs(acc[i] - samples_[i]));
  if (gap > tol) throw std::logic_error("realized samples do not match the term list");
}

K2Function convolve(const K2Function& f, const K2Function& g) {
  if (!f.group_.same_grid(g.group_)) throw std::invalid_argument("group mismatch");
  double lo = 0.0, hi = 0.0;
  if (f.group_.kind == GroupSpec::Kind::real_line) {
    lo = f.lo_ + g.lo_;
    hi = f.hi_ + g.hi_;
    if (lo < -f.group_.window - 1e-12 || hi > f.group_.window + 1e-12)
      throw std::domain_error("window too small");
  }
  // (sum_k c_k a_k*b_k) * (sum_l d_l u_l*v_l): keep one factor realized so the
  // term list stays two-deep; left slot carries a_k * (c_k d_l u_l), realized.
  std::vector<K2Function::Term> terms;
  for (const auto& tf : f.terms_) {
    const auto left_conv = convolve_samples(f.group_, tf.left.values, tf.right.values);
    for (const auto& tg : g.terms_) {
      CompactFunction left;
      left.group = f.group_;
      left.values = left_conv;
      if (f.group_.kind == GroupSpec::Kind::real_line) {
        left.support_lo = tf.left.support_lo + tf.right.support_lo;
        left.support_hi = tf.left.support_hi + tf.right.support_hi;
      }
      const cplx c = tf.coef * tg.coef;
      CompactFunction right;
      right.group = f.group_;
      right.values = convolve_samples(f.group_, tg.left.values, tg.right.values);
      if (f.group_.kind == GroupSpec::Kind::real_line) {
        right.support_lo = tg.left.support_lo + tg.right.support_lo;
        right.support_hi = tg.left.support_hi + tg.right.support_hi;
      }
      terms.push_back({c, std::move(left), std::move(right)});
    }
  }
  return from_parts(f.group_, std::move(terms), convolve_samples(f.group_, f.samples_, g.samples_),
                    lo, hi);
}

K2Function approximate_identity(const GroupSpec& g, double u_half, int n) {
  if (n < 1) throw std::invalid_argument("approximate identity level must be >= 1");
  if (u_half <= 0.0) throw std::invalid_argument("neighborhood must have positive radius");
  CompactFunction gen;
  if (g.kind == GroupSpec::Kind::real_line) {
    if (u_half > g.window) throw std::domain_error("window too small");
    const double b = u_half * std::ldexp(1.0, -(n + 1));  // halves per step
    const std::int64_t m = static_cast<std::int64_t>(std::floor(b / g.step + 1e-12));
    if (m < 1) throw std::domain_error("resolution exhausted");
    gen = CompactFunction::box(g, 0.0, m * g.step, 1.0);
  } else {
    const double b = u_half * std::ldexp(1.0, -(n + 1));
    gen = CompactFunction::box(g, 0.0, std::floor(b), 1.0);  // radius 0 box = delta_0
  }
  cplx mass = 0.0;
  for (const cplx& v : gen.values) mass += v;
  mass *= g.haar;
  gen = gen.scaled(1.0 / mass);
  return K2Function::from_pair(gen, reflect_compact(gen, true));
}

}  // namespace eberlein
