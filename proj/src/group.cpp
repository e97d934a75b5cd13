#include "eberlein/group.hpp"

#include <cmath>
#include <stdexcept>

namespace eberlein {

GroupSpec GroupSpec::finite(std::vector<std::int64_t> orders, double haar) {
  if (orders.empty()) throw std::invalid_argument("finite group needs at least one cyclic factor");
  for (auto n : orders)
    if (n < 1) throw std::invalid_argument("cyclic order must be >= 1");
  if (haar <= 0.0) throw std::invalid_argument("haar weight must be positive");
  GroupSpec g;
  g.kind = Kind::finite;
  g.orders = std::move(orders);
  g.haar = haar;
  return g;
}

GroupSpec GroupSpec::real_line(double window, double step) {
  if (!(window > 0.0) || !(step > 0.0))
    throw std::invalid_argument("real_line needs window > 0 and step > 0");
  const double ratio = window / step;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("real_line needs window/step integral");
  GroupSpec g;
  g.kind = Kind::real_line;
  g.window = window;
  g.step = step;
  g.haar = step;
  return g;
}

std::size_t GroupSpec::size() const {
  if (kind == Kind::finite) {
    std::size_t n = 1;
    for (auto o : orders) n *= static_cast<std::size_t>(o);
    return n;
  }
  return static_cast<std::size_t>(2 * radius_steps() + 1);
}

std::int64_t GroupSpec::radius_steps() const {
  return static_cast<std::int64_t>(std::llround(window / step));
}

Point GroupSpec::point(std::size_t index) const {
  if (kind == Kind::real_line) return {coord(index)};
  Point p(orders.size());
  // mixed-radix decode, last factor fastest
  for (std::size_t j = orders.size(); j-- > 0;) {
    p[j] = static_cast<double>(index % static_cast<std::size_t>(orders[j]));
    index /= static_cast<std::size_t>(orders[j]);
  }
  return p;
}

double GroupSpec::coord(std::size_t index) const {
  return (static_cast<std::int64_t>(index) - radius_steps()) * step;
}

std::size_t GroupSpec::index_of(const Point& t) const {
  if (!on_grid(t)) throw std::domain_error("point is off the sampling grid");
  if (kind == Kind::real_line) {
    const std::int64_t m = static_cast<std::int64_t>(std::llround(t[0] / step));
    return static_cast<std::size_t>(m + radius_steps());
  }
  std::size_t idx = 0;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const auto n = orders[j];
    std::int64_t r = static_cast<std::int64_t>(std::llround(t[j])) % n;
    if (r < 0) r += n;
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(r);
  }
  return idx;
}

bool GroupSpec::on_grid(const Point& t, double tol) const {
  if (kind == Kind::real_line) {
    if (t.size() != 1) return false;
    const double m = t[0] / step;
    return std::abs(m - std::round(m)) <= tol / step && std::abs(t[0]) <= window + tol;
  }
  if (t.size() != orders.size()) return false;
  for (double c : t)
    if (std::abs(c - std::round(c)) > tol) return false;
  return true;
}

Point GroupSpec::add(const Point& a, const Point& b) const {
  Point r(a.size());
  if (kind == Kind::real_line) {
    r[0] = a[0] + b[0];
    return r;
  }
  for (std::size_t j = 0; j < orders.size(); ++j) {
    double s = a[j] + b[j];
    const double n = static_cast<double>(orders[j]);
    s = std::fmod(s, n);
    if (s < 0) s += n;
    r[j] = s;
  }
  return r;
}

Point GroupSpec::negate(const Point& a) const {
  Point r(a.size());
  if (kind == Kind::real_line) {
    r[0] = -a[0];
    return r;
  }
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const double n = static_cast<double>(orders[j]);
    double s = std::fmod(-a[j], n);
    if (s < 0) s += n;
    r[j] = s;
  }
  return r;
}

Point GroupSpec::zero() const {
  return Point(kind == Kind::real_line ? 1 : orders.size(), 0.0);
}

bool GroupSpec::same_grid(const GroupSpec& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::finite) return orders == other.orders;
  return std::abs(window - other.window) < 1e-12 && std::abs(step - other.step) < 1e-12;
}

bool GroupSpec::operator==(const GroupSpec& other) const {
  return same_grid(other) && std::abs(haar - other.haar) <= 1e-12 * std::max(haar, other.haar);
}

GroupSpec dual(const GroupSpec& g) {
  if (g.kind == GroupSpec::Kind::finite) {
    // Self-dual; the Haar weights are reciprocal so that Fourier inversion
    // holds with unit total normalization: w_G * w_dual * |G| = 1.
    const double n = static_cast<double>(g.size());
    return GroupSpec::finite(g.orders, 1.0 / (n * g.haar));
  }
  return GroupSpec::real_line(1.0 / (2.0 * g.step), 1.0 / (2.0 * g.window));
}

cplx character_eval(const GroupSpec& g, const Point& chi, const Point& t) {
  double phase = 0.0;
  if (g.kind == GroupSpec::Kind::real_line) {
    phase = chi[0] * t[0];
  } else {
    for (std::size_t j = 0; j < g.orders.size(); ++j)
      phase += chi[j] * t[j] / static_cast<double>(g.orders[j]);
  }
  return std::polar(1.0, kTwoPi * phase);
}

cplx haar_integrate(const GroupSpec& g, const std::vector<cplx>& samples) {
  if (samples.size() != g.size()) throw std::invalid_argument("sample count does not match grid");
  cplx sum = 0.0;
  for (const cplx& v : samples) sum += v;
  if (g.kind == GroupSpec::Kind::real_line && samples.size() >= 2)
    sum -= 0.5 * (samples.front() + samples.back());
  return g.haar * sum;
}

VanHoveSequence VanHoveSequence::doubling(double r0, int count, double r_max) {
  VanHoveSequence s;
  double r = r0;
  for (int i = 0; i < count && r <= r_max; ++i, r *= 2.0) s.radii.push_back(r);
  return s;
}

VanHoveSequence VanHoveSequence::linear(double r0, double dr, int count, double r_max) {
  VanHoveSequence s;
  double r = r0;
  for (int i = 0; i < count && r <= r_max; ++i, r += dr) s.radii.push_back(r);
  return s;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = 0.5 * (lo + hi);
    return g;
  }
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return g;
}

}  // namespace eberlein
