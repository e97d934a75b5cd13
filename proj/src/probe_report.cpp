#include "eberlein/probe_report.hpp"

#include <cmath>
#include <limits>

namespace eberlein {

const char* to_string(GrowthFit::Model m) {
  switch (m) {
    case GrowthFit::Model::constant: return "constant";
    case GrowthFit::Model::logarithmic: return "log";
    case GrowthFit::Model::power: return "power";
  }
  return "?";
}

const char* to_string(ProbeReport::Verdict v) {
  switch (v) {
    case ProbeReport::Verdict::pass: return "pass";
    case ProbeReport::Verdict::fail: return "fail";
    case ProbeReport::Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct LineFit {
  double intercept = 0.0, slope = 0.0, slope_stderr = 0.0;
  bool ok = false;
};

LineFit fit_line(const std::vector<double>& u, const std::vector<double>& v) {
  LineFit f;
  const std::size_t n = u.size();
  if (n < 2) return f;
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) { mu += u[i]; mv += v[i]; }
  mu /= n;
  mv /= n;
  double suu = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
  }
  if (suu <= 0.0) return f;
  f.slope = suv / suu;
  f.intercept = mv - f.slope * mu;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = v[i] - (f.intercept + f.slope * u[i]);
    ssr += r * r;
  }
  const double sigma2 = n > 2 ? ssr / static_cast<double>(n - 2) : 0.0;
  f.slope_stderr = std::sqrt(sigma2 / suu);
  f.ok = true;
  return f;
}

double rms_residual(const std::vector<std::pair<double, double>>& trace,
                    double (*model)(double, double, double), double a, double b) {
  double ssr = 0.0;
  for (const auto& [x, s] : trace) {
    const double r = s - model(x, a, b);
    ssr += r * r;
  }
  return std::sqrt(ssr / static_cast<double>(trace.size()));
}

double model_log(double x, double a, double b) { return a + b * std::log(x); }
double model_pow(double x, double a, double b) { return a * std::pow(x, b); }
double model_const(double, double a, double) { return a; }

}  // namespace

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& trace) {
  GrowthFit best;
  if (trace.empty()) return best;

  double mean = 0.0;
  for (const auto& [x, s] : trace) mean += s;
  mean /= static_cast<double>(trace.size());
  best.model = GrowthFit::Model::constant;
  best.level = mean;
  best.residual = rms_residual(trace, model_const, mean, 0.0);
  const double const_residual = best.residual;
  if (trace.size() < 3) return best;

  std::vector<double> lx, s, ls;
  bool positive = true;
  for (const auto& [x, v] : trace) {
    lx.push_back(std::log(x));
    s.push_back(v);
    if (v <= 0.0) positive = false;
  }
  if (positive)
    for (const auto& [x, v] : trace) ls.push_back(std::log(v));

  GrowthFit candidate;
  double cand_residual = std::numeric_limits<double>::infinity();
  if (const LineFit f = fit_line(lx, s); f.ok) {
    const double r = rms_residual(trace, model_log, f.intercept, f.slope);
    if (r < cand_residual) {
      cand_residual = r;
      candidate.model = GrowthFit::Model::logarithmic;
      candidate.rate = f.slope;
      candidate.level = f.intercept;
      candidate.significance =
          f.slope_stderr > 0.0 ? std::abs(f.slope) / f.slope_stderr : 0.0;
      candidate.residual = r;
    }
  }
  if (positive) {
    if (const LineFit f = fit_line(lx, ls); f.ok) {
      const double r = rms_residual(trace, model_pow, std::exp(f.intercept), f.slope);
      if (r < cand_residual) {
        cand_residual = r;
        candidate.model = GrowthFit::Model::power;
        candidate.rate = f.slope;
        candidate.level = std::exp(f.intercept);
        candidate.significance =
            f.slope_stderr > 0.0 ? std::abs(f.slope) / f.slope_stderr : 0.0;
        candidate.residual = r;
      }
    }
  }

  // prefer the flat model unless the sloped one is clearly better, its rate
  // is statistically resolved, and the predicted change over the observed
  // scales is material next to the level of the data
  double change = 0.0;
  const double x0 = trace.front().first, x1 = trace.back().first;
  if (candidate.model == GrowthFit::Model::logarithmic)
    change = candidate.rate * (std::log(x1) - std::log(x0));
  else if (candidate.model == GrowthFit::Model::power)
    change = candidate.level * (std::pow(x1, candidate.rate) - std::pow(x0, candidate.rate));
  const bool material = std::abs(change) > 0.05 * std::max(std::abs(mean), 1e-300);
  if (material && cand_residual < 0.8 * const_residual && candidate.significance > 3.0)
    return candidate;
  return best;
}

bool trace_stabilized(const std::vector<std::pair<double, double>>& trace, double rel_tol) {
  const std::size_t n = trace.size();
  if (n < 2) return n == 1;
  double scale = 0.0;
  for (const auto& [x, s] : trace) scale = std::max(scale, std::abs(s));
  if (scale == 0.0) return true;
  std::vector<double> d;
  for (std::size_t i = 1; i < n; ++i) d.push_back(std::abs(trace[i].second - trace[i - 1].second));
  if (d.back() == 0.0) return true;
  if (d.size() == 1) return d.back() <= rel_tol * scale;
  // geometric tail estimate d_last * q / (1 - q); a single increment ratio is
  // noisy for oscillatory integrands, so q averages the last two ratios
  double q = d.back() / std::max(d[d.size() - 2], 1e-300);
  if (d.size() >= 3) {
    const double q2 = d[d.size() - 2] / std::max(d[d.size() - 3], 1e-300);
    q = std::sqrt(q * q2);
  }
  if (q >= 0.9) return d.back() <= rel_tol * scale;
  return d.back() * q / (1.0 - q) <= rel_tol * scale;
}

}  // namespace eberlein
