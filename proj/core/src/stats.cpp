#include "pedsafe/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace pedsafe {

namespace {

double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs, double m) {
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

// continued fraction for the regularized incomplete beta (Lentz's method)
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::BonferroniSig: return "BonferroniSig";
    case Verdict::UncorrectedSig: return "UncorrectedSig";
    case Verdict::NotSig: return "NotSig";
  }
  return "NotSig";
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  // symmetry keeps the continued fraction in its fast-converging region
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_two_tailed_p(double t, double df) {
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

double student_t_quantile(double p, double df) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("quantile probability outside (0,1)");
  // the CDF is monotone; bisection to ~1e-12 is plenty for CI endpoints
  double lo = -1e8;
  double hi = 1e8;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

StatResult welch_t(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 2 || ys.size() < 2) {
    throw std::invalid_argument("welch_t: each sample needs at least two observations");
  }
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  const double mx = mean(xs);
  const double my = mean(ys);
  const double vx = sample_variance(xs, mx);
  const double vy = sample_variance(ys, my);
  if (vx == 0.0 && vy == 0.0) {
    throw std::invalid_argument("welch_t: both samples have zero variance");
  }

  StatResult r;
  r.delta = mx - my;
  const double se2 = vx / nx + vy / ny;
  const double se = std::sqrt(se2);
  r.t = r.delta / se;
  r.df = se2 * se2 / ((vx / nx) * (vx / nx) / (nx - 1.0) + (vy / ny) * (vy / ny) / (ny - 1.0));
  r.p = student_t_two_tailed_p(r.t, r.df);
  const double t_crit = student_t_quantile(0.975, r.df);
  r.ci_low = r.delta - t_crit * se;
  r.ci_high = r.delta + t_crit * se;
  const double pooled_sd = std::sqrt(((nx - 1.0) * vx + (ny - 1.0) * vy) / (nx + ny - 2.0));
  r.cohens_d = pooled_sd > 0.0 ? r.delta / pooled_sd : 0.0;
  return r;
}

Verdict bonferroni_verdict(double p, int family_size, double alpha) {
  if (family_size < 1) throw std::invalid_argument("bonferroni: family size must be >= 1");
  if (p < alpha / family_size) return Verdict::BonferroniSig;
  if (p < alpha) return Verdict::UncorrectedSig;
  return Verdict::NotSig;
}

std::vector<Verdict> bonferroni(std::span<const double> p_values, int family_size, double alpha) {
  std::vector<Verdict> out;
  out.reserve(p_values.size());
  for (double p : p_values) out.push_back(bonferroni_verdict(p, family_size, alpha));
  return out;
}

}  // namespace pedsafe
