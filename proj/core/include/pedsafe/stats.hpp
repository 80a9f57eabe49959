#pragma once

#include <span>
#include <string>
#include <vector>

namespace pedsafe {

enum class Verdict { BonferroniSig, UncorrectedSig, NotSig };

const char* verdict_name(Verdict v);

struct StatResult {
  double delta = 0.0;    // mean(xs) - mean(ys)
  double ci_low = 0.0;   // 95% CI on the mean difference
  double ci_high = 0.0;
  double t = 0.0;
  double df = 0.0;       // Welch-Satterthwaite, fractional
  double p = 0.0;        // two-tailed
  double cohens_d = 0.0; // pooled-SD convention
  Verdict verdict = Verdict::NotSig;
};

// Welch two-sample t-test (unequal variances). Each sample needs >= 2
// observations and at least one must have nonzero variance; a degenerate
// pair throws (reported as '---' upstream).
StatResult welch_t(std::span<const double> xs, std::span<const double> ys);

// Familywise correction: BonferroniSig below alpha/family, UncorrectedSig
// below alpha, NotSig otherwise.
std::vector<Verdict> bonferroni(std::span<const double> p_values, int family_size,
                                double alpha = 0.05);
Verdict bonferroni_verdict(double p, int family_size, double alpha = 0.05);

// Student-t distribution pieces, implemented on a continued-fraction
// regularized incomplete beta so no statistics library is required.
double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
double student_t_two_tailed_p(double t, double df);
double student_t_quantile(double p, double df);  // inverse CDF by bisection

}  // namespace pedsafe
