#pragma once

namespace pedsafe {

// Constraint parameter bundle shared by online enforcement and offline
// evaluation. Defaults are the calibrated operating point.
struct ConstraintParams {
  double theta_min = 0.5;       // prerequisite mastery threshold (accessibility)
  double theta_mastered = 0.7;  // mastery level at which a concept counts as learned
  int window_w = 10;            // evaluation window length for C2/C3
  double eps_prog = 0.0023;     // progress floor, calibrated from mastery-only runs
  double delta_min = 0.4;       // demand floor for C3
  double rho_max = 1.2;         // engagement/mastery coupling bound for C4
  int warmup_w0 = 10;           // steps before C4 is evaluated
  double c0 = 0.0;              // additive slack for C4 (0 under normalized streams)
  double w2 = 1.0 / 3.0;        // violation-norm weights for C2/C3/C4
  double w3 = 1.0 / 3.0;
  double w4 = 1.0 / 3.0;
};

// Online enforcement switches. delta_min/window are snapshots of the
// ConstraintParams values the session was launched with.
struct ConstraintToggles {
  bool c1_enabled = false;  // prerequisite masking
  bool c3_enabled = false;  // demand-floor action filter
  double delta_min = 0.4;
  int window = 10;
};

}  // namespace pedsafe
