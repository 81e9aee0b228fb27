#include "aoa/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "aoa/common.hpp"

namespace aoa {

namespace {

constexpr double kMismatchTolerance = 1e-6;

CriticalValue real(double v) { return {CriticalValue::Kind::Real, v}; }
CriticalValue not_real() { return {CriticalValue::Kind::NotReal, 0.0}; }
CriticalValue undefined() { return {CriticalValue::Kind::Undefined, 0.0}; }

CriticalValue ratio(double num, double den) {
  if (den == 0.0) return undefined();
  return real(num / den);
}

void require_grid_step(double step) {
  require(step > 0.0 && step <= 0.1, "grid_step must lie in (0, 0.1]");
}

struct Candidate {
  double q1 = 1.0;
  double q2 = 0.0;
  double value = kInfinity;
  bool found = false;
};

// Scans q1 descending and q2 ascending, replacing only on a strictly smaller
// value, so ties resolve to the larger q1 and then the smaller q2.
template <typename Objective>
void scan(const std::vector<double>& q1s, const std::vector<double>& q2s,
          Objective&& f, Candidate& best) {
  for (auto i = q1s.rbegin(); i != q1s.rend(); ++i) {
    for (double q2 : q2s) {
      const double v = f(*i, q2);
      if (!best.found || v < best.value) best = {*i, q2, v, true};
    }
  }
}

std::vector<double> local_axis(double centre, double step) {
  const double fine = step / 10.0;
  std::vector<double> axis;
  for (int k = -10; k <= 10; ++k) {
    const double q = k == 0 ? centre : centre + k * fine;
    if (q >= 0.0 && q <= 1.0) axis.push_back(q);
  }
  return axis;
}

std::string format_g(double v, int digits) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

double aoa_objective(const SuccessProbs& sp, const BatterySpec& spec, double q1,
                     double q2) {
  return avg_aoa(outcome_distribution(sp, q1, q2), spec);
}

OptimumReport optimize_aoi(const SuccessProbs& sp) {
  sp.validate();
  if (sp.p_d1 <= 0.0) {
    throw Error(ErrorCode::Infeasible,
                "p_d1 = 0: average AoI is infinite for every (q1, q2)");
  }
  OptimumReport rep;
  rep.q1_star = 1.0;
  rep.q2_star = 0.0;
  rep.value = 1.0 / sp.p_d1;
  rep.method = Method::ClosedForm;
  rep.case_label = "data transmitter always on, power transmitter silent";
  return rep;
}

CriticalPoints aoa_critical_points(const SuccessProbs& sp) {
  sp.validate();
  const double d1 = sp.p_d1, d12 = sp.p_d12, e2 = sp.p_e2, e12 = sp.p_e12;
  CriticalPoints cp;
  cp.delta2 = ratio(d1, d1 + e12 - d12);
  cp.delta1 = ratio(e2, e2 + d12 - e12);

  if (e12 > e2) {
    cp.theta1 = not_real();
    cp.theta2 = not_real();
    return cp;
  }
  const double root = std::sqrt((d1 - d12) * e2 * e2 * (e2 - e12));
  const double slope = d1 - d12 + e12 - e2;
  if (e12 == e2 || slope == 0.0) {
    cp.theta1 = undefined();
    cp.theta2 = undefined();
    return cp;
  }
  cp.theta1 = ratio(e2 * (e2 - e12) - root, (e12 - e2) * slope);
  cp.theta2 = ratio(d1 * (e12 * e2 - e2 * e2 + root), slope * root);
  return cp;
}

OptimumReport optimize_aoa_infinite(const SuccessProbs& sp) {
  sp.validate();
  const double d1 = sp.p_d1, d12 = sp.p_d12, e2 = sp.p_e2, e12 = sp.p_e12;
  const CriticalPoints cp = aoa_critical_points(sp);

  OptimumReport rep;
  rep.method = Method::ClosedForm;
  rep.critical_points = cp;

  auto set = [&](double q1, double q2, double value, std::string label) {
    rep.q1_star = q1;
    rep.q2_star = q2;
    rep.value = value;
    rep.case_label = std::move(label);
    return true;
  };
  auto boundary_q2 = [&] {
    return set(1.0, cp.delta2.value, (d1 - d12 + e12) / (d1 * e12),
               "P_e12 < P_e2, theta1 > 1, P_d12 < P_e12");
  };

  bool matched = false;
  if (e12 > e2) {
    if (d12 >= e12) {
      matched = set(1.0, 1.0, 1.0 / e12, "P_e12 > P_e2, P_d12 >= P_e12");
    } else if (cp.delta2.is_real()) {
      matched = set(1.0, cp.delta2.value, (d1 - d12 + e12) / (d1 * e12),
                    "P_e12 > P_e2, P_d12 < P_e12");
    }
  } else if (e12 < e2 && cp.theta1.is_real() && cp.theta2.is_real()) {
    const double t1 = cp.theta1.value, t2 = cp.theta2.value;
    const bool t1_lo = t1 < 1.0, t1_hi = t1 > 1.0;
    const bool t2_lo = t2 < 1.0, t2_hi = t2 > 1.0;
    if (t1_lo && t2_lo) {
      // Negative critical coordinates are outside the feasible square.
      if (t1 >= 0.0 && t2 >= 0.0) {
        BatterySpec inf = BatterySpec::infinite();
        matched = set(t1, t2, aoa_objective(sp, inf, t1, t2),
                      "P_e12 < P_e2, theta1 < 1, theta2 < 1");
      }
    } else if (((t1_lo && t2_hi) || (t1_hi && t2_hi)) && d12 > e12 &&
               cp.delta1.is_real()) {
      matched = set(cp.delta1.value, 1.0, (d12 - e12 + e2) / (d12 * e2),
                    "P_e12 < P_e2, theta2 > 1, P_d12 > P_e12");
    } else if (((t1_hi && t2_lo) || (t1_hi && t2_hi)) && d12 < e12 &&
               cp.delta2.is_real()) {
      matched = boundary_q2();
    } else if (t1_hi && t2_hi && d12 == e12) {
      // The value condition of this branch is printed as a chained
      // inequality with a repeated term; read as P_e12 < P_e2.
      matched = set(1.0, 1.0, 1.0 / e12,
                    "P_e12 < P_e2, theta1 > 1, theta2 > 1, P_d12 = P_e12");
    }
  }

  if (!matched) {
    OptimumReport grid = grid_minimize(sp, BatterySpec::infinite(),
                                       kDefaultGridStep, true);
    grid.critical_points = cp;
    grid.flag = OptimumFlag::ExhaustiveFallback;
    grid.case_label = "no case-table branch applies";
    grid.diagnostic =
        "no closed-form branch matched; returned the refined grid minimum";
    return grid;
  }

  const OptimumReport check =
      grid_minimize(sp, BatterySpec::infinite(), kCrossCheckStep, false);
  if (check.value < rep.value - kMismatchTolerance) {
    rep.flag = OptimumFlag::CaseTableMismatch;
    std::ostringstream msg;
    msg.precision(12);
    msg << "grid point (" << check.q1_star << ", " << check.q2_star
        << ") gives " << check.value << " < case-table value " << rep.value;
    rep.diagnostic = msg.str();
  }
  return rep;
}

OptimumReport grid_minimize(const SuccessProbs& sp, const BatterySpec& spec,
                            double grid_step, bool refine) {
  sp.validate();
  require_grid_step(grid_step);
  auto f = [&](double q1, double q2) { return aoa_objective(sp, spec, q1, q2); };

  const std::vector<double> axis = grid_axis(grid_step);
  Candidate best;
  scan(axis, axis, f, best);
  if (refine) {
    scan(local_axis(best.q1, grid_step), local_axis(best.q2, grid_step), f,
         best);
  }

  OptimumReport rep;
  rep.q1_star = best.q1;
  rep.q2_star = best.q2;
  rep.value = best.value;
  rep.method = Method::GridSearch;
  rep.case_label = refine ? "grid search with refinement" : "grid search";
  return rep;
}

OptimumReport optimize_aoa_finite(const SuccessProbs& sp, std::int64_t capacity,
                                  double grid_step, bool refine) {
  return grid_minimize(sp, BatterySpec::finite(capacity), grid_step, refine);
}

std::optional<Gradient> gradient_aoi(const SuccessProbs& sp, double q1,
                                     double q2) {
  if (!(q1 > 0.0 && q1 < 1.0 && q2 > 0.0 && q2 < 1.0)) return std::nullopt;
  const double pd = sp.p_d1 * q1 * (1.0 - q2) + sp.p_d12 * q1 * q2;
  if (pd <= 0.0) return std::nullopt;
  const double pd_sq = pd * pd;
  return Gradient{
      .d_q1 = -(sp.p_d1 * (1.0 - q2) + sp.p_d12 * q2) / pd_sq,
      .d_q2 = q1 * (sp.p_d1 - sp.p_d12) / pd_sq,
  };
}

std::optional<Gradient> gradient_aoa2(const SuccessProbs& sp, double q1,
                                      double q2) {
  if (!(q1 > 0.0 && q1 < 1.0 && q2 > 0.0 && q2 < 1.0)) return std::nullopt;
  // Minus the energy success probability given transmitter 2 is active.
  const double x = (q1 - 1.0) * sp.p_e2 - q1 * sp.p_e12;
  if (x == 0.0) return std::nullopt;
  return Gradient{
      .d_q1 = (sp.p_e2 - sp.p_e12) / (x * x * q2),
      .d_q2 = 1.0 / (x * q2 * q2),
  };
}

std::vector<double> grid_axis(double step) {
  require(step > 0.0 && step <= 1.0, "grid step must lie in (0, 1]");
  std::vector<double> axis;
  const double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) < 1e-9) {
    const auto count = static_cast<std::int64_t>(n);
    for (std::int64_t i = 0; i <= count; ++i) {
      axis.push_back(static_cast<double>(i) / n);
    }
    return axis;
  }
  for (std::int64_t i = 0;; ++i) {
    const double q = static_cast<double>(i) * step;
    if (q >= 1.0 - 1e-12) break;
    axis.push_back(q);
  }
  axis.push_back(1.0);
  return axis;
}

SweepGrid sweep(const SuccessProbs& sp, const BatterySpec& spec,
                double grid_step) {
  sp.validate();
  require_grid_step(grid_step);
  SweepGrid grid;
  grid.grid_step = grid_step;
  grid.axis = grid_axis(grid_step);
  const std::size_t n = grid.axis.size();
  grid.values.reserve(n * n);
  grid.energy_limited.reserve(n * n);
  for (double q1 : grid.axis) {
    for (double q2 : grid.axis) {
      const OutcomeDistribution out = outcome_distribution(sp, q1, q2);
      grid.values.push_back(avg_aoa(out, spec));
      grid.energy_limited.push_back(regime(out) == Regime::EnergyLimited ? 1 : 0);
    }
  }
  return grid;
}

std::string sweep_to_csv(const SweepGrid& grid) {
  std::string csv = "q1,q2,avg_aoa,energy_limited\n";
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      csv += format_g(grid.axis[i], 6);
      csv += ',';
      csv += format_g(grid.axis[j], 6);
      csv += ',';
      csv += format_g(grid.at(i, j), 6);
      csv += grid.limited_at(i, j) ? ",1\n" : ",0\n";
    }
  }
  return csv;
}

std::string to_string(Method method) {
  return method == Method::ClosedForm ? "closed_form" : "grid_search";
}

std::string to_string(OptimumFlag flag) {
  switch (flag) {
    case OptimumFlag::None: return "none";
    case OptimumFlag::CaseTableMismatch: return "case_table_mismatch";
    case OptimumFlag::ExhaustiveFallback: return "exhaustive_fallback";
  }
  return "none";
}

}  // namespace aoa
