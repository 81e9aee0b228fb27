#pragma once

// Minimisation of average AoI / AoA over the transmission probabilities
// (q1, q2), plus full-grid sweeps for heatmaps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aoa/analytics.hpp"
#include "aoa/channel.hpp"
#include "aoa/common.hpp"

namespace aoa {

enum class Method { ClosedForm, GridSearch };

enum class OptimumFlag {
  None,
  // The case table disagreed with the cross-check grid.
  CaseTableMismatch,
  // No case-table branch applied; the grid result is returned.
  ExhaustiveFallback,
};

struct CriticalValue {
  enum class Kind { Real, NotReal, Undefined };
  Kind kind = Kind::Undefined;
  double value = 0.0;  // valid only for Kind::Real

  bool is_real() const { return kind == Kind::Real; }
};

struct CriticalPoints {
  CriticalValue theta1;  // q1 of the interior critical point
  CriticalValue theta2;  // q2 of the interior critical point
  CriticalValue delta1;  // regime boundary meets q2 = 1 at q1 = delta1
  CriticalValue delta2;  // regime boundary meets q1 = 1 at q2 = delta2
};

struct OptimumReport {
  double q1_star = 1.0;
  double q2_star = 0.0;
  double value = kInfinity;
  Method method = Method::ClosedForm;
  std::string case_label;
  std::optional<CriticalPoints> critical_points;
  OptimumFlag flag = OptimumFlag::None;
  std::string diagnostic;
};

struct Gradient {
  double d_q1 = 0.0;
  double d_q2 = 0.0;
};

struct SweepGrid {
  double grid_step = 0.01;
  std::vector<double> axis;           // shared by q1 and q2, includes 0 and 1
  std::vector<double> values;         // row-major: q1 outer, q2 inner
  std::vector<std::uint8_t> energy_limited;

  std::size_t size() const { return axis.size(); }
  double at(std::size_t i1, std::size_t i2) const {
    return values[i1 * axis.size() + i2];
  }
  bool limited_at(std::size_t i1, std::size_t i2) const {
    return energy_limited[i1 * axis.size() + i2] != 0;
  }
};

inline constexpr double kDefaultGridStep = 0.01;
// Step of the grid every closed-form AoA optimum is checked against.
inline constexpr double kCrossCheckStep = 0.02;

// Average AoA at (q1, q2).
double aoa_objective(const SuccessProbs& sp, const BatterySpec& spec, double q1,
                     double q2);

// Average AoI is minimised at (1, 0) with value 1 / P_d1. Throws Infeasible
// when P_d1 = 0.
OptimumReport optimize_aoi(const SuccessProbs& sp);

CriticalPoints aoa_critical_points(const SuccessProbs& sp);

// Closed-form case table for the infinite battery, cross-checked on a grid.
OptimumReport optimize_aoa_infinite(const SuccessProbs& sp);

// Exhaustive search on {0, step, ..., 1}^2, ties to larger q1 then smaller
// q2, then optionally one refinement pass at step / 10 around the argmin.
OptimumReport optimize_aoa_finite(const SuccessProbs& sp, std::int64_t capacity,
                                  double grid_step = kDefaultGridStep,
                                  bool refine = true);

// Grid minimiser shared by the finite search and the cross-check.
OptimumReport grid_minimize(const SuccessProbs& sp, const BatterySpec& spec,
                            double grid_step, bool refine);

// Gradient of 1 / P_D. Interior points only.
std::optional<Gradient> gradient_aoi(const SuccessProbs& sp, double q1,
                                     double q2);
// Gradient of the energy-limited branch of the infinite-battery AoA.
std::optional<Gradient> gradient_aoa2(const SuccessProbs& sp, double q1,
                                      double q2);

// Points {0, step, 2 step, ..., 1}; 1 is appended when step does not divide it.
std::vector<double> grid_axis(double step);

SweepGrid sweep(const SuccessProbs& sp, const BatterySpec& spec,
                double grid_step = kDefaultGridStep);

// Header `q1,q2,avg_aoa,energy_limited`, one row per cell, 6 significant
// digits, "inf" for infinite ages.
std::string sweep_to_csv(const SweepGrid& grid);

std::string to_string(Method method);
std::string to_string(OptimumFlag flag);

}  // namespace aoa
