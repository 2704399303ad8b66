#pragma once

#include <string>
#include <vector>

namespace capflow {

struct CriterionResult {
  int id = 0;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

enum class ValidateLevel { quick, full };

/// Runs the acceptance checks. quick skips the simulation- and benchmark-
/// bound criteria (3, 8, 9, 13); full runs everything. `include_perf` can
/// drop criterion 13 (its thread-speedup half needs >= 4 cores).
std::vector<CriterionResult> run_acceptance(ValidateLevel level, bool include_perf = true);

CriterionResult criterion_hilbert_identity();        // 1
CriterionResult criterion_flat_dispersion();         // 2
CriterionResult criterion_linear_decay();            // 3
CriterionResult criterion_frechet_consistency();     // 4
CriterionResult criterion_pressure_jump();           // 5
CriterionResult criterion_velocity_continuity();     // 6
CriterionResult criterion_z_onesided();              // 7
CriterionResult criterion_scaling_invariance();      // 8
CriterionResult criterion_conservation();            // 9
CriterionResult criterion_farfield_decay();          // 10
CriterionResult criterion_stokes_residual();         // 11
CriterionResult criterion_symmetry_suite();          // 12
CriterionResult criterion_performance();             // 13

/// Formats one PASS/FAIL row.
std::string format_criterion(const CriterionResult& r);

}  // namespace capflow
