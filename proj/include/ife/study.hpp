#pragma once

// Convergence-study driver: runs interpolation or Galerkin solves across
// mesh levels and emits per-level errors and rates as CSV.

#include <string>
#include <vector>

#include "ife/norms.hpp"

namespace ife {

enum class StudyMode { Interp, Galerkin };

struct StudyConfig {
    StudyMode mode = StudyMode::Galerkin;
    DofKind kind = DofKind::Integral;
    double beta_minus = 1.0;
    double beta_plus = 10.0;
    double r0 = M_PI / 6.28;
    double a = 5.0;
    std::vector<int> levels = {10, 20, 40, 80, 160};
    double solver_tol = 1e-12;
    std::string output_path = "study.csv";
    unsigned seed = 0;
};

// Throws std::invalid_argument for invalid configs (non-doubling levels,
// nonpositive coefficients, interface reaching the domain boundary).
void validate(const StudyConfig& cfg);

struct LevelStats {
    long solve_iters = 0;
    double seconds = 0.0;
};

struct StudyResult {
    StudyConfig config;
    ErrorReport report;
    std::vector<LevelStats> stats;  // one per level
};

StudyResult run_study(const StudyConfig& cfg);

// Header: N,linf,linf_rate,l2,l2_rate,h1,h1_rate,solve_iters,seconds.
// Config echo as leading '#' comment lines; 6 significant digits scientific;
// rate cells are blank on the first row and for undefined rates.
std::string csv_string(const StudyResult& res);
void emit_csv(const StudyResult& res, const std::string& path);

}  // namespace ife
