#pragma once

// Linear-program abstraction with a self-contained dense two-phase primal
// simplex backend. Deterministic for fixed input: fixed pivot rules, no
// randomness, no concurrency inside a solve. Optimal solutions satisfy all
// constraints within kLpResidualTol; anything worse is reported as a
// numerical failure rather than passed off as optimal. Infeasibility is
// certified by a positive phase-1 optimum, distinct from solver breakdown.

#include "core/linalg.hpp"

#include <string>
#include <vector>

namespace gptctx {

struct LinearProgram {
    explicit LinearProgram(Eigen::Index nvars)
        : c(Vec::Zero(nvars)),
          lo(Vec::Constant(nvars, -kInf)),
          hi(Vec::Constant(nvars, kInf)) {}

    Eigen::Index nvars() const { return c.size(); }

    Vec c;       // objective, minimized
    Vec lo, hi;  // variable bounds, +-inf allowed

    std::vector<Vec> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<Vec> le_rows;  // row . x <= rhs
    std::vector<double> le_rhs;

    void add_eq(const Vec& row, double rhs) {
        eq_rows.push_back(row);
        eq_rhs.push_back(rhs);
    }
    void add_le(const Vec& row, double rhs) {
        le_rows.push_back(row);
        le_rhs.push_back(rhs);
    }
    void add_ge(const Vec& row, double rhs) { add_le(-row, -rhs); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(LpStatus s);

struct LpResult {
    LpStatus status = LpStatus::NumericalFailure;
    double value = 0.0;
    Vec x;

    bool optimal() const { return status == LpStatus::Optimal; }
};

LpResult solve_lp(const LinearProgram& lp);

// Max-norm violation of lp's constraints and bounds at x (0 when feasible).
double lp_residual(const LinearProgram& lp, const Vec& x);

}  // namespace gptctx
