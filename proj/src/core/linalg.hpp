#pragma once

// Small shared linear-algebra layer: Eigen aliases, Kronecker helpers, and
// the numeric tolerances used across the library.

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <vector>

namespace gptctx {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Default tolerance for memberships and validation (configurable per call).
constexpr double kDefaultTol = 1e-9;

// Internal tolerance when re-validating optimizer certificates: above LP
// round-off, far below every decision threshold (1e-6 and coarser).
constexpr double kCertTol = 1e-8;

// Feasibility contract of the LP backend: optimal solutions satisfy all
// constraints within this residual.
constexpr double kLpResidualTol = 1e-7;

inline Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline bool exactly_equal(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

// Deduplicate by exact byte equality, preserving first-occurrence order.
inline std::vector<Vec> dedup_exact(const std::vector<Vec>& vs) {
    std::vector<Vec> out;
    out.reserve(vs.size());
    for (const Vec& v : vs) {
        bool seen = false;
        for (const Vec& w : out)
            if (exactly_equal(v, w)) { seen = true; break; }
        if (!seen) out.push_back(v);
    }
    return out;
}

inline Mat stack_columns(const std::vector<Vec>& vs, Eigen::Index dim) {
    Mat m(dim, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vs[j];
    return m;
}

}  // namespace gptctx
