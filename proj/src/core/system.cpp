#include "core/system.hpp"

#include "core/lp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gptctx {

double pairing(const Vec& e, const Vec& omega) {
    if (e.size() != omega.size())
        throw std::invalid_argument("pairing: dimension mismatch (" + std::to_string(e.size()) +
                                    " vs " + std::to_string(omega.size()) + ")");
    return e.dot(omega);
}

namespace {

constexpr double kStructTol = 1e-12;  // exact-structure recognition

bool is_unit_vector_pattern(const Vec& v) {
    int ones = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double x = v(i);
        if (std::abs(x - 1.0) <= kStructTol) ++ones;
        else if (std::abs(x) > kStructTol) return false;
    }
    return ones == 1;
}

bool is_zero_one_vector(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double x = v(i);
        if (std::abs(x) > kStructTol && std::abs(x - 1.0) > kStructTol) return false;
    }
    return true;
}

Eigen::Index rank_of(const std::vector<Vec>& rows, Eigen::Index dim) {
    if (rows.empty()) return 0;
    Mat m(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i];
    Eigen::ColPivHouseholderQR<Mat> qr(m);
    qr.setThreshold(1e-9);
    return qr.rank();
}

// Distance to [0,1]^n in max-norm: per-coordinate clamping is exact.
double cube_distance(const Vec& f) {
    double d = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i)
        d = std::max({d, -f(i), f(i) - 1.0});
    return std::max(d, 0.0);
}

// Distance to the standard probability simplex in max-norm via bisection:
// at radius t, weights may range over [max(0, v_i - t), v_i + t] (empty when
// v_i + t < 0) and must sum to 1.
double simplex_distance(const Vec& v) {
    auto feasible = [&](double t) {
        double loSum = 0.0, hiSum = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (v(i) + t < 0.0) return false;
            loSum += std::max(0.0, v(i) - t);
            hiSum += v(i) + t;
        }
        return loSum <= 1.0 && 1.0 <= hiSum;
    };
    double lo = 0.0, hi = 1.0 + max_abs(v);
    if (feasible(lo)) return 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return hi;
}

// Chebyshev distance to the convex hull of the given vertices; subConvex
// relaxes the weight sum to <= 1 (adjoining the origin).
double hull_distance(const std::vector<Vec>& verts, const Vec& v, bool subConvex) {
    const Eigen::Index d = v.size();
    const Eigen::Index k = static_cast<Eigen::Index>(verts.size());
    if (k == 0) return subConvex ? max_abs(v) : kInf;

    LinearProgram lp(k + 1);  // weights, then t
    for (Eigen::Index i = 0; i < k; ++i) lp.lo(i) = 0.0;
    lp.lo(k) = 0.0;
    lp.c(k) = 1.0;

    Vec sumRow = Vec::Zero(k + 1);
    sumRow.head(k).setOnes();
    if (subConvex) lp.add_le(sumRow, 1.0);
    else lp.add_eq(sumRow, 1.0);

    for (Eigen::Index j = 0; j < d; ++j) {
        Vec up = Vec::Zero(k + 1);
        for (Eigen::Index i = 0; i < k; ++i) up(i) = verts[static_cast<std::size_t>(i)](j);
        Vec dn = -up;
        up(k) = -1.0;
        dn(k) = -1.0;
        lp.add_le(up, v(j));    //  (sum w V)_j - v_j <= t
        lp.add_le(dn, -v(j));   // -(sum w V)_j + v_j <= t
    }

    LpResult r = solve_lp(lp);
    if (!r.optimal()) throw std::runtime_error("membership LP failed: " + std::string(to_string(r.status)));
    return std::max(0.0, r.value);
}

}  // namespace

bool is_classical_simplex(const GptSystem& sys) {
    const Eigen::Index n = sys.dim;
    if (n < 1 || n > 30) return false;
    if (static_cast<Eigen::Index>(sys.stateVertices.size()) != n) return false;
    if (sys.unitEffect.size() != n) return false;
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(sys.unitEffect(i) - 1.0) > kStructTol) return false;

    std::set<std::uint64_t> basisSeen;
    for (const Vec& s : sys.stateVertices) {
        if (s.size() != n || !is_unit_vector_pattern(s)) return false;
        Eigen::Index pos = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(s(i) - 1.0) <= kStructTol) pos = i;
        if (!basisSeen.insert(static_cast<std::uint64_t>(pos)).second) return false;
    }

    const std::uint64_t wantCount = (n <= 20) ? ((1ull << n) - 1) : 0;
    if (n > 20) return false;  // indicator enumeration capped well above zoo sizes
    if (sys.effectVertices.size() != wantCount) return false;
    std::set<std::uint64_t> masks;
    for (const Vec& f : sys.effectVertices) {
        if (f.size() != n || !is_zero_one_vector(f)) return false;
        std::uint64_t mask = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(f(i) - 1.0) <= kStructTol) mask |= (1ull << i);
        if (mask == 0 || !masks.insert(mask).second) return false;
    }
    return true;
}

double state_distance(const GptSystem& sys, const Vec& v) {
    if (v.size() != sys.dim) throw std::invalid_argument("state_distance: dimension mismatch");
    if (is_classical_simplex(sys)) return simplex_distance(v);
    return hull_distance(sys.stateVertices, v, /*subConvex=*/false);
}

double effect_distance(const GptSystem& sys, const Vec& f) {
    if (f.size() != sys.dim) throw std::invalid_argument("effect_distance: dimension mismatch");
    if (is_classical_simplex(sys)) return cube_distance(f);
    return hull_distance(sys.effectVertices, f, /*subConvex=*/true);
}

bool state_membership(const GptSystem& sys, const Vec& v, double tol) {
    return state_distance(sys, v) <= tol;
}

bool effect_membership(const GptSystem& sys, const Vec& f, double tol) {
    return effect_distance(sys, f) <= tol;
}

ValidationReport validate_system(const GptSystem& sys, double tol) {
    ValidationReport rep;

    if (sys.dim <= 0) {
        rep.add("ambient-dimension", {}, static_cast<double>(sys.dim));
        return rep;
    }
    bool dimsOk = sys.unitEffect.size() == sys.dim;
    if (!dimsOk) rep.add("dimension-mismatch", {-1}, static_cast<double>(sys.unitEffect.size()));
    for (std::size_t i = 0; i < sys.stateVertices.size(); ++i)
        if (sys.stateVertices[i].size() != sys.dim) {
            rep.add("dimension-mismatch", {static_cast<int>(i)}, static_cast<double>(sys.stateVertices[i].size()));
            dimsOk = false;
        }
    for (std::size_t i = 0; i < sys.effectVertices.size(); ++i)
        if (sys.effectVertices[i].size() != sys.dim) {
            rep.add("dimension-mismatch", {static_cast<int>(i)}, static_cast<double>(sys.effectVertices[i].size()));
            dimsOk = false;
        }
    if (!dimsOk) return rep;
    if (sys.stateVertices.empty()) {
        rep.add("state-span", {}, static_cast<double>(sys.dim));
        return rep;
    }

    for (std::size_t i = 0; i < sys.effectVertices.size(); ++i) {
        const Vec& f = sys.effectVertices[i];
        for (std::size_t j = 0; j < sys.stateVertices.size(); ++j) {
            const double p = f.dot(sys.stateVertices[j]);
            if (p < -tol || p > 1.0 + tol)
                rep.add("pairing-range", {static_cast<int>(i), static_cast<int>(j)},
                        std::max(-p, p - 1.0));
        }
    }

    for (std::size_t j = 0; j < sys.stateVertices.size(); ++j) {
        const double p = sys.unitEffect.dot(sys.stateVertices[j]);
        if (std::abs(p - 1.0) > tol)
            rep.add("unit-normalization", {static_cast<int>(j)}, std::abs(p - 1.0));
    }

    for (std::size_t j = 0; j < sys.stateVertices.size(); ++j)
        if (max_abs(sys.stateVertices[j]) <= tol)
            rep.add("zero-state-vertex", {static_cast<int>(j)}, max_abs(sys.stateVertices[j]));

    const Eigen::Index stateRank = rank_of(sys.stateVertices, sys.dim);
    if (stateRank < sys.dim)
        rep.add("state-span", {}, static_cast<double>(sys.dim - stateRank));

    std::vector<Vec> dualRows = sys.effectVertices;
    dualRows.push_back(sys.unitEffect);
    const Eigen::Index effectRank = rank_of(dualRows, sys.dim);
    if (effectRank < sys.dim)
        rep.add("effect-span", {}, static_cast<double>(sys.dim - effectRank));

    return rep;
}

GptSystem minimal_tensor(const GptSystem& A, const GptSystem& B) {
    GptSystem out;
    out.label = A.label + "⊗" + B.label;
    out.dim = A.dim * B.dim;
    out.stateVertices.reserve(A.stateVertices.size() * B.stateVertices.size());
    for (const Vec& a : A.stateVertices)
        for (const Vec& b : B.stateVertices) out.stateVertices.push_back(kron(a, b));
    std::vector<Vec> effects;
    effects.reserve(A.effectVertices.size() * B.effectVertices.size());
    for (const Vec& a : A.effectVertices)
        for (const Vec& b : B.effectVertices) effects.push_back(kron(a, b));
    out.stateVertices = dedup_exact(out.stateVertices);
    out.effectVertices = dedup_exact(effects);
    out.unitEffect = kron(A.unitEffect, B.unitEffect);
    return out;
}

}  // namespace gptctx
