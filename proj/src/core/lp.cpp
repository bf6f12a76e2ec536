#include "core/lp.hpp"

#include <algorithm>
#include <cmath>

namespace gptctx {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::NumericalFailure: return "numerical-failure";
    }
    return "numerical-failure";
}

double lp_residual(const LinearProgram& lp, const Vec& x) {
    double r = 0.0;
    for (std::size_t i = 0; i < lp.eq_rows.size(); ++i)
        r = std::max(r, std::abs(lp.eq_rows[i].dot(x) - lp.eq_rhs[i]));
    for (std::size_t i = 0; i < lp.le_rows.size(); ++i)
        r = std::max(r, lp.le_rows[i].dot(x) - lp.le_rhs[i]);
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (std::isfinite(lp.lo(j))) r = std::max(r, lp.lo(j) - x(j));
        if (std::isfinite(lp.hi(j))) r = std::max(r, x(j) - lp.hi(j));
    }
    return r;
}

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kPhase1FeasTol = 1e-8;

// One column of the standard-form program and how it maps back to an
// original variable: x[orig] = offset + sign * y.
struct ColMap {
    Eigen::Index orig;
    double sign;
    double offset;
};

struct Standardizer {
    std::vector<ColMap> cols;
    // Rows of the standard-form system A y = b (before any pivoting), built
    // from equalities, <= rows with slacks, and upper-bound rows.
    Mat A;
    Vec b;
    Eigen::Index nyCols = 0;     // structural y columns (before slacks)
    Eigen::Index nSlack = 0;
    Eigen::Index nEq = 0;        // leading rows without a slack column
    bool ok = true;

    Vec recover(const Vec& y) const {
        Eigen::Index nx = 0;
        for (const ColMap& cm : cols) nx = std::max(nx, cm.orig + 1);
        Vec x = Vec::Zero(nx);
        // Offsets first (each original variable has at least one column).
        std::vector<char> seen(static_cast<std::size_t>(nx), 0);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const ColMap& cm = cols[j];
            if (!seen[static_cast<std::size_t>(cm.orig)]) {
                x(cm.orig) = cm.offset;
                seen[static_cast<std::size_t>(cm.orig)] = 1;
            }
            x(cm.orig) += cm.sign * y(static_cast<Eigen::Index>(j));
        }
        return x;
    }
};

Standardizer standardize(const LinearProgram& lp) {
    Standardizer st;
    const Eigen::Index n = lp.nvars();

    std::vector<std::vector<Eigen::Index>> varCols(static_cast<std::size_t>(n));
    std::vector<std::pair<Eigen::Index, double>> ubRows;  // (y column, bound)

    for (Eigen::Index i = 0; i < n; ++i) {
        const double lo = lp.lo(i), hi = lp.hi(i);
        if (std::isfinite(lo) && std::isfinite(hi) && hi < lo) { st.ok = false; return st; }
        if (std::isfinite(lo)) {
            st.cols.push_back({i, 1.0, lo});
            varCols[static_cast<std::size_t>(i)].push_back(static_cast<Eigen::Index>(st.cols.size() - 1));
            if (std::isfinite(hi))
                ubRows.emplace_back(static_cast<Eigen::Index>(st.cols.size() - 1), hi - lo);
        } else if (std::isfinite(hi)) {
            st.cols.push_back({i, -1.0, hi});
            varCols[static_cast<std::size_t>(i)].push_back(static_cast<Eigen::Index>(st.cols.size() - 1));
        } else {
            st.cols.push_back({i, 1.0, 0.0});
            varCols[static_cast<std::size_t>(i)].push_back(static_cast<Eigen::Index>(st.cols.size() - 1));
            st.cols.push_back({i, -1.0, 0.0});
            varCols[static_cast<std::size_t>(i)].push_back(static_cast<Eigen::Index>(st.cols.size() - 1));
        }
    }
    st.nyCols = static_cast<Eigen::Index>(st.cols.size());

    const Eigen::Index mEq = static_cast<Eigen::Index>(lp.eq_rows.size());
    const Eigen::Index mLe = static_cast<Eigen::Index>(lp.le_rows.size());
    const Eigen::Index mUb = static_cast<Eigen::Index>(ubRows.size());
    const Eigen::Index m = mEq + mLe + mUb;
    st.nSlack = mLe + mUb;
    st.nEq = mEq;
    const Eigen::Index N = st.nyCols + st.nSlack;

    st.A = Mat::Zero(m, N);
    st.b = Vec::Zero(m);

    auto putRow = [&](Eigen::Index r, const Vec& row, double rhs) {
        double shifted = rhs;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = row(i);
            if (a == 0.0) continue;
            for (Eigen::Index jc : varCols[static_cast<std::size_t>(i)]) {
                st.A(r, jc) += a * st.cols[static_cast<std::size_t>(jc)].sign;
            }
            shifted -= a * st.cols[static_cast<std::size_t>(varCols[static_cast<std::size_t>(i)][0])].offset;
        }
        st.b(r) = shifted;
    };

    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < mEq; ++i, ++r) putRow(r, lp.eq_rows[static_cast<std::size_t>(i)], lp.eq_rhs[static_cast<std::size_t>(i)]);
    for (Eigen::Index i = 0; i < mLe; ++i, ++r) {
        putRow(r, lp.le_rows[static_cast<std::size_t>(i)], lp.le_rhs[static_cast<std::size_t>(i)]);
        st.A(r, st.nyCols + i) = 1.0;
    }
    for (Eigen::Index i = 0; i < mUb; ++i, ++r) {
        st.A(r, ubRows[static_cast<std::size_t>(i)].first) = 1.0;
        st.A(r, st.nyCols + mLe + i) = 1.0;
        st.b(r) = ubRows[static_cast<std::size_t>(i)].second;
    }
    return st;
}

// Row-major storage: the simplex inner loops are whole-row eliminations.
using TabMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Full-tableau two-phase simplex over [A | b]. Rows below nEq own the slack
// column slackBase + (row - nEq); those start with their slack basic when the
// right-hand side is nonnegative, so artificials are added only where needed
// (equalities and flipped rows). After phase 1 the artificials are pivoted
// out — dependent rows dropped — and their columns discarded, so phase 2 runs
// on the real system alone.
class Tableau {
public:
    Tableau(const Mat& A, const Vec& b, Eigen::Index nEq, Eigen::Index slackBase)
        : m_(A.rows()), nReal_(A.cols()) {
        std::vector<char> flip(static_cast<std::size_t>(m_), 0);
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (b(i) < 0.0) flip[static_cast<std::size_t>(i)] = 1;
            if (i < nEq || flip[static_cast<std::size_t>(i)]) artRows_.push_back(i);
        }
        nArt_ = static_cast<Eigen::Index>(artRows_.size());
        T_.resize(m_, nReal_ + nArt_ + 1);
        T_.setZero();
        T_.block(0, 0, m_, nReal_) = A;
        T_.col(nReal_ + nArt_) = b;
        basis_.assign(static_cast<std::size_t>(m_), -1);
        for (Eigen::Index i = nEq; i < m_; ++i)
            basis_[static_cast<std::size_t>(i)] = slackBase + (i - nEq);
        for (Eigen::Index i = 0; i < m_; ++i)
            if (flip[static_cast<std::size_t>(i)]) T_.row(i) = -T_.row(i);
        for (Eigen::Index k = 0; k < nArt_; ++k) {
            const Eigen::Index r = artRows_[static_cast<std::size_t>(k)];
            T_(r, nReal_ + k) = 1.0;
            basis_[static_cast<std::size_t>(r)] = nReal_ + k;
        }
        rowOrig_.resize(static_cast<std::size_t>(m_));
        for (Eigen::Index i = 0; i < m_; ++i) rowOrig_[static_cast<std::size_t>(i)] = i;
        A0_ = T_.leftCols(nReal_ + nArt_);
        b0_ = T_.col(nReal_ + nArt_);
    }

    // Initial (pre-pivot) augmented system, artificial columns included.
    const Mat& initialA() const { return A0_; }
    const Vec& initialB() const { return b0_; }

    // The same system restricted to rows that survived the purge (columns:
    // real only). Valid once purgeArtificials() has run (or never needed).
    void survivingSystem(Mat& A, Vec& b) const {
        A.resize(m_, nReal_);
        b.resize(m_);
        for (Eigen::Index i = 0; i < m_; ++i) {
            A.row(i) = A0_.row(rowOrig_[static_cast<std::size_t>(i)]).head(nReal_);
            b(i) = b0_(rowOrig_[static_cast<std::size_t>(i)]);
        }
    }

    Eigen::Index rows() const { return m_; }
    Eigen::Index realCols() const { return nReal_; }
    Eigen::Index artCount() const { return nArt_; }

    Vec solution() const {
        Vec y = Vec::Zero(nReal_);
        for (Eigen::Index i = 0; i < m_; ++i) {
            const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
            if (j < nReal_) y(j) = T_(i, nReal_ + nArt_);
        }
        return y;
    }

    double artificialMass() const {
        double s = 0.0;
        for (Eigen::Index i = 0; i < m_; ++i)
            if (basis_[static_cast<std::size_t>(i)] >= nReal_) s += std::abs(T_(i, nReal_ + nArt_));
        return s;
    }

    const std::vector<Eigen::Index>& basis() const { return basis_; }

    // Drive leftover artificials out of the basis (their values are ~0 after
    // a feasible phase 1). A row offering no usable real pivot is numerically
    // dependent on the others and is dropped; the final lp residual check
    // still guards the full original system. Artificial columns go away.
    void purgeArtificials() {
        std::vector<char> keep(static_cast<std::size_t>(m_), 1);
        Eigen::Index mKeep = m_;
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < nReal_) continue;
            Eigen::Index enter = -1;
            double best = 1e-7;  // refuse pivots that would amplify noise
            for (Eigen::Index j = 0; j < nReal_; ++j) {
                const double a = std::abs(T_(i, j));
                if (a > best) { best = a; enter = j; }
            }
            if (enter >= 0) {
                pivot(i, enter);
            } else {
                keep[static_cast<std::size_t>(i)] = 0;
                --mKeep;
            }
        }
        TabMat T2(mKeep, nReal_ + 1);
        std::vector<Eigen::Index> basis2;
        std::vector<Eigen::Index> rowOrig2;
        basis2.reserve(static_cast<std::size_t>(mKeep));
        rowOrig2.reserve(static_cast<std::size_t>(mKeep));
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (!keep[static_cast<std::size_t>(i)]) continue;
            T2.row(r).head(nReal_) = T_.row(i).head(nReal_);
            T2(r, nReal_) = T_(i, nReal_ + nArt_);
            basis2.push_back(basis_[static_cast<std::size_t>(i)]);
            rowOrig2.push_back(rowOrig_[static_cast<std::size_t>(i)]);
            ++r;
        }
        T_.swap(T2);
        basis_.swap(basis2);
        rowOrig_.swap(rowOrig2);
        m_ = mKeep;
        nArt_ = 0;
    }

    // Minimize cost (length = realCols; phase 1 prices artificials instead).
    // Returns Optimal, Unbounded, or NumericalFailure.
    LpStatus run(const Vec& cost, bool phase1) {
        const Eigen::Index width = nReal_ + nArt_;
        const Eigen::Index rhs = width;
        Vec d = reducedCosts(cost, phase1);
        bool bland = false;
        int degenerateStreak = 0;
        long iter = 0;
        const long iterCap = 5000 + 50 * static_cast<long>(m_ + nReal_);
        const double costScale = std::max(1.0, phase1 ? 1.0 : max_abs(cost));

        while (true) {
            if (++iter > iterCap) return LpStatus::NumericalFailure;
            if (iter % 128 == 0) d = reducedCosts(cost, phase1);  // drift control

            // Entering column; artificials never re-enter.
            Eigen::Index enter = -1;
            if (!bland) {
                double best = -kReducedCostTol * costScale;
                for (Eigen::Index j = 0; j < nReal_; ++j)
                    if (d(j) < best) { best = d(j); enter = j; }
            } else {
                for (Eigen::Index j = 0; j < nReal_; ++j)
                    if (d(j) < -kReducedCostTol * costScale) { enter = j; break; }
            }
            if (enter < 0) return LpStatus::Optimal;

            Eigen::Index leave = -1;
            double bestRatio = kInf;
            for (Eigen::Index i = 0; i < m_; ++i) {
                const double a = T_(i, enter);
                if (a <= kPivotTol) continue;
                const double ratio = T_(i, rhs) / a;
                if (ratio < bestRatio - 1e-12 ||
                    (ratio < bestRatio + 1e-12 &&
                     (leave < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]))) {
                    bestRatio = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return LpStatus::Unbounded;

            if (bestRatio <= 1e-12) {
                if (++degenerateStreak > 400) bland = true;
            } else {
                degenerateStreak = 0;
                bland = false;
            }

            pivot(leave, enter);
            // Update reduced costs by the same elimination.
            const double dj = d(enter);
            if (dj != 0.0) d -= dj * T_.row(leave).head(width).transpose();
            d(enter) = 0.0;
        }
    }

private:
    Vec reducedCosts(const Vec& cost, bool phase1) const {
        const Eigen::Index width = nReal_ + nArt_;
        Vec full = Vec::Zero(width);
        if (phase1) full.segment(nReal_, nArt_).setOnes();
        else full.head(nReal_) = cost;
        Vec d = full;
        for (Eigen::Index i = 0; i < m_; ++i) {
            const double cb = full(basis_[static_cast<std::size_t>(i)]);
            if (cb != 0.0) d -= cb * T_.row(i).head(width).transpose();
        }
        for (Eigen::Index i = 0; i < m_; ++i) d(basis_[static_cast<std::size_t>(i)]) = 0.0;
        return d;
    }

    void pivot(Eigen::Index leave, Eigen::Index enter) {
        T_.row(leave) /= T_(leave, enter);
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (i == leave) continue;
            const double f = T_(i, enter);
            if (f != 0.0) T_.row(i) -= f * T_.row(leave);
        }
        basis_[static_cast<std::size_t>(leave)] = enter;
    }

    Eigen::Index m_, nReal_;
    Eigen::Index nArt_ = 0;
    std::vector<Eigen::Index> artRows_;
    TabMat T_;
    Mat A0_;
    Vec b0_;
    std::vector<Eigen::Index> basis_;
    std::vector<Eigen::Index> rowOrig_;
};

// Re-solve the basic system from the untouched pre-pivot data to strip
// accumulated tableau round-off. A spans the columns basis indexes into.
bool refineBasic(const Mat& A, const Vec& b, const std::vector<Eigen::Index>& basis, Vec& yOut) {
    const Eigen::Index m = A.rows();
    Mat B(m, m);
    for (Eigen::Index i = 0; i < m; ++i) B.col(i) = A.col(basis[static_cast<std::size_t>(i)]);
    Eigen::PartialPivLU<Mat> lu(B);
    Vec yB = lu.solve(b);
    if (!yB.allFinite()) return false;
    if ((B * yB - b).cwiseAbs().maxCoeff() > 1e-6 * std::max(1.0, max_abs(b))) return false;
    yOut = Vec::Zero(A.cols());
    for (Eigen::Index i = 0; i < m; ++i) {
        if (yB(i) < 0.0 && yB(i) > -1e-9) yB(i) = 0.0;
        yOut(basis[static_cast<std::size_t>(i)]) = yB(i);
    }
    return true;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    LpResult res;
    const Eigen::Index n = lp.nvars();
    if (n == 0) {
        bool feasible = true;
        for (std::size_t i = 0; i < lp.eq_rows.size(); ++i)
            if (std::abs(lp.eq_rhs[i]) > kPhase1FeasTol) feasible = false;
        for (std::size_t i = 0; i < lp.le_rows.size(); ++i)
            if (lp.le_rhs[i] < -kPhase1FeasTol) feasible = false;
        res.status = feasible ? LpStatus::Optimal : LpStatus::Infeasible;
        res.value = 0.0;
        res.x = Vec::Zero(0);
        return res;
    }

    Standardizer st = standardize(lp);
    if (!st.ok) {
        res.status = LpStatus::Infeasible;
        return res;
    }

    // Standard-form cost over y columns (slacks cost 0).
    const Eigen::Index N = st.A.cols();
    Vec cost = Vec::Zero(N);
    for (std::size_t j = 0; j < st.cols.size(); ++j)
        cost(static_cast<Eigen::Index>(j)) = lp.c(st.cols[j].orig) * st.cols[j].sign;

    const Eigen::Index m = st.A.rows();
    if (m == 0) {
        // Bounds only: optimum sits at y = 0 unless some cost points down.
        for (Eigen::Index j = 0; j < N; ++j)
            if (cost(j) < -kReducedCostTol * std::max(1.0, max_abs(cost))) {
                res.status = LpStatus::Unbounded;
                return res;
            }
        res.x = st.recover(Vec::Zero(N));
        res.status = LpStatus::Optimal;
        res.value = lp.c.dot(res.x);
        return res;
    }

    Tableau tab(st.A, st.b, st.nEq, st.nyCols);
    const double bScale = std::max(1.0, max_abs(st.b));

    if (tab.artCount() > 0) {
        LpStatus ph1 = tab.run(Vec(), /*phase1=*/true);
        if (ph1 == LpStatus::Unbounded || ph1 == LpStatus::NumericalFailure) {
            res.status = LpStatus::NumericalFailure;
            return res;
        }
        // Judge feasibility from a refreshed basic solution when possible.
        double infeasMass = tab.artificialMass();
        {
            Vec yRef;
            if (refineBasic(tab.initialA(), tab.initialB(), tab.basis(), yRef)) {
                double massRef = 0.0;
                for (Eigen::Index i = 0; i < m; ++i) {
                    const Eigen::Index bj = tab.basis()[static_cast<std::size_t>(i)];
                    if (bj >= N) massRef += std::abs(yRef(bj));
                }
                infeasMass = massRef;
            }
        }
        if (infeasMass > kPhase1FeasTol * bScale) {
            res.status = LpStatus::Infeasible;
            res.value = infeasMass;
            return res;
        }
        tab.purgeArtificials();
    }

    LpStatus ph2 = tab.run(cost, /*phase1=*/false);
    if (ph2 == LpStatus::Unbounded) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    if (ph2 != LpStatus::Optimal) {
        res.status = LpStatus::NumericalFailure;
        return res;
    }

    Mat Asur;
    Vec bsur;
    tab.survivingSystem(Asur, bsur);
    Vec y;
    if (!refineBasic(Asur, bsur, tab.basis(), y) || y.minCoeff() < -1e-7) y = tab.solution();
    for (Eigen::Index j = 0; j < y.size(); ++j)
        if (y(j) < 0.0) y(j) = 0.0;

    res.x = st.recover(y);
    res.value = lp.c.dot(res.x);
    res.status = LpStatus::Optimal;
    if (lp_residual(lp, res.x) > kLpResidualTol) res.status = LpStatus::NumericalFailure;
    return res;
}

}  // namespace gptctx
