#include "zoo/systems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace gptctx {

namespace {

std::string format_param(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

// Snap coordinates that are within 1e-9 of an exact lattice value; the 3x3
// solves below reproduce exact values to ~1e-15, so this only cleans noise.
double snap(double x) {
    for (double target : {0.0, 0.5, -0.5, 1.0, -1.0})
        if (std::abs(x - target) <= 1e-9) return target;
    return x;
}

}  // namespace

GptSystem make_simplex(int n) {
    if (n < 1) throw std::invalid_argument("make_simplex: n must be >= 1");
    if (n > 16) throw std::invalid_argument("make_simplex: n capped at 16 (2^n effect vertices)");
    GptSystem s;
    s.label = "simplex:" + std::to_string(n);
    s.dim = n;
    for (int i = 0; i < n; ++i) {
        Vec v = Vec::Zero(n);
        v(i) = 1.0;
        s.stateVertices.push_back(v);
    }
    s.effectVertices.reserve((1u << n) - 1);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Vec f = Vec::Zero(n);
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) f(i) = 1.0;
        s.effectVertices.push_back(f);
    }
    s.unitEffect = Vec::Ones(n);
    return s;
}

GptSystem make_noisy_bit(double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw std::invalid_argument("make_noisy_bit: alpha must be in (0, 0.5]");
    GptSystem s;
    s.label = "noisy-bit:" + format_param(alpha);
    s.dim = 2;
    s.stateVertices = {(Vec(2) << 1, 0).finished(), (Vec(2) << 0, 1).finished()};
    Vec chi1(2), chi2(2);
    chi1 << 1.0 - alpha, alpha;
    chi2 << alpha, 1.0 - alpha;
    s.effectVertices = {chi1, chi2, Vec::Ones(2)};
    s.unitEffect = Vec::Ones(2);
    return s;
}

GptSystem make_toy_bit() {
    GptSystem s;
    s.label = "toy-bit";
    s.dim = 4;
    for (int axis = 1; axis <= 3; ++axis)
        for (double sign : {1.0, -1.0}) {
            Vec v = Vec::Zero(4);
            v(0) = 1.0;
            v(axis) = sign;
            s.stateVertices.push_back(v);
            s.effectVertices.push_back(0.5 * v);
        }
    Vec u = Vec::Zero(4);
    u(0) = 1.0;
    s.effectVertices.push_back(u);
    s.unitEffect = u;
    return s;
}

GptSystem make_square_gbit() {
    GptSystem s;
    s.label = "squit";
    s.dim = 3;
    // State order is (++, +-, -+, --).
    for (double a : {1.0, -1.0})
        for (double b : {1.0, -1.0})
            s.stateVertices.push_back((Vec(3) << 1, a, b).finished());
    for (int axis : {1, 2})
        for (double sign : {1.0, -1.0}) {
            Vec f = Vec::Zero(3);
            f(0) = 1.0;
            f(axis) = sign;
            s.effectVertices.push_back(0.5 * f);
        }
    Vec u = Vec::Zero(3);
    u(0) = 1.0;
    s.effectVertices.push_back(u);
    s.unitEffect = u;
    return s;
}

GptSystem make_polygon(int k) {
    if (k < 3) throw std::invalid_argument("make_polygon: k must be >= 3");
    if (k > 24) throw std::invalid_argument("make_polygon: k capped at 24");
    GptSystem s;
    s.label = "polygon:" + std::to_string(k);
    s.dim = 3;
    for (int j = 0; j < k; ++j) {
        const double th = 2.0 * std::numbers::pi * j / k;
        s.stateVertices.push_back((Vec(3) << 1.0, std::cos(th), std::sin(th)).finished());
    }

    // Effect polytope {f : f·ω_j ∈ [0,1] ∀j}: enumerate vertices as triples
    // of active constraints (each either the 0- or the 1-face of some j).
    struct Plane {
        Vec normal;
        double rhs;
    };
    std::vector<Plane> planes;
    for (const Vec& w : s.stateVertices) {
        planes.push_back({w, 1.0});
        planes.push_back({w, 0.0});
    }
    const int P = static_cast<int>(planes.size());
    std::vector<Vec> found;
    for (int a = 0; a < P; ++a)
        for (int b = a + 1; b < P; ++b)
            for (int c = b + 1; c < P; ++c) {
                Mat M(3, 3);
                M.row(0) = planes[a].normal;
                M.row(1) = planes[b].normal;
                M.row(2) = planes[c].normal;
                if (std::abs(M.determinant()) < 1e-9) continue;
                Vec rhs(3);
                rhs << planes[a].rhs, planes[b].rhs, planes[c].rhs;
                Vec f = M.partialPivLu().solve(rhs);
                bool inside = true;
                for (const Vec& w : s.stateVertices) {
                    const double p = f.dot(w);
                    if (p < -1e-9 || p > 1.0 + 1e-9) { inside = false; break; }
                }
                if (!inside) continue;
                for (int i = 0; i < 3; ++i) f(i) = snap(f(i));
                bool dup = false;
                for (const Vec& g : found)
                    if ((g - f).cwiseAbs().maxCoeff() <= 1e-9) { dup = true; break; }
                if (!dup) found.push_back(f);
            }

    std::sort(found.begin(), found.end(), [](const Vec& x, const Vec& y) {
        for (int i = 0; i < 3; ++i) {
            if (x(i) < y(i) - 1e-12) return true;
            if (x(i) > y(i) + 1e-12) return false;
        }
        return false;
    });
    Vec u = Vec::Zero(3);
    u(0) = 1.0;
    for (const Vec& f : found)
        if (f.cwiseAbs().maxCoeff() > 1e-9) s.effectVertices.push_back(f);
    s.unitEffect = u;
    return s;
}

std::optional<GptSystem> make_from_name(const std::string& name) {
    auto param = [&](const std::string& prefix) -> std::optional<std::string> {
        if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size())
            return name.substr(prefix.size());
        return std::nullopt;
    };
    auto parse_int = [](const std::string& text) -> std::optional<int> {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(text, &pos);
            if (pos != text.size()) return std::nullopt;
            return v;
        } catch (const std::exception&) { return std::nullopt; }
    };
    auto parse_real = [](const std::string& text) -> std::optional<double> {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) return std::nullopt;
            return v;
        } catch (const std::exception&) { return std::nullopt; }
    };

    if (name == "toy-bit") return make_toy_bit();
    if (name == "squit") return make_square_gbit();
    if (auto p = param("simplex:")) {
        auto n = parse_int(*p);
        if (!n) return std::nullopt;
        return make_simplex(*n);  // range violations propagate
    }
    if (auto p = param("polygon:")) {
        auto k = parse_int(*p);
        if (!k) return std::nullopt;
        return make_polygon(*k);
    }
    if (auto p = param("noisy-bit:")) {
        auto a = parse_real(*p);
        if (!a) return std::nullopt;
        return make_noisy_bit(*a);
    }
    return std::nullopt;
}

}  // namespace gptctx
