#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "hcpack/error.hpp"
#include "hcpack/lattice.hpp"

namespace hcpack {

namespace detail {

struct EdgeRule {
    double length = 1.0;
    /// Sites allowed as endpoints of this edge length; empty means all.
    std::vector<int> endpoints;
};

inline Vec2 polar(Vec2 center, double r, double deg) {
    const double a = deg * std::numbers::pi / 180.0;
    return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

inline std::vector<Vec2> polygon(Vec2 center, double r, double start_deg, double step_deg, int count) {
    std::vector<Vec2> out;
    for (int k = 0; k < count; ++k) out.push_back(polar(center, r, start_deg + step_deg * k));
    return out;
}

/// Reduces Cartesian generator points to distinct fractional sites and
/// derives every edge whose length matches one of the rules.
inline void derive_geometry(LatticeSpec& spec, const std::vector<Vec2>& points,
                            const std::vector<EdgeRule>& rules) {
    const Vec2 a1 = spec.basis[0];
    const Vec2 a2 = spec.basis[1];
    const double det = a1.x * a2.y - a1.y * a2.x;
    spec.sites.clear();
    for (const Vec2 p : points) {
        double u = (p.x * a2.y - p.y * a2.x) / det;
        double v = (a1.x * p.y - a1.y * p.x) / det;
        u -= std::floor(u + 1e-9);
        v -= std::floor(v + 1e-9);
        if (std::abs(u - 1.0) < 1e-9 || std::abs(u) < 1e-12) u = 0.0;
        if (std::abs(v - 1.0) < 1e-9 || std::abs(v) < 1e-12) v = 0.0;
        bool seen = false;
        for (const Vec2 s : spec.sites)
            if (std::abs(s.x - u) < 1e-7 && std::abs(s.y - v) < 1e-7) seen = true;
        if (!seen) spec.sites.push_back({u, v});
    }

    const int m = spec.site_count();
    auto allowed = [](const EdgeRule& r, int s) {
        if (r.endpoints.empty()) return true;
        for (int e : r.endpoints)
            if (e == s) return true;
        return false;
    };
    spec.edges.clear();
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            for (int ox = -2; ox <= 2; ++ox) {
                for (int oy = -2; oy <= 2; ++oy) {
                    // each undirected edge once: i < j, or i == j with a positive offset
                    if (i == j && (ox < 0 || (ox == 0 && oy <= 0))) continue;
                    const double d = (spec.site_position(ox, oy, j) - spec.site_position(0, 0, i)).norm();
                    for (const auto& r : rules) {
                        if (std::abs(d - r.length) < 1e-7 && allowed(r, i) && allowed(r, j))
                            spec.edges.push_back({i, j, {ox, oy}, r.length});
                    }
                }
            }
        }
    }
}

/// Class table of the form (alpha*px + beta*py + offset[s]) mod k.
inline void linear_classes(LatticeSpec& spec, int k, int alpha, int beta, const std::vector<int>& offset) {
    spec.period = {alpha % k == 0 ? 1 : k, beta % k == 0 ? 1 : k};
    spec.classes.assign(static_cast<std::size_t>(spec.supercell_size()), 0);
    for (int px = 0; px < spec.period[0]; ++px)
        for (int py = 0; py < spec.period[1]; ++py)
            for (int s = 0; s < spec.site_count(); ++s)
                spec.classes[static_cast<std::size_t>(spec.supercell_index(px, py, s))] =
                    (alpha * px + beta * py + offset[static_cast<std::size_t>(s)]) % k;
    spec.expected_class_count = k;
}

inline std::vector<int> class_members(const LatticeSpec& spec, int k) {
    std::vector<int> out;
    for (int i = 0; i < spec.supercell_size(); ++i)
        if (spec.classes[static_cast<std::size_t>(i)] == k) out.push_back(i);
    return out;
}

inline void class_packings(LatticeSpec& spec) {
    spec.optimal.clear();
    for (int k = 0; k < spec.class_count(); ++k) spec.optimal.push_back(class_members(spec, k));
}

inline std::vector<std::string> letters(int k) {
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i) out.emplace_back(1, static_cast<char>('A' + i));
    return out;
}

inline void all_classes_one_group(LatticeSpec& spec) {
    std::vector<int> g;
    for (int k = 0; k < spec.class_count(); ++k) g.push_back(k);
    spec.order_groups = {g};
}

inline TableRow row(Rational rho, PackingType type, std::string subgraphs, int mult,
                    std::optional<double> pc = {}, std::optional<double> rho_pc = {},
                    std::string entropy = {}) {
    TableRow r;
    r.density = rho;
    r.type = type;
    r.optimal_subgraphs = std::move(subgraphs);
    r.multiplicity = mult;
    r.pc = pc;
    r.rho_pc = rho_pc;
    r.entropy_note = std::move(entropy);
    return r;
}

inline LatticeSpec make_spec(std::string name, std::array<Vec2, 2> basis, const std::vector<Vec2>& points,
                             const std::vector<EdgeRule>& rules) {
    LatticeSpec s;
    s.name = std::move(name);
    s.basis = basis;
    derive_geometry(s, points, rules);
    return s;
}

inline std::vector<LatticeSpec> build_catalog() {
    using std::numbers::sqrt3;
    constexpr double sqrt2 = std::numbers::sqrt2;
    const Vec2 o{0, 0};
    const double r12 = 1.0 / (2.0 * std::sin(std::numbers::pi / 12.0));
    std::vector<LatticeSpec> cat;

    auto finish_uniform = [](LatticeSpec& s, int degree) {
        s.uniform_degree = true;
        s.expected_degrees = {degree};
        if (s.class_names.empty()) s.class_names = letters(s.class_count());
        if (s.order_groups.empty()) all_classes_one_group(s);
        if (s.optimal.empty()) class_packings(s);
    };

    {
        auto s = make_spec("4^4", {Vec2{1, 0}, Vec2{0, 1}}, {o}, {{1.0, {}}});
        linear_classes(s, 2, 1, 1, {0});
        s.table = row({1, 2}, PackingType::L, "sqrt2 Z2, 2, diamond", 2, 0.79, 0.36);
        finish_uniform(s, 4);
        cat.push_back(s);
    }
    {
        auto s = make_spec("6^3", {Vec2{sqrt3, 0}, Vec2{sqrt3 / 2, 1.5}}, {o, Vec2{0, 1}}, {{1.0, {}}});
        linear_classes(s, 2, 0, 0, {0, 1});
        s.table = row({1, 2}, PackingType::L, "sqrt3 T, 2, hexagon", 2, 0.87, 0.4);
        finish_uniform(s, 3);
        cat.push_back(s);
    }
    {
        auto s = make_spec("3^6", {Vec2{1, 0}, Vec2{0.5, sqrt3 / 2}}, {o}, {{1.0, {}}});
        linear_classes(s, 3, 1, 2, {0});
        s.class_names = {"dot", "ring", "circle"};
        s.table = row({1, 3}, PackingType::L, "sqrt3 T, 3, hexagon", 3, 0.90, 0.26);
        finish_uniform(s, 6);
        cat.push_back(s);
    }
    {
        const double h = sqrt2 / 2;
        const double a = 1 + sqrt2;
        auto s = make_spec("4.8^2", {Vec2{a, 0}, Vec2{0, a}}, {Vec2{h, 0}, Vec2{0, h}, Vec2{-h, 0}, Vec2{0, -h}},
                           {{1.0, {}}});
        linear_classes(s, 2, 1, 1, {0, 1, 1, 0});
        s.table = row({1, 2}, PackingType::L, "~(3^2.4.3.4), 2, 5-gon", 2, 0.90, 0.4);
        finish_uniform(s, 3);
        cat.push_back(s);
    }
    {
        const double c = 3 + sqrt3;
        auto s = make_spec("4.6.12", {Vec2{c, 0}, Vec2{c / 2, c * sqrt3 / 2}}, polygon(o, r12, 15, 30, 12),
                           {{1.0, {}}});
        linear_classes(s, 2, 0, 0, {0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
        s.table = row({1, 2}, PackingType::L, "~(3^4.6), 2, 5-gon", 2, 0.91, 0.42);
        finish_uniform(s, 3);
        cat.push_back(s);
    }
    {
        const double ls = (1 + sqrt3) / sqrt2;
        auto pts = polygon(o, 1 / sqrt2, 15 + 45, 90, 4);
        for (auto p : polygon({ls / 2, ls / 2}, 1 / sqrt2, -15 + 45, 90, 4)) pts.push_back(p);
        auto s = make_spec("3^2.4.3.4", {Vec2{ls, 0}, Vec2{0, ls}}, pts, {{1.0, {}}});
        linear_classes(s, 3, 1, 0, {0, 2, 0, 1});
        s.orientation_degeneracy = 2;
        s.table = row({1, 3}, PackingType::L, "~T, 3, 6-gon", 3, 0.99, 0.3);
        finish_uniform(s, 5);
        cat.push_back(s);
    }
    {
        auto s = make_spec("3^4.6", {Vec2{2.5, sqrt3 / 2}, Vec2{0.5, 1.5 * sqrt3}}, polygon(o, 1, 0, 60, 6),
                           {{1.0, {}}});
        linear_classes(s, 3, 1, 2, {0, 2, 2, 0, 1, 1});
        s.table = row({1, 3}, PackingType::L, "sqrt3 (3^4.6), 3, 5-gon", 3, 0.97, 0.29);
        finish_uniform(s, 5);
        cat.push_back(s);
    }
    {
        auto s = make_spec("3^3.4^2", {Vec2{1, 0}, Vec2{0.5, 1 + sqrt3 / 2}}, {o, Vec2{0, 1}}, {{1.0, {}}});
        linear_classes(s, 3, 1, 0, {0, 2});
        s.table = row({1, 3}, PackingType::RL, "3Z stack, inf", 0, {}, {}, "h1 = 1/2 log 2");
        finish_uniform(s, 5);
        cat.push_back(s);
    }
    {
        const double c = 1 + sqrt3;
        auto s = make_spec("3.4.6.4", {Vec2{c, 0}, Vec2{c / 2, c * sqrt3 / 2}}, polygon(o, 1, 30, 60, 6),
                           {{1.0, {}}});
        linear_classes(s, 3, 0, 0, {0, 1, 2, 0, 1, 2});
        s.table = row({1, 3}, PackingType::R, "~(3^4.6), inf, 5-gon", 0, {}, {}, "h2 >= 3/16 log 2");
        finish_uniform(s, 4);
        cat.push_back(s);
    }
    {
        auto s = make_spec("3.6.3.6", {Vec2{2, 0}, Vec2{1, sqrt3}}, {o, Vec2{1, 0}, Vec2{0.5, sqrt3 / 2}},
                           {{1.0, {}}});
        linear_classes(s, 3, 1, 2, {0, 2, 1});
        s.class_names = {"dot", "circle", "ring"};
        s.table = row({1, 3}, PackingType::R, "sqrt3 (3.6.3.6), inf, rhombus", 0, {}, {}, "h2 ~ 0.323");
        finish_uniform(s, 4);
        cat.push_back(s);
    }
    {
        const double c = 2 + sqrt3;
        auto s = make_spec("3.12^2", {Vec2{c, 0}, Vec2{c / 2, c * sqrt3 / 2}}, polygon(o, r12, 15, 30, 12),
                           {{1.0, {}}});
        linear_classes(s, 3, 0, 0, {0, 1, 0, 1, 2, 2});
        s.table = row({1, 3}, PackingType::R, "~(3^4.6), inf, 5-gon", 0, {}, {}, "h2 >= 1/18 log 2");
        finish_uniform(s, 3);
        cat.push_back(s);
    }
    {
        auto s = make_spec("Z2M", {Vec2{1, 0}, Vec2{0, 1}}, {o}, {{1.0, {}}, {sqrt2, {}}});
        s.period = {2, 2};
        s.classes = {0, 2, 1, 3};  // px%2 + 2*(py%2) at supercell index px*2+py
        s.expected_class_count = 4;
        s.order_kind = OrderKind::PairContrast;
        s.table = row({1, 4}, PackingType::RL, "2Z stack, inf, square", 0, 0.98, {}, "h1 = 1/2 log 2");
        finish_uniform(s, 8);
        cat.push_back(s);
    }
    {
        // corners carry the square-lattice edges; centers join the four corners of their square
        auto s = make_spec("UJ", {Vec2{1, 0}, Vec2{0, 1}}, {o, Vec2{0.5, 0.5}}, {{1.0, {0}}, {sqrt2 / 2, {}}});
        s.period = {2, 2};
        s.classes.assign(8, 0);
        for (int px = 0; px < 2; ++px)
            for (int py = 0; py < 2; ++py) {
                s.classes[static_cast<std::size_t>(s.supercell_index(px, py, 0))] = (px + py) % 2;
                s.classes[static_cast<std::size_t>(s.supercell_index(px, py, 1))] = 2;
            }
        s.expected_class_count = 3;
        s.class_names = {"corner-even", "corner-odd", "center"};
        s.uniform_degree = false;
        s.expected_degrees = {4, 8};
        s.two_parameter = true;
        s.order_groups = {{0, 1}};
        s.optimal = {class_members(s, 2)};
        s.table = row({1, 2}, PackingType::L, "Z2, 1, sq., sqrt2 Z2, 2, dia.", 1, {}, {}, "increasing critical curve");
        cat.push_back(s);
    }
    {
        auto s = make_spec("Q", {Vec2{1, 1}, Vec2{1, -1}}, {o, Vec2{1, 0}, Vec2{0.5, 0.5}},
                           {{1.0, {0, 1}}, {sqrt2 / 2, {}}});
        linear_classes(s, 3, 0, 0, {0, 1, 2});
        s.class_names = {"corner-even", "corner-odd", "center"};
        s.uniform_degree = false;
        s.expected_degrees = {4, 6};
        s.two_parameter = true;
        s.order_groups = {{0, 1}};
        class_packings(s);
        s.table = row({1, 3}, PackingType::L, "sqrt2 Z2, 3, diamond", 3, {}, {}, "increasing critical curve");
        cat.push_back(s);
    }
    return cat;
}

}  // namespace detail

/// The 14 catalog lattices, in table order.
inline const std::vector<LatticeSpec>& catalog() {
    static const std::vector<LatticeSpec> cat = detail::build_catalog();
    return cat;
}

inline std::vector<std::string> lattice_names() {
    std::vector<std::string> out;
    for (const auto& s : catalog()) out.push_back(s.name);
    return out;
}

/// Accepts catalog names plus the usual short aliases (Z2, H, T, K).
inline const LatticeSpec& lattice_spec(std::string_view name) {
    std::string_view key = name;
    if (key == "Z2" || key == "Z^2") key = "4^4";
    else if (key == "H") key = "6^3";
    else if (key == "T") key = "3^6";
    else if (key == "K" || key == "kagome") key = "3.6.3.6";
    for (const auto& s : catalog())
        if (s.name == key) return s;
    throw Error(ErrorCode::UnknownLattice, "no lattice named '" + std::string(name) + "'");
}

}  // namespace hcpack
