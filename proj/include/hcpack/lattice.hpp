#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hcpack/rational.hpp"

namespace hcpack {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
    [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

using CellOffset = std::array<int, 2>;

/// Undirected edge between unit-cell sites `a` (in cell 0) and `b` (in cell
/// `offset`). `length` is the expected Euclidean length of the edge.
struct EdgeSpec {
    int a = 0;
    int b = 0;
    CellOffset offset{0, 0};
    double length = 1.0;

    friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

enum class PackingType { L, RL, R };

constexpr const char* to_string(PackingType t) {
    switch (t) {
        case PackingType::L: return "L";
        case PackingType::RL: return "RL";
        case PackingType::R: return "R";
    }
    return "?";
}

/// How sublattice contrast is measured for a lattice.
enum class OrderKind {
    ClassContrast,  ///< max - min of class densities inside each symmetry group
    PairContrast,   ///< Z2M: matched sublattice pair against the complementary pair
};

/// Reference values for one row of the packing table.
struct TableRow {
    Rational density{0};
    PackingType type = PackingType::L;
    std::string optimal_subgraphs;   ///< e.g. "sqrt2 Z2, 2, diamond"
    int multiplicity = 0;            ///< 0 means infinite
    std::optional<double> pc;
    std::optional<double> rho_pc;
    std::string entropy_note;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Periodic unit-cell description of one catalog graph.
///
/// Sites are fractional positions in the primitive cell spanned by `basis`.
/// Update classes and optimal subgraphs live on the supercell of
/// `period[0] x period[1]` primitive cells; supercell site index is
/// `(px * period[1] + py) * sites.size() + s`.
struct LatticeSpec {
    std::string name;
    std::array<Vec2, 2> basis{};
    std::vector<Vec2> sites;
    std::vector<EdgeSpec> edges;
    CellOffset period{1, 1};
    std::vector<int> classes;
    std::vector<std::string> class_names;
    std::vector<std::vector<int>> optimal;

    // validation targets
    bool uniform_degree = true;
    std::vector<int> expected_degrees;
    int expected_class_count = 0;

    // order parameter configuration
    OrderKind order_kind = OrderKind::ClassContrast;
    std::vector<std::vector<int>> order_groups;

    bool two_parameter = false;  ///< UJ / Q: p4 and p_high by site degree
    int orientation_degeneracy = 1;

    TableRow table;

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

    [[nodiscard]] int site_count() const { return static_cast<int>(sites.size()); }
    [[nodiscard]] int supercell_size() const { return period[0] * period[1] * site_count(); }
    [[nodiscard]] int class_count() const {
        return classes.empty() ? 0 : *std::max_element(classes.begin(), classes.end()) + 1;
    }
    [[nodiscard]] int supercell_index(int px, int py, int s) const {
        const int qx = ((px % period[0]) + period[0]) % period[0];
        const int qy = ((py % period[1]) + period[1]) % period[1];
        return (qx * period[1] + qy) * site_count() + s;
    }
    [[nodiscard]] int class_of(int cx, int cy, int s) const {
        return classes[static_cast<std::size_t>(supercell_index(cx, cy, s))];
    }
    [[nodiscard]] Vec2 cartesian(Vec2 frac) const {
        return frac.x * basis[0] + frac.y * basis[1];
    }
    [[nodiscard]] Vec2 site_position(int cx, int cy, int s) const {
        const Vec2 f = sites[static_cast<std::size_t>(s)];
        return cartesian({f.x + cx, f.y + cy});
    }
    /// Degree of each unit-cell site implied by the edge list.
    [[nodiscard]] std::vector<int> degree_profile() const {
        std::vector<int> deg(sites.size(), 0);
        for (const auto& e : edges) {
            ++deg[static_cast<std::size_t>(e.a)];
            ++deg[static_cast<std::size_t>(e.b)];
        }
        return deg;
    }
    [[nodiscard]] double edge_length(const EdgeSpec& e) const {
        return (site_position(e.offset[0], e.offset[1], e.b) - site_position(0, 0, e.a)).norm();
    }
};

enum class CheckStatus { Pass, Fail, NotApplicable };

constexpr const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotApplicable: return "n/a";
    }
    return "?";
}

struct ValidationCheck {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct ValidationReport {
    std::string lattice;
    std::vector<ValidationCheck> checks;

    [[nodiscard]] bool ok() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const auto& c) { return c.status == CheckStatus::Fail; });
    }
    [[nodiscard]] const ValidationCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

/// True iff `subset` (supercell site indices) contains no edge of the
/// periodically extended graph.
inline bool supercell_independent(const LatticeSpec& spec, const std::vector<int>& subset,
                                  std::string* witness = nullptr) {
    std::vector<char> in(static_cast<std::size_t>(spec.supercell_size()), 0);
    for (int idx : subset) {
        if (idx < 0 || idx >= spec.supercell_size()) return false;
        in[static_cast<std::size_t>(idx)] = 1;
    }
    for (int px = 0; px < spec.period[0]; ++px) {
        for (int py = 0; py < spec.period[1]; ++py) {
            for (const auto& e : spec.edges) {
                const int u = spec.supercell_index(px, py, e.a);
                const int v = spec.supercell_index(px + e.offset[0], py + e.offset[1], e.b);
                if (in[static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(v)]) {
                    if (witness) *witness = "supercell sites " + std::to_string(u) + " and " + std::to_string(v);
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace detail

/// Mechanical check of every structural invariant of a lattice spec. Never
/// throws; each failed invariant is reported as a failed check.
inline ValidationReport validate(const LatticeSpec& spec) {
    ValidationReport rep;
    rep.lattice = spec.name;
    auto add = [&](std::string name, CheckStatus st, std::string detail) {
        rep.checks.push_back({std::move(name), st, std::move(detail)});
    };

    const int m = spec.site_count();
    if (m == 0) {
        add("sites", CheckStatus::Fail, "no sites");
        return rep;
    }

    // edge endpoints and expected lengths
    {
        std::ostringstream bad;
        int nbad = 0;
        for (const auto& e : spec.edges) {
            if (e.a < 0 || e.a >= m || e.b < 0 || e.b >= m) {
                bad << " edge(" << e.a << "," << e.b << ") out of range;";
                ++nbad;
                continue;
            }
            if (e.a == e.b && e.offset == CellOffset{0, 0}) {
                bad << " self-loop at " << e.a << ";";
                ++nbad;
                continue;
            }
            const double len = spec.edge_length(e);
            if (std::abs(len - e.length) > 1e-9) {
                bad << " edge(" << e.a << "," << e.b << ",[" << e.offset[0] << "," << e.offset[1]
                    << "]) length " << len << " expected " << e.length << ";";
                ++nbad;
            }
            if (spec.uniform_degree && spec.name != "Z2M" && std::abs(e.length - 1.0) > 1e-12) {
                bad << " non-unit expected length on Archimedean edge;";
                ++nbad;
            }
        }
        add("edge_lengths", nbad ? CheckStatus::Fail : CheckStatus::Pass,
            nbad ? bad.str() : std::to_string(spec.edges.size()) + " edges match expected lengths");
    }

    // degree profile
    {
        const auto deg = spec.degree_profile();
        std::set<int> distinct(deg.begin(), deg.end());
        std::set<int> expected(spec.expected_degrees.begin(), spec.expected_degrees.end());
        std::ostringstream d;
        d << "degrees {";
        for (auto it = distinct.begin(); it != distinct.end(); ++it)
            d << (it == distinct.begin() ? "" : ",") << *it;
        d << "}";
        if (spec.uniform_degree) {
            const bool ok = distinct.size() == 1 && distinct == expected;
            add("constant_degree", ok ? CheckStatus::Pass : CheckStatus::Fail, d.str());
            add("mixed_degrees", CheckStatus::NotApplicable, "uniform-degree lattice");
        } else {
            add("constant_degree", CheckStatus::NotApplicable, "mixed-degree lattice");
            add("mixed_degrees", distinct == expected ? CheckStatus::Pass : CheckStatus::Fail, d.str());
        }
    }

    // class table shape and cover
    const bool classes_shaped = static_cast<int>(spec.classes.size()) == spec.supercell_size();
    {
        if (!classes_shaped) {
            add("class_cover", CheckStatus::Fail,
                "class table has " + std::to_string(spec.classes.size()) + " entries, supercell has " +
                    std::to_string(spec.supercell_size()));
        } else {
            const int k = spec.class_count();
            std::vector<int> sizes(static_cast<std::size_t>(std::max(k, 0)), 0);
            bool ok = true;
            for (int c : spec.classes) {
                if (c < 0) {
                    ok = false;
                    break;
                }
                ++sizes[static_cast<std::size_t>(c)];
            }
            ok = ok && std::all_of(sizes.begin(), sizes.end(), [](int s) { return s > 0; });
            add("class_cover", ok ? CheckStatus::Pass : CheckStatus::Fail,
                ok ? "every supercell site in exactly one of " + std::to_string(k) + " classes"
                   : "negative or empty class");
        }
    }

    if (classes_shaped) {
        const int k = spec.class_count();
        add("class_count", k == spec.expected_class_count ? CheckStatus::Pass : CheckStatus::Fail,
            std::to_string(k) + " classes, expected " + std::to_string(spec.expected_class_count));

        std::ostringstream bad;
        bool ok = true;
        for (int c = 0; c < k && ok; ++c) {
            std::vector<int> members;
            for (int i = 0; i < spec.supercell_size(); ++i)
                if (spec.classes[static_cast<std::size_t>(i)] == c) members.push_back(i);
            std::string w;
            if (!detail::supercell_independent(spec, members, &w)) {
                ok = false;
                bad << "class " << c << " contains edge between " << w;
            }
        }
        add("class_independence", ok ? CheckStatus::Pass : CheckStatus::Fail,
            ok ? "all classes are independent sets" : bad.str());
    }

    // optimal subgraphs: legal and at table density
    {
        bool ok = !spec.optimal.empty();
        std::ostringstream d;
        for (std::size_t i = 0; i < spec.optimal.size(); ++i) {
            std::string w;
            if (!detail::supercell_independent(spec, spec.optimal[i], &w)) {
                ok = false;
                d << "optimal " << i << " not independent (" << w << "); ";
            }
            const Rational rho(static_cast<std::int64_t>(spec.optimal[i].size()), spec.supercell_size());
            if (rho != spec.table.density) {
                ok = false;
                d << "optimal " << i << " density " << rho << " != " << spec.table.density << "; ";
            }
        }
        add("optimal_subgraphs", ok ? CheckStatus::Pass : CheckStatus::Fail,
            ok ? std::to_string(spec.optimal.size()) + " legal packings at density " + spec.table.density.str()
               : d.str());
    }
    return rep;
}

}  // namespace hcpack
