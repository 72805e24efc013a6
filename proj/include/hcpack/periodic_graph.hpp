#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "hcpack/catalog.hpp"
#include "hcpack/error.hpp"
#include "hcpack/lattice.hpp"

namespace hcpack {

/// A catalog lattice instantiated on an L1 x L2 torus of unit cells.
///
/// Site index is `(cx * L2 + cy) * m + s` with m sites per cell. Neighbor
/// lists are stored in CSR form and are symmetric and irreflexive.
class PeriodicGraph {
public:
    PeriodicGraph(LatticeSpec spec, std::array<int, 2> dims) : spec_(std::make_shared<LatticeSpec>(std::move(spec))), dims_(dims) {
        build();
    }

    [[nodiscard]] const LatticeSpec& spec() const { return *spec_; }
    [[nodiscard]] const std::string& name() const { return spec_->name; }
    [[nodiscard]] std::array<int, 2> dims() const { return dims_; }
    [[nodiscard]] int site_count() const { return static_cast<int>(class_of_.size()); }
    [[nodiscard]] int sites_per_cell() const { return spec_->site_count(); }
    [[nodiscard]] int class_count() const { return class_count_; }

    [[nodiscard]] int index(int cx, int cy, int s) const {
        const int x = ((cx % dims_[0]) + dims_[0]) % dims_[0];
        const int y = ((cy % dims_[1]) + dims_[1]) % dims_[1];
        return (x * dims_[1] + y) * sites_per_cell() + s;
    }
    /// (cx, cy, s) for a site index.
    [[nodiscard]] std::array<int, 3> coords(int site) const {
        const int m = sites_per_cell();
        const int cell = site / m;
        return {cell / dims_[1], cell % dims_[1], site % m};
    }
    [[nodiscard]] Vec2 position(int site) const {
        const auto c = coords(site);
        return spec_->site_position(c[0], c[1], c[2]);
    }
    /// Site obtained by translating `site` by (dx, dy) cells.
    [[nodiscard]] int shift(int site, int dx, int dy) const {
        const auto c = coords(site);
        return index(c[0] + dx, c[1] + dy, c[2]);
    }

    [[nodiscard]] const int* neighbors_begin(int x) const { return adj_.data() + offsets_[static_cast<std::size_t>(x)]; }
    [[nodiscard]] const int* neighbors_end(int x) const { return adj_.data() + offsets_[static_cast<std::size_t>(x) + 1]; }
    [[nodiscard]] std::vector<int> neighbors(int x) const {
        check_site(x);
        return {neighbors_begin(x), neighbors_end(x)};
    }
    [[nodiscard]] int degree(int x) const {
        return static_cast<int>(offsets_[static_cast<std::size_t>(x) + 1] - offsets_[static_cast<std::size_t>(x)]);
    }
    [[nodiscard]] bool adjacent(int x, int y) const {
        return std::binary_search(neighbors_begin(x), neighbors_end(x), y);
    }
    [[nodiscard]] int class_of(int x) const { return class_of_[static_cast<std::size_t>(x)]; }
    [[nodiscard]] const std::vector<int>& class_labels() const { return class_of_; }
    [[nodiscard]] const std::vector<int>& class_members(int k) const { return members_[static_cast<std::size_t>(k)]; }
    [[nodiscard]] std::size_t edge_count() const { return adj_.size() / 2; }

    void check_site(int x) const {
        if (x < 0 || x >= site_count())
            throw Error(ErrorCode::InvalidArgument, "site " + std::to_string(x) + " out of range");
    }

private:
    void build() {
        const auto& s = *spec_;
        if (dims_[0] < 2 || dims_[1] < 2)
            throw Error(ErrorCode::IncommensurateDims, "dims must be at least (2,2)");
        if (dims_[0] % s.period[0] != 0 || dims_[1] % s.period[1] != 0)
            throw Error(ErrorCode::IncommensurateDims,
                        s.name + " needs dims that are multiples of (" + std::to_string(s.period[0]) + "," +
                            std::to_string(s.period[1]) + ")");
        const int m = s.site_count();
        const int n = dims_[0] * dims_[1] * m;
        std::vector<std::vector<int>> lists(static_cast<std::size_t>(n));
        for (int cx = 0; cx < dims_[0]; ++cx) {
            for (int cy = 0; cy < dims_[1]; ++cy) {
                for (const auto& e : s.edges) {
                    const int u = index(cx, cy, e.a);
                    const int v = index(cx + e.offset[0], cy + e.offset[1], e.b);
                    if (u == v)
                        throw Error(ErrorCode::IncommensurateDims,
                                    "torus too small for " + s.name + ": edge wraps onto itself");
                    lists[static_cast<std::size_t>(u)].push_back(v);
                    lists[static_cast<std::size_t>(v)].push_back(u);
                }
            }
        }
        offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int x = 0; x < n; ++x) {
            auto& l = lists[static_cast<std::size_t>(x)];
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
            offsets_[static_cast<std::size_t>(x) + 1] = offsets_[static_cast<std::size_t>(x)] + l.size();
        }
        adj_.reserve(offsets_.back());
        for (const auto& l : lists) adj_.insert(adj_.end(), l.begin(), l.end());

        class_count_ = s.class_count();
        class_of_.resize(static_cast<std::size_t>(n));
        members_.assign(static_cast<std::size_t>(class_count_), {});
        for (int x = 0; x < n; ++x) {
            const auto c = coords(x);
            const int k = s.class_of(c[0], c[1], c[2]);
            class_of_[static_cast<std::size_t>(x)] = k;
            members_[static_cast<std::size_t>(k)].push_back(x);
        }
    }

    std::shared_ptr<const LatticeSpec> spec_;
    std::array<int, 2> dims_;
    std::vector<std::size_t> offsets_;
    std::vector<int> adj_;
    std::vector<int> class_of_;
    std::vector<std::vector<int>> members_;
    int class_count_ = 0;
};

/// Instance-level re-check of the lattice invariants: symmetric irreflexive
/// neighbors, degrees matching the unit cell, independent classes.
inline ValidationReport validate(const PeriodicGraph& g) {
    ValidationReport rep = validate(g.spec());
    bool sym = true;
    bool deg_ok = true;
    bool indep = true;
    const auto profile = g.spec().degree_profile();
    for (int x = 0; x < g.site_count(); ++x) {
        if (g.degree(x) != profile[static_cast<std::size_t>(g.coords(x)[2])]) deg_ok = false;
        for (const int* it = g.neighbors_begin(x); it != g.neighbors_end(x); ++it) {
            if (*it == x || !g.adjacent(*it, x)) sym = false;
            if (g.class_of(*it) == g.class_of(x)) indep = false;
        }
    }
    rep.checks.push_back({"instance_symmetry", sym ? CheckStatus::Pass : CheckStatus::Fail,
                          sym ? "neighbor relation symmetric and irreflexive" : "asymmetric or reflexive neighbor"});
    rep.checks.push_back({"instance_degrees", deg_ok ? CheckStatus::Pass : CheckStatus::Fail,
                          deg_ok ? "torus degrees match unit cell" : "torus degree differs from unit cell"});
    rep.checks.push_back({"instance_class_independence", indep ? CheckStatus::Pass : CheckStatus::Fail,
                          indep ? "no edge inside a class" : "edge inside a class on the torus"});
    return rep;
}

/// Builds and validates a catalog lattice on an L1 x L2 torus.
inline PeriodicGraph build_lattice(std::string_view name, std::array<int, 2> dims) {
    PeriodicGraph g(lattice_spec(name), dims);
    const auto rep = validate(g);
    if (!rep.ok()) {
        std::string msg;
        for (const auto& c : rep.checks)
            if (c.status == CheckStatus::Fail) msg += c.name + ": " + c.detail + "; ";
        throw Error(ErrorCode::IncommensurateDims, "invalid instance of " + g.name() + ": " + msg);
    }
    return g;
}

/// Sites at hop distance exactly `radius` from x, sorted.
inline std::vector<int> hop_shell(const PeriodicGraph& g, int x, int radius) {
    g.check_site(x);
    std::vector<int> dist(static_cast<std::size_t>(g.site_count()), -1);
    std::deque<int> q{x};
    dist[static_cast<std::size_t>(x)] = 0;
    std::vector<int> out;
    while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        const int du = dist[static_cast<std::size_t>(u)];
        if (du == radius) {
            out.push_back(u);
            continue;
        }
        for (const int* it = g.neighbors_begin(u); it != g.neighbors_end(u); ++it) {
            if (dist[static_cast<std::size_t>(*it)] < 0) {
                dist[static_cast<std::size_t>(*it)] = du + 1;
                q.push_back(*it);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> second_neighbor_shell(const PeriodicGraph& g, int x) { return hop_shell(g, x, 2); }

}  // namespace hcpack
