#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcpack/error.hpp"
#include "hcpack/periodic_graph.hpp"
#include "hcpack/philox.hpp"
#include "hcpack/rational.hpp"

namespace hcpack {

/// One occupancy bit per torus site. Illegal configurations are ordinary
/// values; legality is checked with is_legal().
struct Configuration {
    const PeriodicGraph* graph = nullptr;
    std::vector<std::uint8_t> bits;

    Configuration() = default;
    explicit Configuration(const PeriodicGraph& g, std::uint8_t fill = 0)
        : graph(&g), bits(static_cast<std::size_t>(g.site_count()), fill) {}

    [[nodiscard]] int size() const { return static_cast<int>(bits.size()); }
    [[nodiscard]] bool operator[](int x) const { return bits[static_cast<std::size_t>(x)] != 0; }
    void set(int x, bool v) { bits[static_cast<std::size_t>(x)] = v ? 1 : 0; }
    [[nodiscard]] int occupancy() const {
        int n = 0;
        for (auto b : bits) n += b;
        return n;
    }

    friend bool operator==(const Configuration& a, const Configuration& b) { return a.bits == b.bits; }
};

/// Exact occupation counts; densities are ratios of integers.
struct DensityReport {
    int occupied = 0;
    int sites = 0;
    std::vector<int> class_occupied;
    std::vector<int> class_sites;

    [[nodiscard]] Rational rho_total() const { return {occupied, sites}; }
    [[nodiscard]] Rational rho_class(int k) const {
        return {class_occupied[static_cast<std::size_t>(k)], class_sites[static_cast<std::size_t>(k)]};
    }
    [[nodiscard]] double total() const { return static_cast<double>(occupied) / sites; }
    [[nodiscard]] double by_class(int k) const {
        return static_cast<double>(class_occupied[static_cast<std::size_t>(k)]) /
               class_sites[static_cast<std::size_t>(k)];
    }
    [[nodiscard]] std::vector<double> by_class() const {
        std::vector<double> out;
        for (std::size_t k = 0; k < class_sites.size(); ++k) out.push_back(by_class(static_cast<int>(k)));
        return out;
    }
    [[nodiscard]] int class_count() const { return static_cast<int>(class_sites.size()); }
};

inline bool is_legal(const Configuration& c) {
    const auto& g = *c.graph;
    for (int x = 0; x < g.site_count(); ++x) {
        if (!c[x]) continue;
        for (const int* it = g.neighbors_begin(x); it != g.neighbors_end(x); ++it)
            if (c[*it]) return false;
    }
    return true;
}

inline DensityReport density(const Configuration& c) {
    const auto& g = *c.graph;
    DensityReport r;
    r.sites = g.site_count();
    r.class_occupied.assign(static_cast<std::size_t>(g.class_count()), 0);
    r.class_sites.assign(static_cast<std::size_t>(g.class_count()), 0);
    for (int x = 0; x < g.site_count(); ++x) {
        const auto k = static_cast<std::size_t>(g.class_of(x));
        ++r.class_sites[k];
        if (c[x]) {
            ++r.occupied;
            ++r.class_occupied[k];
        }
    }
    return r;
}

/// Number of most-symmetric densest packings the catalog records.
inline int phase_count(const PeriodicGraph& g) { return static_cast<int>(g.spec().optimal.size()); }

/// The phase-th optimal subgraph, fully occupied, tiled over the torus.
inline Configuration optimal_packing(const PeriodicGraph& g, int phase) {
    const auto& s = g.spec();
    if (phase < 0 || phase >= phase_count(g))
        throw Error(ErrorCode::PhaseOutOfRange, s.name + " has " + std::to_string(phase_count(g)) +
                                                    " optimal packings, asked for phase " + std::to_string(phase));
    std::vector<char> in(static_cast<std::size_t>(s.supercell_size()), 0);
    for (int i : s.optimal[static_cast<std::size_t>(phase)]) in[static_cast<std::size_t>(i)] = 1;
    Configuration c(g);
    for (int x = 0; x < g.site_count(); ++x) {
        const auto co = g.coords(x);
        c.set(x, in[static_cast<std::size_t>(s.supercell_index(co[0], co[1], co[2]))] != 0);
    }
    return c;
}

/// Configuration with every site of update class k occupied.
inline Configuration class_full(const PeriodicGraph& g, int k) {
    Configuration c(g);
    for (int x : g.class_members(k)) c.set(x, true);
    return c;
}

/// Independent Bernoulli(rho0) occupation per site; may be illegal.
inline Configuration bernoulli_init(const PeriodicGraph& g, double rho0, std::uint64_t seed) {
    if (!(rho0 >= 0.0 && rho0 <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "rho0 must lie in [0,1]");
    Configuration c(g);
    for (int x = 0; x < g.site_count(); ++x)
        c.set(x, keyed_uniform(seed, static_cast<std::uint32_t>(x), Stream::Bernoulli, 0) < rho0);
    return c;
}

/// Configuration translated by (dx, dy) cells.
inline Configuration translate(const Configuration& c, int dx, int dy) {
    Configuration out(*c.graph);
    for (int x = 0; x < c.size(); ++x) out.set(c.graph->shift(x, dx, dy), c[x]);
    return out;
}

}  // namespace hcpack
