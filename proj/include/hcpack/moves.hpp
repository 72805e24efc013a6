#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcpack/configuration.hpp"
#include "hcpack/error.hpp"
#include "hcpack/oracle.hpp"
#include "hcpack/periodic_graph.hpp"

namespace hcpack {

enum class MoveKind { Flip, SingleSiteExchange, Slide, None };

constexpr const char* to_string(MoveKind k) {
    switch (k) {
        case MoveKind::Flip: return "flip";
        case MoveKind::SingleSiteExchange: return "single-site-exchange";
        case MoveKind::Slide: return "slide";
        case MoveKind::None: return "none";
    }
    return "?";
}

/// Occupancy-preserving move: particles on `from` go to `to`.
struct Move {
    MoveKind kind = MoveKind::None;
    std::vector<int> from;
    std::vector<int> to;
};

struct MoveReport {
    std::vector<Move> moves;
    int flips = 0;
    int exchanges = 0;
    int slides = 0;

    /// Flips and single-site exchanges; slides move a whole line and are not local.
    [[nodiscard]] int local_count() const { return flips + exchanges; }
    [[nodiscard]] MoveKind kind() const {
        if (flips) return MoveKind::Flip;
        if (exchanges) return MoveKind::SingleSiteExchange;
        if (slides) return MoveKind::Slide;
        return MoveKind::None;
    }
    [[nodiscard]] int count() const {
        switch (kind()) {
            case MoveKind::Flip: return flips;
            case MoveKind::SingleSiteExchange: return exchanges;
            case MoveKind::Slide: return slides;
            case MoveKind::None: return 0;
        }
        return 0;
    }
};

inline Configuration apply(const Configuration& c, const Move& m) {
    Configuration out = c;
    for (int x : m.from) out.set(x, false);
    for (int x : m.to) out.set(x, true);
    return out;
}

/// Hexagonal face of the Kagome torus; vertices in angular order.
struct Hexagon {
    std::array<int, 6> vertices{};
};

/// Hexagonal faces of a 3.6.3.6 torus, one per unit cell; empty otherwise.
inline std::vector<Hexagon> hexagons(const PeriodicGraph& g) {
    const auto& s = g.spec();
    if (s.name != "3.6.3.6") return {};
    // face center sits at fractional (1/2, 1/2) of the primitive cell
    const Vec2 center = s.cartesian({0.5, 0.5});
    struct Local {
        int dx, dy, site;
        double angle;
    };
    std::vector<Local> ring;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            for (int site = 0; site < s.site_count(); ++site) {
                const Vec2 d = s.site_position(dx, dy, site) - center;
                if (std::abs(d.norm() - 1.0) < 1e-9) ring.push_back({dx, dy, site, std::atan2(d.y, d.x)});
            }
    std::sort(ring.begin(), ring.end(), [](const Local& a, const Local& b) { return a.angle < b.angle; });
    if (ring.size() != 6) throw Error(ErrorCode::UnsupportedLattice, "hexagon lookup failed");
    std::vector<Hexagon> out;
    for (int cx = 0; cx < g.dims()[0]; ++cx)
        for (int cy = 0; cy < g.dims()[1]; ++cy) {
            Hexagon h;
            for (std::size_t i = 0; i < 6; ++i)
                h.vertices[i] = g.index(cx + ring[i].dx, cy + ring[i].dy, ring[i].site);
            out.push_back(h);
        }
    return out;
}

namespace detail {

/// The flip of hexagon h if its occupancy is an alternating triple and the
/// rotated triple is legal.
inline std::optional<Move> hexagon_flip(const PeriodicGraph& g, const Configuration& c, const Hexagon& h) {
    int mask = 0;
    for (int i = 0; i < 6; ++i)
        if (c[h.vertices[static_cast<std::size_t>(i)]]) mask |= 1 << i;
    int from_parity = -1;
    if (mask == 0b010101) from_parity = 0;
    if (mask == 0b101010) from_parity = 1;
    if (from_parity < 0) return std::nullopt;
    Move m;
    m.kind = MoveKind::Flip;
    for (int i = 0; i < 6; ++i)
        (i % 2 == from_parity ? m.from : m.to).push_back(h.vertices[static_cast<std::size_t>(i)]);
    const auto after = apply(c, m);
    for (int x : m.to)
        for (const int* it = g.neighbors_begin(x); it != g.neighbors_end(x); ++it)
            if (after[*it]) return std::nullopt;
    return m;
}

/// Exact maximum on small tori; above 128 sites the memoized counter can
/// run for minutes, so the table density times the site count is used.
inline int site_max(const PeriodicGraph& g) {
    if (g.site_count() <= 128) {
        try {
            return max_occupancy(g);
        } catch (const Error&) {
        }
    }
    const auto& t = g.spec().table.density;
    return static_cast<int>(static_cast<std::int64_t>(g.site_count()) * t.num() / t.den());
}

}  // namespace detail

/// Flips hexagon `id`; throws NotFlippable unless its three particles sit on
/// alternating vertices and the rotated triple is legal.
inline Configuration flip(const Configuration& c, int id) {
    const auto hs = hexagons(*c.graph);
    if (hs.empty()) throw Error(ErrorCode::UnsupportedLattice, "flips are registered only for 3.6.3.6");
    if (id < 0 || id >= static_cast<int>(hs.size()))
        throw Error(ErrorCode::InvalidArgument, "hexagon id out of range");
    const auto m = detail::hexagon_flip(*c.graph, c, hs[static_cast<std::size_t>(id)]);
    if (!m) throw Error(ErrorCode::NotFlippable, "hexagon " + std::to_string(id) + " is not in flippable formation");
    return apply(c, *m);
}

namespace detail {

/// Slides: the occupancy of a whole band of lines shifted by one cell.
/// Z2M bands are single rows or columns. On 3^3.4^2 the free choice sits at
/// the square interfaces, so a band is a pair of chains joined by triangles.
inline void find_slides(const PeriodicGraph& g, const Configuration& c, MoveReport& rep) {
    struct Band {
        int axis;
        std::vector<std::array<int, 3>> sites;  // (cx, cy, s)
    };
    std::vector<Band> bands;
    const auto dims = g.dims();
    if (g.name() == "Z2M") {
        for (int cy = 0; cy < dims[1]; ++cy) {
            Band b{0, {}};
            for (int cx = 0; cx < dims[0]; ++cx) b.sites.push_back({cx, cy, 0});
            bands.push_back(b);
        }
        for (int cx = 0; cx < dims[0]; ++cx) {
            Band b{1, {}};
            for (int cy = 0; cy < dims[1]; ++cy) b.sites.push_back({cx, cy, 0});
            bands.push_back(b);
        }
    } else if (g.name() == "3^3.4^2") {
        // a single band always breaks one of its two square interfaces, so
        // runs of consecutive bands are tried as well
        for (int cy = 0; cy < dims[1]; ++cy) {
            for (int len = 1; len < dims[1]; ++len) {
                Band b{0, {}};
                for (int k = 0; k < len; ++k)
                    for (int cx = 0; cx < dims[0]; ++cx) {
                        b.sites.push_back({cx, cy + k, 1});
                        b.sites.push_back({cx, cy + k + 1, 0});
                    }
                bands.push_back(b);
            }
        }
    }
    for (const auto& b : bands) {
        for (int dir : {-1, 1}) {
            Move mv;
            mv.kind = MoveKind::Slide;
            for (const auto& [cx, cy, st] : b.sites) {
                const int x = g.index(cx, cy, st);
                if (!c[x]) continue;
                mv.from.push_back(x);
                mv.to.push_back(b.axis == 0 ? g.index(cx + dir, cy, st) : g.index(cx, cy + dir, st));
            }
            if (mv.from.empty()) continue;
            const auto after = apply(c, mv);
            if (after == c || !is_legal(after)) continue;
            rep.moves.push_back(std::move(mv));
            ++rep.slides;
        }
    }
}

}  // namespace detail

/// All legality- and occupancy-preserving moves of a densest configuration:
/// single particles relocated within two hops, registered hexagon flips,
/// and line slides (reported separately, they are not local).
/// `known_max` skips the maximal-occupancy computation when the caller has it.
inline MoveReport find_local_moves(const Configuration& c, std::optional<int> known_max = std::nullopt) {
    const auto& g = *c.graph;
    if (!is_legal(c)) throw Error(ErrorCode::IllegalInput, "configuration is not legal");
    if (c.occupancy() < (known_max ? *known_max : detail::site_max(g)))
        throw Error(ErrorCode::NotMaximal, "configuration holds " + std::to_string(c.occupancy()) +
                                               " particles, below the maximum for this torus");
    MoveReport rep;
    for (int x = 0; x < g.site_count(); ++x) {
        if (!c[x]) continue;
        for (int r = 1; r <= 2; ++r) {
            for (int y : hop_shell(g, x, r)) {
                if (c[y]) continue;
                bool ok = true;
                for (const int* it = g.neighbors_begin(y); it != g.neighbors_end(y) && ok; ++it)
                    if (*it != x && c[*it]) ok = false;
                if (!ok) continue;
                rep.moves.push_back({MoveKind::SingleSiteExchange, {x}, {y}});
                ++rep.exchanges;
            }
        }
    }
    for (const auto& h : hexagons(g)) {
        if (auto m = detail::hexagon_flip(g, c, h)) {
            rep.moves.push_back(*m);
            ++rep.flips;
        }
    }
    detail::find_slides(g, c, rep);
    return rep;
}

/// Connectivity of the flip graph on all maximizers. Returns nullopt when the
/// lattice has no registered flips.
inline std::optional<bool> flip_connectivity(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    const auto hs = hexagons(g);
    if (hs.empty()) return std::nullopt;
    const auto ms = maximizers(g, lim);
    std::map<std::vector<std::uint8_t>, std::size_t> index;
    for (std::size_t i = 0; i < ms.size(); ++i) index.emplace(ms[i].bits, i);
    std::vector<char> seen(ms.size(), 0);
    std::deque<std::size_t> q{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        const auto i = q.front();
        q.pop_front();
        for (const auto& h : hs) {
            const auto m = detail::hexagon_flip(g, ms[i], h);
            if (!m) continue;
            const auto it = index.find(apply(ms[i], *m).bits);
            if (it == index.end())
                throw Error(ErrorCode::NotMaximal, "flip left the maximizer set");
            if (!seen[it->second]) {
                seen[it->second] = 1;
                ++reached;
                q.push_back(it->second);
            }
        }
    }
    return reached == ms.size();
}

}  // namespace hcpack
