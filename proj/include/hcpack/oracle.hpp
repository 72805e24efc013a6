#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hcpack/configuration.hpp"
#include "hcpack/error.hpp"
#include "hcpack/periodic_graph.hpp"
#include "hcpack/rational.hpp"

namespace hcpack {

struct OracleLimits {
    int exhaustive_cap = 36;       ///< site cap for the full DFS enumeration
    int rejection_cap = 20;        ///< site cap for the 2^N rejection recount
    int packing_cap = 256;         ///< site cap for memoized maximizer counting
    std::size_t memo_budget = 20'000'000;  ///< memo entries before TooLarge
    std::size_t list_cap = 1'000'000;      ///< maximizers materialized at most
};

struct EnumerationResult {
    std::string lattice;
    std::array<int, 2> dims{0, 0};
    int site_count = 0;
    std::uint64_t legal_count = 0;
    int max_occupancy = 0;
    std::uint64_t maximizer_count = 0;

    [[nodiscard]] Rational max_density() const { return {max_occupancy, site_count}; }
};

/// Plain adjacency view, so the oracle also runs on hand-built test graphs.
struct SimpleGraph {
    std::vector<std::vector<int>> adj;
    [[nodiscard]] int size() const { return static_cast<int>(adj.size()); }
};

inline SimpleGraph simple_graph(const PeriodicGraph& g) {
    SimpleGraph s;
    s.adj.resize(static_cast<std::size_t>(g.site_count()));
    for (int x = 0; x < g.site_count(); ++x) s.adj[static_cast<std::size_t>(x)] = g.neighbors(x);
    return s;
}

namespace detail {

/// DFS over sites in index order; a site may take 1 only if no earlier
/// neighbor holds 1, so every leaf is a legal configuration.
struct Enumerator {
    const SimpleGraph& g;
    std::vector<std::vector<int>> earlier;
    std::vector<std::uint8_t> bits;
    std::uint64_t legal = 0;
    int best = -1;
    std::uint64_t best_count = 0;

    explicit Enumerator(const SimpleGraph& graph) : g(graph) {
        earlier.resize(static_cast<std::size_t>(g.size()));
        for (int x = 0; x < g.size(); ++x)
            for (int y : g.adj[static_cast<std::size_t>(x)])
                if (y < x) earlier[static_cast<std::size_t>(x)].push_back(y);
        bits.assign(static_cast<std::size_t>(g.size()), 0);
    }

    void go(int x, int occ) {
        if (x == g.size()) {
            ++legal;
            if (occ > best) {
                best = occ;
                best_count = 1;
            } else if (occ == best) {
                ++best_count;
            }
            return;
        }
        go(x + 1, occ);
        for (int y : earlier[static_cast<std::size_t>(x)])
            if (bits[static_cast<std::size_t>(y)]) return;
        bits[static_cast<std::size_t>(x)] = 1;
        go(x + 1, occ + 1);
        bits[static_cast<std::size_t>(x)] = 0;
    }
};

}  // namespace detail

/// Exact counts by exhaustive DFS with hard-core pruning.
inline EnumerationResult enumerate(const SimpleGraph& g, const OracleLimits& lim = {}) {
    if (g.size() > lim.exhaustive_cap)
        throw Error(ErrorCode::TooLarge, std::to_string(g.size()) + " sites exceed the exhaustive cap of " +
                                             std::to_string(lim.exhaustive_cap));
    detail::Enumerator e(g);
    e.go(0, 0);
    EnumerationResult r;
    r.site_count = g.size();
    r.legal_count = e.legal;
    r.max_occupancy = e.best;
    r.maximizer_count = e.best_count;
    return r;
}

inline EnumerationResult enumerate(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    auto r = enumerate(simple_graph(g), lim);
    r.lattice = g.name();
    r.dims = g.dims();
    return r;
}

/// Independent recount: every one of the 2^N bit patterns tested for legality.
inline std::uint64_t rejection_count(const SimpleGraph& g, const OracleLimits& lim = {}) {
    const int n = g.size();
    if (n > lim.rejection_cap)
        throw Error(ErrorCode::TooLarge, "rejection recount is limited to " + std::to_string(lim.rejection_cap) + " sites");
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for (int y : g.adj[static_cast<std::size_t>(x)]) nb[static_cast<std::size_t>(x)] |= 1u << y;
    std::uint64_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            if ((mask >> x & 1u) && (mask & nb[static_cast<std::size_t>(x)])) ok = false;
        count += ok ? 1 : 0;
    }
    return count;
}

inline std::uint64_t rejection_count(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    return rejection_count(simple_graph(g), lim);
}

/// Maximal occupancy and number of maximizers.
struct PackingCount {
    int max_occupancy = 0;
    std::uint64_t count = 0;
};

namespace detail {

template <std::size_t W>
struct Bits {
    std::array<std::uint64_t, W> w{};

    [[nodiscard]] bool empty() const {
        for (auto v : w)
            if (v) return false;
        return true;
    }
    [[nodiscard]] int lowest() const {
        for (std::size_t i = 0; i < W; ++i)
            if (w[i]) return static_cast<int>(i * 64) + std::countr_zero(w[i]);
        return -1;
    }
    [[nodiscard]] bool test(int i) const { return (w[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u; }
    void set(int i) { w[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(int i) { w[static_cast<std::size_t>(i) / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    Bits operator&(const Bits& o) const {
        Bits r;
        for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] & o.w[i];
        return r;
    }
    Bits operator|(const Bits& o) const {
        Bits r;
        for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] | o.w[i];
        return r;
    }
    Bits minus(const Bits& o) const {
        Bits r;
        for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] & ~o.w[i];
        return r;
    }
    bool operator==(const Bits&) const = default;
};

template <std::size_t W>
struct BitsHash {
    std::size_t operator()(const Bits<W>& b) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (auto v : b.w) {
            h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h *= 0xBF58476D1CE4E5B9ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::TooLarge, "maximizer count overflows 64 bits");
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::TooLarge, "maximizer count overflows 64 bits");
    return r;
}

/// Maximum independent sets of the subgraph induced by a vertex set: branch
/// on the lowest vertex, split into connected components, memoize on the set.
template <std::size_t W>
class PackingCounter {
public:
    PackingCounter(const SimpleGraph& g, std::size_t budget) : budget_(budget) {
        nb_.resize(static_cast<std::size_t>(g.size()));
        for (int x = 0; x < g.size(); ++x)
            for (int y : g.adj[static_cast<std::size_t>(x)]) nb_[static_cast<std::size_t>(x)].set(y);
        for (int x = 0; x < g.size(); ++x) all_.set(x);
    }

    PackingCount count() { return solve(all_); }

private:
    std::vector<Bits<W>> components(Bits<W> s) const {
        std::vector<Bits<W>> out;
        while (!s.empty()) {
            Bits<W> comp;
            Bits<W> frontier;
            const int v = s.lowest();
            comp.set(v);
            frontier.set(v);
            while (!frontier.empty()) {
                const int u = frontier.lowest();
                frontier.reset(u);
                const Bits<W> fresh = (nb_[static_cast<std::size_t>(u)] & s).minus(comp);
                comp = comp | fresh;
                frontier = frontier | fresh;
            }
            out.push_back(comp);
            s = s.minus(comp);
        }
        return out;
    }

    PackingCount solve(const Bits<W>& s) {
        if (s.empty()) return {0, 1};
        if (auto it = memo_.find(s); it != memo_.end()) return it->second;
        PackingCount r;
        const auto comps = components(s);
        if (comps.size() > 1) {
            r = {0, 1};
            for (const auto& c : comps) {
                const auto sub = solve(c);
                r.max_occupancy += sub.max_occupancy;
                r.count = checked_mul(r.count, sub.count);
            }
        } else {
            const int v = s.lowest();
            Bits<W> without = s;
            without.reset(v);
            const auto a = solve(without);
            auto b = solve(without.minus(nb_[static_cast<std::size_t>(v)]));
            b.max_occupancy += 1;
            if (a.max_occupancy == b.max_occupancy) r = {a.max_occupancy, checked_add(a.count, b.count)};
            else r = a.max_occupancy > b.max_occupancy ? a : b;
        }
        if (memo_.size() >= budget_) throw Error(ErrorCode::TooLarge, "memo budget exhausted while counting packings");
        memo_.emplace(s, r);
        return r;
    }

    std::vector<Bits<W>> nb_;
    Bits<W> all_;
    std::unordered_map<Bits<W>, PackingCount, BitsHash<W>> memo_;
    std::size_t budget_;
};

}  // namespace detail

/// Maximal occupancy and maximizer count on graphs up to `packing_cap` sites.
inline PackingCount count_max_packings(const SimpleGraph& g, const OracleLimits& lim = {}) {
    const int n = g.size();
    if (n > lim.packing_cap || n > 256)
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " sites exceed the packing-count cap of " +
                                             std::to_string(std::min(lim.packing_cap, 256)));
    if (n <= 64) return detail::PackingCounter<1>(g, lim.memo_budget).count();
    if (n <= 128) return detail::PackingCounter<2>(g, lim.memo_budget).count();
    if (n <= 192) return detail::PackingCounter<3>(g, lim.memo_budget).count();
    return detail::PackingCounter<4>(g, lim.memo_budget).count();
}

inline PackingCount count_max_packings(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    return count_max_packings(simple_graph(g), lim);
}

/// Largest occupancy reachable on the graph.
inline int max_occupancy(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    return count_max_packings(g, lim).max_occupancy;
}

namespace detail {

struct MaximizerCollector {
    const SimpleGraph& g;
    int target;
    std::size_t cap;
    std::vector<std::vector<int>> earlier;
    std::vector<int> later_count;  // sites after x, used for the occupancy bound
    std::vector<std::uint8_t> bits;
    std::vector<std::vector<std::uint8_t>> out;

    void go(int x, int occ) {
        if (occ + (g.size() - x) < target) return;
        if (x == g.size()) {
            if (occ == target) {
                if (out.size() >= cap) throw Error(ErrorCode::TooLarge, "too many maximizers to list");
                out.push_back(bits);
            }
            return;
        }
        bool free = true;
        for (int y : earlier[static_cast<std::size_t>(x)])
            if (bits[static_cast<std::size_t>(y)]) free = false;
        if (free) {
            bits[static_cast<std::size_t>(x)] = 1;
            go(x + 1, occ + 1);
            bits[static_cast<std::size_t>(x)] = 0;
        }
        go(x + 1, occ);
    }
};

}  // namespace detail

/// All maximal-occupancy configurations, in lexicographic order of the bit
/// vectors (site 0 most significant, 1 before 0).
inline std::vector<Configuration> maximizers(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    if (g.site_count() > lim.exhaustive_cap)
        throw Error(ErrorCode::TooLarge, std::to_string(g.site_count()) + " sites exceed the exhaustive cap of " +
                                             std::to_string(lim.exhaustive_cap));
    const auto sg = simple_graph(g);
    const auto pc = count_max_packings(sg, lim);
    if (pc.count > lim.list_cap) throw Error(ErrorCode::TooLarge, "too many maximizers to list");
    detail::MaximizerCollector col{sg, pc.max_occupancy, lim.list_cap, {}, {}, {}, {}};
    col.earlier.resize(static_cast<std::size_t>(sg.size()));
    for (int x = 0; x < sg.size(); ++x)
        for (int y : sg.adj[static_cast<std::size_t>(x)])
            if (y < x) col.earlier[static_cast<std::size_t>(x)].push_back(y);
    col.bits.assign(static_cast<std::size_t>(sg.size()), 0);
    col.go(0, 0);
    std::vector<Configuration> out;
    out.reserve(col.out.size());
    for (auto& b : col.out) {
        Configuration c(g);
        c.bits = std::move(b);
        out.push_back(std::move(c));
    }
    return out;
}

/// Raw maximizer count and the number of orbits under torus translations.
struct ReducedCount {
    std::uint64_t raw = 0;
    std::uint64_t translations = 0;
    std::uint64_t orbits = 0;
};

/// Counts translation orbits of the maximizers (requires listing them).
inline ReducedCount symmetry_reduced_count(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    const auto ms = maximizers(g, lim);
    ReducedCount r;
    r.raw = ms.size();
    r.translations = static_cast<std::uint64_t>(g.dims()[0]) * static_cast<std::uint64_t>(g.dims()[1]);
    std::vector<std::vector<std::uint8_t>> keys;
    for (const auto& c : ms) keys.push_back(c.bits);
    std::sort(keys.begin(), keys.end());
    std::vector<char> done(keys.size(), 0);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (done[i]) continue;
        ++r.orbits;
        Configuration c(g);
        c.bits = keys[i];
        for (int dx = 0; dx < g.dims()[0]; ++dx) {
            for (int dy = 0; dy < g.dims()[1]; ++dy) {
                const auto t = translate(c, dx, dy);
                const auto it = std::lower_bound(keys.begin(), keys.end(), t.bits);
                if (it != keys.end() && *it == t.bits) done[static_cast<std::size_t>(it - keys.begin())] = 1;
            }
        }
    }
    return r;
}

}  // namespace hcpack
