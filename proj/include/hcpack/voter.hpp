#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcpack/configuration.hpp"
#include "hcpack/error.hpp"
#include "hcpack/pca.hpp"
#include "hcpack/periodic_graph.hpp"

namespace hcpack {

enum class VoterMode { Exhaustive, Empirical };

constexpr const char* to_string(VoterMode m) { return m == VoterMode::Exhaustive ? "exhaustive" : "empirical"; }

/// Fraction of support patterns with k ones whose two-substep update at
/// p = 1 yields 1, for k = 0..support_size.
struct VoterCurve {
    std::string lattice;
    std::string variant;  ///< "singleton", "doublet" or "single-sublattice"
    VoterMode mode = VoterMode::Exhaustive;
    int support_size = 0;
    std::vector<std::uint64_t> patterns;       ///< per k
    std::vector<std::uint64_t> ones;           ///< per k, patterns updating to 1
    std::vector<std::optional<double>> fraction;  ///< empty where no pattern has k ones

    [[nodiscard]] bool non_decreasing() const {
        std::optional<double> prev;
        for (const auto& f : fraction) {
            if (!f) continue;
            if (prev && *f < *prev) return false;
            prev = f;
        }
        return true;
    }
    /// fraction(0) = 0 and fraction(support_size) = 1.
    [[nodiscard]] bool corners() const {
        return fraction.front() && *fraction.front() == 0.0 && fraction.back() && *fraction.back() == 1.0;
    }
    [[nodiscard]] bool voter_like() const { return non_decreasing() && corners(); }
};

namespace detail {

/// Two synchronous applications of the p = 1 rule, read at `targets`: a
/// neighbor y of t turns 1 iff all of y's neighbors are 0, and t turns 1 iff
/// all of its neighbors stay 0.
inline bool square_update(const PeriodicGraph& g, const Configuration& c, int t) {
    for (const int* y = g.neighbors_begin(t); y != g.neighbors_end(t); ++y)
        if (!blocked(g, c, *y)) return false;
    return true;
}

struct Support {
    PeriodicGraph graph;
    int center = 0;
    std::vector<int> tuple;  ///< same-class sites within two hops, center first
};

inline std::array<int, 2> voter_dims(const LatticeSpec& s) {
    std::array<int, 2> d{};
    for (int i = 0; i < 2; ++i) {
        const int p = s.period[static_cast<std::size_t>(i)];
        d[static_cast<std::size_t>(i)] = ((8 + p - 1) / p) * p;
    }
    return d;
}

inline Support singleton_support(const std::string& lattice) {
    const auto& s = lattice_spec(lattice);
    Support sup{build_lattice(s.name, voter_dims(s)), 0, {}};
    const auto& g = sup.graph;
    sup.center = g.index(g.dims()[0] / 2, g.dims()[1] / 2, 0);
    sup.tuple.push_back(sup.center);
    for (int r = 1; r <= 2; ++r)
        for (int z : hop_shell(g, sup.center, r))
            if (g.class_of(z) == g.class_of(sup.center)) sup.tuple.push_back(z);
    return sup;
}

inline VoterCurve empty_curve(std::string lattice, std::string variant, VoterMode mode, int n) {
    VoterCurve v;
    v.lattice = std::move(lattice);
    v.variant = std::move(variant);
    v.mode = mode;
    v.support_size = n;
    v.patterns.assign(static_cast<std::size_t>(n) + 1, 0);
    v.ones.assign(static_cast<std::size_t>(n) + 1, 0);
    return v;
}

inline void finish(VoterCurve& v) {
    v.fraction.clear();
    for (std::size_t k = 0; k < v.patterns.size(); ++k) {
        if (v.patterns[k] == 0) v.fraction.emplace_back();
        else v.fraction.emplace_back(static_cast<double>(v.ones[k]) / static_cast<double>(v.patterns[k]));
    }
}

/// Every legal assignment of `tuple` with the rest of the torus empty.
inline VoterCurve exhaustive_singleton(const Support& sup, VoterCurve v) {
    const auto& g = sup.graph;
    const auto n = sup.tuple.size();
    Configuration c(g);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) c.set(sup.tuple[i], (mask >> i) & 1u);
        bool legal = true;
        for (std::size_t i = 0; i < n && legal; ++i)
            if (c[sup.tuple[i]] && blocked(g, c, sup.tuple[i])) legal = false;
        if (!legal) continue;
        const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
        ++v.patterns[k];
        v.ones[k] += square_update(g, c, sup.center);
    }
    return v;
}

}  // namespace detail

struct EmpiricalOptions {
    std::array<int, 2> dims{0, 0};  ///< 0 means a 60x60-cell-order torus
    int runs = 8;                   ///< initial densities (r + 1/2) / runs
    std::uint64_t cycles = 200;
    std::uint64_t seed = 1;
};

/// Voter curve of f_1^2 on the support of Z^2 (3x3 diamond of the even
/// sublattice), H (7-tuple) or T (7 dots of the 19-tuple). Empirical mode
/// bins the update of every class-0 site of long p = 1 runs by its tuple,
/// reading the full neighborhood from the run.
inline VoterCurve voter_curve(const std::string& lattice, VoterMode mode, const EmpiricalOptions& opt = {}) {
    const auto& s = lattice_spec(lattice);
    if (s.name != "4^4" && s.name != "6^3" && s.name != "3^6")
        throw Error(ErrorCode::UnsupportedLattice, "voter curves are defined for 4^4, 6^3 and 3^6");
    const auto sup = detail::singleton_support(s.name);
    const int n = static_cast<int>(sup.tuple.size());
    auto v = detail::empty_curve(s.name, "singleton", mode, n);
    if (mode == VoterMode::Exhaustive) {
        v = detail::exhaustive_singleton(sup, std::move(v));
        detail::finish(v);
        return v;
    }
    std::array<int, 2> dims = opt.dims;
    if (dims[0] == 0) dims = {((60 + s.period[0] - 1) / s.period[0]) * s.period[0],
                              ((60 + s.period[1] - 1) / s.period[1]) * s.period[1]};
    const auto g = build_lattice(s.name, dims);
    // tuple offsets relative to the support center, as cell shifts and sites
    std::vector<std::array<int, 3>> offs;
    const auto cc = sup.graph.coords(sup.center);
    for (int z : sup.tuple) {
        const auto zc = sup.graph.coords(z);
        offs.push_back({zc[0] - cc[0], zc[1] - cc[1], zc[2]});
    }
    const auto pr = Pressure::single(1.0);
    for (int r = 0; r < opt.runs; ++r) {
        auto c = bernoulli_init(g, (r + 0.5) / opt.runs, opt.seed + static_cast<std::uint64_t>(r));
        for (std::uint64_t t = 0; t < opt.cycles; ++t) {
            full_cycle(g, c, pr, opt.seed, t);
            for (int x : g.class_members(0)) {
                const auto xc = g.coords(x);
                if (xc[2] != 0) continue;
                int k = 0;
                for (const auto& o : offs) k += c[g.index(xc[0] + o[0], xc[1] + o[1], o[2])];
                ++v.patterns[static_cast<std::size_t>(k)];
                v.ones[static_cast<std::size_t>(k)] += detail::square_update(g, c, x);
            }
        }
    }
    detail::finish(v);
    return v;
}

/// Z2M doublet curve: nine horizontal (class 0, class 1) doublets on the
/// even rows of the 5x5 support, each (0,0), (0,1) or (1,0); counts
/// patterns by their number of ones and records whether the updated center
/// doublet holds a 1.
inline VoterCurve doublet_voter_curve() {
    const auto& s = lattice_spec("Z2M");
    const auto g = build_lattice(s.name, detail::voter_dims(s));
    const int cx = g.dims()[0] / 2;
    const int cy = g.dims()[1] / 2;
    std::vector<std::array<int, 2>> doublets;  // left site of each doublet
    for (int dy : {-2, 0, 2})
        for (int dx : {-2, 0, 2}) doublets.push_back({g.index(cx + dx, cy + dy, 0), g.index(cx + dx + 1, cy + dy, 0)});
    const int left = g.index(cx, cy, 0);
    const int right = g.index(cx + 1, cy, 0);
    auto v = detail::empty_curve(s.name, "doublet", VoterMode::Exhaustive, 9);
    Configuration c(g);
    std::array<int, 9> digit{};
    int total = 1;
    for (int i = 0; i < 9; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        int r = code;
        int k = 0;
        for (std::size_t i = 0; i < 9; ++i) {
            digit[i] = r % 3;
            r /= 3;
            c.set(doublets[i][0], digit[i] == 1);
            c.set(doublets[i][1], digit[i] == 2);
            k += digit[i] != 0;
        }
        if (!is_legal(c)) continue;
        ++v.patterns[static_cast<std::size_t>(k)];
        v.ones[static_cast<std::size_t>(k)] += detail::square_update(g, c, left) || detail::square_update(g, c, right);
    }
    detail::finish(v);
    return v;
}

/// Restriction of the Z2M two-substep update to the class-0 sublattice.
inline VoterCurve single_sublattice_voter_curve() {
    const auto sup = detail::singleton_support("Z2M");
    auto v = detail::empty_curve("Z2M", "single-sublattice", VoterMode::Exhaustive,
                                 static_cast<int>(sup.tuple.size()));
    v = detail::exhaustive_singleton(sup, std::move(v));
    detail::finish(v);
    return v;
}

}  // namespace hcpack
