#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hcpack/configuration.hpp"
#include "hcpack/error.hpp"
#include "hcpack/oracle.hpp"
#include "hcpack/pca.hpp"
#include "hcpack/periodic_graph.hpp"
#include "hcpack/rational.hpp"

namespace hcpack {

/// Second-shell statistics of a constant-degree lattice and the density
/// bound rho_bar = 1 / (1 + d / (n + 1)).
struct KissingStats {
    std::string lattice;
    int d = 0;
    int site = 0;              ///< unit-cell site attaining the maximum
    std::vector<int> n_y_max;  ///< per neighbor y of that site
    int shell_sum = 0;         ///< max over legal shells of sum_y n_y
    Rational n;                ///< shell_sum / d
    Rational rho_bar;
};

namespace detail {

/// Maximum weight independent set of a small vertex set; adjacency by graph.
inline int max_weight_independent(const PeriodicGraph& g, const std::vector<int>& verts, const std::vector<int>& w) {
    const std::size_t n = verts.size();
    if (n > 63) throw Error(ErrorCode::TooLarge, "shell too large for exhaustive maximization");
    std::vector<std::uint64_t> conflict(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && g.adjacent(verts[i], verts[j])) conflict[i] |= std::uint64_t{1} << j;
    int best = 0;
    auto rec = [&](auto&& self, std::uint64_t avail, int acc) -> void {
        if (avail == 0) {
            best = std::max(best, acc);
            return;
        }
        int bound = acc;
        for (std::uint64_t a = avail; a; a &= a - 1) bound += w[static_cast<std::size_t>(__builtin_ctzll(a))];
        if (bound <= best) return;
        const int i = __builtin_ctzll(avail);
        const std::uint64_t bit = std::uint64_t{1} << i;
        self(self, avail & ~bit & ~conflict[static_cast<std::size_t>(i)], acc + w[static_cast<std::size_t>(i)]);
        self(self, avail & ~bit, acc);
    };
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    rec(rec, all, 0);
    return best;
}

inline std::array<int, 2> kissing_dims(const LatticeSpec& s) {
    std::array<int, 2> d{};
    for (int i = 0; i < 2; ++i) {
        const int p = s.period[static_cast<std::size_t>(i)];
        d[static_cast<std::size_t>(i)] = ((6 + p - 1) / p) * p;
    }
    return d;
}

}  // namespace detail

/// Exhaustive maximization over legal occupancies of the second shell with
/// c(x) = 1; the worst unit-cell site gives the bound.
inline KissingStats kissing_stats(const PeriodicGraph& g) {
    const auto& s = g.spec();
    if (!s.uniform_degree)
        throw Error(ErrorCode::NonUniformDegree, s.name + " has mixed degrees; the bound needs a constant degree");
    KissingStats best;
    best.lattice = s.name;
    best.shell_sum = -1;
    for (int site = 0; site < s.site_count(); ++site) {
        const int x = g.index(0, 0, site);
        const auto nx = g.neighbors(x);
        const auto n2 = hop_shell(g, x, 2);
        std::vector<int> w;
        for (int z : n2) {
            int k = 0;
            for (int y : nx) k += g.adjacent(y, z);
            w.push_back(k);
        }
        const int sum = detail::max_weight_independent(g, n2, w);
        if (sum <= best.shell_sum) continue;
        best.site = site;
        best.d = static_cast<int>(nx.size());
        best.shell_sum = sum;
        best.n_y_max.clear();
        for (int y : nx) {
            std::vector<int> sub;
            for (int z : n2)
                if (g.adjacent(y, z)) sub.push_back(z);
            best.n_y_max.push_back(detail::max_weight_independent(g, sub, std::vector<int>(sub.size(), 1)));
        }
    }
    best.n = Rational(best.shell_sum, best.d);
    best.rho_bar = Rational(best.shell_sum + best.d, best.shell_sum + best.d + best.d * best.d);
    return best;
}

/// Kissing statistics on a torus large enough that shells do not wrap.
inline KissingStats kissing_stats(const std::string& lattice) {
    const auto& s = lattice_spec(lattice);
    return kissing_stats(build_lattice(s.name, detail::kissing_dims(s)));
}

struct TightnessReport {
    KissingStats stats;
    Rational max_density;
    bool tight = false;
};

/// Compares rho_bar with the enumerated maximal density of g.
inline TightnessReport tightness_report(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    TightnessReport r;
    r.stats = kissing_stats(g.name());
    r.max_density = Rational(max_occupancy(g, lim), g.site_count());
    r.tight = r.max_density == r.stats.rho_bar;
    return r;
}

inline bool bound_tightness(const PeriodicGraph& g, const OracleLimits& lim = {}) {
    return tightness_report(g, lim).tight;
}

/// Lower bound for the two-substep update at a high-degree UJ/Q site when
/// every square-lattice neighbor is blocked: p_high (1 - p4)^c, with c the
/// number of degree-4 neighbors (4 on UJ, 2 on Q).
inline double composite_update_bound(const std::string& lattice, double p4, double p_high) {
    const auto& s = lattice_spec(lattice);
    if (!s.two_parameter) throw Error(ErrorCode::UnsupportedLattice, "composite bound applies to UJ and Q only");
    (void)Pressure::pair(p4, p_high);
    const int centers = s.name == "UJ" ? 4 : 2;
    return p_high * std::pow(1.0 - p4, centers);
}

struct CompositeEstimate {
    double bound = 0.0;
    double frequency = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    [[nodiscard]] double stderr_() const {
        if (trials == 0) return 0.0;
        return std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(trials));
    }
};

/// Empirical conditional frequency from a run: after a high-degree site x
/// is updated, if each of its high-degree neighbors has an occupied
/// high-degree neighbor, record whether x is 1 after its next update.
inline CompositeEstimate composite_update_estimate(const std::string& lattice, double p4, double p_high,
                                                   std::array<int, 2> dims, std::uint64_t burn_in,
                                                   std::uint64_t cycles, std::uint64_t seed) {
    CompositeEstimate est;
    est.bound = composite_update_bound(lattice, p4, p_high);
    const auto g = build_lattice(lattice, dims);
    const auto pr = Pressure::pair(p4, p_high);
    auto c = bernoulli_init(g, 0.3, seed);
    const auto schedule = default_schedule(g);
    const int n = g.site_count();
    std::vector<std::vector<int>> corner_nb(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        if (g.degree(x) != 4)
            for (int y : g.neighbors(x))
                if (g.degree(y) != 4) corner_nb[static_cast<std::size_t>(x)].push_back(y);
    auto condition = [&](int x) {
        for (int y : corner_nb[static_cast<std::size_t>(x)]) {
            bool hit = false;
            for (int z : corner_nb[static_cast<std::size_t>(y)]) hit = hit || c[z];
            if (!hit) return false;
        }
        return true;
    };
    std::vector<char> pending(static_cast<std::size_t>(n), 0);
    for (std::uint64_t t = 0; t < burn_in + cycles; ++t) {
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            const int k = schedule[i];
            class_pass(g, c, k, pr, {seed, t, static_cast<std::uint32_t>(i)});
            if (t < burn_in) continue;
            for (int x : g.class_members(k)) {
                if (g.degree(x) == 4) continue;
                auto& flag = pending[static_cast<std::size_t>(x)];
                if (flag) {
                    ++est.trials;
                    est.successes += c[x];
                }
                flag = condition(x) ? 1 : 0;
            }
        }
    }
    est.frequency = est.trials ? static_cast<double>(est.successes) / static_cast<double>(est.trials) : 0.0;
    return est;
}

}  // namespace hcpack
