#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcpack/configuration.hpp"
#include "hcpack/error.hpp"
#include "hcpack/order_parameter.hpp"
#include "hcpack/pca.hpp"
#include "hcpack/periodic_graph.hpp"

namespace hcpack {

/// Constants of the sequential protocol.
struct Protocol {
    std::uint64_t burn_in = 1000;
    std::uint64_t window = 500;
    double epsilon = 0.02;          ///< convergence threshold on the windowed order parameter
    double delta = 0.10;            ///< divergence threshold
    std::vector<std::uint64_t> seeds{1, 2, 3};
    double resolution = 0.01;
    std::uint64_t max_cycles = 10000;
    std::optional<double> rho0;     ///< Bernoulli density for the supercritical run; catalog rho(p_c) or 0.3
    int max_probes = 24;            ///< bisection budget on the large torus
    int threads = 1;
    std::vector<double> coarse_grid{0.5, 0.6, 0.7, 0.75, 0.8, 0.85, 0.9, 0.93, 0.95, 0.97, 0.98, 0.99, 0.995, 0.999};
};

inline nlohmann::json to_json(const Protocol& p) {
    nlohmann::json j{{"burn_in", p.burn_in},       {"window", p.window},         {"epsilon", p.epsilon},
                     {"delta", p.delta},           {"seeds", p.seeds},           {"resolution", p.resolution},
                     {"max_cycles", p.max_cycles}, {"max_probes", p.max_probes}, {"coarse_grid", p.coarse_grid}};
    j["rho0"] = p.rho0 ? nlohmann::json(*p.rho0) : nlohmann::json(nullptr);
    return j;
}

inline double default_rho0(const LatticeSpec& s, const Protocol& p) {
    if (p.rho0) return *p.rho0;
    return s.table.rho_pc ? *s.table.rho_pc : 0.3;
}

enum class Verdict { Subcritical, Supercritical, Undecided };

constexpr const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Subcritical: return "subcritical";
        case Verdict::Supercritical: return "supercritical";
        case Verdict::Undecided: return "undecided";
    }
    return "?";
}

struct SeedSeries {
    std::uint64_t seed = 0;
    std::vector<double> order;        ///< per cycle
    std::vector<double> window_means; ///< contrast of window-averaged class densities
    std::vector<double> density;      ///< per cycle, total
    std::vector<std::vector<double>> class_density_window;  ///< class densities averaged per window
};

struct PhaseVerdict {
    Verdict verdict = Verdict::Undecided;
    std::vector<SeedSeries> relax;     ///< one-class-full initial conditions
    std::vector<SeedSeries> diverge;   ///< Bernoulli(rho0) initial conditions
    int relax_votes = 0;
    int diverge_votes = 0;
};

namespace detail {

/// Runs up to `cycles` cycles recording order parameter and density per
/// cycle. After burn-in, class densities are averaged over consecutive
/// windows and the contrast of each window average is a window mean;
/// `stop` is asked after every completed window.
inline SeedSeries record(const PeriodicGraph& g, Configuration c, const Pressure& pr, std::uint64_t seed,
                         std::uint64_t cycles, const Protocol& proto,
                         const std::function<bool(const SeedSeries&)>& stop = {}) {
    SeedSeries s;
    s.seed = seed;
    const auto schedule = default_schedule(g);
    std::vector<double> class_acc(static_cast<std::size_t>(g.class_count()), 0.0);
    for (std::uint64_t t = 0; t < cycles; ++t) {
        full_cycle(g, c, pr, seed, t, schedule, proto.threads);
        const auto r = density(c);
        s.order.push_back(order_parameter(g.spec(), r));
        s.density.push_back(r.total());
        if (t < proto.burn_in) continue;
        for (int k = 0; k < g.class_count(); ++k) class_acc[static_cast<std::size_t>(k)] += r.by_class(k);
        if ((t + 1 - proto.burn_in) % proto.window == 0) {
            for (auto& v : class_acc) v /= static_cast<double>(proto.window);
            s.class_density_window.push_back(class_acc);
            s.window_means.push_back(order_parameter(g.spec(), class_acc));
            std::fill(class_acc.begin(), class_acc.end(), 0.0);
            if (stop && stop(s)) break;
        }
    }
    return s;
}

inline bool relaxed(const SeedSeries& s, const Protocol& p) {
    return !s.window_means.empty() && s.window_means.back() < p.epsilon;
}

/// Last window mean above delta, window means non-decreasing up to epsilon.
inline bool diverged(const SeedSeries& s, const Protocol& p) {
    if (s.window_means.empty() || s.window_means.back() <= p.delta) return false;
    for (std::size_t i = 1; i < s.window_means.size(); ++i)
        if (s.window_means[i] < s.window_means[i - 1] - p.epsilon) return false;
    return true;
}

}  // namespace detail

/// Subcritical iff a majority of seeds relax from a one-class-full start to
/// a window mean below epsilon; supercritical iff a majority of
/// Bernoulli(rho0) starts reach a window mean above delta with window means
/// non-decreasing up to epsilon; undecided otherwise. Runs stop at the
/// first deciding window or at max_cycles.
inline PhaseVerdict classify_phase(const PeriodicGraph& g, const Pressure& pr, const Protocol& proto) {
    check_pressure(g, pr);
    if (proto.seeds.empty() || proto.window == 0)
        throw Error(ErrorCode::InvalidArgument, "protocol needs seeds and a positive window");
    PhaseVerdict v;
    const int majority = static_cast<int>(proto.seeds.size()) / 2 + 1;
    const auto full = class_full(g, 0);
    const std::uint64_t cycles = std::max(proto.max_cycles, proto.burn_in + proto.window);
    for (auto seed : proto.seeds) {
        auto stop = [&](const SeedSeries& s) { return detail::relaxed(s, proto); };
        v.relax.push_back(detail::record(g, full, pr, seed, cycles, proto, stop));
        v.relax_votes += detail::relaxed(v.relax.back(), proto);
    }
    if (v.relax_votes >= majority) {
        v.verdict = Verdict::Subcritical;
        return v;
    }
    const double rho0 = default_rho0(g.spec(), proto);
    for (auto seed : proto.seeds) {
        const auto init = bernoulli_init(g, rho0, seed);
        auto stop = [&](const SeedSeries& s) { return detail::diverged(s, proto); };
        v.diverge.push_back(detail::record(g, init, pr, seed, cycles, proto, stop));
        v.diverge_votes += detail::diverged(v.diverge.back(), proto);
    }
    v.verdict = v.diverge_votes >= majority ? Verdict::Supercritical : Verdict::Undecided;
    return v;
}

inline nlohmann::json to_json(const PhaseVerdict& v, bool with_series = false) {
    nlohmann::json j{{"verdict", to_string(v.verdict)}, {"relax_votes", v.relax_votes},
                     {"diverge_votes", v.diverge_votes}};
    auto series = [&](const std::vector<SeedSeries>& ss) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& s : ss) {
            nlohmann::json e{{"seed", s.seed}, {"window_means", s.window_means}};
            if (with_series) e["order_series"] = s.order;
            a.push_back(e);
        }
        return a;
    };
    j["relax"] = series(v.relax);
    j["diverge"] = series(v.diverge);
    return j;
}

/// Torus with about `sites` sites, commensurate with the lattice period.
inline std::array<int, 2> torus_dims(const LatticeSpec& s, int sites) {
    const double cells = static_cast<double>(sites) / s.site_count();
    const double side = std::sqrt(cells);
    std::array<int, 2> d{};
    for (int i = 0; i < 2; ++i) {
        const int p = s.period[static_cast<std::size_t>(i)];
        d[static_cast<std::size_t>(i)] = std::max(p, static_cast<int>(std::lround(side / p)) * p);
    }
    return d;
}

enum class BracketStatus { Converged, Partial, NoTransition };

constexpr const char* to_string(BracketStatus s) {
    switch (s) {
        case BracketStatus::Converged: return "converged";
        case BracketStatus::Partial: return "partial";
        case BracketStatus::NoTransition: return "no-transition";
    }
    return "?";
}

struct Probe {
    double p = 0.0;
    std::array<int, 2> dims{0, 0};
    Verdict verdict = Verdict::Undecided;
};

struct CriticalityEstimate {
    std::string lattice;
    std::array<int, 2> dims{0, 0};
    std::optional<double> p4;   ///< fixed p4 for two-parameter lattices; the bracket is on p_high
    double p_lo = 0.0;
    double p_hi = 1.0;
    double rho_at_pc = 0.0;
    BracketStatus status = BracketStatus::Partial;
    bool monotone = true;       ///< no subcritical probe above a supercritical one on the same torus
    std::vector<Probe> probes;
    Protocol protocol;

    [[nodiscard]] double midpoint() const { return 0.5 * (p_lo + p_hi); }
};

inline nlohmann::json to_json(const CriticalityEstimate& e) {
    nlohmann::json probes = nlohmann::json::array();
    for (const auto& pr : e.probes)
        probes.push_back({{"p", pr.p}, {"dims", pr.dims}, {"verdict", to_string(pr.verdict)}});
    nlohmann::json j{{"lattice", e.lattice}, {"dims", e.dims},         {"p_lo", e.p_lo},
                     {"p_hi", e.p_hi},       {"rho_at_pc", e.rho_at_pc}, {"status", to_string(e.status)},
                     {"monotone", e.monotone}, {"probes", probes},     {"protocol", to_json(e.protocol)}};
    j["p4"] = e.p4 ? nlohmann::json(*e.p4) : nlohmann::json(nullptr);
    return j;
}

struct BracketOptions {
    int small_sites = 2500;
    int large_sites = 10000;
    std::optional<double> p4;
};

namespace detail {

inline Pressure pressure_at(const LatticeSpec& s, const std::optional<double>& p4, double p) {
    if (s.two_parameter) return Pressure::pair(p4.value_or(0.0), p);
    return Pressure::single(p);
}

inline bool monotone(const std::vector<Probe>& probes) {
    for (const auto& a : probes)
        for (const auto& b : probes)
            if (a.dims == b.dims && a.verdict == Verdict::Subcritical && b.verdict == Verdict::Supercritical &&
                a.p > b.p)
                return false;
    return true;
}

inline double mean_density(const PeriodicGraph& g, const Pressure& pr, const Protocol& proto) {
    const double rho0 = default_rho0(g.spec(), proto);
    double acc = 0.0;
    for (auto seed : proto.seeds) {
        const auto s = record(g, bernoulli_init(g, rho0, seed), pr, seed, proto.burn_in + proto.window, proto);
        double w = 0.0;
        for (std::size_t i = proto.burn_in; i < s.density.size(); ++i) w += s.density[i];
        acc += w / static_cast<double>(proto.window);
    }
    return acc / static_cast<double>(proto.seeds.size());
}

}  // namespace detail

/// Coarse scan on the small torus, then bisection on the large torus until
/// p_hi - p_lo <= resolution. Undecided probes are retried at the quarter
/// points; when those are undecided too the partial bracket is returned.
/// R-class lattices get a no-transition report after a check at the top
/// of the coarse grid.
inline CriticalityEstimate bracket_pc(const std::string& lattice, const Protocol& proto = {},
                                      const BracketOptions& opt = {}) {
    const auto& s = lattice_spec(lattice);
    CriticalityEstimate e;
    e.lattice = s.name;
    e.p4 = s.two_parameter ? std::optional<double>(opt.p4.value_or(0.0)) : std::nullopt;
    e.protocol = proto;
    const auto small = build_lattice(s.name, torus_dims(s, opt.small_sites));
    const auto large = build_lattice(s.name, torus_dims(s, opt.large_sites));
    e.dims = large.dims();
    auto probe = [&](const PeriodicGraph& g, double p) {
        const auto v = classify_phase(g, detail::pressure_at(s, e.p4, p), proto).verdict;
        e.probes.push_back({p, g.dims(), v});
        return v;
    };
    if (proto.coarse_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty coarse grid");
    if (s.table.type == PackingType::R) {
        const double top = proto.coarse_grid.back();
        e.p_lo = e.p_hi = top;
        e.status = probe(large, top) == Verdict::Subcritical ? BracketStatus::NoTransition : BracketStatus::Partial;
        e.rho_at_pc = detail::mean_density(large, detail::pressure_at(s, e.p4, top), proto);
        return e;
    }
    // coarse scan: highest subcritical point below the first supercritical one
    std::optional<std::size_t> lo_i;
    std::optional<std::size_t> hi_i;
    for (std::size_t i = 0; i < proto.coarse_grid.size(); ++i) {
        const auto v = probe(small, proto.coarse_grid[i]);
        if (v == Verdict::Subcritical) lo_i = i;
        if (v == Verdict::Supercritical) {
            hi_i = i;
            break;
        }
    }
    double lo = lo_i ? proto.coarse_grid[*lo_i] : 0.0;
    double hi = hi_i ? proto.coarse_grid[*hi_i] : 1.0;
    if (!hi_i) {
        e.p_lo = lo;
        e.p_hi = 1.0;
        e.status = lo_i && *lo_i + 1 == proto.coarse_grid.size() ? BracketStatus::NoTransition : BracketStatus::Partial;
        e.rho_at_pc = detail::mean_density(large, detail::pressure_at(s, e.p4, lo), proto);
        e.monotone = detail::monotone(e.probes);
        return e;
    }
    // confirm the endpoints on the large torus, widening along the grid
    int budget = proto.max_probes;
    std::size_t li = lo_i.value_or(0);
    std::size_t hj = *hi_i;
    bool lo_ok = lo_i.has_value() && probe(large, lo) == Verdict::Subcritical;
    while (!lo_ok && li > 0 && budget-- > 0) {
        lo = proto.coarse_grid[--li];
        lo_ok = probe(large, lo) == Verdict::Subcritical;
    }
    bool hi_ok = probe(large, hi) == Verdict::Supercritical;
    while (!hi_ok && hj + 1 < proto.coarse_grid.size() && budget-- > 0) {
        hi = proto.coarse_grid[++hj];
        hi_ok = probe(large, hi) == Verdict::Supercritical;
    }
    if (!hi_ok) hi = 1.0;
    if (!lo_ok) lo = 0.0;
    bool stuck = !lo_ok || !hi_ok;
    while (!stuck && hi - lo > proto.resolution + 1e-12 && budget > 0) {
        bool moved = false;
        for (double f : {0.5, 0.25, 0.75}) {
            if (budget-- <= 0) break;
            const double p = lo + f * (hi - lo);
            const auto v = probe(large, p);
            if (v == Verdict::Subcritical) lo = p;
            if (v == Verdict::Supercritical) hi = p;
            if (v != Verdict::Undecided) {
                moved = true;
                break;
            }
        }
        stuck = !moved;
    }
    e.p_lo = lo;
    e.p_hi = hi;
    e.status = !stuck && hi - lo <= proto.resolution + 1e-12 ? BracketStatus::Converged : BracketStatus::Partial;
    e.rho_at_pc = detail::mean_density(large, detail::pressure_at(s, e.p4, e.midpoint()), proto);
    e.monotone = detail::monotone(e.probes);
    return e;
}

struct CurvePoint {
    double p4 = 0.0;
    CriticalityEstimate estimate;
};

/// For each p4 of the grid, a bracket on the critical p_high (UJ, Q).
inline std::vector<CurvePoint> critical_curve(const std::string& lattice, const std::vector<double>& p4_grid,
                                              const Protocol& proto = {}, BracketOptions opt = {}) {
    const auto& s = lattice_spec(lattice);
    if (!s.two_parameter) throw Error(ErrorCode::UnsupportedLattice, "critical curves are defined for UJ and Q");
    std::vector<CurvePoint> out;
    for (double p4 : p4_grid) {
        if (!(p4 >= 0.0 && p4 < 1.0)) throw Error(ErrorCode::InvalidArgument, "p4 grid values must lie in [0,1)");
        opt.p4 = p4;
        out.push_back({p4, bracket_pc(s.name, proto, opt)});
    }
    return out;
}

/// Curve non-decreasing in p4 within `tol`, comparing bracket midpoints.
inline bool curve_non_decreasing(const std::vector<CurvePoint>& c, double tol) {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].estimate.midpoint() < c[i - 1].estimate.midpoint() - tol) return false;
    return true;
}

/// a above b pointwise within `tol` on a shared p4 grid.
inline bool curve_above(const std::vector<CurvePoint>& a, const std::vector<CurvePoint>& b, double tol) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "curves use different p4 grids");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].estimate.midpoint() < b[i].estimate.midpoint() - tol) return false;
    return true;
}

}  // namespace hcpack
