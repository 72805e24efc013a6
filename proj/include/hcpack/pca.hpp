#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hcpack/configuration.hpp"
#include "hcpack/error.hpp"
#include "hcpack/philox.hpp"

namespace hcpack {

/// Update probability. Single-parameter lattices use `p`; UJ and Q pick
/// `p4` for degree-4 sites and `p_high` for the others.
struct Pressure {
    double p = 0.0;
    double p4 = 0.0;
    double p_high = 0.0;
    bool two_parameter = false;

    static Pressure single(double p) {
        Pressure pr;
        pr.p = p;
        pr.validate();
        return pr;
    }
    static Pressure pair(double p4, double p_high) {
        Pressure pr;
        pr.p4 = p4;
        pr.p_high = p_high;
        pr.two_parameter = true;
        pr.validate();
        return pr;
    }

    void validate() const {
        auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (two_parameter ? !(in01(p4) && in01(p_high)) : !in01(p))
            throw Error(ErrorCode::InvalidArgument, "pressure must lie in [0,1]");
    }
    [[nodiscard]] static double fugacity(double q) {
        return q < 1.0 ? q / (1.0 - q) : std::numeric_limits<double>::infinity();
    }
    [[nodiscard]] double fugacity() const { return fugacity(p); }

    /// Probability used at site x of g.
    [[nodiscard]] double effective(const PeriodicGraph& g, int x) const {
        if (!two_parameter) return p;
        return g.degree(x) == 4 ? p4 : p_high;
    }
};

/// Checks that the pressure shape matches the lattice.
inline void check_pressure(const PeriodicGraph& g, const Pressure& pr) {
    pr.validate();
    if (pr.two_parameter != g.spec().two_parameter)
        throw Error(ErrorCode::InvalidArgument,
                    g.name() + (g.spec().two_parameter ? " needs a (p4, p_high) pressure" : " needs a single pressure p"));
}

inline bool blocked(const PeriodicGraph& g, const Configuration& c, int x) {
    for (const int* it = g.neighbors_begin(x); it != g.neighbors_end(x); ++it)
        if (c[*it]) return true;
    return false;
}

/// Hard core update at x: 0 if a neighbor is occupied, otherwise 1 iff draw < p.
inline bool local_update(const PeriodicGraph& g, const Configuration& c, int x, const Pressure& pr, double draw) {
    if (blocked(g, c, x)) return false;
    return draw < pr.effective(g, x);
}

/// Position of one class pass inside a run; keys the random draws.
struct PassKey {
    std::uint64_t seed = 0;
    std::uint64_t cycle = 0;
    std::uint32_t pass = 0;
};

namespace detail {

inline void pass_range(const PeriodicGraph& g, Configuration& c, const std::vector<int>& members, std::size_t lo,
                       std::size_t hi, const Pressure& pr, const PassKey& key) {
    for (std::size_t i = lo; i < hi; ++i) {
        const int x = members[i];
        bool v = false;
        if (!blocked(g, c, x)) {
            const double q = pr.effective(g, x);
            // draws are pure functions of the key, so skipping blocked sites is exact
            v = q >= 1.0 || (q > 0.0 && keyed_uniform(key.seed, static_cast<std::uint32_t>(x), key.pass, key.cycle) < q);
        }
        c.bits[static_cast<std::size_t>(x)] = v ? 1 : 0;
    }
}

}  // namespace detail

/// Simultaneous update of every site of class k. Class sites are pairwise
/// non-adjacent, so the in-place sweep reads only pre-pass values and the
/// result does not depend on visiting order or thread count.
inline void class_pass(const PeriodicGraph& g, Configuration& c, int k, const Pressure& pr, const PassKey& key,
                       int threads = 1) {
    const auto& members = g.class_members(k);
    const std::size_t n = members.size();
    if (threads <= 1 || n < 4096) {
        detail::pass_range(g, c, members, 0, n, pr, key);
        return;
    }
    const auto t = static_cast<std::size_t>(threads);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t lo = n * i / t;
        const std::size_t hi = n * (i + 1) / t;
        pool.emplace_back([&, lo, hi] { detail::pass_range(g, c, members, lo, hi, pr, key); });
    }
    for (auto& th : pool) th.join();
}

/// Class pass visiting members in an arbitrary order; used to check simultaneity.
inline void class_pass_ordered(const PeriodicGraph& g, Configuration& c, const std::vector<int>& order,
                               const Pressure& pr, const PassKey& key) {
    detail::pass_range(g, c, order, 0, order.size(), pr, key);
}

/// Catalog schedule: classes in index order.
inline std::vector<int> default_schedule(const PeriodicGraph& g) {
    std::vector<int> s(static_cast<std::size_t>(g.class_count()));
    for (int k = 0; k < g.class_count(); ++k) s[static_cast<std::size_t>(k)] = k;
    return s;
}

/// One application of F_p: a class pass for every class in schedule order.
/// Pass index i of the schedule keys the draws of the i-th pass.
inline void full_cycle(const PeriodicGraph& g, Configuration& c, const Pressure& pr, std::uint64_t seed,
                       std::uint64_t cycle, const std::vector<int>& schedule, int threads = 1) {
    for (std::size_t i = 0; i < schedule.size(); ++i)
        class_pass(g, c, schedule[i], pr, {seed, cycle, static_cast<std::uint32_t>(i)}, threads);
}

inline void full_cycle(const PeriodicGraph& g, Configuration& c, const Pressure& pr, std::uint64_t seed,
                       std::uint64_t cycle, int threads = 1) {
    full_cycle(g, c, pr, seed, cycle, default_schedule(g), threads);
}

struct TraceRow {
    std::uint64_t cycle = 0;
    DensityReport density;
    double order = 0.0;
};

struct RunTrace {
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::vector<int> schedule;
    std::vector<TraceRow> rows;
    bool all_legal = true;
};

struct RunOptions {
    int thinning = 1;             ///< record every `thinning`-th cycle (the last cycle is always recorded)
    std::uint64_t first_cycle = 0;
    int threads = 1;
    std::vector<int> schedule;    ///< empty means the catalog order
    bool check_legality = true;
    std::function<double(const DensityReport&)> order;  ///< order parameter, optional
};

/// Iterates F_p for n_cycles from c (updated in place) and returns the trace.
/// Cycle t uses counter cycle `first_cycle + t`.
inline RunTrace run(const PeriodicGraph& g, Configuration& c, const Pressure& pr, std::uint64_t n_cycles,
                    std::uint64_t seed, const RunOptions& opt = {}) {
    if (n_cycles < 1) throw Error(ErrorCode::InvalidArgument, "n_cycles must be at least 1");
    if (opt.thinning < 1) throw Error(ErrorCode::InvalidArgument, "thinning must be at least 1");
    check_pressure(g, pr);
    RunTrace tr;
    tr.seed = seed;
    tr.schedule = opt.schedule.empty() ? default_schedule(g) : opt.schedule;
    for (std::uint64_t t = 0; t < n_cycles; ++t) {
        const std::uint64_t cyc = opt.first_cycle + t;
        full_cycle(g, c, pr, seed, cyc, tr.schedule, opt.threads);
        if (opt.check_legality && !is_legal(c)) tr.all_legal = false;
        if ((t + 1) % static_cast<std::uint64_t>(opt.thinning) == 0 || t + 1 == n_cycles) {
            TraceRow row;
            row.cycle = cyc + 1;
            row.density = density(c);
            row.order = opt.order ? opt.order(row.density) : 0.0;
            tr.rows.push_back(std::move(row));
        }
    }
    tr.steps = n_cycles;
    return tr;
}

/// Requirement on one site's draw in the reachability witness.
enum class DrawEvent : std::uint8_t {
    Any,       ///< site blocked, the draw is irrelevant
    Below,     ///< draw < p_effective (site becomes 1)
    AtLeast,   ///< draw >= p_effective (site stays 0)
};

struct ReachabilityStep {
    std::vector<DrawEvent> events;  ///< per site
    double probability = 1.0;
    double log_probability = 0.0;
};

/// Two-cycle witness c_a -> all-0 -> c_b with its probability.
struct ReachabilityWitness {
    ReachabilityStep to_vacuum;
    ReachabilityStep to_target;
    double probability = 1.0;
    double log_probability = 0.0;
};

/// Builds the explicit draw sequence of the irreducibility argument: one
/// cycle empties the torus, a second one writes c_b.
inline ReachabilityWitness reachability_check(const PeriodicGraph& g, const Configuration& ca,
                                              const Configuration& cb, const Pressure& pr) {
    check_pressure(g, pr);
    if (!is_legal(ca) || !is_legal(cb)) throw Error(ErrorCode::IllegalInput, "both configurations must be legal");
    const auto sched = default_schedule(g);
    std::vector<int> rank(static_cast<std::size_t>(g.class_count()));
    for (std::size_t i = 0; i < sched.size(); ++i) rank[static_cast<std::size_t>(sched[i])] = static_cast<int>(i);
    for (int x = 0; x < g.site_count(); ++x) {
        const double q = pr.effective(g, x);
        if (!(q > 0.0 && q < 1.0))
            throw Error(ErrorCode::InvalidArgument, "reachability needs 0 < p < 1 at every site");
    }

    ReachabilityWitness w;
    auto account = [&](ReachabilityStep& st, int x, DrawEvent ev) {
        st.events[static_cast<std::size_t>(x)] = ev;
        const double q = pr.effective(g, x);
        if (ev == DrawEvent::Below) st.log_probability += std::log(q);
        if (ev == DrawEvent::AtLeast) st.log_probability += std::log1p(-q);
    };
    w.to_vacuum.events.assign(static_cast<std::size_t>(g.site_count()), DrawEvent::Any);
    w.to_target.events.assign(static_cast<std::size_t>(g.site_count()), DrawEvent::Any);
    for (int x = 0; x < g.site_count(); ++x) {
        const int rx = rank[static_cast<std::size_t>(g.class_of(x))];
        // emptying: earlier classes are already 0, later ones still hold c_a
        bool blocked_a = false;
        // writing c_b: earlier classes hold c_b, later ones are still 0
        bool blocked_b = false;
        for (const int* it = g.neighbors_begin(x); it != g.neighbors_end(x); ++it) {
            const int ry = rank[static_cast<std::size_t>(g.class_of(*it))];
            if (ry > rx && ca[*it]) blocked_a = true;
            if (ry < rx && cb[*it]) blocked_b = true;
        }
        account(w.to_vacuum, x, blocked_a ? DrawEvent::Any : DrawEvent::AtLeast);
        if (cb[x]) account(w.to_target, x, DrawEvent::Below);
        else account(w.to_target, x, blocked_b ? DrawEvent::Any : DrawEvent::AtLeast);
    }
    w.to_vacuum.probability = std::exp(w.to_vacuum.log_probability);
    w.to_target.probability = std::exp(w.to_target.log_probability);
    w.log_probability = w.to_vacuum.log_probability + w.to_target.log_probability;
    w.probability = std::exp(w.log_probability);
    return w;
}

/// Applies a witness step to `c` by substituting concrete draws satisfying
/// each event, returning the configuration after one cycle.
inline Configuration replay_step(const PeriodicGraph& g, const Configuration& c, const ReachabilityStep& st,
                                 const Pressure& pr) {
    Configuration out = c;
    for (int k : default_schedule(g)) {
        for (int x : g.class_members(k)) {
            const double q = pr.effective(g, x);
            const auto ev = st.events[static_cast<std::size_t>(x)];
            const double draw = ev == DrawEvent::Below ? q / 2 : (ev == DrawEvent::AtLeast ? (1 + q) / 2 : 0.5);
            out.set(x, local_update(g, out, x, pr, draw));
        }
    }
    return out;
}

}  // namespace hcpack
