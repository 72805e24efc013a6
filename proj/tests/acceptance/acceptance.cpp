// Acceptance checks: one PASS/FAIL line per criterion.
//
//   acceptance            criteria 1-9 and 11
//   acceptance --only 10  the UJ/Q critical-curve suite (tens of minutes)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hcpack/hcpack.hpp"

using namespace hcpack;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back((ok ? "ok " : "FAILED ") + what);
    }
};

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << std::fixed << v;
    return os.str();
}

std::string dims_str(std::array<int, 2> d) { return std::to_string(d[0]) + "x" + std::to_string(d[1]); }

/// Smallest commensurate torus with side at least `cells` cells.
std::array<int, 2> small_dims(const LatticeSpec& s, int cells) {
    std::array<int, 2> d{};
    for (int i = 0; i < 2; ++i) {
        const int p = s.period[static_cast<std::size_t>(i)];
        d[static_cast<std::size_t>(i)] = ((cells + p - 1) / p) * p;
    }
    return d;
}

/// Exhaustive-oracle torus for the R lattices (at most 36 sites).
const std::map<std::string, std::array<int, 2>> kOracleDims{
    {"3.4.6.4", {2, 2}}, {"3.6.3.6", {3, 3}}, {"3.12^2", {2, 2}}};

// 1 -------------------------------------------------------------------------

Outcome density_bounds() {
    Outcome o;
    const auto sq = kissing_stats("4^4");
    o.check(sq.d == 4 && sq.n == Rational(3) && sq.rho_bar == Rational(1, 2),
            "4^4 d=" + std::to_string(sq.d) + " n=" + sq.n.str() + " rho_bar=" + sq.rho_bar.str());
    const std::set<std::string> tight{"4^4", "6^3", "3^6", "4.8^2", "4.6.12", "3.6.3.6", "3.12^2"};
    const std::set<std::string> third{"3^2.4.3.4", "3^4.6", "3^3.4^2", "3.4.6.4"};
    int constant_degree = 0;
    for (const auto& s : catalog()) {
        if (!s.uniform_degree) continue;
        ++constant_degree;
        const auto g = build_lattice(s.name, default_growth_sizes(s.name)[1]);
        const auto r = tightness_report(g);
        const std::string tag = s.name + " on " + dims_str(g.dims()) + ": max " + r.max_density.str() +
                                ", rho_bar " + r.stats.rho_bar.str();
        o.check(r.max_density <= r.stats.rho_bar, tag + " within bound");
        o.check(r.tight == tight.contains(s.name), tag + (tight.contains(s.name) ? " tight" : " not tight"));
        if (third.contains(s.name)) o.check(r.max_density == Rational(1, 3), tag + " max = 1/3");
    }
    o.check(constant_degree == 12, std::to_string(constant_degree) + " constant-degree lattices");
    return o;
}

// 2 -------------------------------------------------------------------------

Outcome table_densities() {
    Outcome o;
    for (const auto& s : catalog()) {
        const auto g = build_lattice(s.name, small_dims(s, 12));
        bool ok = true;
        for (int ph = 0; ph < phase_count(g); ++ph) {
            const auto c = optimal_packing(g, ph);
            ok = ok && is_legal(c) && density(c).rho_total() == s.table.density;
        }
        o.check(ok && phase_count(g) > 0, s.name + " rho " + s.table.density.str() + " over " +
                                              std::to_string(phase_count(g)) + " phases");
    }
    return o;
}

// 3 -------------------------------------------------------------------------

/// Independent reference: the inner integral over phi of log|a + e^{i phi}|
/// is log max(|a|, 1), which leaves a smooth one-dimensional integral of
/// log(2 cos(theta/2)) over |theta| < 2pi/3, done with composite Simpson.
double kagome_reference() {
    const int n = 200000;
    const double a = -2.0 * std::numbers::pi / 3.0;
    const double b = -a;
    const double h = (b - a) / n;
    auto f = [](double t) { return std::log(2.0 * std::cos(t / 2.0)); };
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0 / (2.0 * std::numbers::pi);
}

Outcome kagome() {
    Outcome o;
    const auto e = kagome_entropy();
    const double ref = kagome_reference();
    o.check(std::abs(e.value - 0.32306) <= 1e-4, "value " + fmt(e.value, 10) + " vs 0.32306 +- 1e-4");
    o.check(std::abs(e.value - ref) <= e.error,
            "deviation " + fmt(std::abs(e.value - ref), 12) + " from 1d reference " + fmt(ref, 10) +
                " within error estimate " + fmt(e.error, 12));
    return o;
}

// 4 -------------------------------------------------------------------------

Outcome closed_forms() {
    Outcome o;
    // six-place decimals of (1/2, 3/16, 1/18) * 0.693147180559945
    const std::map<std::string, double> want{
        {"3^3.4^2", 0.346574}, {"Z2M", 0.346574}, {"3.4.6.4", 0.129965}, {"3.12^2", 0.038508}};
    for (const auto& e : entropy_constants()) {
        const double rounded = std::round(e.value * 1e6) / 1e6;
        o.check(std::abs(rounded - want.at(e.lattice)) < 1e-9,
                e.lattice + " " + to_string(e.kind) + " " + e.formula + " = " + fmt(e.value, 6));
    }
    return o;
}

// 5 -------------------------------------------------------------------------

Protocol desk_protocol() {
    Protocol p;
    p.resolution = 0.02;
    return p;
}

Outcome brackets() {
    Outcome o;
    struct Row {
        std::string lattice;
        double pc;
        double rho;
    };
    const std::vector<Row> rows{{"4^4", 0.79, 0.36},    {"6^3", 0.87, 0.4},    {"3^6", 0.90, 0.26},
                                {"4.8^2", 0.90, 0.4},   {"4.6.12", 0.91, 0.42}, {"3^4.6", 0.97, 0.29},
                                {"3^2.4.3.4", 0.99, 0.3}};
    for (const auto& r : rows) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto e = bracket_pc(r.lattice, desk_protocol());
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool contains = e.p_lo - 0.04 <= r.pc && r.pc <= e.p_hi + 0.04;
        const bool rho_ok = std::abs(e.rho_at_pc - r.rho) <= 0.05;
        o.check(contains && rho_ok && e.status == BracketStatus::Converged,
                r.lattice + " [" + fmt(e.p_lo) + ", " + fmt(e.p_hi) + "] on " + dims_str(e.dims) + " " +
                    to_string(e.status) + ", table " + fmt(r.pc, 2) + "; rho " + fmt(e.rho_at_pc, 3) +
                    " vs " + fmt(r.rho, 2) + " (" + fmt(secs, 0) + " s)");
    }
    return o;
}

// 6 -------------------------------------------------------------------------

Outcome noncriticality() {
    Outcome o;
    const Protocol proto;
    for (const auto& name : {"3.6.3.6", "3.4.6.4", "3.12^2"}) {
        const auto& s = lattice_spec(name);
        const auto g = build_lattice(name, torus_dims(s, 10000));
        for (double p : {0.9, 0.99, 0.999}) {
            const auto v = classify_phase(g, Pressure::single(p), proto);
            double spread = 0.0;
            double last = 0.0;
            for (const auto& ser : v.relax) {
                if (!ser.window_means.empty()) last = std::max(last, ser.window_means.back());
                if (ser.class_density_window.empty()) continue;
                const auto& rho = ser.class_density_window.back();
                spread = std::max(spread, *std::max_element(rho.begin(), rho.end()) -
                                              *std::min_element(rho.begin(), rho.end()));
            }
            o.check(v.verdict == Verdict::Subcritical && spread <= 2 * proto.epsilon,
                    std::string(name) + " p=" + fmt(p, 3) + " " + to_string(v.verdict) + ", order " + fmt(last) +
                        ", class spread " + fmt(spread));
        }
    }
    return o;
}

// 7 -------------------------------------------------------------------------

Outcome packing_types() {
    Outcome o;
    const std::map<std::string, PackingType> want{
        {"4^4", PackingType::L},      {"6^3", PackingType::L},     {"3^6", PackingType::L},
        {"4.8^2", PackingType::L},    {"4.6.12", PackingType::L},  {"3^2.4.3.4", PackingType::L},
        {"3^4.6", PackingType::L},    {"3^3.4^2", PackingType::RL}, {"Z2M", PackingType::RL},
        {"3.4.6.4", PackingType::R},  {"3.6.3.6", PackingType::R}, {"3.12^2", PackingType::R}};
    for (const auto& [name, type] : want) {
        const auto f = growth_fit(name);
        o.check(f.type == type && lattice_spec(name).table.type == type,
                name + " " + to_string(f.type) + " (table " + to_string(type) + "), h2/tile " + fmt(f.h2_per_tile) +
                    ", b " + fmt(f.b));
    }
    return o;
}

// 8 -------------------------------------------------------------------------

Outcome rigidity() {
    Outcome o;
    for (const auto& name : {"4^4", "6^3", "3^6", "4.8^2", "4.6.12", "3^2.4.3.4", "3^4.6"}) {
        const auto& s = lattice_spec(name);
        const auto g = build_lattice(name, small_dims(s, 6));
        std::size_t moves = 0;
        for (int ph = 0; ph < phase_count(g); ++ph) moves += find_local_moves(optimal_packing(g, ph)).moves.size();
        o.check(moves == 0, std::string(name) + " " + std::to_string(moves) + " moves on optimal packings");
    }
    for (const auto& name : {"3.4.6.4", "3.6.3.6", "3.12^2"}) {
        const auto g = build_lattice(name, kOracleDims.at(name));
        const auto ms = maximizers(g);
        std::size_t with_moves = 0;
        MoveKind kind = MoveKind::None;
        for (const auto& c : ms) {
            const auto rep = find_local_moves(c, ms.front().occupancy());
            if (rep.local_count() > 0) {
                ++with_moves;
                kind = rep.kind();
            }
        }
        const auto opt = find_local_moves(optimal_packing(g, 0), ms.front().occupancy());
        o.check(with_moves > 0, std::string(name) + " on " + dims_str(g.dims()) + ": " + std::to_string(with_moves) +
                                    "/" + std::to_string(ms.size()) + " densest packings admit " + to_string(kind) +
                                    " moves; optimal packing has " + std::to_string(opt.local_count()));
    }
    const auto k = build_lattice("3.6.3.6", {3, 3});
    const auto conn = flip_connectivity(k);
    o.check(conn.value_or(false), std::string("3.6.3.6 3x3 flip graph ") +
                                      (conn ? (*conn ? "connected" : "not connected") : "has no flips"));
    return o;
}

// 9 -------------------------------------------------------------------------

std::string curve_str(const VoterCurve& v) {
    std::string s;
    for (const auto& f : v.fraction) s += (s.empty() ? "" : " ") + (f ? fmt(*f, 3) : std::string("-"));
    return s;
}

Outcome voter() {
    Outcome o;
    const auto z = voter_curve("4^4", VoterMode::Exhaustive);
    const auto sup = detail::singleton_support("4^4");
    Configuration centre(sup.graph);
    centre.set(sup.center, true);
    bool off_centre_zero = true;
    for (std::size_t i = 1; i < sup.tuple.size(); ++i) {
        Configuration c(sup.graph);
        c.set(sup.tuple[i], true);
        off_centre_zero = off_centre_zero && !detail::square_update(sup.graph, c, sup.center);
    }
    o.check(detail::square_update(sup.graph, centre, sup.center), "Z2 centre-only pattern updates to 1");
    o.check(off_centre_zero, "Z2 off-centre single-1 patterns update to 0");
    o.check(z.fraction[1] && *z.fraction[1] == 1.0 / 9.0 && z.ones[1] == 1 && z.patterns[1] == 9,
            "Z2 fraction(1) = " + std::to_string(z.ones[1]) + "/" + std::to_string(z.patterns[1]));
    for (const auto& name : {"4^4", "6^3", "3^6"}) {
        const auto v = voter_curve(name, VoterMode::Exhaustive);
        o.check(v.non_decreasing() && v.fraction[0] && *v.fraction[0] == 0.0,
                std::string(name) + " non-decreasing, fraction(0)=0: " + curve_str(v));
    }
    const auto single = single_sublattice_voter_curve();
    o.check(!single.voter_like(), "Z2M single-sublattice fails monotonicity or corners: " + curve_str(single));
    const auto doublet = doublet_voter_curve();
    o.check(doublet.voter_like(), "Z2M doublet passes: " + curve_str(doublet));
    return o;
}

// 10 ------------------------------------------------------------------------

Outcome composite() {
    Outcome o;
    const auto proto = desk_protocol();
    BracketOptions at0;
    at0.p4 = 0.0;
    const auto hs = bracket_pc("UJ", proto, at0);
    o.check(hs.p_lo - 0.04 <= 0.79 && 0.79 <= hs.p_hi + 0.04,
            "UJ p4=0 p8 bracket [" + fmt(hs.p_lo) + ", " + fmt(hs.p_hi) + "] " + to_string(hs.status) +
                " contains 0.79 +- 0.04");
    const std::vector<double> grid{0.0, 0.2, 0.4, 0.6};
    const auto uj = critical_curve("UJ", grid, proto);
    const auto q = critical_curve("Q", grid, proto);
    auto line = [](const std::vector<CurvePoint>& c) {
        std::string s;
        for (const auto& pt : c) s += " " + fmt(pt.p4, 1) + ":" + fmt(pt.estimate.midpoint(), 3);
        return s;
    };
    o.check(curve_non_decreasing(uj, proto.resolution), "UJ curve non-decreasing:" + line(uj));
    o.check(curve_non_decreasing(q, proto.resolution), "Q curve non-decreasing:" + line(q));
    o.check(curve_above(uj, q, proto.resolution), "UJ >= Q pointwise within " + fmt(proto.resolution, 2));
    return o;
}

// 11 ------------------------------------------------------------------------

Outcome invariants() {
    Outcome o;
    std::mt19937_64 rng(20240611);
    int cycles = 0;
    bool legal = true;
    for (const auto& s : catalog()) {
        const auto g = build_lattice(s.name, small_dims(s, 8));
        for (int trial = 0; trial < 20; ++trial) {
            const double q = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            const auto pr = s.two_parameter
                                ? Pressure::pair(std::uniform_real_distribution<double>(0.0, 1.0)(rng), q)
                                : Pressure::single(q);
            Configuration c(g);
            const double fill = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            for (int x = 0; x < g.site_count(); ++x) c.set(x, std::bernoulli_distribution(fill)(rng));
            for (std::uint64_t t = 0; t < 5; ++t) {
                full_cycle(g, c, pr, rng(), t);
                legal = legal && is_legal(c);
                ++cycles;
            }
        }
    }
    o.check(legal, "legal after each of " + std::to_string(cycles) + " cycles from arbitrary inputs");

    bool reproducible = true;
    for (const auto& name : {"4^4", "3.4.6.4", "UJ"}) {
        const auto& s = lattice_spec(name);
        const auto g = build_lattice(name, torus_dims(s, 40000));
        const auto pr = s.two_parameter ? Pressure::pair(0.5, 0.9) : Pressure::single(0.9);
        auto a = bernoulli_init(g, 0.4, 7);
        auto b = a;
        for (std::uint64_t t = 0; t < 10; ++t) {
            full_cycle(g, a, pr, 11, t, 1);
            full_cycle(g, b, pr, 11, t, 4);
        }
        reproducible = reproducible && a == b;
    }
    o.check(reproducible, "bit-identical across 1 and 4 threads");

    bool order_free = true;
    for (const auto& s : catalog()) {
        const auto g = build_lattice(s.name, small_dims(s, 8));
        const auto pr = s.two_parameter ? Pressure::pair(0.6, 0.6) : Pressure::single(0.6);
        for (int trial = 0; trial < 5; ++trial) {
            Configuration c0(g);
            for (int x = 0; x < g.site_count(); ++x) c0.set(x, std::bernoulli_distribution(0.3)(rng));
            for (int k = 0; k < g.class_count(); ++k) {
                const PassKey key{rng(), static_cast<std::uint64_t>(trial), static_cast<std::uint32_t>(k)};
                auto a = c0;
                auto b = c0;
                class_pass(g, a, k, pr, key);
                auto order = g.class_members(k);
                std::shuffle(order.begin(), order.end(), rng);
                std::reverse(order.begin(), order.end());
                class_pass_ordered(g, b, order, pr, key);
                order_free = order_free && a == b;
            }
        }
    }
    o.check(order_free, "class passes independent of visiting order");

    bool bounded = true;
    std::string worst;
    for (const auto& s : catalog()) {
        if (!s.uniform_degree) continue;
        const auto bar = kissing_stats(s.name).rho_bar;
        const auto g = build_lattice(s.name, small_dims(s, 12));
        for (double p : {0.5, 0.9, 0.999, 1.0}) {
            auto c = bernoulli_init(g, 0.5, rng());
            for (std::uint64_t t = 0; t < 30; ++t) {
                full_cycle(g, c, Pressure::single(p), 5, t);
                if (density(c).rho_total() > bar) {
                    bounded = false;
                    worst = s.name;
                }
            }
        }
    }
    o.check(bounded, "sampled densities never exceed rho_bar" + (worst.empty() ? "" : " (" + worst + ")"));
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> only;
    app.add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"density bounds", density_bounds},
        {"table densities", table_densities},
        {"kagome entropy", kagome},
        {"closed-form entropies", closed_forms},
        {"critical brackets", brackets},
        {"noncriticality", noncriticality},
        {"packing types", packing_types},
        {"rigidity and mobility", rigidity},
        {"voter diagnostics", voter},
        {"UJ/Q critical curves", composite},
        {"engine invariants", invariants},
    };
    std::set<int> selected(only.begin(), only.end());
    if (selected.empty())
        for (int i = 1; i <= 11; ++i)
            if (i != 10) selected.insert(i);

    int failed = 0;
    for (int i : selected) {
        const auto& [name, fn] = criteria[static_cast<std::size_t>(i - 1)];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.check(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& n : o.notes) std::cout << "    " << n << "\n";
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i << " (" << name << ") " << fmt(secs, 1) << " s"
                  << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all selected criteria passed"))
              << std::endl;
    return failed ? 1 : 0;
}
