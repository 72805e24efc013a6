// hcpack: batch front-end for the hard-core PCA experiments.
//
// Exit codes: 0 success, 2 validation error, 3 undecided or budget exhausted.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hcpack/hcpack.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hcpack;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitUndecided = 3;

/// Every option of every command; serialized into each output file.
struct ExperimentConfig {
    std::string command;
    std::string lattice = "4^4";
    std::vector<int> dims{0, 0};
    double p = 0.5;
    double p4 = 0.0;
    double p_high = 0.5;
    std::uint64_t cycles = 1000;
    std::uint64_t seed = 1;
    std::string out;
    int threads = 1;
    // simulate
    std::string init = "bernoulli";
    double rho0 = 0.5;
    int init_class = 0;
    std::string snapshot_in;
    int thinning = 1;
    bool snapshot = false;
    // protocol
    std::uint64_t burn_in = 1000;
    std::uint64_t window = 500;
    double epsilon = 0.02;
    double delta = 0.10;
    int seeds = 3;
    double resolution = 0.01;
    std::uint64_t max_cycles = 10000;
    int small_sites = 2500;
    int large_sites = 10000;
    std::vector<double> p4_grid{0.0, 0.2, 0.4, 0.6};
    double rho0_protocol = -1.0;
    // enumerate / voter / entropy
    bool growth = false;
    std::string mode = "exhaustive";
    std::string what = "all";
    int grid = 512;
    int empirical_cycles = 200;

    [[nodiscard]] std::array<int, 2> dims2() const { return {dims.at(0), dims.at(1)}; }

    [[nodiscard]] Pressure pressure() const {
        const auto& s = lattice_spec(lattice);
        return s.two_parameter ? Pressure::pair(p4, p_high) : Pressure::single(p);
    }

    [[nodiscard]] Protocol protocol() const {
        Protocol pr;
        pr.burn_in = burn_in;
        pr.window = window;
        pr.epsilon = epsilon;
        pr.delta = delta;
        pr.seeds.clear();
        for (int i = 0; i < seeds; ++i) pr.seeds.push_back(seed + static_cast<std::uint64_t>(i));
        pr.resolution = resolution;
        pr.max_cycles = max_cycles;
        pr.threads = threads;
        if (rho0_protocol >= 0.0) pr.rho0 = rho0_protocol;
        return pr;
    }

    [[nodiscard]] json to_json() const {
        return {{"command", command},
                {"lattice", lattice},
                {"dims", dims},
                {"p", p},
                {"p4", p4},
                {"p_high", p_high},
                {"cycles", cycles},
                {"seed", seed},
                {"threads", threads},
                {"init", init},
                {"rho0", rho0},
                {"init_class", init_class},
                {"snapshot_in", snapshot_in},
                {"thinning", thinning},
                {"burn_in", burn_in},
                {"window", window},
                {"epsilon", epsilon},
                {"delta", delta},
                {"seeds", seeds},
                {"resolution", resolution},
                {"max_cycles", max_cycles},
                {"small_sites", small_sites},
                {"large_sites", large_sites},
                {"p4_grid", p4_grid},
                {"growth", growth},
                {"mode", mode},
                {"what", what},
                {"grid", grid},
                {"version", "0.1.0"}};
    }
};

/// Writes `name` into the output directory, or to stdout when none is set.
class Sink {
public:
    explicit Sink(const ExperimentConfig& cfg) : cfg_(cfg) {
        if (!cfg.out.empty()) fs::create_directories(cfg.out);
    }

    void json_file(const std::string& name, json body) const {
        body["config"] = cfg_.to_json();
        emit(name, body.dump(2) + "\n");
    }
    /// CSV with the producing config on a leading comment line.
    void csv_file(const std::string& name, const std::string& body) const {
        emit(name, "# config " + cfg_.to_json().dump() + "\n" + body);
    }
    void text_file(const std::string& name, const std::string& body) const { emit(name, body); }

private:
    void emit(const std::string& name, const std::string& text) const {
        if (cfg_.out.empty()) {
            std::cout << text;
            return;
        }
        const auto path = fs::path(cfg_.out) / name;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
        os << text;
    }
    const ExperimentConfig& cfg_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int cmd_list_lattices(const ExperimentConfig& cfg) {
    json rows = json::array();
    std::ostringstream table;
    table << std::left << std::setw(11) << "lattice" << std::setw(7) << "sites" << std::setw(10) << "degree"
          << std::setw(9) << "classes" << std::setw(6) << "rho" << std::setw(6) << "type" << std::setw(6) << "mult"
          << std::setw(7) << "p_c" << "rho(p_c)\n";
    for (const auto& s : catalog()) {
        std::string deg;
        for (int d : s.expected_degrees) deg += (deg.empty() ? "" : ",") + std::to_string(d);
        const auto& t = s.table;
        const std::string mult = t.multiplicity == 0 ? "inf" : std::to_string(t.multiplicity);
        table << std::left << std::setw(11) << s.name << std::setw(7) << s.site_count() << std::setw(10) << deg
              << std::setw(9) << s.class_count() << std::setw(6) << t.density.str() << std::setw(6)
              << to_string(t.type) << std::setw(6) << mult << std::setw(7) << (t.pc ? fmt(*t.pc) : "-")
              << (t.rho_pc ? fmt(*t.rho_pc) : "-") << "\n";
        rows.push_back({{"lattice", s.name},
                        {"sites_per_cell", s.site_count()},
                        {"degrees", s.expected_degrees},
                        {"classes", s.class_count()},
                        {"rho", t.density.str()},
                        {"type", to_string(t.type)},
                        {"multiplicity", mult},
                        {"optimal_subgraphs", t.optimal_subgraphs},
                        {"p_c", optional_json(t.pc)},
                        {"rho_pc", optional_json(t.rho_pc)},
                        {"entropy", t.entropy_note}});
    }
    if (cfg.out.empty()) {
        std::cout << table.str();
        return 0;
    }
    Sink(cfg).json_file("lattices.json", {{"lattices", rows}});
    return 0;
}

Configuration initial(const PeriodicGraph& g, const ExperimentConfig& cfg) {
    if (cfg.init == "bernoulli") return bernoulli_init(g, cfg.rho0, cfg.seed);
    if (cfg.init == "class") return class_full(g, cfg.init_class);
    if (cfg.init == "phase") return optimal_packing(g, cfg.init_class);
    if (cfg.init == "empty") return Configuration(g);
    if (cfg.init == "snapshot") {
        std::ifstream is(cfg.snapshot_in);
        if (!is) throw Error(ErrorCode::InvalidArgument, "cannot read snapshot " + cfg.snapshot_in);
        return read_snapshot(is, g);
    }
    throw Error(ErrorCode::InvalidArgument, "init must be bernoulli, class, phase, empty or snapshot");
}

int cmd_simulate(const ExperimentConfig& cfg) {
    const auto g = build_lattice(cfg.lattice, cfg.dims2());
    const auto pr = cfg.pressure();
    auto c = initial(g, cfg);
    RunOptions opt;
    opt.thinning = cfg.thinning;
    opt.threads = cfg.threads;
    const auto& spec = g.spec();
    opt.order = [&spec](const DensityReport& r) { return order_parameter(spec, r); };
    const auto tr = run(g, c, pr, cfg.cycles, cfg.seed, opt);
    std::ostringstream csv;
    write_trace_csv(csv, tr, g.class_count());
    Sink sink(cfg);
    sink.csv_file("trace.csv", csv.str());
    if (!cfg.out.empty()) {
        auto meta = run_metadata(g, pr, tr);
        meta["all_legal"] = tr.all_legal;
        sink.json_file("run.json", meta);
        if (cfg.snapshot) sink.text_file("final.config", snapshot_to_string(c));
    }
    return 0;
}

int cmd_bracket(const ExperimentConfig& cfg) {
    BracketOptions opt;
    opt.small_sites = cfg.small_sites;
    opt.large_sites = cfg.large_sites;
    if (lattice_spec(cfg.lattice).two_parameter) opt.p4 = cfg.p4;
    const auto e = bracket_pc(cfg.lattice, cfg.protocol(), opt);
    Sink(cfg).json_file("bracket.json", to_json(e));
    return e.status == BracketStatus::Partial ? kExitUndecided : 0;
}

int cmd_curve(const ExperimentConfig& cfg) {
    BracketOptions opt;
    opt.small_sites = cfg.small_sites;
    opt.large_sites = cfg.large_sites;
    const auto pts = critical_curve(cfg.lattice, cfg.p4_grid, cfg.protocol(), opt);
    std::ostringstream csv;
    csv << "p4,p_high_lo,p_high_hi\n";
    json arr = json::array();
    bool partial = false;
    for (const auto& pt : pts) {
        csv << fmt(pt.p4) << "," << fmt(pt.estimate.p_lo) << "," << fmt(pt.estimate.p_hi) << "\n";
        arr.push_back(to_json(pt.estimate));
        partial = partial || pt.estimate.status == BracketStatus::Partial;
    }
    Sink sink(cfg);
    sink.csv_file("curve.csv", csv.str());
    if (!cfg.out.empty()) sink.json_file("curve.json", {{"points", arr}});
    return partial ? kExitUndecided : 0;
}

int cmd_enumerate(const ExperimentConfig& cfg) {
    const auto g = build_lattice(cfg.lattice, cfg.dims2());
    json j{{"lattice", g.name()}, {"dims", g.dims()}, {"sites", g.site_count()}};
    const auto pc = count_max_packings(g);
    j["max_occupancy"] = pc.max_occupancy;
    j["max_density"] = Rational(pc.max_occupancy, g.site_count()).str();
    j["maximizers"] = pc.count;
    if (g.site_count() <= OracleLimits{}.exhaustive_cap) {
        const auto all = enumerate(g);
        j["legal_configurations"] = all.legal_count;
    }
    if (cfg.growth) {
        const auto f = growth_fit(cfg.lattice);
        json pts = json::array();
        for (const auto& p : f.points)
            pts.push_back({{"dims", p.dims}, {"max_occupancy", p.max_occupancy}, {"count", p.count}});
        j["growth"] = {{"a", f.a}, {"b", f.b}, {"c", f.c}, {"h2_per_tile", f.h2_per_tile},
                       {"type", to_string(f.type)}, {"points", pts}};
    }
    Sink(cfg).json_file("enumerate.json", j);
    return 0;
}

json curve_json(const VoterCurve& v) {
    json f = json::array();
    for (const auto& x : v.fraction) f.push_back(optional_json(x));
    return {{"lattice", v.lattice},         {"variant", v.variant},     {"mode", to_string(v.mode)},
            {"support_size", v.support_size}, {"patterns", v.patterns}, {"ones", v.ones},
            {"fraction", f},                {"non_decreasing", v.non_decreasing()}, {"corners", v.corners()}};
}

int cmd_voter(const ExperimentConfig& cfg) {
    std::vector<VoterCurve> curves;
    if (lattice_spec(cfg.lattice).name == "Z2M") {
        curves.push_back(doublet_voter_curve());
        curves.push_back(single_sublattice_voter_curve());
    } else {
        VoterMode mode = VoterMode::Exhaustive;
        if (cfg.mode == "empirical") mode = VoterMode::Empirical;
        else if (cfg.mode != "exhaustive") throw Error(ErrorCode::InvalidArgument, "mode must be exhaustive or empirical");
        EmpiricalOptions opt;
        opt.seed = cfg.seed;
        opt.cycles = static_cast<std::uint64_t>(cfg.empirical_cycles);
        curves.push_back(voter_curve(cfg.lattice, mode, opt));
    }
    json arr = json::array();
    std::ostringstream csv;
    csv << "variant,k,patterns,ones,fraction\n";
    for (const auto& v : curves) {
        arr.push_back(curve_json(v));
        for (std::size_t k = 0; k < v.fraction.size(); ++k)
            csv << v.variant << "," << k << "," << v.patterns[k] << "," << v.ones[k] << ","
                << (v.fraction[k] ? fmt(*v.fraction[k]) : "") << "\n";
    }
    Sink sink(cfg);
    sink.json_file("voter.json", {{"curves", arr}});
    if (!cfg.out.empty()) sink.csv_file("voter.csv", csv.str());
    return 0;
}

json entropy_json(const EntropyEstimate& e) {
    return {{"lattice", e.lattice}, {"kind", to_string(e.kind)},   {"method", to_string(e.method)},
            {"value", e.value},     {"error", e.error},            {"lower_bound", e.lower_bound},
            {"formula", e.formula}, {"units", "nats"}};
}

int cmd_entropy(const ExperimentConfig& cfg) {
    json arr = json::array();
    const bool all = cfg.what == "all";
    if (all || cfg.what == "kagome") arr.push_back(entropy_json(kagome_entropy(cfg.grid)));
    if (all || cfg.what == "constants")
        for (const auto& e : entropy_constants()) arr.push_back(entropy_json(e));
    if (cfg.what == "growth") arr.push_back(entropy_json(entropy_from_growth(growth_fit(cfg.lattice))));
    if (arr.empty()) throw Error(ErrorCode::InvalidArgument, "entropy target must be all, kagome, constants or growth");
    Sink(cfg).json_file("entropy.json", {{"estimates", arr}});
    return 0;
}

json report_json(const ValidationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    return {{"ok", r.ok()}, {"checks", checks}};
}

int cmd_validate(const ExperimentConfig& cfg) {
    json out = json::array();
    bool ok = true;
    std::vector<std::string> names;
    if (cfg.lattice == "all") names = lattice_names();
    else names.push_back(cfg.lattice);
    for (const auto& n : names) {
        const auto& s = lattice_spec(n);
        auto rep = validate(s);
        json j{{"lattice", s.name}, {"spec", report_json(rep)}};
        ok = ok && rep.ok();
        if (cfg.dims[0] > 0) {
            const PeriodicGraph g(s, cfg.dims2());
            const auto gr = validate(g);
            j["instance"] = report_json(gr);
            ok = ok && gr.ok();
            if (!cfg.snapshot_in.empty()) {
                std::ifstream is(cfg.snapshot_in);
                if (!is) throw Error(ErrorCode::InvalidArgument, "cannot read snapshot " + cfg.snapshot_in);
                const auto c = read_snapshot(is, g);
                j["snapshot_legal"] = is_legal(c);
                ok = ok && is_legal(c);
            }
        }
        out.push_back(j);
    }
    Sink(cfg).json_file("validate.json", {{"reports", out}, {"ok", ok}});
    return ok ? 0 : kExitValidation;
}

int exit_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::TooLarge:
        case ErrorCode::Undecidable: return kExitUndecided;
        default: return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hard-core PCA experiments on Archimedean and related lattices"};
    app.require_subcommand(1);
    app.fallthrough();
    ExperimentConfig cfg;
    app.set_config("--config", "", "key = value config file; command-line flags win");
    app.add_option("--seed", cfg.seed, "base seed");
    app.add_option("--out", cfg.out, "output directory (stdout when omitted)");
    app.add_option("--threads", cfg.threads, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);

    auto lattice_opt = [&](CLI::App* c) { c->add_option("--lattice,-l", cfg.lattice, "catalog name"); };
    auto dims_opt = [&](CLI::App* c) { c->add_option("--dims", cfg.dims, "torus size L1 L2 in cells")->expected(2); };
    auto pressure_opts = [&](CLI::App* c) {
        c->add_option("--p", cfg.p, "packing pressure");
        c->add_option("--p4", cfg.p4, "pressure at degree-4 sites (UJ, Q)");
        c->add_option("--p-high", cfg.p_high, "pressure at degree-6/8 sites (UJ, Q)");
    };
    auto protocol_opts = [&](CLI::App* c) {
        c->add_option("--burn-in", cfg.burn_in);
        c->add_option("--window", cfg.window);
        c->add_option("--epsilon", cfg.epsilon);
        c->add_option("--delta", cfg.delta);
        c->add_option("--seeds", cfg.seeds, "number of seeds, majority vote")->check(CLI::PositiveNumber);
        c->add_option("--resolution", cfg.resolution);
        c->add_option("--max-cycles", cfg.max_cycles);
        c->add_option("--small-sites", cfg.small_sites, "sites of the coarse-scan torus");
        c->add_option("--large-sites", cfg.large_sites, "sites of the bisection torus");
        c->add_option("--rho0", cfg.rho0_protocol, "Bernoulli density of the supercritical runs");
    };

    auto* list = app.add_subcommand("list-lattices", "catalog with reference densities, packing types and critical values");
    auto* sim = app.add_subcommand("simulate", "run the PCA and write a trace");
    lattice_opt(sim);
    dims_opt(sim);
    pressure_opts(sim);
    sim->add_option("--cycles", cfg.cycles);
    sim->add_option("--init", cfg.init, "bernoulli | class | phase | empty | snapshot");
    sim->add_option("--rho0", cfg.rho0, "Bernoulli initial density");
    sim->add_option("--class", cfg.init_class, "class or phase index for --init class|phase");
    sim->add_option("--from", cfg.snapshot_in, "snapshot file for --init snapshot");
    sim->add_option("--thinning", cfg.thinning);
    sim->add_flag("--snapshot", cfg.snapshot, "write the final configuration");
    auto* br = app.add_subcommand("bracket", "bracket the critical pressure");
    lattice_opt(br);
    br->add_option("--p4", cfg.p4, "fixed p4 for UJ and Q");
    protocol_opts(br);
    auto* cur = app.add_subcommand("curve", "critical curve p_high(p4) for UJ or Q");
    lattice_opt(cur);
    cur->add_option("--p4-grid", cfg.p4_grid, "p4 values");
    protocol_opts(cur);
    auto* en = app.add_subcommand("enumerate", "exact maximal packings on a small torus");
    lattice_opt(en);
    dims_opt(en);
    en->add_flag("--growth", cfg.growth, "also fit maximizer growth over the default sizes");
    auto* vo = app.add_subcommand("voter", "voter curves of the two-substep update");
    lattice_opt(vo);
    vo->add_option("--mode", cfg.mode, "exhaustive | empirical");
    vo->add_option("--cycles", cfg.empirical_cycles, "cycles per empirical run");
    auto* ent = app.add_subcommand("entropy", "residual entropies");
    ent->add_option("what", cfg.what, "all | kagome | constants | growth");
    lattice_opt(ent);
    ent->add_option("--grid", cfg.grid, "quadrature grid size (even)");
    auto* val = app.add_subcommand("validate", "check catalog entries, instances and snapshots");
    val->add_option("--lattice,-l", cfg.lattice, "catalog name or all")->default_val("all");
    dims_opt(val);
    val->add_option("--snapshot", cfg.snapshot_in, "snapshot to check for legality");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }
    try {
        for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
        if (list->parsed()) return cmd_list_lattices(cfg);
        if (sim->parsed()) return cmd_simulate(cfg);
        if (br->parsed()) return cmd_bracket(cfg);
        if (cur->parsed()) return cmd_curve(cfg);
        if (en->parsed()) return cmd_enumerate(cfg);
        if (vo->parsed()) return cmd_voter(cfg);
        if (ent->parsed()) return cmd_entropy(cfg);
        if (val->parsed()) return cmd_validate(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
