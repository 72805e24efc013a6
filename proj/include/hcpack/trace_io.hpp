#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "json.hpp"

#include "hcpack/configuration.hpp"
#include "hcpack/pca.hpp"

namespace hcpack {

namespace detail {
inline std::string fmt_rho(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}
}  // namespace detail

/// CSV `cycle,rho_total,rho_class_0,...,order_param`.
inline void write_trace_csv(std::ostream& os, const RunTrace& tr, int class_count) {
    os << "cycle,rho_total";
    for (int k = 0; k < class_count; ++k) os << ",rho_class_" << k;
    os << ",order_param\n";
    for (const auto& row : tr.rows) {
        os << row.cycle << "," << detail::fmt_rho(row.density.total());
        for (int k = 0; k < row.density.class_count(); ++k) os << "," << detail::fmt_rho(row.density.by_class(k));
        os << "," << detail::fmt_rho(row.order) << "\n";
    }
}

/// CSV header and row `lattice,L1,L2,rho_total,rho_class_0,...`.
inline void write_density_csv_header(std::ostream& os, int class_count) {
    os << "lattice,L1,L2,rho_total";
    for (int k = 0; k < class_count; ++k) os << ",rho_class_" << k;
    os << "\n";
}

inline void write_density_csv_row(std::ostream& os, const PeriodicGraph& g, const DensityReport& r) {
    os << g.name() << "," << g.dims()[0] << "," << g.dims()[1] << "," << detail::fmt_rho(r.total());
    for (int k = 0; k < r.class_count(); ++k) os << "," << detail::fmt_rho(r.by_class(k));
    os << "\n";
}

inline nlohmann::json pressure_json(const Pressure& pr) {
    if (pr.two_parameter) return {{"p4", pr.p4}, {"p_high", pr.p_high}};
    return {{"p", pr.p}};
}

/// Run metadata `{lattice, dims, p (or p4/p_high), seed, cycles, schedule}`.
inline nlohmann::json run_metadata(const PeriodicGraph& g, const Pressure& pr, const RunTrace& tr) {
    nlohmann::json j;
    j["lattice"] = g.name();
    j["dims"] = {g.dims()[0], g.dims()[1]};
    j.update(pressure_json(pr));
    j["seed"] = tr.seed;
    j["cycles"] = tr.steps;
    j["schedule"] = tr.schedule;
    return j;
}

}  // namespace hcpack
