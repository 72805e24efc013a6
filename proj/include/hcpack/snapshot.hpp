#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hcpack/configuration.hpp"
#include "hcpack/error.hpp"

namespace hcpack {

/// Text snapshot of a configuration:
///
///     config <lattice> <L1> <L2>
///     rle <site_count> <run> <run> ...
///
/// Runs alternate between 0 and 1 and start with a (possibly empty) run of 0.
struct Snapshot {
    std::string lattice;
    std::array<int, 2> dims{0, 0};
    std::vector<std::uint8_t> bits;
};

inline void write_snapshot(std::ostream& os, const Configuration& c) {
    const auto& g = *c.graph;
    os << "config " << g.name() << " " << g.dims()[0] << " " << g.dims()[1] << "\n";
    os << "rle " << c.size();
    std::uint8_t cur = 0;
    long run = 0;
    for (auto b : c.bits) {
        if (b != cur) {
            os << " " << run;
            cur = b;
            run = 0;
        }
        ++run;
    }
    os << " " << run << "\n";
}

inline std::string snapshot_to_string(const Configuration& c) {
    std::ostringstream os;
    write_snapshot(os, c);
    return os.str();
}

inline Snapshot read_snapshot(std::istream& is) {
    Snapshot s;
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorCode::MalformedInput, "empty snapshot");
    {
        std::istringstream in(line);
        std::string key;
        std::string extra;
        if (!(in >> key >> s.lattice >> s.dims[0] >> s.dims[1]) || key != "config" || (in >> extra))
            throw Error(ErrorCode::MalformedInput, "snapshot header must be 'config <lattice> <L1> <L2>'");
    }
    if (!std::getline(is, line)) throw Error(ErrorCode::MalformedInput, "snapshot missing rle line");
    std::istringstream in(line);
    std::string key;
    long n = 0;
    if (!(in >> key >> n) || key != "rle" || n < 0)
        throw Error(ErrorCode::MalformedInput, "snapshot body must start with 'rle <site_count>'");
    s.bits.reserve(static_cast<std::size_t>(n));
    std::uint8_t cur = 0;
    std::string tok;
    while (in >> tok) {
        long run = 0;
        try {
            std::size_t used = 0;
            run = std::stol(tok, &used);
            if (used != tok.size() || run < 0) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(ErrorCode::MalformedInput, "bad run length '" + tok + "'");
        }
        if (static_cast<long>(s.bits.size()) + run > n)
            throw Error(ErrorCode::DimensionMismatch, "runs exceed declared site count " + std::to_string(n));
        s.bits.insert(s.bits.end(), static_cast<std::size_t>(run), cur);
        cur ^= 1;
    }
    if (static_cast<long>(s.bits.size()) != n)
        throw Error(ErrorCode::DimensionMismatch,
                    "runs cover " + std::to_string(s.bits.size()) + " sites, declared " + std::to_string(n));
    return s;
}

/// Binds a parsed snapshot to `g`, checking the lattice name, dims and site count.
inline Configuration to_configuration(const Snapshot& s, const PeriodicGraph& g) {
    if (s.lattice != g.name())
        throw Error(ErrorCode::DimensionMismatch, "snapshot lattice " + s.lattice + " does not match " + g.name());
    if (s.dims != g.dims())
        throw Error(ErrorCode::DimensionMismatch, "snapshot dims do not match the graph");
    if (static_cast<int>(s.bits.size()) != g.site_count())
        throw Error(ErrorCode::DimensionMismatch, "snapshot has " + std::to_string(s.bits.size()) +
                                                      " sites, " + g.name() + " torus has " +
                                                      std::to_string(g.site_count()));
    Configuration c(g);
    c.bits = s.bits;
    return c;
}

inline Configuration read_snapshot(std::istream& is, const PeriodicGraph& g) {
    return to_configuration(read_snapshot(is), g);
}

}  // namespace hcpack
