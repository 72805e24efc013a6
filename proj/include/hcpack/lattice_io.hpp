#pragma once

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hcpack/error.hpp"
#include "hcpack/lattice.hpp"

namespace hcpack {

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& tok, int line) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line) + ": bad number '" + tok + "'");
    return v;
}

inline int parse_int(const std::string& tok, int line) {
    int v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line) + ": bad integer '" + tok + "'");
    return v;
}

inline Rational parse_rational(const std::string& tok, int line) {
    const auto slash = tok.find('/');
    if (slash == std::string::npos) return {parse_int(tok, line)};
    return {parse_int(tok.substr(0, slash), line), parse_int(tok.substr(slash + 1), line)};
}

inline std::string rest_of_line(std::istringstream& in) {
    std::string rest;
    std::getline(in, rest);
    const auto b = rest.find_first_not_of(' ');
    return b == std::string::npos ? std::string{} : rest.substr(b);
}

}  // namespace detail

/// Writes a spec in the line-oriented text format. Doubles use 17 significant
/// digits so a reload reproduces every coordinate exactly.
inline void write_lattice(std::ostream& os, const LatticeSpec& s) {
    using detail::fmt_double;
    os << "lattice " << s.name << "\n";
    for (const auto& b : s.basis) os << "basis " << fmt_double(b.x) << " " << fmt_double(b.y) << "\n";
    for (const auto& p : s.sites) os << "site " << fmt_double(p.x) << " " << fmt_double(p.y) << "\n";
    for (const auto& e : s.edges)
        os << "edge " << e.a << " " << e.b << " " << e.offset[0] << " " << e.offset[1] << " "
           << fmt_double(e.length) << "\n";
    os << "period " << s.period[0] << " " << s.period[1] << "\n";
    os << "class";
    for (int c : s.classes) os << " " << c;
    os << "\n";
    os << "class_names";
    for (const auto& n : s.class_names) os << " " << n;
    os << "\n";
    for (const auto& o : s.optimal) {
        os << "optimal";
        for (int i : o) os << " " << i;
        os << "\n";
    }
    os << "degree " << (s.uniform_degree ? "uniform" : "mixed");
    for (int d : s.expected_degrees) os << " " << d;
    os << "\n";
    os << "class_count " << s.expected_class_count << "\n";
    os << "order " << (s.order_kind == OrderKind::PairContrast ? "pair" : "class") << "\n";
    for (const auto& g : s.order_groups) {
        os << "group";
        for (int k : g) os << " " << k;
        os << "\n";
    }
    os << "two_parameter " << (s.two_parameter ? 1 : 0) << "\n";
    os << "orientations " << s.orientation_degeneracy << "\n";
    const auto& t = s.table;
    os << "table " << t.density.str() << " " << to_string(t.type) << " " << t.multiplicity << " "
       << (t.pc ? fmt_double(*t.pc) : "-") << " " << (t.rho_pc ? fmt_double(*t.rho_pc) : "-") << "\n";
    os << "subgraphs " << t.optimal_subgraphs << "\n";
    if (!t.entropy_note.empty()) os << "entropy " << t.entropy_note << "\n";
}

inline std::string lattice_to_string(const LatticeSpec& s) {
    std::ostringstream os;
    write_lattice(os, s);
    return os.str();
}

/// Parses the text format. The result is not validated; call validate().
inline LatticeSpec read_lattice(std::istream& is) {
    using namespace detail;
    LatticeSpec s;
    s.order_groups.clear();
    std::string line;
    int lineno = 0;
    int nbasis = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream in(line);
        std::string key;
        in >> key;
        std::vector<std::string> tok;
        auto fields = [&] {
            tok.clear();
            std::string t;
            while (in >> t) tok.push_back(t);
        };
        auto need = [&](std::size_t n) {
            if (tok.size() != n)
                throw Error(ErrorCode::MalformedInput, "line " + std::to_string(lineno) + ": '" + key +
                                                           "' expects " + std::to_string(n) + " fields");
        };
        if (!header) {
            if (key != "lattice")
                throw Error(ErrorCode::MalformedInput, "line " + std::to_string(lineno) + ": expected 'lattice' header");
            fields();
            need(1);
            s.name = tok[0];
            header = true;
            continue;
        }
        if (key == "basis") {
            fields();
            need(2);
            if (nbasis >= 2) throw Error(ErrorCode::MalformedInput, "more than two basis vectors");
            s.basis[static_cast<std::size_t>(nbasis++)] = {parse_double(tok[0], lineno), parse_double(tok[1], lineno)};
        } else if (key == "site") {
            fields();
            need(2);
            s.sites.push_back({parse_double(tok[0], lineno), parse_double(tok[1], lineno)});
        } else if (key == "edge") {
            fields();
            need(5);
            s.edges.push_back({parse_int(tok[0], lineno), parse_int(tok[1], lineno),
                               {parse_int(tok[2], lineno), parse_int(tok[3], lineno)},
                               parse_double(tok[4], lineno)});
        } else if (key == "period") {
            fields();
            need(2);
            s.period = {parse_int(tok[0], lineno), parse_int(tok[1], lineno)};
        } else if (key == "class") {
            fields();
            s.classes.clear();
            for (const auto& t : tok) s.classes.push_back(parse_int(t, lineno));
        } else if (key == "class_names") {
            fields();
            s.class_names = tok;
        } else if (key == "optimal") {
            fields();
            std::vector<int> o;
            for (const auto& t : tok) o.push_back(parse_int(t, lineno));
            s.optimal.push_back(o);
        } else if (key == "degree") {
            fields();
            if (tok.empty() || (tok[0] != "uniform" && tok[0] != "mixed"))
                throw Error(ErrorCode::MalformedInput, "line " + std::to_string(lineno) + ": degree kind");
            s.uniform_degree = tok[0] == "uniform";
            s.expected_degrees.clear();
            for (std::size_t i = 1; i < tok.size(); ++i) s.expected_degrees.push_back(parse_int(tok[i], lineno));
        } else if (key == "class_count") {
            fields();
            need(1);
            s.expected_class_count = parse_int(tok[0], lineno);
        } else if (key == "order") {
            fields();
            need(1);
            s.order_kind = tok[0] == "pair" ? OrderKind::PairContrast : OrderKind::ClassContrast;
        } else if (key == "group") {
            fields();
            std::vector<int> g;
            for (const auto& t : tok) g.push_back(parse_int(t, lineno));
            s.order_groups.push_back(g);
        } else if (key == "two_parameter") {
            fields();
            need(1);
            s.two_parameter = tok[0] == "1";
        } else if (key == "orientations") {
            fields();
            need(1);
            s.orientation_degeneracy = parse_int(tok[0], lineno);
        } else if (key == "table") {
            fields();
            need(5);
            s.table.density = parse_rational(tok[0], lineno);
            if (tok[1] == "L") s.table.type = PackingType::L;
            else if (tok[1] == "RL") s.table.type = PackingType::RL;
            else if (tok[1] == "R") s.table.type = PackingType::R;
            else throw Error(ErrorCode::MalformedInput, "line " + std::to_string(lineno) + ": packing type");
            s.table.multiplicity = parse_int(tok[2], lineno);
            if (tok[3] != "-") s.table.pc = parse_double(tok[3], lineno);
            if (tok[4] != "-") s.table.rho_pc = parse_double(tok[4], lineno);
        } else if (key == "subgraphs") {
            s.table.optimal_subgraphs = rest_of_line(in);
        } else if (key == "entropy") {
            s.table.entropy_note = rest_of_line(in);
        } else {
            throw Error(ErrorCode::MalformedInput, "line " + std::to_string(lineno) + ": unknown record '" + key + "'");
        }
    }
    if (!header) throw Error(ErrorCode::MalformedInput, "missing 'lattice' header");
    if (nbasis != 2) throw Error(ErrorCode::MalformedInput, "need exactly two basis vectors");
    return s;
}

inline LatticeSpec lattice_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_lattice(is);
}

}  // namespace hcpack
