#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hcpack/error.hpp"
#include "hcpack/growth.hpp"

namespace hcpack {

enum class EntropyKind { H1, H2 };
enum class EntropyMethod { ClosedForm, Quadrature, GrowthFit };

constexpr const char* to_string(EntropyKind k) { return k == EntropyKind::H1 ? "h1" : "h2"; }
constexpr const char* to_string(EntropyMethod m) {
    switch (m) {
        case EntropyMethod::ClosedForm: return "closed-form";
        case EntropyMethod::Quadrature: return "quadrature";
        case EntropyMethod::GrowthFit: return "growth-fit";
    }
    return "?";
}

/// Residual entropy in nats.
struct EntropyEstimate {
    std::string lattice;
    EntropyKind kind = EntropyKind::H2;
    EntropyMethod method = EntropyMethod::ClosedForm;
    double value = 0.0;
    double error = 0.0;          ///< quadrature error estimate; 0 for closed forms
    bool lower_bound = false;    ///< value is a lower bound on the entropy
    std::string formula;
};

/// log|1 + e^{i theta} + e^{i phi}|.
inline double kagome_integrand(double theta, double phi) {
    return std::log(std::abs(std::complex<double>(1.0) + std::polar(1.0, theta) + std::polar(1.0, phi)));
}

/// Midpoint rule on an n x n grid of [0, 2pi)^2 divided by 4 pi^2. Midpoints
/// never hit the zeros (2pi/3, 4pi/3) and (4pi/3, 2pi/3). The integrand is
/// invariant under (theta, phi) -> (-theta, -phi), so only half the rows
/// are summed.
inline double kagome_midpoint(int n) {
    if (n < 2 || n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "grid size must be even and at least 2");
    const double h = 2.0 * std::numbers::pi / n;
    double sum = 0.0;
    for (int i = 0; i < n / 2; ++i) {
        const double t = (i + 0.5) * h;
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += kagome_integrand(t, (j + 0.5) * h);
        sum += row;
    }
    return 2.0 * sum / (static_cast<double>(n) * n);
}

/// Richardson combination of the n and 2n midpoint sums; the error estimate
/// is the raw change between the two grids.
inline EntropyEstimate kagome_entropy(int n = 1024) {
    const double coarse = kagome_midpoint(n);
    const double fine = kagome_midpoint(2 * n);
    EntropyEstimate e;
    e.lattice = "3.6.3.6";
    e.kind = EntropyKind::H2;
    e.method = EntropyMethod::Quadrature;
    e.value = (4.0 * fine - coarse) / 3.0;
    e.error = std::abs(fine - coarse);
    e.formula = "(1/4pi^2) int int log(1 + e^{i theta} + e^{i phi})";
    return e;
}

inline std::vector<EntropyEstimate> entropy_constants() {
    const double ln2 = std::numbers::ln2;
    return {
        {"3^3.4^2", EntropyKind::H1, EntropyMethod::ClosedForm, 0.5 * ln2, 0.0, false, "(1/2) log 2"},
        {"Z2M", EntropyKind::H1, EntropyMethod::ClosedForm, 0.5 * ln2, 0.0, false, "(1/2) log 2"},
        {"3.4.6.4", EntropyKind::H2, EntropyMethod::ClosedForm, 3.0 / 16.0 * ln2, 0.0, true, "(3/16) log 2"},
        {"3.12^2", EntropyKind::H2, EntropyMethod::ClosedForm, 1.0 / 18.0 * ln2, 0.0, true, "(1/18) log 2"},
    };
}

/// Entropy read off a growth fit: h2 per tile for R, the linear
/// coefficient for RL, zero for L.
inline EntropyEstimate entropy_from_growth(const GrowthFit& f) {
    EntropyEstimate e;
    e.lattice = f.lattice;
    e.method = EntropyMethod::GrowthFit;
    e.kind = f.type == PackingType::R ? EntropyKind::H2 : EntropyKind::H1;
    e.value = f.type == PackingType::R ? f.h2_per_tile : f.type == PackingType::RL ? f.h1 : 0.0;
    if (e.value < 0.0) e.value = 0.0;
    e.formula = "log count = a n^2 + b n + c";
    return e;
}

}  // namespace hcpack
