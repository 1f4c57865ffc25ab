#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfz/signal.hpp"

/// Deterministic cross-route consistency checks: closed forms against the
/// Bargmann route, finite differences and quadrature of the STFT.
namespace tfz::validation {

struct Instance {
    std::string label;
    SignalModel signal;
};

/// Parameter sets checked for each family.
std::vector<Instance> default_instances();

struct Options {
    /// Only run checks of this family ("hermite", "chirp" or "pair").
    std::optional<std::string> family;
    /// Replaces every numeric tolerance below when set.
    std::optional<double> tolerance;
    int points = 1000;
    int quadrature_points = 100;
    double half_width = 4.0;

    double spectrogram_tol = 1e-12;
    double intensity_tol = 1e-12;
    double fd_step = 1e-3;
    double fd_tol = 1e-5;
    double fd_order_lo = 1.8;
    double fd_order_hi = 2.2;
    double quadrature_tol = 1e-8;
    double integral_tol = 1e-10;
    double lattice_tol = 1e-12;
    double far_field_tol = 1e-12;
};

struct CheckResult {
    std::string name;
    std::string family;
    std::string instance;
    /// Worst error over the sampled points (or the observed order for order checks).
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

/// Points of the 2-3 Halton sequence scaled to [-h, h]^2, starting at index 1.
std::vector<TFPoint> halton_points(int count, double half_width);

std::vector<CheckResult> run(const Options& options = {});

bool all_passed(const std::vector<CheckResult>& results);

} // namespace tfz::validation
