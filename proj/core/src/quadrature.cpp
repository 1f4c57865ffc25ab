#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tfz/analytic.hpp"
#include "tfz/error.hpp"

namespace tfz::analytic {

namespace {

// h_k(t) = 2^{1/4} / sqrt(2^k k!) H_k(sqrt(2 pi) t) e^{-pi t^2}, unit L2 norm.
double hermite_function(int k, double t)
{
    const double norm = std::exp(0.25 * std::log(2.0) - 0.5 * (k * std::log(2.0) + std::lgamma(k + 1.0)));
    return norm * std::hermite(static_cast<unsigned>(k), std::sqrt(2.0 * pi) * t) * std::exp(-pi * t * t);
}

cplx chirp_value(double a, double b, double t)
{
    return std::polar(1.0, 2.0 * pi * t * (a + b * t));
}

// The window is below 1e-60 outside |t - tau| <= 7.
constexpr double half_support = 7.0;
constexpr int pieces = 28;

} // namespace

cplx signal_value(const SignalModel& signal, double t)
{
    return std::visit([t](const auto& s) -> cplx {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hermite>) {
            return std::sqrt(s.gamma) * hermite_function(s.k, t);
        } else if constexpr (std::is_same_v<T, LinearChirp>) {
            return std::sqrt(s.gamma) * chirp_value(s.a, s.b, t);
        } else {
            return std::sqrt(s.gamma1) * chirp_value(s.a1, s.b, t)
                 + std::sqrt(s.gamma2) * chirp_value(s.a2, s.b, t);
        }
    }, signal);
}

double stft_quadrature(const SignalModel& signal, TFPoint p, double tol)
{
    if (!(tol > 0.0)) {
        throw DomainError("quadrature tolerance must be positive");
    }
    using boost::math::quadrature::gauss_kronrod;
    const double window_norm = std::pow(2.0, 0.25);
    auto integrand = [&](double t) {
        const double g = window_norm * std::exp(-pi * (t - p.tau) * (t - p.tau));
        return signal_value(signal, t) * g * std::polar(1.0, -2.0 * pi * p.omega * t);
    };

    // Boost's tolerance is relative to each piece; the total is checked below.
    const double piece_tol = std::max(1e-3 * tol, 1e-14);
    double re = 0.0, im = 0.0, err = 0.0;
    const double width = 2.0 * half_support / pieces;
    for (int i = 0; i < pieces; ++i) {
        const double lo = p.tau - half_support + i * width;
        const double hi = lo + width;
        double e_re = 0.0, e_im = 0.0;
        re += gauss_kronrod<double, 61>::integrate([&](double t) { return integrand(t).real(); },
                                                   lo, hi, 10, piece_tol, &e_re);
        im += gauss_kronrod<double, 61>::integrate([&](double t) { return integrand(t).imag(); },
                                                   lo, hi, 10, piece_tol, &e_im);
        err += std::hypot(e_re, e_im);
    }
    const double amplitude = std::hypot(re, im);
    const double spec = amplitude * amplitude;
    const double spec_err = 2.0 * amplitude * err + err * err;
    if (!std::isfinite(spec) || spec_err > tol * std::max(1.0, spec)) {
        throw NumericalError("stft quadrature did not converge (error estimate "
                             + std::to_string(spec_err) + " against " + std::to_string(tol) + ")");
    }
    return spec;
}

} // namespace tfz::analytic
