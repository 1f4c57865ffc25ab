#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfz/signal.hpp"

/// Closed-form quantities for spectrograms of the three signal families and
/// for the zeros of their noisy versions.
///
/// Conventions: the window is g(t) = 2^{1/4} e^{-pi t^2}; the spectrogram of y at
/// z = tau + i omega is |int y(t) g(t - tau) e^{-2 i pi omega t} dt|^2 and equals
/// e^{-pi |z|^2} |B(y)(conj z)|^2 with B the Bargmann transform. All functions
/// are pure.
namespace tfz::analytic {

/// Bargmann transform B(x)(z), including the sqrt(gamma) weights.
cplx bargmann(const SignalModel& signal, cplx z);
/// d/dz B(x)(z), in closed form.
cplx bargmann_derivative(const SignalModel& signal, cplx z);
/// (d/dz - pi conj(z)) B(x)(z).
cplx bargmann_nabla(const SignalModel& signal, cplx z);

/// Closed-form spectrogram of the noiseless signal.
double spectrogram(const SignalModel& signal, TFPoint p);
/// e^{-pi |z|^2} |B(x)(conj z)|^2, the Bargmann route to the same quantity.
double spectrogram_via_bargmann(const SignalModel& signal, TFPoint p);

/// Spectrogram by adaptive quadrature of the defining STFT integral.
/// Validation oracle only; throws NumericalError if quadrature does not reach `tol`.
double stft_quadrature(const SignalModel& signal, TFPoint p, double tol);
/// The time-domain signal x(t) used by stft_quadrature.
cplx signal_value(const SignalModel& signal, double t);

/// Zero intensity for sqrt(gamma) h_k plus noise, as a function of r = pi |z|^2.
double intensity_hermite(double r, int k, double gamma);
/// Zero intensity for a noisy linear chirp, r being the signed distance to its axis.
double intensity_chirp(double r, double b, double gamma);
/// Zero intensity for a noisy chirp pair in the rotated (r, s) frame.
double intensity_chirp_pair(double r, double s, const ChirpFrame& frame, double gamma1,
                            double gamma2);
/// Dispatches to the closed-form intensity of the signal's family.
double intensity(const SignalModel& signal, TFPoint p);

using ScalarField = std::function<double(TFPoint)>;

inline constexpr double default_laplacian_step = 1e-3;

/// (1 + S + Lap S / 4pi) e^{-S} for an arbitrary noiseless spectrogram S,
/// Laplacian by the 5-point stencil with step h.
double intensity_general(const ScalarField& spec, TFPoint p, double h = default_laplacian_step);

/// (1 + |nabla' B(x)(conj z)|^2 / (pi e^{pi|z|^2})) exp(-|B(x)(conj z)|^2 / e^{pi|z|^2}).
double intensity_via_bargmann(const SignalModel& signal, TFPoint p);

/// E[N(B(0, R))] for sqrt(gamma) h_k plus noise.
double expected_count_ball(int k, double gamma, double radius);
/// Same quantity written in terms of lambda = pi R^2; the antiderivative of
/// intensity_hermite.
double expected_count_hermite_area(int k, double gamma, double lambda);
/// Expected zero count in a unit-length rectangle of width R along a chirp axis.
double expected_count_chirp_strip(double width, double b, double gamma);

/// Interference zeros of a noiseless chirp pair with s = (m + 1/2)/a for m in
/// [m_first, m_last]. Throws DomainError when either SNR is zero.
std::vector<TFPoint> pair_zero_lattice(const ChirpPair& pair, int m_first, int m_last);
/// Abscissa r of the line carrying the interference zeros.
double pair_zero_line(const ChirpPair& pair);

/// max(0, 1 - 4 exp(-(sqrt(inf/2) - m_c)^2)) when inf > 2 m_c^2, else 0.
double trapping_lower_bound(double inf_spec, double m_c);

/// Smallest gamma meeting the Hermite trapping hypothesis for sup-mean m_k.
double hermite_gamma_threshold(int k, double eps, double m_k);
/// Smallest common SNR meeting the equal-amplitude pair trapping hypothesis.
double pair_equal_gamma_threshold(double b, double distance, double eps, double m_c);

/// Maximum of Spec(h_k) over the plane, k^k e^{-k} / k!, reached on |z| = sqrt(k/pi).
double hermite_spectrogram_peak(int k);

inline constexpr double default_assumption_slack = 1e-12;

struct AssumptionCheck {
    std::string name;
    bool holds = false;
    /// Positive when the inequality holds with room to spare; NaN when undefined.
    double slack = 0.0;
    /// One side of a disjunction; informational, not required on its own.
    bool branch = false;
};

/// Checks of the pair trapping hypotheses. Always reports "assumption1",
/// "assumption2" together with its two branches "assumption2_close" and
/// "assumption2_ratio"; "assumption3" only when both m_c and eps are given.
std::vector<AssumptionCheck> pair_trapping_assumptions(const ChirpPair& pair,
                                                       std::optional<double> m_c = std::nullopt,
                                                       std::optional<double> eps = std::nullopt,
                                                       double slack = default_assumption_slack);

/// Analytic lower bound of Spec(x) on the boundary of every C_N. Throws
/// AssumptionError unless assumption 2 holds.
double pair_contour_infimum(const ChirpPair& pair);

struct BoundReport {
    double inf_spec_on_contour = 0.0;
    double m_c = 0.0;
    double lower_bound = 0.0;
    std::vector<AssumptionCheck> assumptions;

    bool assumptions_ok() const;
};

} // namespace tfz::analytic
