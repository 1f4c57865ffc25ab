#pragma once

#include <complex>
#include <string>
#include <variant>

namespace tfz {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// A point of the time-frequency plane, identified with z = tau + i*omega.
struct TFPoint {
    double tau = 0.0;
    double omega = 0.0;

    constexpr cplx z() const { return {tau, omega}; }
    static constexpr TFPoint from(cplx z) { return {z.real(), z.imag()}; }
};

/// sqrt(gamma) * h_k, with h_k the unit-norm k-th Hermite function.
struct Hermite {
    int k = 0;
    double gamma = 0.0;
};

/// sqrt(gamma) * exp(2 i pi t (a + b t)).
struct LinearChirp {
    double a = 0.0;
    double b = 0.0;
    double gamma = 0.0;
};

/// Two parallel linear chirps sharing the slope b.
struct ChirpPair {
    double a1 = 0.0;
    double a2 = 0.0;
    double b = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

using SignalModel = std::variant<Hermite, LinearChirp, ChirpPair>;

// Validating constructors; throw DomainError on negative SNR, negative k or
// coincident pair axes.
Hermite make_hermite(int k, double gamma);
LinearChirp make_linear_chirp(double a, double b, double gamma);
ChirpPair make_chirp_pair(double a1, double a2, double b, double gamma1, double gamma2);

void validate(const SignalModel& signal);

/// Family name: "hermite", "chirp" or "pair".
std::string family_name(const SignalModel& signal);

/// True when every SNR weight is zero (pure noise).
bool is_zero_signal(const SignalModel& signal);

/// sqrt(2 / (1 + 4 b^2)).
double sigma_b(double b);

struct RSPoint {
    double r = 0.0;
    double s = 0.0;
};

/// Rotated coordinates attached to a chirp (or chirp pair) axis.
///
/// r is the signed distance to the axis of the (first) chirp, s the abscissa
/// along it. The map (tau, omega) -> (r, s) is an isometry of the plane; both
/// directions are stored explicitly so that large slopes do not lose digits in
/// a recomputed inverse.
class ChirpFrame {
public:
    static ChirpFrame for_chirp(const LinearChirp& chirp);
    static ChirpFrame for_pair(const ChirpPair& pair);

    double sigma_b() const noexcept { return sigma_b_; }
    /// Rotated inter-axis distance (sigma_b/sqrt2)(a2 - a1); zero for a single chirp.
    double distance() const noexcept { return distance_; }

    RSPoint to_rs(TFPoint p) const noexcept;
    TFPoint to_tf(RSPoint q) const noexcept;

private:
    double sigma_b_ = 0.0;
    double distance_ = 0.0;
    // forward: [r s]^T = fwd_ * [tau omega]^T + fwd_off_
    double fwd_[2][2] = {{0, 0}, {0, 0}};
    double fwd_off_[2] = {0, 0};
    double inv_[2][2] = {{0, 0}, {0, 0}};
    double inv_off_[2] = {0, 0};

    static ChirpFrame build(double b, double r_offset, double s_offset, double distance);
};

} // namespace tfz
