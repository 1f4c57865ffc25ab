#include "tfz/signal.hpp"

#include <cmath>

#include "tfz/error.hpp"

namespace tfz {

namespace {

void check_gamma(double gamma, const char* name)
{
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw DomainError(std::string(name) + " must be a finite nonnegative number");
    }
}

void check_finite(double v, const char* name)
{
    if (!std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite");
    }
}

} // namespace

Hermite make_hermite(int k, double gamma)
{
    if (k < 0) {
        throw DomainError("hermite order k must be >= 0");
    }
    check_gamma(gamma, "gamma");
    return {k, gamma};
}

LinearChirp make_linear_chirp(double a, double b, double gamma)
{
    check_finite(a, "a");
    check_finite(b, "b");
    check_gamma(gamma, "gamma");
    return {a, b, gamma};
}

ChirpPair make_chirp_pair(double a1, double a2, double b, double gamma1, double gamma2)
{
    check_finite(a1, "a1");
    check_finite(a2, "a2");
    check_finite(b, "b");
    check_gamma(gamma1, "gamma1");
    check_gamma(gamma2, "gamma2");
    if (a1 == a2) {
        throw DomainError("chirp pair needs a1 != a2; merge coincident chirps into one LinearChirp");
    }
    return {a1, a2, b, gamma1, gamma2};
}

void validate(const SignalModel& signal)
{
    std::visit([](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hermite>) {
            make_hermite(s.k, s.gamma);
        } else if constexpr (std::is_same_v<T, LinearChirp>) {
            make_linear_chirp(s.a, s.b, s.gamma);
        } else {
            make_chirp_pair(s.a1, s.a2, s.b, s.gamma1, s.gamma2);
        }
    }, signal);
}

std::string family_name(const SignalModel& signal)
{
    switch (signal.index()) {
    case 0: return "hermite";
    case 1: return "chirp";
    default: return "pair";
    }
}

bool is_zero_signal(const SignalModel& signal)
{
    return std::visit([](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ChirpPair>) {
            return s.gamma1 == 0.0 && s.gamma2 == 0.0;
        } else {
            return s.gamma == 0.0;
        }
    }, signal);
}

double sigma_b(double b)
{
    return std::sqrt(2.0 / (1.0 + 4.0 * b * b));
}

ChirpFrame ChirpFrame::build(double b, double r_offset, double s_offset, double distance)
{
    ChirpFrame f;
    const double c = 1.0 / std::sqrt(1.0 + 4.0 * b * b);
    f.sigma_b_ = tfz::sigma_b(b);
    f.distance_ = distance;
    f.fwd_[0][0] = -2.0 * b * c;
    f.fwd_[0][1] = c;
    f.fwd_[1][0] = c;
    f.fwd_[1][1] = 2.0 * b * c;
    f.fwd_off_[0] = r_offset;
    f.fwd_off_[1] = s_offset;
    // The linear part is a symmetric reflection, hence its own inverse.
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            f.inv_[i][j] = f.fwd_[i][j];
        }
    }
    f.inv_off_[0] = -(f.inv_[0][0] * r_offset + f.inv_[0][1] * s_offset);
    f.inv_off_[1] = -(f.inv_[1][0] * r_offset + f.inv_[1][1] * s_offset);
    return f;
}

ChirpFrame ChirpFrame::for_chirp(const LinearChirp& chirp)
{
    const double c = 1.0 / std::sqrt(1.0 + 4.0 * chirp.b * chirp.b);
    return build(chirp.b, -c * chirp.a, -2.0 * chirp.b * c * chirp.a, 0.0);
}

ChirpFrame ChirpFrame::for_pair(const ChirpPair& pair)
{
    const double c = 1.0 / std::sqrt(1.0 + 4.0 * pair.b * pair.b);
    return build(pair.b, -c * pair.a1, -c * (pair.a1 + pair.a2) * pair.b,
                 c * (pair.a2 - pair.a1));
}

RSPoint ChirpFrame::to_rs(TFPoint p) const noexcept
{
    return {fwd_[0][0] * p.tau + fwd_[0][1] * p.omega + fwd_off_[0],
            fwd_[1][0] * p.tau + fwd_[1][1] * p.omega + fwd_off_[1]};
}

TFPoint ChirpFrame::to_tf(RSPoint q) const noexcept
{
    return {inv_[0][0] * q.r + inv_[0][1] * q.s + inv_off_[0],
            inv_[1][0] * q.r + inv_[1][1] * q.s + inv_off_[1]};
}

} // namespace tfz
