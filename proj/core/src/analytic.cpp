#include "tfz/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfz/error.hpp"

namespace tfz::analytic {

namespace {

cplx ipow(cplx z, int k)
{
    cplx result{1.0, 0.0};
    cplx base = z;
    while (k > 0) {
        if (k & 1) {
            result *= base;
        }
        base *= base;
        k >>= 1;
    }
    return result;
}

// r^k e^{-r} / k!, without overflow for large k.
double poisson_weight(double r, int k)
{
    if (r == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    return std::exp(k * std::log(r) - r - std::lgamma(k + 1.0));
}

// sqrt(pi^k / k!)
double hermite_bargmann_scale(int k)
{
    return std::exp(0.5 * (k * std::log(pi) - std::lgamma(k + 1.0)));
}

// 2^{1/4} / sqrt(1 - 2ib) e^{E(z)}; principal branch of the square root.
cplx chirp_bargmann(double a, double b, cplx z)
{
    const cplx i{0.0, 1.0};
    const cplx prefactor = std::pow(2.0, 0.25) / std::sqrt(cplx{1.0, -2.0 * b});
    const cplx w = i * a + z;
    const cplx exponent = -pi * w * w / cplx{-1.0, 2.0 * b} - 0.5 * pi * z * z;
    return prefactor * std::exp(exponent);
}

// E'(z) for the exponent above.
cplx chirp_log_derivative(double a, double b, cplx z)
{
    const cplx i{0.0, 1.0};
    return -2.0 * pi * (i * a + z) / cplx{-1.0, 2.0 * b} - pi * z;
}

void check_nonneg(double v, const char* name)
{
    if (!(v >= 0.0)) {
        throw DomainError(std::string(name) + " must be nonnegative");
    }
}

void check_eps(double eps)
{
    if (!(eps > 0.0 && eps < 0.25)) {
        throw DomainError("eps must lie in (0, 1/4)");
    }
}

} // namespace

cplx bargmann(const SignalModel& signal, cplx z)
{
    return std::visit([z](const auto& s) -> cplx {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hermite>) {
            return std::sqrt(s.gamma) * hermite_bargmann_scale(s.k) * ipow(z, s.k);
        } else if constexpr (std::is_same_v<T, LinearChirp>) {
            return std::sqrt(s.gamma) * chirp_bargmann(s.a, s.b, z);
        } else {
            return std::sqrt(s.gamma1) * chirp_bargmann(s.a1, s.b, z)
                 + std::sqrt(s.gamma2) * chirp_bargmann(s.a2, s.b, z);
        }
    }, signal);
}

cplx bargmann_derivative(const SignalModel& signal, cplx z)
{
    return std::visit([z](const auto& s) -> cplx {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hermite>) {
            if (s.k == 0) {
                return {0.0, 0.0};
            }
            return std::sqrt(s.gamma) * hermite_bargmann_scale(s.k) * static_cast<double>(s.k)
                 * ipow(z, s.k - 1);
        } else if constexpr (std::is_same_v<T, LinearChirp>) {
            return std::sqrt(s.gamma) * chirp_log_derivative(s.a, s.b, z)
                 * chirp_bargmann(s.a, s.b, z);
        } else {
            return std::sqrt(s.gamma1) * chirp_log_derivative(s.a1, s.b, z)
                     * chirp_bargmann(s.a1, s.b, z)
                 + std::sqrt(s.gamma2) * chirp_log_derivative(s.a2, s.b, z)
                     * chirp_bargmann(s.a2, s.b, z);
        }
    }, signal);
}

cplx bargmann_nabla(const SignalModel& signal, cplx z)
{
    return bargmann_derivative(signal, z) - pi * std::conj(z) * bargmann(signal, z);
}

double spectrogram(const SignalModel& signal, TFPoint p)
{
    return std::visit([p](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hermite>) {
            const double r = pi * std::norm(p.z());
            return s.gamma * poisson_weight(r, s.k);
        } else if constexpr (std::is_same_v<T, LinearChirp>) {
            const ChirpFrame frame = ChirpFrame::for_chirp(s);
            const double r = frame.to_rs(p).r;
            return frame.sigma_b() * (s.gamma * std::exp(-2.0 * pi * r * r));
        } else {
            const ChirpFrame frame = ChirpFrame::for_pair(s);
            const auto [r, ss] = frame.to_rs(p);
            const double a = frame.distance();
            const double e1 = std::exp(-2.0 * pi * r * r);
            const double e2 = std::exp(-2.0 * pi * (r - a) * (r - a));
            const double e12 = std::exp(-pi * r * r - pi * (r - a) * (r - a));
            const double cs = std::cos(2.0 * pi * a * ss);
            return frame.sigma_b()
                 * (s.gamma1 * e1 + s.gamma2 * e2 + 2.0 * std::sqrt(s.gamma1 * s.gamma2) * e12 * cs);
        }
    }, signal);
}

double spectrogram_via_bargmann(const SignalModel& signal, TFPoint p)
{
    const cplx z = p.z();
    return std::exp(-pi * std::norm(z)) * std::norm(bargmann(signal, std::conj(z)));
}

double intensity_hermite(double r, int k, double gamma)
{
    check_nonneg(r, "r");
    if (k < 0) {
        throw DomainError("hermite order k must be >= 0");
    }
    check_nonneg(gamma, "gamma");
    // r^{k-1} (k - r)^2 e^{-r} / k!; for k = 0 this is r e^{-r}, the continuous
    // extension that matches the general Laplacian formula at r = 0.
    double prefactor;
    if (k == 0) {
        prefactor = r * std::exp(-r);
    } else if (r == 0.0) {
        prefactor = k == 1 ? 1.0 : 0.0;
    } else {
        prefactor = (k - r) * (k - r) * std::exp((k - 1) * std::log(r) - r - std::lgamma(k + 1.0));
    }
    return (1.0 + gamma * prefactor) * std::exp(-gamma * poisson_weight(r, k));
}

double intensity_chirp(double r, double b, double gamma)
{
    check_nonneg(gamma, "gamma");
    const double sigma = sigma_b(b);
    const double e = std::exp(-2.0 * pi * r * r);
    return std::exp(-(sigma * (gamma * e))) * (1.0 + 4.0 * pi * sigma * (gamma * r * r * e));
}

double intensity_chirp_pair(double r, double s, const ChirpFrame& frame, double gamma1,
                            double gamma2)
{
    check_nonneg(gamma1, "gamma1");
    check_nonneg(gamma2, "gamma2");
    const double a = frame.distance();
    const double sigma = frame.sigma_b();
    const double e1 = std::exp(-2.0 * pi * r * r);
    const double e2 = std::exp(-2.0 * pi * (r - a) * (r - a));
    const double e12 = std::exp(-pi * r * r - pi * (r - a) * (r - a));
    const double cs = std::cos(2.0 * pi * a * s);
    const double cross = 2.0 * std::sqrt(gamma1 * gamma2);
    const double spec = sigma * (gamma1 * e1 + gamma2 * e2 + cross * e12 * cs);
    const double grad = gamma1 * r * r * e1 + gamma2 * (r - a) * (r - a) * e2
                      + cross * r * (r - a) * e12 * cs;
    return std::exp(-spec) * (1.0 + 4.0 * pi * sigma * grad);
}

double intensity(const SignalModel& signal, TFPoint p)
{
    return std::visit([p](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hermite>) {
            return intensity_hermite(pi * std::norm(p.z()), s.k, s.gamma);
        } else if constexpr (std::is_same_v<T, LinearChirp>) {
            return intensity_chirp(ChirpFrame::for_chirp(s).to_rs(p).r, s.b, s.gamma);
        } else {
            const ChirpFrame frame = ChirpFrame::for_pair(s);
            const RSPoint q = frame.to_rs(p);
            return intensity_chirp_pair(q.r, q.s, frame, s.gamma1, s.gamma2);
        }
    }, signal);
}

double intensity_general(const ScalarField& spec, TFPoint p, double h)
{
    if (!(h > 0.0)) {
        throw DomainError("laplacian step must be positive");
    }
    const double s0 = spec(p);
    const double lap = (spec({p.tau + h, p.omega}) + spec({p.tau - h, p.omega})
                        + spec({p.tau, p.omega + h}) + spec({p.tau, p.omega - h}) - 4.0 * s0)
                     / (h * h);
    return (1.0 + s0 + lap / (4.0 * pi)) * std::exp(-s0);
}

namespace {

using lcplx = std::complex<long double>;
constexpr long double lpi = 3.141592653589793238462643383279502884L;

// B(w) e^{-pi|w|^2/2} and nabla'B(w) e^{-pi|w|^2/2}. The damping is folded into
// the exponents, which are formed in extended precision: they are large and
// cancel to O(1) away from the origin.
struct Damped {
    lcplx value;
    lcplx nabla;
};

Damped damped_chirp(long double a, long double b, lcplx w)
{
    const lcplx i{0.0L, 1.0L};
    const lcplx u = i * a + w;
    const lcplx denom{-1.0L, 2.0L * b};
    const long double w2 = std::norm(w);
    const lcplx exponent = -lpi * u * u / denom - 0.5L * lpi * w * w - 0.5L * lpi * w2;
    const lcplx prefactor = std::pow(2.0L, 0.25L) / std::sqrt(lcplx{1.0L, -2.0L * b});
    const lcplx value = prefactor * std::exp(exponent);
    const lcplx dlog = -2.0L * lpi * u / denom - lpi * w;
    return {value, (dlog - lpi * std::conj(w)) * value};
}

Damped damped_hermite(int k, lcplx w)
{
    const long double r = lpi * std::norm(w);
    if (r == 0.0L) {
        // nabla' B = c (k - pi|w|^2) w^{k-1} with c = pi^{k/2} / sqrt(k!)
        return {k == 0 ? 1.0L : 0.0L, k == 1 ? std::sqrt(lpi) : 0.0L};
    }
    // c^2 |w|^{2k} e^{-pi|w|^2} = r^k e^{-r} / k!
    const long double log_mod = 0.5L * (k * std::log(r) - r - std::lgamma(k + 1.0L));
    const long double phase = k * std::arg(w);
    const lcplx value = std::polar(std::exp(log_mod), phase);
    return {value, value * (static_cast<long double>(k) - r) / w};
}

Damped damped_bargmann(const SignalModel& signal, lcplx w)
{
    return std::visit([w](const auto& s) -> Damped {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hermite>) {
            const Damped d = damped_hermite(s.k, w);
            const long double g = std::sqrt(static_cast<long double>(s.gamma));
            return {g * d.value, g * d.nabla};
        } else if constexpr (std::is_same_v<T, LinearChirp>) {
            const Damped d = damped_chirp(s.a, s.b, w);
            const long double g = std::sqrt(static_cast<long double>(s.gamma));
            return {g * d.value, g * d.nabla};
        } else {
            const Damped d1 = damped_chirp(s.a1, s.b, w);
            const Damped d2 = damped_chirp(s.a2, s.b, w);
            const long double g1 = std::sqrt(static_cast<long double>(s.gamma1));
            const long double g2 = std::sqrt(static_cast<long double>(s.gamma2));
            return {g1 * d1.value + g2 * d2.value, g1 * d1.nabla + g2 * d2.nabla};
        }
    }, signal);
}

} // namespace

double intensity_via_bargmann(const SignalModel& signal, TFPoint p)
{
    const Damped d = damped_bargmann(signal, lcplx{p.tau, -p.omega});
    const long double spec = std::norm(d.value);
    const long double grad = std::norm(d.nabla) / lpi;
    return static_cast<double>((1.0L + grad) * std::exp(-spec));
}

double expected_count_hermite_area(int k, double gamma, double lambda)
{
    if (k < 0) {
        throw DomainError("hermite order k must be >= 0");
    }
    check_nonneg(gamma, "gamma");
    check_nonneg(lambda, "lambda");
    return k - (k - lambda) * std::exp(-gamma * poisson_weight(lambda, k));
}

double expected_count_ball(int k, double gamma, double radius)
{
    if (!(radius > 0.0)) {
        throw DomainError("ball radius must be positive");
    }
    return expected_count_hermite_area(k, gamma, pi * radius * radius);
}

double expected_count_chirp_strip(double width, double b, double gamma)
{
    if (!(width > 0.0)) {
        throw DomainError("strip width must be positive");
    }
    check_nonneg(gamma, "gamma");
    return width * std::exp(-gamma * sigma_b(b) * std::exp(-2.0 * pi * width * width));
}

double pair_zero_line(const ChirpPair& pair)
{
    if (!(pair.gamma1 > 0.0) || !(pair.gamma2 > 0.0)) {
        throw DomainError("interference zeros need gamma1 > 0 and gamma2 > 0");
    }
    const double a = ChirpFrame::for_pair(pair).distance();
    return 0.5 * a - std::log(pair.gamma2 / pair.gamma1) / (4.0 * a * pi);
}

std::vector<TFPoint> pair_zero_lattice(const ChirpPair& pair, int m_first, int m_last)
{
    validate(pair);
    if (m_last < m_first) {
        throw DomainError("empty lattice index range");
    }
    const double r = pair_zero_line(pair);
    const ChirpFrame frame = ChirpFrame::for_pair(pair);
    const double a = frame.distance();
    std::vector<TFPoint> zeros;
    zeros.reserve(static_cast<std::size_t>(m_last - m_first + 1));
    for (int m = m_first; m <= m_last; ++m) {
        zeros.push_back(frame.to_tf({r, (m + 0.5) / a}));
    }
    return zeros;
}

double trapping_lower_bound(double inf_spec, double m_c)
{
    check_nonneg(inf_spec, "inf_spec");
    check_nonneg(m_c, "m_c");
    if (!(inf_spec > 2.0 * m_c * m_c)) {
        return 0.0;
    }
    const double gap = std::sqrt(inf_spec / 2.0) - m_c;
    return std::max(0.0, 1.0 - 4.0 * std::exp(-gap * gap));
}

double hermite_spectrogram_peak(int k)
{
    if (k < 1) {
        throw DomainError("hermite peak needs k >= 1");
    }
    return poisson_weight(static_cast<double>(k), k);
}

double hermite_gamma_threshold(int k, double eps, double m_k)
{
    check_eps(eps);
    check_nonneg(m_k, "m_k");
    const double root = m_k + std::sqrt(std::log(4.0 / eps));
    return 2.0 * root * root / hermite_spectrogram_peak(k);
}

double pair_equal_gamma_threshold(double b, double distance, double eps, double m_c)
{
    check_eps(eps);
    check_nonneg(m_c, "m_c");
    if (distance == 0.0) {
        throw DomainError("pair threshold needs a nonzero inter-axis distance");
    }
    const double root = m_c + std::sqrt(std::log(4.0 / eps));
    const double gap = 1.0 - std::exp(-pi * distance * distance);
    return 4.0 * root * root / (sigma_b(b) * gap * gap);
}

std::vector<AssumptionCheck> pair_trapping_assumptions(const ChirpPair& pair,
                                                       std::optional<double> m_c,
                                                       std::optional<double> eps, double slack)
{
    validate(pair);
    const ChirpFrame frame = ChirpFrame::for_pair(pair);
    const double a = std::abs(frame.distance());
    const double log_gap = std::abs(std::log(pair.gamma1) - std::log(pair.gamma2));
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<AssumptionCheck> out;

    const double s1 = 2.0 * pi * a * a - log_gap;
    out.push_back({"assumption1", s1 > slack, std::isnan(s1) ? nan : s1});

    const double s_close = std::sqrt(2.0 / pi) - a;
    const bool close = s_close >= -slack;
    double s_ratio = nan;
    bool ratio = false;
    double arg = pi * a * a - 1.0;
    if (arg >= 1.0 - slack) {
        arg = std::max(arg, 1.0);
        const double rhs = -std::acosh(arg) + a * std::sqrt(std::max(0.0, pi * pi * a * a - 2.0 * pi));
        s_ratio = 0.5 * log_gap - rhs;
        ratio = s_ratio >= -slack;
    }
    const double s2 = std::isnan(s_ratio) ? s_close : std::max(s_close, s_ratio);
    out.push_back({"assumption2", close || ratio, s2});
    out.push_back({"assumption2_close", close, s_close, true});
    out.push_back({"assumption2_ratio", ratio, s_ratio, true});

    if (m_c && eps) {
        check_eps(*eps);
        check_nonneg(*m_c, "m_c");
        const double damp = std::exp(-pi * a * a);
        const double g1 = std::sqrt(pair.gamma1);
        const double g2 = std::sqrt(pair.gamma2);
        const double lhs = std::min(std::abs(g1 - g2 * damp), std::abs(g2 - g1 * damp));
        const double rhs = 2.0 / std::sqrt(frame.sigma_b()) * (*m_c + std::sqrt(std::log(4.0 / *eps)));
        out.push_back({"assumption3", lhs - rhs >= -slack, lhs - rhs});
    }
    return out;
}

double pair_contour_infimum(const ChirpPair& pair)
{
    const auto checks = pair_trapping_assumptions(pair);
    const auto it = std::find_if(checks.begin(), checks.end(),
                                 [](const AssumptionCheck& c) { return c.name == "assumption2"; });
    if (it == checks.end() || !it->holds) {
        throw AssumptionError("pair contour infimum needs assumption 2 (close or dominated chirps)");
    }
    const ChirpFrame frame = ChirpFrame::for_pair(pair);
    const double a = frame.distance();
    const double damp = std::exp(-pi * a * a);
    const double g1 = std::sqrt(pair.gamma1);
    const double g2 = std::sqrt(pair.gamma2);
    const double d1 = g1 - g2 * damp;
    const double d2 = g2 - g1 * damp;
    return frame.sigma_b() * std::min(d1 * d1, d2 * d2);
}

bool BoundReport::assumptions_ok() const
{
    return std::all_of(assumptions.begin(), assumptions.end(),
                       [](const AssumptionCheck& c) { return c.branch || c.holds; });
}

} // namespace tfz::analytic
