#include "tfz/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tfz/analytic.hpp"
#include "tfz/contour.hpp"
#include "tfz/error.hpp"

namespace tfz::validation {

namespace {

double radical_inverse(unsigned index, unsigned base)
{
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * (index % base);
        index /= base;
        f /= base;
    }
    return result;
}

std::string point_text(TFPoint p)
{
    std::ostringstream os;
    os.precision(6);
    os << "at (" << p.tau << ", " << p.omega << ")";
    return os.str();
}

/// Magnitude against which spectrogram errors are measured. For a pair the
/// value itself vanishes on the interference lattice, so the envelope of the
/// two non-interfering terms is used instead.
double spectrogram_scale(const SignalModel& signal, TFPoint p)
{
    if (const auto* pair = std::get_if<ChirpPair>(&signal)) {
        const ChirpFrame frame = ChirpFrame::for_pair(*pair);
        const RSPoint q = frame.to_rs(p);
        const double a = frame.distance();
        const double env = std::sqrt(pair->gamma1) * std::exp(-pi * q.r * q.r)
                         + std::sqrt(pair->gamma2) * std::exp(-pi * (q.r - a) * (q.r - a));
        return frame.sigma_b() * env * env;
    }
    return std::abs(analytic::spectrogram(signal, p));
}

/// (1 + S + |Lap S| / 4pi) e^{-S}: the intensity with the cancellation between
/// S and its Laplacian removed. Equals rho wherever Lap S >= 0.
double intensity_scale(double spec, double rho)
{
    const double lap_term = rho * std::exp(spec) - 1.0 - spec;
    return (1.0 + spec + std::abs(lap_term)) * std::exp(-spec);
}

struct Worst {
    double value = 0.0;
    TFPoint where;

    void update(double v, TFPoint p)
    {
        if (!(v <= value)) { // NaN counts as worst
            value = v;
            where = p;
        }
    }
};

CheckResult make(std::string name, const Instance& inst, double value, double tol,
                 std::string detail = {})
{
    CheckResult r;
    r.name = std::move(name);
    r.family = family_name(inst.signal);
    r.instance = inst.label;
    r.value = value;
    r.tolerance = tol;
    r.passed = value <= tol;
    r.detail = std::move(detail);
    return r;
}

double integrate(const std::function<double(double)>& f, double a, double b)
{
    using boost::math::quadrature::gauss_kronrod;
    const int pieces = 16;
    double sum = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + (b - a) * i / pieces;
        const double hi = a + (b - a) * (i + 1) / pieces;
        sum += gauss_kronrod<double, 61>::integrate(f, lo, hi, 12, 1e-15);
    }
    return sum;
}

void family_checks(const Instance& inst, const Options& o, const std::vector<TFPoint>& pts,
                   const std::vector<TFPoint>& quad_pts, std::vector<CheckResult>& out)
{
    const auto tol = [&](double t) { return o.tolerance.value_or(t); };
    const SignalModel& s = inst.signal;

    Worst spec, inten, positivity;
    for (const TFPoint& p : pts) {
        const double closed = analytic::spectrogram(s, p);
        const double route = analytic::spectrogram_via_bargmann(s, p);
        spec.update(std::abs(closed - route) / std::max(spectrogram_scale(s, p), 1e-300), p);

        const double rho = analytic::intensity(s, p);
        const double alt = analytic::intensity_via_bargmann(s, p);
        inten.update(std::abs(rho - alt) / rho, p);
        // rho >= e^{-Spec}: report the shortfall, zero when the inequality holds.
        positivity.update(std::max(0.0, std::exp(-closed) - rho * (1.0 + 1e-14)), p);
    }
    out.push_back(make("spectrogram_vs_bargmann", inst, spec.value, tol(o.spectrogram_tol),
                       point_text(spec.where)));
    out.push_back(make("intensity_vs_bargmann", inst, inten.value, tol(o.intensity_tol),
                       point_text(inten.where)));
    out.push_back(make("intensity_lower_bound", inst, positivity.value, 0.0,
                       point_text(positivity.where)));

    const analytic::ScalarField field = [&s](TFPoint p) { return analytic::spectrogram(s, p); };
    Worst fd;
    double sq_h = 0.0, sq_half = 0.0;
    for (const TFPoint& p : pts) {
        const double rho = analytic::intensity(s, p);
        const double scale = intensity_scale(analytic::spectrogram(s, p), rho);
        const double e_h = (analytic::intensity_general(field, p, o.fd_step) - rho) / scale;
        const double e_half = (analytic::intensity_general(field, p, 0.5 * o.fd_step) - rho) / scale;
        fd.update(std::abs(e_h), p);
        sq_h += e_h * e_h;
        sq_half += e_half * e_half;
    }
    out.push_back(make("finite_difference_intensity", inst, fd.value, tol(o.fd_tol), point_text(fd.where)));
    const double order = 0.5 * std::log2(sq_h / sq_half);
    CheckResult ord = make("finite_difference_order", inst, order, o.fd_order_hi);
    ord.passed = order >= o.fd_order_lo && order <= o.fd_order_hi;
    {
        std::ostringstream os;
        os << "observed order in [" << o.fd_order_lo << ", " << o.fd_order_hi << "] required";
        ord.detail = os.str();
    }
    out.push_back(ord);

    Worst quad;
    for (const TFPoint& p : quad_pts) {
        const double closed = analytic::spectrogram(s, p);
        const double q = analytic::stft_quadrature(s, p, 0.1 * o.quadrature_tol);
        quad.update(std::abs(q - closed) / std::max(1.0, closed), p);
    }
    out.push_back(make("quadrature_vs_closed_form", inst, quad.value, tol(o.quadrature_tol),
                       point_text(quad.where)));

    // Far field: both Spec and its Laplacian vanish, so rho -> 1.
    std::vector<TFPoint> far;
    if (const auto* pair = std::get_if<ChirpPair>(&s)) {
        const ChirpFrame frame = ChirpFrame::for_pair(*pair);
        far = {frame.to_tf({-10.0, 0.0}), frame.to_tf({frame.distance() + 10.0, 0.0})};
    } else if (const auto* c = std::get_if<LinearChirp>(&s)) {
        const ChirpFrame frame = ChirpFrame::for_chirp(*c);
        far = {frame.to_tf({-10.0, 0.0}), frame.to_tf({10.0, 0.0})};
    } else {
        for (int i = 0; i < 8; ++i) {
            const double t = 2.0 * pi * i / 8.0;
            far.push_back({10.0 * std::cos(t), 10.0 * std::sin(t)});
        }
    }
    Worst ff;
    for (const TFPoint& p : far) {
        ff.update(std::abs(analytic::intensity(s, p) - 1.0), p);
    }
    out.push_back(make("far_field_intensity", inst, ff.value, tol(o.far_field_tol), point_text(ff.where)));

    if (const auto* h = std::get_if<Hermite>(&s)) {
        const double lambda = static_cast<double>(std::max(h->k, 1)) + 1.5;
        const double radius = std::sqrt(lambda / pi);
        const double num = integrate(
            [h](double r) { return analytic::intensity_hermite(r, h->k, h->gamma); }, 0.0, lambda);
        const double closed = analytic::expected_count_ball(h->k, h->gamma, radius);
        out.push_back(make("ball_count_integral", inst, std::abs(num - closed), tol(o.integral_tol)));
    }
    if (const auto* c = std::get_if<LinearChirp>(&s)) {
        const double width = 1.0;
        const double num = integrate([c](double r) { return analytic::intensity_chirp(r, c->b, c->gamma); },
                                     0.0, width);
        const double closed = analytic::expected_count_chirp_strip(width, c->b, c->gamma);
        out.push_back(make("strip_count_integral", inst, std::abs(num - closed), tol(o.integral_tol)));
    }
    if (const auto* pair = std::get_if<ChirpPair>(&s)) {
        if (pair->gamma1 > 0.0 && pair->gamma2 > 0.0) {
            Worst lat;
            for (const TFPoint& p : analytic::pair_zero_lattice(*pair, -3, 3)) {
                lat.update(analytic::spectrogram(s, p), p);
            }
            out.push_back(make("lattice_zeros", inst, lat.value, tol(o.lattice_tol), point_text(lat.where)));
        }
        bool assumption2 = false;
        for (const auto& a : analytic::pair_trapping_assumptions(*pair)) {
            assumption2 = assumption2 || (a.name == "assumption2" && a.holds);
        }
        if (assumption2) {
            const double inf = analytic::pair_contour_infimum(*pair);
            double shortfall = 0.0;
            for (int n : {0, 1, 5}) {
                const Contour c = Contour::rectangle_cn(*pair, n);
                for (const cplx& z : c.sample(10000)) {
                    shortfall = std::max(shortfall, inf - analytic::spectrogram(s, TFPoint::from(z)));
                }
            }
            out.push_back(make("contour_infimum_bound", inst, shortfall, tol(o.lattice_tol)));
        }
    }
}

} // namespace

std::vector<Instance> default_instances()
{
    return {
        {"k=1 gamma=5", make_hermite(1, 5.0)},
        {"k=2 gamma=4", make_hermite(2, 4.0)},
        {"k=10 gamma=400", make_hermite(10, 400.0)},
        {"a=-5 b=0.4 gamma=100", make_linear_chirp(-5.0, 0.4, 100.0)},
        {"a=0 b=0 gamma=1", make_linear_chirp(0.0, 0.0, 1.0)},
        {"a1=-1 a2=0 b=0.4 gamma1=100 gamma2=40", make_chirp_pair(-1.0, 0.0, 0.4, 100.0, 40.0)},
        {"a1=0 a2=1 b=0 gamma1=1 gamma2=1", make_chirp_pair(0.0, 1.0, 0.0, 1.0, 1.0)},
    };
}

std::vector<TFPoint> halton_points(int count, double half_width)
{
    std::vector<TFPoint> pts;
    pts.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 1; i <= count; ++i) {
        pts.push_back({half_width * (2.0 * radical_inverse(static_cast<unsigned>(i), 2) - 1.0),
                       half_width * (2.0 * radical_inverse(static_cast<unsigned>(i), 3) - 1.0)});
    }
    return pts;
}

std::vector<CheckResult> run(const Options& options)
{
    if (options.family && *options.family != "hermite" && *options.family != "chirp"
        && *options.family != "pair") {
        throw DomainError("unknown family '" + *options.family + "'");
    }
    if (options.tolerance && !(*options.tolerance >= 0.0)) {
        throw DomainError("tolerance must be nonnegative");
    }
    const auto pts = halton_points(options.points, options.half_width);
    const auto quad_pts = halton_points(options.quadrature_points, options.half_width);
    std::vector<CheckResult> out;
    for (const Instance& inst : default_instances()) {
        if (options.family && family_name(inst.signal) != *options.family) {
            continue;
        }
        family_checks(inst, options, pts, quad_pts, out);
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

} // namespace tfz::validation
