#include "tfz/experiments.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "tfz/error.hpp"

namespace tfz::experiments {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void check_n(int n)
{
    if (n < 1) {
        throw DomainError("number of realizations must be at least 1");
    }
}

void check_exclusions(const Exclusions& ex, int n, const RunOptions& options)
{
    if (static_cast<double>(ex.count()) >= options.max_excluded_fraction * n && ex.count() > 0) {
        throw NumericalError(std::to_string(ex.count()) + " of " + std::to_string(n)
                             + " realizations failed in the zero finder");
    }
}

// 4-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> gl_x{-0.8611363115940526, -0.3399810435848563,
                                     0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> gl_w{0.3478548451374538, 0.6521451548625461,
                                     0.6521451548625461, 0.3478548451374538};

double cell_average(const SignalModel& signal, double x0, double y0, double x1, double y1)
{
    const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
    const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            sum += gl_w[i] * gl_w[j] * analytic::intensity(signal, {cx + hx * gl_x[i], cy + hy * gl_x[j]});
        }
    }
    return 0.25 * sum;
}

void check_edges(const std::vector<double>& edges)
{
    if (edges.size() < 2) {
        throw DomainError("a profile needs at least two bin edges");
    }
    if (edges.front() < 0.0) {
        throw DomainError("profile edges must be nonnegative");
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (!(edges[i] > edges[i - 1])) {
            throw DomainError("profile edges must be strictly increasing");
        }
    }
}

// Antiderivative of the profile intensity times the bin measure, per family.
double profile_primitive(const SignalModel& signal, Reduction reduction, double x)
{
    if (is_zero_signal(signal)) {
        return x;
    }
    if (reduction == Reduction::radial) {
        if (const auto* h = std::get_if<Hermite>(&signal)) {
            return analytic::expected_count_hermite_area(h->k, h->gamma, x);
        }
        throw DomainError("radial profiles need a Hermite signal");
    }
    if (const auto* c = std::get_if<LinearChirp>(&signal)) {
        return x > 0.0 ? analytic::expected_count_chirp_strip(x, c->b, c->gamma) : 0.0;
    }
    throw DomainError("distance profiles need a single chirp");
}

ChirpFrame frame_of(const SignalModel& signal)
{
    if (const auto* c = std::get_if<LinearChirp>(&signal)) {
        return ChirpFrame::for_chirp(*c);
    }
    if (const auto* p = std::get_if<ChirpPair>(&signal)) {
        return ChirpFrame::for_pair(*p);
    }
    return ChirpFrame::for_chirp(LinearChirp{});
}

zeros::Rect search_domain(const SignalModel& signal, const HistogramSpec& spec, double resolution)
{
    const double pad = 1.0 / resolution;
    switch (spec.reduction) {
    case Reduction::grid:
        return spec.domain;
    case Reduction::radial: {
        const double r = std::sqrt(spec.edges.back() / pi) + pad;
        return {-r, -r, r, r};
    }
    case Reduction::chirp_distance: {
        const ChirpFrame frame = frame_of(signal);
        const double d = spec.edges.back();
        zeros::Rect box{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                        std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
        for (double r : {-d, d}) {
            for (double s : {spec.s0, spec.s1}) {
                const TFPoint p = frame.to_tf({r, s});
                box.x0 = std::min(box.x0, p.tau);
                box.x1 = std::max(box.x1, p.tau);
                box.y0 = std::min(box.y0, p.omega);
                box.y1 = std::max(box.y1, p.omega);
            }
        }
        return {box.x0 - pad, box.y0 - pad, box.x1 + pad, box.y1 + pad};
    }
    }
    throw DomainError("unknown histogram reduction");
}

/// Bin of a zero, or -1 outside the histogram.
int locate(const IntensityHistogram& h, const ChirpFrame& frame, cplx z)
{
    const HistogramSpec& spec = h.spec;
    switch (spec.reduction) {
    case Reduction::grid: {
        const zeros::Rect& d = spec.domain;
        if (!d.contains(z)) {
            return -1;
        }
        const int i = std::min(h.nx - 1, static_cast<int>((z.real() - d.x0) / spec.bin_width));
        const int j = std::min(h.ny - 1, static_cast<int>((z.imag() - d.y0) / spec.bin_width));
        return j * h.nx + i;
    }
    case Reduction::radial:
    case Reduction::chirp_distance: {
        double x = 0.0;
        if (spec.reduction == Reduction::radial) {
            x = pi * std::norm(z);
        } else {
            const RSPoint q = frame.to_rs(TFPoint::from(z));
            if (q.s < spec.s0 || q.s >= spec.s1) {
                return -1;
            }
            x = std::abs(q.r);
        }
        const auto& e = spec.edges;
        if (x < e.front() || x >= e.back()) {
            return -1;
        }
        return static_cast<int>(std::upper_bound(e.begin(), e.end(), x) - e.begin()) - 1;
    }
    }
    return -1;
}

std::pair<double, double> mean_and_variance(const std::vector<int>& values,
                                            const std::vector<char>& used)
{
    double sum = 0.0;
    long long m = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (used[i]) {
            sum += values[i];
            ++m;
        }
    }
    const double mean = m > 0 ? sum / m : nan;
    double ss = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (used[i]) {
            ss += (values[i] - mean) * (values[i] - mean);
        }
    }
    return {mean, m > 1 ? ss / (m - 1) : 0.0};
}

struct SupBasis {
    int degree = 0;
    std::size_t points = 0;
    // phi[p * (degree + 1) + n] = sqrt(pi^n / n!) z_p^n e^{-pi |z_p|^2 / 2}
    std::vector<double> re;
    std::vector<double> im;

    SupBasis(const std::vector<cplx>& zs, int deg) : degree(deg), points(zs.size())
    {
        const std::size_t stride = static_cast<std::size_t>(degree) + 1;
        re.resize(points * stride);
        im.resize(points * stride);
        for (std::size_t p = 0; p < points; ++p) {
            cplx phi = std::exp(-0.5 * pi * std::norm(zs[p]));
            for (int n = 0; n <= degree; ++n) {
                if (n > 0) {
                    phi *= zs[p] * std::sqrt(pi / n);
                }
                re[p * stride + static_cast<std::size_t>(n)] = phi.real();
                im[p * stride + static_cast<std::size_t>(n)] = phi.imag();
            }
        }
    }

    double sup(const std::vector<cplx>& xi) const
    {
        const std::size_t stride = static_cast<std::size_t>(degree) + 1;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < points; ++p) {
            const double* r = &re[p * stride];
            const double* i = &im[p * stride];
            double f = 0.0;
            for (std::size_t n = 0; n < stride; ++n) {
                f += xi[n].real() * r[n] - xi[n].imag() * i[n];
            }
            best = std::max(best, f);
        }
        return best;
    }
};

void check_discretization(const Contour& contour, int discretization)
{
    if (discretization < 1) {
        throw DomainError("discretization must be positive");
    }
    if (discretization < min_sup_points_per_length * contour.length()) {
        throw DomainError("sup estimates need at least 64 contour points per unit length");
    }
}

// Sups at the listed discretizations, realization-major.
std::vector<std::vector<double>> sups_at(const Contour& contour, int n,
                                         const std::vector<int>& discretizations,
                                         std::uint64_t master_seed, const RunOptions& options)
{
    check_n(n);
    const int degree = noise::truncation_degree(contour.max_modulus() + options.margin, options.tail_tol);
    std::vector<SupBasis> bases;
    for (int d : discretizations) {
        bases.emplace_back(contour.sample(d), degree);
    }
    std::vector<std::vector<double>> out(bases.size(), std::vector<double>(static_cast<std::size_t>(n)));
    run_indexed(static_cast<std::size_t>(n), options.threads, [&](std::size_t i) {
        const auto xi = noise::standard_coefficients(noise::derive_seed(master_seed, i), degree);
        for (std::size_t b = 0; b < bases.size(); ++b) {
            out[b][i] = bases[b].sup(xi);
        }
    });
    return out;
}

std::pair<double, double> mean_and_se(const std::vector<double>& v)
{
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    const double var = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

SupremumEstimate summarize(const std::vector<double>& coarse, const std::vector<double>& fine,
                           int discretization, std::uint64_t master_seed)
{
    SupremumEstimate e;
    e.n_realizations = static_cast<int>(fine.size());
    e.master_seed = master_seed;
    e.coarse_discretization = discretization;
    e.discretization = 2 * discretization;
    std::tie(e.coarse_mean, e.coarse_std_error) = mean_and_se(coarse);
    std::tie(e.mean, e.std_error) = mean_and_se(fine);
    e.doubling_consistent = std::abs(e.mean - e.coarse_mean) <= 2.0 * e.std_error;
    return e;
}

} // namespace

double IntensityHistogram::density(const Bin& b) const
{
    return static_cast<double>(b.count) / (used_realizations() * b.area);
}

double IntensityHistogram::std_error(const Bin& b) const
{
    return std::sqrt(std::max<double>(static_cast<double>(b.count), 1.0)) / (used_realizations() * b.area);
}

double IntensityHistogram::fraction_outside(double z) const
{
    if (bins.empty()) {
        return 0.0;
    }
    std::size_t out = 0;
    for (const Bin& b : bins) {
        if (std::abs(density(b) - b.analytic) > z * std_error(b)) {
            ++out;
        }
    }
    return static_cast<double>(out) / static_cast<double>(bins.size());
}

double IntensityHistogram::max_standardized_deviation() const
{
    double worst = 0.0;
    for (const Bin& b : bins) {
        worst = std::max(worst, std::abs(density(b) - b.analytic) / std_error(b));
    }
    return worst;
}

IntensityHistogram analytic_histogram(const SignalModel& signal, const HistogramSpec& spec)
{
    validate(signal);
    IntensityHistogram h;
    h.signal = signal;
    h.spec = spec;
    switch (spec.reduction) {
    case Reduction::grid: {
        const zeros::Rect& d = spec.domain;
        if (!(d.x1 > d.x0) || !(d.y1 > d.y0)) {
            throw DomainError("histogram domain must have positive width and height");
        }
        if (!(spec.bin_width > 0.0)) {
            throw DomainError("bin width must be positive");
        }
        h.nx = static_cast<int>(std::ceil(d.width() / spec.bin_width - 1e-9));
        h.ny = static_cast<int>(std::ceil(d.height() / spec.bin_width - 1e-9));
        for (int j = 0; j < h.ny; ++j) {
            for (int i = 0; i < h.nx; ++i) {
                const double x0 = d.x0 + i * spec.bin_width;
                const double y0 = d.y0 + j * spec.bin_width;
                const double x1 = std::min(d.x1, x0 + spec.bin_width);
                const double y1 = std::min(d.y1, y0 + spec.bin_width);
                Bin b;
                b.center = {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
                b.lo = x0;
                b.hi = x1;
                b.area = (x1 - x0) * (y1 - y0);
                b.analytic = cell_average(signal, x0, y0, x1, y1);
                h.bins.push_back(b);
            }
        }
        break;
    }
    case Reduction::radial:
    case Reduction::chirp_distance: {
        check_edges(spec.edges);
        if (spec.reduction == Reduction::chirp_distance && !(spec.s1 > spec.s0)) {
            throw DomainError("distance profiles need s1 > s0");
        }
        h.nx = static_cast<int>(spec.edges.size()) - 1;
        h.ny = 1;
        for (std::size_t i = 0; i + 1 < spec.edges.size(); ++i) {
            Bin b;
            b.lo = spec.edges[i];
            b.hi = spec.edges[i + 1];
            b.center = {0.5 * (b.lo + b.hi), 0.0};
            const double width = b.hi - b.lo;
            b.area = spec.reduction == Reduction::radial ? width : 2.0 * width * (spec.s1 - spec.s0);
            b.analytic = (profile_primitive(signal, spec.reduction, b.hi)
                          - profile_primitive(signal, spec.reduction, b.lo))
                       / width;
            h.bins.push_back(b);
        }
        break;
    }
    }
    return h;
}

IntensityHistogram empirical_intensity(const SignalModel& signal, const HistogramSpec& spec, int n,
                                       std::uint64_t master_seed, const RunOptions& options)
{
    check_n(n);
    IntensityHistogram h = analytic_histogram(signal, spec);
    h.n_realizations = n;
    h.master_seed = master_seed;
    h.search = {search_domain(signal, spec, options.search_resolution), options.search_resolution};
    h.search.validate();
    const noise::GafPlan plan =
        noise::GafPlan::for_radius(h.search.domain.max_modulus() + options.margin, options.tail_tol);
    const ChirpFrame frame = frame_of(signal);

    std::vector<std::vector<int>> hits(static_cast<std::size_t>(n));
    std::vector<char> failed(static_cast<std::size_t>(n), 0);
    run_indexed(static_cast<std::size_t>(n), options.threads, [&](std::size_t i) {
        const noise::NoisyField field(signal, noise::sample_gaf(noise::derive_seed(master_seed, i), plan));
        try {
            const zeros::ZeroSet zs = zeros::find_zeros(zeros::tf_field(field), h.search, options.find);
            for (const zeros::Zero& z : zs.zeros) {
                const int bin = locate(h, frame, z.location);
                for (int m = 0; bin >= 0 && m < z.multiplicity; ++m) {
                    hits[i].push_back(bin);
                }
            }
        } catch (const NumericalError&) {
            failed[i] = 1;
        }
    });
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (failed[i]) {
            h.excluded.seeds.push_back(noise::derive_seed(master_seed, i));
            continue;
        }
        for (int bin : hits[i]) {
            ++h.bins[static_cast<std::size_t>(bin)].count;
        }
    }
    check_exclusions(h.excluded, n, options);
    return h;
}

CountStatistics count_statistics(const SignalModel& signal, const Contour& region, int n,
                                 std::uint64_t master_seed, const RunOptions& options)
{
    check_n(n);
    validate(signal);
    const noise::GafPlan plan =
        noise::GafPlan::for_radius(region.max_modulus() + options.margin, options.tail_tol);
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    std::vector<char> used(static_cast<std::size_t>(n), 1);
    run_indexed(static_cast<std::size_t>(n), options.threads, [&](std::size_t i) {
        const noise::NoisyField field(signal, noise::sample_gaf(noise::derive_seed(master_seed, i), plan));
        try {
            counts[i] = zeros::winding_number(zeros::tf_field(field), region);
        } catch (const NumericalError&) {
            used[i] = 0;
        }
    });
    CountStatistics st;
    st.n_realizations = n;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (used[i]) {
            ++st.histogram[counts[i]];
        } else {
            st.excluded.seeds.push_back(noise::derive_seed(master_seed, i));
        }
    }
    check_exclusions(st.excluded, n, options);
    std::tie(st.mean, st.variance) = mean_and_variance(counts, used);
    // floor of one zero over all realizations: a sample with no spread (all
    // counts equal) still carries that much resolution
    const double m = static_cast<double>(n - static_cast<int>(st.excluded.count()));
    st.std_error = std::max(std::sqrt(st.variance / m), 1.0 / m);
    return st;
}

std::vector<double> contour_sups(const Contour& contour, int n, int discretization,
                                 std::uint64_t master_seed, const RunOptions& options)
{
    check_discretization(contour, discretization);
    return sups_at(contour, n, {discretization}, master_seed, options).front();
}

SupremumEstimate estimate_sup_mean(const Contour& contour, int n, int discretization,
                                   std::uint64_t master_seed, const RunOptions& options)
{
    check_discretization(contour, discretization);
    const auto sups = sups_at(contour, n, {discretization, 2 * discretization}, master_seed, options);
    return summarize(sups[0], sups[1], discretization, master_seed);
}

bool SupTailTable::all_pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const SupTailRow& r) { return r.pass; });
}

SupTailTable sup_tail_check(const Contour& contour, const std::vector<double>& u_offsets, int n,
                            int discretization, std::uint64_t master_seed, const RunOptions& options)
{
    check_discretization(contour, discretization);
    for (double off : u_offsets) {
        if (!(off >= 0.0)) {
            throw DomainError("u must not lie below the sup-mean estimate");
        }
    }
    const auto sups = sups_at(contour, n, {discretization, 2 * discretization}, master_seed, options);
    SupTailTable table;
    table.sup = summarize(sups[0], sups[1], discretization, master_seed);
    for (double off : u_offsets) {
        SupTailRow row;
        row.u = table.sup.mean + off;
        const auto exceed = std::count_if(sups[1].begin(), sups[1].end(), [&](double s) { return s > row.u; });
        row.frequency = static_cast<double>(exceed) / n;
        row.std_error = std::sqrt(row.frequency * (1.0 - row.frequency) / n);
        row.bound = std::exp(-off * off);
        row.pass = row.frequency <= row.bound + 3.0 * row.std_error;
        table.rows.push_back(row);
    }
    return table;
}

WilsonInterval wilson_interval(long long successes, long long n, double z)
{
    if (n <= 0) {
        return {0.0, 1.0};
    }
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double z2n = z * z / static_cast<double>(n);
    const double center = (p + 0.5 * z2n) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n) + 0.25 * z2n / static_cast<double>(n))
                      / (1.0 + z2n);
    // the limits are exactly 0 and 1 at the extremes; avoid rounding just inside
    return {successes == 0 ? 0.0 : std::max(0.0, center - half),
            successes == n ? 1.0 : std::min(1.0, center + half)};
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::not_applicable:
        return "not-applicable";
    }
    return "not-applicable";
}

Contour trapping_region(const SignalModel& signal, int n, int discretization)
{
    if (const auto* h = std::get_if<Hermite>(&signal)) {
        if (h->k < 1) {
            throw DomainError("trapping needs a Hermite index k >= 1");
        }
        return Contour::circle({0.0, 0.0}, std::sqrt(h->k / pi), discretization);
    }
    if (const auto* p = std::get_if<ChirpPair>(&signal)) {
        return Contour::rectangle_cn(*p, n, discretization);
    }
    throw DomainError("trapping regions are defined for Hermite signals and chirp pairs");
}

TrappingReport trapping_experiment(const SignalModel& signal, const Contour& region, int target_count,
                                   int n, std::uint64_t master_seed, double eps,
                                   const SupremumEstimate& sup, const RunOptions& options)
{
    check_n(n);
    validate(signal);
    if (!(eps > 0.0 && eps < 0.25)) {
        throw DomainError("eps must lie in (0, 1/4)");
    }
    TrappingReport rep;
    rep.signal = signal;
    rep.region = region;
    rep.target_count = target_count;
    rep.eps = eps;
    rep.n_realizations = n;
    rep.master_seed = master_seed;
    rep.sup = sup;

    analytic::BoundReport& bound = rep.bound;
    bound.m_c = sup.mean;
    bound.inf_spec_on_contour = nan;
    rep.gamma_threshold = nan;
    const double slack = analytic::default_assumption_slack;

    if (const auto* p = std::get_if<ChirpPair>(&signal)) {
        bound.assumptions = analytic::pair_trapping_assumptions(*p, sup.mean, eps);
        if (p->gamma1 == p->gamma2) {
            const ChirpFrame frame = ChirpFrame::for_pair(*p);
            rep.gamma_threshold =
                analytic::pair_equal_gamma_threshold(p->b, frame.distance(), eps, sup.mean);
        }
        try {
            bound.inf_spec_on_contour = analytic::pair_contour_infimum(*p);
        } catch (const AssumptionError&) {
        }
    } else {
        double inf = std::numeric_limits<double>::infinity();
        for (const cplx& z : region.sample(10000)) {
            inf = std::min(inf, analytic::spectrogram(signal, TFPoint::from(z)));
        }
        bound.inf_spec_on_contour = inf;
        if (const auto* h = std::get_if<Hermite>(&signal)) {
            rep.gamma_threshold = analytic::hermite_gamma_threshold(h->k, eps, sup.mean);
            const double s = h->gamma - rep.gamma_threshold;
            bound.assumptions.push_back(
                {"gamma_threshold", s >= -slack * std::max(1.0, rep.gamma_threshold), s, false});
        }
    }
    const double inf = bound.inf_spec_on_contour;
    const double margin = std::isnan(inf) ? nan : inf - 2.0 * sup.mean * sup.mean;
    bound.assumptions.push_back({"bound_nonvacuous", !std::isnan(margin) && margin > 0.0, margin, false});
    bound.lower_bound = std::isnan(inf) ? 0.0 : analytic::trapping_lower_bound(inf, sup.mean);

    const noise::GafPlan plan =
        noise::GafPlan::for_radius(region.max_modulus() + options.margin, options.tail_tol);
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    std::vector<char> used(static_cast<std::size_t>(n), 1);
    run_indexed(static_cast<std::size_t>(n), options.threads, [&](std::size_t i) {
        const noise::NoisyField field(signal, noise::sample_gaf(noise::derive_seed(master_seed, i), plan));
        try {
            counts[i] = zeros::winding_number(zeros::tf_field(field), region);
        } catch (const NumericalError&) {
            used[i] = 0;
        }
    });
    long long hits = 0, m = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (!used[i]) {
            rep.excluded.seeds.push_back(noise::derive_seed(master_seed, i));
            continue;
        }
        ++m;
        ++rep.count_histogram[counts[i]];
        hits += counts[i] == target_count;
    }
    check_exclusions(rep.excluded, n, options);
    rep.empirical_prob = static_cast<double>(hits) / static_cast<double>(m);
    rep.std_error = std::sqrt(rep.empirical_prob * (1.0 - rep.empirical_prob) / static_cast<double>(m));
    rep.wilson = wilson_interval(hits, m);

    if (!bound.assumptions_ok()) {
        rep.verdict = Verdict::not_applicable;
    } else {
        rep.verdict = rep.empirical_prob >= bound.lower_bound - 3.0 * rep.std_error ? Verdict::pass
                                                                                    : Verdict::fail;
    }
    return rep;
}

} // namespace tfz::experiments
