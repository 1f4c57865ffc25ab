#include "tfz/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tfz/analytic.hpp"
#include "tfz/error.hpp"

namespace tfz::zeros {

namespace {

constexpr double quarter_turn = pi / 4.0;
constexpr int max_refinement = 52;
constexpr int max_split_depth = 64;
// Off-center split points keep symmetric configurations off the child edges.
constexpr double split_x = 0.4873;
constexpr double split_y = 0.5219;

void check_sample(cplx f, double t0, double t1)
{
    if (f == cplx{0.0, 0.0} || !std::isfinite(f.real()) || !std::isfinite(f.imag())) {
        throw ContourError("field vanishes or is not finite on the contour", t0, t1);
    }
}

/// Phase increment of the field along path(t), t in [t0, t1], refined until each
/// sub-step turns by less than a quarter turn.
template <class Path>
double phase_increment(const HolomorphicField& field, const Path& path, double t0, cplx f0,
                       double t1, cplx f1, int depth = 0)
{
    const double tm = 0.5 * (t0 + t1);
    if (!(tm > t0 && tm < t1)) {
        throw ContourError("zero on or too close to the contour", t0, t1);
    }
    const cplx fm = field.value(path(tm));
    check_sample(fm, t0, t1);
    const double d1 = std::arg(fm / f0);
    const double d2 = std::arg(f1 / fm);
    if (std::abs(d1) < quarter_turn && std::abs(d2) < quarter_turn) {
        return d1 + d2;
    }
    if (depth >= max_refinement) {
        throw ContourError("zero on or too close to the contour", t0, t1);
    }
    return phase_increment(field, path, t0, f0, tm, fm, depth + 1)
         + phase_increment(field, path, tm, fm, t1, f1, depth + 1);
}

double segment_increment(const HolomorphicField& field, cplx a, cplx fa, cplx b, cplx fb)
{
    const auto path = [a, b](double t) { return a + t * (b - a); };
    return phase_increment(field, path, 0.0, fa, 1.0, fb);
}

int to_index(double total_phase)
{
    const double turns = total_phase / (2.0 * pi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.05) {
        throw NumericalError("argument principle did not return an integer ("
                             + std::to_string(turns) + ")");
    }
    return static_cast<int>(rounded);
}

int rect_winding(const HolomorphicField& field, const Rect& r)
{
    const std::array<cplx, 4> corner{cplx{r.x0, r.y0}, cplx{r.x1, r.y0}, cplx{r.x1, r.y1},
                                     cplx{r.x0, r.y1}};
    std::array<cplx, 4> value;
    for (std::size_t i = 0; i < 4; ++i) {
        value[i] = field.value(corner[i]);
        check_sample(value[i], 0.0, 0.0);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t j = (i + 1) % 4;
        total += segment_increment(field, corner[i], value[i], corner[j], value[j]);
    }
    return to_index(total);
}

bool newton(const HolomorphicField& field, cplx start, const Rect& box, int multiplicity,
            cplx& root)
{
    const double w = box.width(), h = box.height();
    const Rect trust{box.x0 - w, box.y0 - h, box.x1 + w, box.y1 + h};
    cplx z = start;
    for (int it = 0; it < 80; ++it) {
        const auto [f, df] = field.evaluate_with_derivative(z);
        if (f == cplx{0.0, 0.0}) {
            root = z;
            return true;
        }
        if (df == cplx{0.0, 0.0} || !std::isfinite(std::abs(df))) {
            return false;
        }
        const cplx step = static_cast<double>(multiplicity) * f / df;
        z -= step;
        if (!trust.contains(z)) {
            return false;
        }
        if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(z))) {
            root = z;
            return true;
        }
    }
    return false;
}

void resolve_cell(const HolomorphicField& field, const Rect& cell, int index,
                  const FindOptions& options, std::vector<Zero>& out, int depth)
{
    if (index == 0) {
        return;
    }
    if (index < 0) {
        throw NumericalError("negative winding number for a holomorphic field");
    }
    const cplx center{0.5 * (cell.x0 + cell.x1), 0.5 * (cell.y0 + cell.y1)};
    const double size = std::max(cell.width(), cell.height());

    if (index == 1) {
        cplx root;
        const double slack = 1e-9 * size;
        const Rect closed{cell.x0 - slack, cell.y0 - slack, cell.x1 + slack, cell.y1 + slack};
        if (newton(field, center, cell, 1, root) && closed.contains(root)) {
            out.push_back({root, 1, field.residual(root)});
            return;
        }
    }
    if (size < options.merge_radius || depth >= max_split_depth) {
        cplx root = center;
        cplx polished;
        if (newton(field, center, cell, index, polished) && std::abs(polished - center) <= size) {
            root = polished;
        }
        out.push_back({root, index, field.residual(root)});
        return;
    }

    const double xm = cell.x0 + split_x * cell.width();
    const double ym = cell.y0 + split_y * cell.height();
    const std::array<Rect, 4> children{Rect{cell.x0, cell.y0, xm, ym}, Rect{xm, cell.y0, cell.x1, ym},
                                       Rect{cell.x0, ym, xm, cell.y1}, Rect{xm, ym, cell.x1, cell.y1}};
    std::array<int, 4> counts{};
    int sum = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        counts[i] = rect_winding(field, children[i]);
        sum += counts[i];
    }
    if (sum != index) {
        throw ContourError("cell split lost zeros (" + std::to_string(sum) + " of "
                               + std::to_string(index) + ")",
                           0.0, 0.0);
    }
    for (std::size_t i = 0; i < 4; ++i) {
        resolve_cell(field, children[i], counts[i], options, out, depth + 1);
    }
}

std::vector<double> grid_lines(double lo, double hi, int cells, double offset)
{
    std::vector<double> v(static_cast<std::size_t>(cells) + 1);
    const double h = (hi - lo) / cells;
    v.front() = lo;
    v.back() = hi;
    for (int i = 1; i < cells; ++i) {
        v[static_cast<std::size_t>(i)] = lo + (i + offset) * h;
    }
    return v;
}

// Interior grid offsets (in cells) for the first scan and its retries.
constexpr std::array<std::array<double, 2>, 4> jitter_pattern{{
    {0.0, 0.0},
    {1.0, 0.618},
    {-0.618, -1.0},
    {0.382, -0.854},
}};

ZeroSet scan(const HolomorphicField& field, const GridSpec& grid, const FindOptions& options,
             int attempt)
{
    const Rect& d = grid.domain;
    const int nx = std::max(1, static_cast<int>(std::ceil(d.width() * grid.resolution - 1e-9)));
    const int ny = std::max(1, static_cast<int>(std::ceil(d.height() * grid.resolution - 1e-9)));
    const auto& pattern = jitter_pattern[static_cast<std::size_t>(attempt) % jitter_pattern.size()];
    const std::vector<double> xs = grid_lines(d.x0, d.x1, nx, options.jitter * pattern[0]);
    const std::vector<double> ys = grid_lines(d.y0, d.y1, ny, options.jitter * pattern[1]);

    const auto node = [nx](int i, int j) { return static_cast<std::size_t>(j) * (nx + 1) + i; };
    std::vector<cplx> values((nx + 1) * static_cast<std::size_t>(ny + 1));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const cplx f = field.value({xs[i], ys[j]});
            check_sample(f, 0.0, 0.0);
            values[node(i, j)] = f;
        }
    }
    // horizontal[j][i]: (i, j) -> (i+1, j); vertical[j][i]: (i, j) -> (i, j+1)
    std::vector<double> horizontal(static_cast<std::size_t>(nx) * (ny + 1));
    std::vector<double> vertical((nx + 1) * static_cast<std::size_t>(ny));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            horizontal[static_cast<std::size_t>(j) * nx + i] =
                segment_increment(field, {xs[i], ys[j]}, values[node(i, j)], {xs[i + 1], ys[j]},
                                  values[node(i + 1, j)]);
        }
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            vertical[static_cast<std::size_t>(j) * (nx + 1) + i] =
                segment_increment(field, {xs[i], ys[j]}, values[node(i, j)], {xs[i], ys[j + 1]},
                                  values[node(i, j + 1)]);
        }
    }

    std::vector<Zero> found;
    int expected = 0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double total = horizontal[static_cast<std::size_t>(j) * nx + i]
                               + vertical[static_cast<std::size_t>(j) * (nx + 1) + i + 1]
                               - horizontal[static_cast<std::size_t>(j + 1) * nx + i]
                               - vertical[static_cast<std::size_t>(j) * (nx + 1) + i];
            const int index = to_index(total);
            if (index != 0) {
                expected += index;
                resolve_cell(field, Rect{xs[i], ys[j], xs[i + 1], ys[j + 1]}, index, options, found, 0);
            }
        }
    }

    std::sort(found.begin(), found.end(), [](const Zero& a, const Zero& b) {
        return a.location.real() < b.location.real()
            || (a.location.real() == b.location.real() && a.location.imag() < b.location.imag());
    });
    ZeroSet zs;
    for (const Zero& z : found) {
        auto near = std::find_if(zs.zeros.begin(), zs.zeros.end(), [&](const Zero& kept) {
            return std::abs(kept.location - z.location) < options.merge_radius;
        });
        if (near != zs.zeros.end()) {
            near->multiplicity += z.multiplicity;
        } else {
            zs.zeros.push_back(z);
        }
        zs.total_count += z.multiplicity;
    }
    if (zs.total_count != expected) {
        throw NumericalError("zero count mismatch after refinement");
    }
    return zs;
}

} // namespace

std::pair<cplx, cplx> HolomorphicField::evaluate_with_derivative(cplx z) const
{
    if (value_and_derivative) {
        return value_and_derivative(z);
    }
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    return {value(z), (value(z + h) - value(z - h)) / (2.0 * h)};
}

double HolomorphicField::residual(cplx z) const
{
    const double mag = std::abs(value(z));
    return scale ? mag / scale(z) : mag;
}

HolomorphicField tf_field(const noise::NoisyField& field)
{
    HolomorphicField f;
    f.value = [field](cplx z) { return std::conj(field.value(std::conj(z))); };
    f.value_and_derivative = [field](cplx z) {
        const auto [v, d] = field.value_and_derivative(std::conj(z));
        return std::pair<cplx, cplx>{std::conj(v), std::conj(d)};
    };
    f.scale = [](cplx z) { return std::exp(0.5 * pi * std::norm(z)); };
    return f;
}

HolomorphicField tf_field(const SignalModel& signal)
{
    validate(signal);
    HolomorphicField f;
    f.value = [signal](cplx z) { return std::conj(analytic::bargmann(signal, std::conj(z))); };
    f.value_and_derivative = [signal](cplx z) {
        const cplx w = std::conj(z);
        return std::pair<cplx, cplx>{std::conj(analytic::bargmann(signal, w)),
                                     std::conj(analytic::bargmann_derivative(signal, w))};
    };
    f.scale = [](cplx z) { return std::exp(0.5 * pi * std::norm(z)); };
    return f;
}

double Rect::max_modulus() const noexcept
{
    return std::max({std::abs(cplx{x0, y0}), std::abs(cplx{x1, y0}), std::abs(cplx{x1, y1}),
                     std::abs(cplx{x0, y1})});
}

void GridSpec::validate() const
{
    if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0)) {
        throw DomainError("grid domain must have positive width and height");
    }
    if (!(resolution >= min_resolution)) {
        throw DomainError("grid resolution must be at least 8 points per unit length");
    }
}

int winding_number(const HolomorphicField& field, const Contour& contour)
{
    if (const auto* c = std::get_if<Circle>(&contour.shape()); c && !(c->radius > 0.0)) {
        throw DomainError("winding number needs a circle of positive radius");
    }
    std::vector<double> ts;
    const int base = contour.discretization();
    for (int i = 0; i < base; ++i) {
        ts.push_back(static_cast<double>(i) / base);
    }
    for (double c : contour.corner_parameters()) {
        ts.push_back(c);
    }
    std::sort(ts.begin(), ts.end());
    // corner parameters come from normalized arclength and may sit an ulp away
    // from a uniform sample; such pairs are the same point
    ts.erase(std::unique(ts.begin(), ts.end(), [](double a, double b) { return b - a < 1e-12; }), ts.end());
    if (1.0 - ts.back() < 1e-12) {
        ts.pop_back();
    }
    ts.push_back(1.0);

    const auto path = [&contour](double t) { return contour.point(t); };
    std::vector<cplx> values(ts.size());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        values[i] = field.value(path(ts[i]));
        check_sample(values[i], ts[i], ts[i]);
    }
    values.back() = values.front();

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        total += phase_increment(field, path, ts[i], values[i], ts[i + 1], values[i + 1]);
    }
    return to_index(total);
}

ZeroSet find_zeros(const HolomorphicField& field, const GridSpec& grid, const FindOptions& options)
{
    grid.validate();
    for (int attempt = 0;; ++attempt) {
        try {
            return scan(field, grid, options, attempt);
        } catch (const ContourError&) {
            if (attempt >= options.max_retries) {
                throw;
            }
        }
    }
}

int count_in(const ZeroSet& zs, const Contour& region)
{
    int n = 0;
    for (const Zero& z : zs.zeros) {
        if (region.contains(z.location)) {
            n += z.multiplicity;
        }
    }
    return n;
}

} // namespace tfz::zeros
