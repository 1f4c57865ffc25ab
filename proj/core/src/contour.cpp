#include "tfz/contour.hpp"

#include <algorithm>
#include <cmath>

#include "tfz/error.hpp"

namespace tfz {

namespace {

double signed_area(const std::vector<cplx>& v)
{
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const cplx& p = v[i];
        const cplx& q = v[(i + 1) % v.size()];
        a += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * a;
}

} // namespace

Contour::Contour(std::variant<Circle, Polygon> shape, int discretization)
    : shape_(std::move(shape)), discretization_(discretization)
{
    if (discretization_ < 1) {
        throw DomainError("contour discretization must be positive");
    }
    if (auto* poly = std::get_if<Polygon>(&shape_)) {
        auto& v = poly->vertices;
        if (v.size() < 3) {
            throw DomainError("polygon contour needs at least 3 vertices");
        }
        if (signed_area(v) < 0.0) {
            std::reverse(v.begin() + 1, v.end());
        }
        cumulative_.resize(v.size() + 1);
        cumulative_[0] = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            cumulative_[i + 1] = cumulative_[i] + std::abs(v[(i + 1) % v.size()] - v[i]);
        }
        const double total = cumulative_.back();
        if (!(total > 0.0)) {
            throw DomainError("degenerate polygon contour");
        }
        for (double& c : cumulative_) {
            c /= total;
        }
        cumulative_.back() = 1.0;
    } else {
        const auto& c = std::get<Circle>(shape_);
        if (!(c.radius >= 0.0) || !std::isfinite(c.radius)) {
            throw DomainError("circle radius must be finite and nonnegative");
        }
    }
}

Contour Contour::circle(cplx center, double radius, int discretization)
{
    return Contour(Circle{center, radius}, discretization);
}

Contour Contour::polygon(std::vector<cplx> vertices, int discretization)
{
    return Contour(Polygon{std::move(vertices)}, discretization);
}

Contour Contour::rectangle(double x0, double y0, double x1, double y1, int discretization)
{
    if (!(x1 > x0) || !(y1 > y0)) {
        throw DomainError("rectangle needs x0 < x1 and y0 < y1");
    }
    return polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, discretization);
}

Contour Contour::rectangle_cn(const ChirpPair& pair, int n, int discretization)
{
    const ChirpFrame frame = ChirpFrame::for_pair(pair);
    const double a = frame.distance();
    if (a <= 0.0) {
        throw DomainError("C_N rectangles need a2 > a1");
    }
    const double s0 = n / a;
    const double s1 = (n + 1) / a;
    std::vector<cplx> v;
    for (RSPoint q : {RSPoint{0.0, s0}, RSPoint{a, s0}, RSPoint{a, s1}, RSPoint{0.0, s1}}) {
        v.push_back(frame.to_tf(q).z());
    }
    return polygon(std::move(v), discretization);
}

Contour Contour::chirp_rectangle(const LinearChirp& chirp, double r0, double r1, double s0,
                                 double s1, int discretization)
{
    if (!(r1 > r0) || !(s1 > s0)) {
        throw DomainError("chirp rectangle needs r0 < r1 and s0 < s1");
    }
    const ChirpFrame frame = ChirpFrame::for_chirp(chirp);
    std::vector<cplx> v;
    for (RSPoint q : {RSPoint{r0, s0}, RSPoint{r1, s0}, RSPoint{r1, s1}, RSPoint{r0, s1}}) {
        v.push_back(frame.to_tf(q).z());
    }
    return polygon(std::move(v), discretization);
}

Contour Contour::with_discretization(int count) const
{
    Contour c = *this;
    if (count < 1) {
        throw DomainError("contour discretization must be positive");
    }
    c.discretization_ = count;
    return c;
}

double Contour::length() const
{
    if (const auto* c = std::get_if<Circle>(&shape_)) {
        return 2.0 * pi * c->radius;
    }
    const auto& v = std::get<Polygon>(shape_).vertices;
    double len = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        len += std::abs(v[(i + 1) % v.size()] - v[i]);
    }
    return len;
}

cplx Contour::point(double t) const
{
    if (const auto* c = std::get_if<Circle>(&shape_)) {
        return c->center + std::polar(c->radius, 2.0 * pi * t);
    }
    const auto& v = std::get<Polygon>(shape_).vertices;
    t = std::clamp(t, 0.0, 1.0);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
    i = std::clamp<std::size_t>(i, 1, v.size()) - 1;
    const double span = cumulative_[i + 1] - cumulative_[i];
    const double u = span > 0.0 ? (t - cumulative_[i]) / span : 0.0;
    const cplx& p = v[i];
    const cplx& q = v[(i + 1) % v.size()];
    return p + u * (q - p);
}

std::vector<double> Contour::corner_parameters() const
{
    if (std::holds_alternative<Circle>(shape_)) {
        return {0.0};
    }
    return {cumulative_.begin(), cumulative_.end() - 1};
}

std::vector<cplx> Contour::sample(int count) const
{
    if (count < 1) {
        throw DomainError("sample count must be positive");
    }
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(count) + 8);
    for (int i = 0; i < count; ++i) {
        ts.push_back(static_cast<double>(i) / count);
    }
    for (double c : corner_parameters()) {
        ts.push_back(c);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<cplx> pts;
    pts.reserve(ts.size());
    for (double t : ts) {
        pts.push_back(point(t));
    }
    return pts;
}

bool Contour::contains(cplx z) const
{
    if (const auto* c = std::get_if<Circle>(&shape_)) {
        return std::abs(z - c->center) < c->radius;
    }
    const auto& v = std::get<Polygon>(shape_).vertices;
    bool inside = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const double xi = v[i].real(), yi = v[i].imag();
        const double xj = v[j].real(), yj = v[j].imag();
        if ((yi > z.imag()) != (yj > z.imag())) {
            const double x_cross = xj + (z.imag() - yj) * (xi - xj) / (yi - yj);
            if (z.real() < x_cross) {
                inside = !inside;
            }
        }
    }
    return inside;
}

Contour Contour::conjugate() const
{
    if (const auto* c = std::get_if<Circle>(&shape_)) {
        return circle(std::conj(c->center), c->radius, discretization_);
    }
    std::vector<cplx> v = std::get<Polygon>(shape_).vertices;
    for (cplx& p : v) {
        p = std::conj(p);
    }
    return polygon(std::move(v), discretization_);
}

double Contour::max_modulus() const
{
    if (const auto* c = std::get_if<Circle>(&shape_)) {
        return std::abs(c->center) + c->radius;
    }
    double m = 0.0;
    for (const cplx& p : std::get<Polygon>(shape_).vertices) {
        m = std::max(m, std::abs(p));
    }
    return m;
}

} // namespace tfz
