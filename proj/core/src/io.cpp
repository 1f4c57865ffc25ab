#include "tfz/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "tfz/error.hpp"

namespace tfz::io {

namespace {

json point(cplx z)
{
    return json::array({z.real(), z.imag()});
}

// nlohmann writes NaN as null; keep that explicit for optional numbers.
json number(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json histogram_json(const std::map<int, long long>& h)
{
    json out = json::object();
    for (const auto& [count, freq] : h) {
        out[std::to_string(count)] = freq;
    }
    return out;
}

json exclusions_json(const experiments::Exclusions& ex)
{
    return {{"count", ex.count()}, {"seeds", ex.seeds}};
}

std::string reduction_name(experiments::Reduction r)
{
    switch (r) {
    case experiments::Reduction::grid:
        return "grid";
    case experiments::Reduction::radial:
        return "radial";
    case experiments::Reduction::chirp_distance:
        return "chirp_distance";
    }
    return "grid";
}

void write_row(std::ostream& os, std::initializer_list<std::string> cells)
{
    bool first = true;
    for (const auto& c : cells) {
        if (!first) {
            os << ',';
        }
        os << c;
        first = false;
    }
    os << '\n';
}

} // namespace

std::string version()
{
    return TFZ_VERSION;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

json meta_json(const Meta& meta)
{
    return {{"tool", "tfzeros"},
            {"version", version()},
            {"kind", meta.kind},
            {"config_hash", hex64(meta.config_hash)},
            {"master_seed", meta.master_seed}};
}

std::string csv_comment(const Meta& meta)
{
    return "# tfzeros " + version() + " kind=" + meta.kind + " config_hash=" + hex64(meta.config_hash)
         + " master_seed=" + std::to_string(meta.master_seed) + "\n";
}

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json to_json(const SignalModel& signal)
{
    return std::visit([](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hermite>) {
            return {{"family", "hermite"}, {"k", s.k}, {"gamma", s.gamma}};
        } else if constexpr (std::is_same_v<T, LinearChirp>) {
            return {{"family", "chirp"}, {"a", s.a}, {"b", s.b}, {"gamma", s.gamma}};
        } else {
            return {{"family", "pair"}, {"a1", s.a1}, {"a2", s.a2}, {"b", s.b},
                    {"gamma1", s.gamma1}, {"gamma2", s.gamma2}};
        }
    }, signal);
}

json to_json(const Contour& contour)
{
    json j;
    if (const auto* c = std::get_if<Circle>(&contour.shape())) {
        j = {{"type", "circle"}, {"center", point(c->center)}, {"radius", c->radius}};
    } else {
        json v = json::array();
        for (const cplx& z : std::get<Polygon>(contour.shape()).vertices) {
            v.push_back(point(z));
        }
        j = {{"type", "polygon"}, {"vertices", v}};
    }
    j["discretization"] = contour.discretization();
    return j;
}

json to_json(const zeros::Rect& r)
{
    return json::array({r.x0, r.y0, r.x1, r.y1});
}

json to_json(const noise::GafSample& g)
{
    json re = json::array(), im = json::array();
    for (const cplx& c : g.coeffs) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return {{"seed", g.seed},
            {"max_degree", g.max_degree},
            {"valid_radius", g.valid_radius},
            {"tail_tol", g.tail_tol},
            {"coeffs_re", re},
            {"coeffs_im", im}};
}

noise::GafSample gaf_from_json(const json& j)
{
    try {
        noise::GafSample g;
        g.seed = j.at("seed").get<std::uint64_t>();
        g.max_degree = j.at("max_degree").get<int>();
        g.valid_radius = j.at("valid_radius").get<double>();
        g.tail_tol = j.at("tail_tol").get<double>();
        const auto re = j.at("coeffs_re").get<std::vector<double>>();
        const auto im = j.at("coeffs_im").get<std::vector<double>>();
        if (re.size() != im.size() || re.size() != static_cast<std::size_t>(g.max_degree) + 1) {
            throw DomainError("coefficient arrays do not match max_degree");
        }
        g.coeffs.resize(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) {
            g.coeffs[i] = {re[i], im[i]};
        }
        return g;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed noise record: ") + e.what());
    }
}

json to_json(const zeros::ZeroSet& zs)
{
    json list = json::array();
    for (const auto& z : zs.zeros) {
        list.push_back({{"tau", z.location.real()},
                        {"omega", z.location.imag()},
                        {"multiplicity", z.multiplicity},
                        {"residual", z.residual}});
    }
    return {{"total_count", zs.total_count}, {"zeros", list}};
}

json to_json(const analytic::AssumptionCheck& c)
{
    return {{"name", c.name}, {"holds", c.holds}, {"slack", number(c.slack)}, {"branch", c.branch}};
}

json to_json(const analytic::BoundReport& b)
{
    json checks = json::array();
    for (const auto& c : b.assumptions) {
        checks.push_back(to_json(c));
    }
    return {{"inf_spec_on_contour", number(b.inf_spec_on_contour)},
            {"m_c", b.m_c},
            {"lower_bound", b.lower_bound},
            {"assumptions", checks},
            {"assumptions_ok", b.assumptions_ok()}};
}

json to_json(const experiments::CountStatistics& s)
{
    return {{"n_realizations", s.n_realizations},
            {"mean", number(s.mean)},
            {"variance", number(s.variance)},
            {"std_error", number(s.std_error)},
            {"histogram", histogram_json(s.histogram)},
            {"excluded", exclusions_json(s.excluded)}};
}

json to_json(const experiments::SupremumEstimate& e)
{
    return {{"mean", e.mean},
            {"std_error", e.std_error},
            {"n_realizations", e.n_realizations},
            {"discretization", e.discretization},
            {"coarse_mean", e.coarse_mean},
            {"coarse_std_error", e.coarse_std_error},
            {"coarse_discretization", e.coarse_discretization},
            {"doubling_consistent", e.doubling_consistent},
            {"master_seed", e.master_seed}};
}

json to_json(const experiments::SupTailTable& t)
{
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"u", r.u},
                        {"frequency", r.frequency},
                        {"std_error", r.std_error},
                        {"bound", r.bound},
                        {"pass", r.pass}});
    }
    return {{"sup", to_json(t.sup)}, {"rows", rows}, {"all_pass", t.all_pass()}};
}

json to_json(const experiments::TrappingReport& r)
{
    return {{"signal", to_json(r.signal)},
            {"region", to_json(r.region)},
            {"target_count", r.target_count},
            {"eps", r.eps},
            {"n_realizations", r.n_realizations},
            {"master_seed", r.master_seed},
            {"empirical_prob", r.empirical_prob},
            {"std_error", r.std_error},
            {"wilson_95", json::array({r.wilson.lo, r.wilson.hi})},
            {"count_histogram", histogram_json(r.count_histogram)},
            {"bound", to_json(r.bound)},
            {"sup_estimate", to_json(r.sup)},
            {"gamma_threshold", number(r.gamma_threshold)},
            {"excluded", exclusions_json(r.excluded)},
            {"verdict", experiments::to_string(r.verdict)}};
}

json to_json(const validation::CheckResult& c)
{
    return {{"name", c.name},
            {"family", c.family},
            {"instance", c.instance},
            {"value", number(c.value)},
            {"tolerance", c.tolerance},
            {"passed", c.passed},
            {"detail", c.detail}};
}

json histogram_summary(const experiments::IntensityHistogram& h)
{
    json j = {{"signal", to_json(h.signal)},
              {"reduction", reduction_name(h.spec.reduction)},
              {"bins", h.bins.size()},
              {"n_realizations", h.n_realizations},
              {"master_seed", h.master_seed},
              {"excluded", exclusions_json(h.excluded)}};
    if (h.spec.reduction == experiments::Reduction::grid) {
        j["domain"] = to_json(h.spec.domain);
        j["bin_width"] = h.spec.bin_width;
    } else {
        j["edges"] = h.spec.edges;
        if (h.spec.reduction == experiments::Reduction::chirp_distance) {
            j["s_range"] = json::array({h.spec.s0, h.spec.s1});
        }
    }
    if (h.n_realizations > 0) {
        j["search_domain"] = to_json(h.search.domain);
        j["search_resolution"] = h.search.resolution;
        j["max_abs_deviation_over_se"] = h.max_standardized_deviation();
        j["fraction_outside_3se"] = h.fraction_outside(3.0);
    }
    return j;
}

json document(const Meta& meta, const std::string& key, json payload)
{
    return {{"meta", meta_json(meta)}, {"schema_version", schema_version}, {key, std::move(payload)}};
}

void write_zeros_csv(std::ostream& os, const zeros::ZeroSet& zs, const Meta& meta)
{
    os << csv_comment(meta);
    os << "tau,omega,multiplicity,residual\n";
    for (const auto& z : zs.zeros) {
        write_row(os, {format_double(z.location.real()), format_double(z.location.imag()),
                       std::to_string(z.multiplicity), format_double(z.residual)});
    }
}

void write_histogram_csv(std::ostream& os, const experiments::IntensityHistogram& h, const Meta& meta)
{
    const bool grid = h.spec.reduction == experiments::Reduction::grid;
    os << csv_comment(meta);
    os << (grid ? "bin_center_tau,bin_center_omega" : "bin_lo,bin_hi")
       << ",count,density_estimate,se,analytic_density\n";
    for (const auto& b : h.bins) {
        write_row(os, {format_double(grid ? b.center.tau : b.lo), format_double(grid ? b.center.omega : b.hi),
                       std::to_string(b.count), format_double(h.density(b)), format_double(h.std_error(b)),
                       format_double(b.analytic)});
    }
}

void write_analytic_csv(std::ostream& os, const experiments::IntensityHistogram& h, const Meta& meta)
{
    const bool grid = h.spec.reduction == experiments::Reduction::grid;
    os << csv_comment(meta);
    os << (grid ? "bin_center_tau,bin_center_omega" : "bin_lo,bin_hi") << ",analytic_density\n";
    for (const auto& b : h.bins) {
        write_row(os, {format_double(grid ? b.center.tau : b.lo), format_double(grid ? b.center.omega : b.hi),
                       format_double(b.analytic)});
    }
}

void write_spectrogram_csv(std::ostream& os, const std::vector<SpectrogramSample>& grid, const Meta& meta)
{
    os << csv_comment(meta);
    os << "tau,omega,spectrogram\n";
    for (const auto& s : grid) {
        write_row(os, {format_double(s.tau), format_double(s.omega), format_double(s.value)});
    }
}

} // namespace tfz::io
