#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tfz/analytic.hpp"
#include "tfz/error.hpp"
#include "tfz/experiments.hpp"
#include "tfz/io.hpp"
#include "tfz/noise.hpp"
#include "tfz/validate.hpp"
#include "tfz/zeros.hpp"

namespace tfz::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

struct Config {
    std::string command;
    std::string signal = "hermite";
    int k = 1;
    double a = 0.0;
    double b = 0.0;
    double gamma = 0.0;
    double a1 = 0.0;
    double a2 = 1.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    std::string domain = "-3,-3,3,3";
    double res = 0.0;
    int n = 1000;
    std::uint64_t seed = 1;
    double eps = 0.05;
    std::string out = "tfz_out";
    int threads = 0;

    std::string profile = "grid";
    double bin = 0.25;
    std::string edges;
    std::string s_range = "-0.5,0.5";
    double radius = 0.0;
    int cell = 0;
    double strip = 0.0;
    int target = -1;
    int m_samples = 100000;
    int disc = 0;
    std::string u_offsets = "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2,2.25";
    bool noiseless = false;
    double spec_step = 0.05;
    double tol = 0.0;
    std::string family;

    // Which optional settings were given (command line or config file).
    bool has_gamma = false;
    bool has_gamma12 = false;
    bool has_res = false;
    bool has_radius = false;
    bool has_cell = false;
    bool has_strip = false;
    bool has_edges = false;
    bool has_target = false;
    bool has_disc = false;
    bool has_tol = false;
    bool has_family = false;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const std::string& what)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw UsageError("cannot parse " + what + " value '" + item + "'");
        }
    }
    return v;
}

zeros::Rect parse_domain(const std::string& text)
{
    const auto v = parse_list(text, "--domain");
    if (v.size() != 4) {
        throw UsageError("--domain takes x0,y0,x1,y1");
    }
    const zeros::Rect r{v[0], v[1], v[2], v[3]};
    if (!(r.x1 > r.x0 && r.y1 > r.y0)) {
        throw UsageError("--domain needs x0 < x1 and y0 < y1");
    }
    return r;
}

/// "lo:hi:step" or an explicit comma-separated list.
std::vector<double> parse_edges(const std::string& text)
{
    if (text.find(':') != std::string::npos) {
        std::string t = text;
        std::replace(t.begin(), t.end(), ':', ',');
        const auto v = parse_list(t, "--edges");
        if (v.size() != 3 || !(v[2] > 0.0) || !(v[1] > v[0])) {
            throw UsageError("--edges takes lo:hi:step with lo < hi and step > 0");
        }
        const int count = static_cast<int>(std::llround((v[1] - v[0]) / v[2]));
        std::vector<double> e;
        for (int i = 0; i <= count; ++i) {
            e.push_back(v[0] + i * v[2]);
        }
        e.back() = v[1];
        return e;
    }
    return parse_list(text, "--edges");
}

SignalModel build_signal(const Config& c)
{
    if (c.signal == "hermite") {
        return make_hermite(c.k, c.gamma);
    }
    if (c.signal == "chirp") {
        return make_linear_chirp(c.a, c.b, c.gamma);
    }
    if (c.signal == "pair") {
        return make_chirp_pair(c.a1, c.a2, c.b, c.gamma1, c.gamma2);
    }
    if (c.signal == "noise") {
        return make_hermite(0, 0.0);
    }
    throw UsageError("--signal must be hermite, chirp, pair or noise");
}

json signal_config(const Config& c)
{
    json j = {{"signal", c.signal}};
    if (c.signal == "hermite") {
        j["k"] = c.k;
        j["gamma"] = c.gamma;
    } else if (c.signal == "chirp") {
        j["a"] = c.a;
        j["b"] = c.b;
        j["gamma"] = c.gamma;
    } else if (c.signal == "pair") {
        j["a1"] = c.a1;
        j["a2"] = c.a2;
        j["b"] = c.b;
        j["gamma1"] = c.gamma1;
        j["gamma2"] = c.gamma2;
    }
    return j;
}

/// Settings that determine the results. Thread count and output location are
/// left out so they do not change any output byte.
json resolved_config(const Config& c)
{
    json j = signal_config(c);
    j["command"] = c.command;
    j["seed"] = c.seed;
    const std::string& cmd = c.command;
    if (cmd == "intensity" || cmd == "zeros" || cmd == "counts") {
        j["domain"] = c.domain;
    }
    if (cmd != "validate" && cmd != "sup") {
        j["res"] = c.res;
    }
    if (cmd != "zeros" && cmd != "validate") {
        j["n"] = c.n;
    }
    if (cmd == "intensity") {
        j["profile"] = c.profile;
        if (c.profile == "grid") {
            j["bin"] = c.bin;
        } else {
            j["edges"] = c.edges;
        }
        if (c.profile == "distance") {
            j["s-range"] = c.s_range;
        }
    }
    if (cmd == "zeros") {
        j["noiseless"] = c.noiseless;
        j["spec-step"] = c.spec_step;
    }
    if (cmd == "counts" || cmd == "trap" || cmd == "sup") {
        if (c.has_radius) {
            j["radius"] = c.radius;
        }
        if (c.has_cell || cmd == "trap") {
            j["cell"] = c.cell;
        }
        if (c.has_strip) {
            j["strip"] = c.strip;
        }
    }
    if (cmd == "trap") {
        j["eps"] = c.eps;
        j["m-samples"] = c.m_samples;
        // automatic settings stay out of the echo, so a re-run resolves them the same way
        j["target"] = c.has_target ? c.target : (c.signal == "hermite" ? c.k : 1);
        const bool gamma_auto = c.signal == "pair" ? !c.has_gamma12 : !c.has_gamma;
        j["gamma_auto"] = gamma_auto;
        if (gamma_auto) {
            j.erase("gamma");
            j.erase("gamma1");
            j.erase("gamma2");
        }
    }
    if ((cmd == "trap" || cmd == "sup") && c.disc > 0) {
        j["disc"] = c.disc;
    }
    if (cmd == "sup") {
        j["u-offsets"] = c.u_offsets;
    }
    if (cmd == "validate") {
        if (c.has_tol) {
            j["tol"] = c.tol;
        }
        if (c.has_family) {
            j["family"] = c.family;
        }
    }
    return j;
}

/// key=value lines readable back through --config.
std::string config_text(const json& resolved)
{
    std::string s;
    for (const auto& [key, value] : resolved.items()) {
        if (key == "command" || key == "gamma_auto") {
            continue;
        }
        s += key + "=";
        if (value.is_string()) {
            s += "\"" + value.get<std::string>() + "\"";
        } else if (value.is_number_float()) {
            s += io::format_double(value.get<double>());
        } else {
            s += value.dump();
        }
        s += "\n";
    }
    return s;
}

struct Outputs {
    std::map<std::string, std::string> files;

    void add_json(const std::string& name, const json& j) { files[name] = j.dump(2) + "\n"; }
};

void write_outputs(const Outputs& o, const fs::path& dir)
{
    std::vector<fs::path> written;
    try {
        fs::create_directories(dir);
        for (const auto& [name, content] : o.files) {
            const fs::path p = dir / name;
            std::ofstream f(p, std::ios::binary | std::ios::trunc);
            written.push_back(p);
            f << content;
            if (!f) {
                throw std::runtime_error("cannot write " + p.string());
            }
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) {
            fs::remove(p, ec);
        }
        throw;
    }
}

experiments::RunOptions run_options(const Config& c)
{
    experiments::RunOptions o;
    o.threads = c.threads;
    o.search_resolution = c.res;
    return o;
}

int cmd_intensity(const Config& c, const SignalModel& signal, const io::Meta& meta, Outputs& out,
                  std::ostream& log)
{
    experiments::HistogramSpec spec;
    if (c.profile == "grid") {
        spec.reduction = experiments::Reduction::grid;
        spec.domain = parse_domain(c.domain);
        spec.bin_width = c.bin;
    } else if (c.profile == "radial" || c.profile == "distance") {
        spec.reduction = c.profile == "radial" ? experiments::Reduction::radial
                                               : experiments::Reduction::chirp_distance;
        spec.edges = parse_edges(c.edges);
        const auto s = parse_list(c.s_range, "--s-range");
        if (s.size() != 2) {
            throw UsageError("--s-range takes s0,s1");
        }
        spec.s0 = s[0];
        spec.s1 = s[1];
    } else {
        throw UsageError("--profile must be grid, radial or distance");
    }
    if (c.n < 0) {
        throw UsageError("--n must be nonnegative");
    }

    if (c.n == 0) {
        const auto h = experiments::analytic_histogram(signal, spec);
        std::ostringstream csv;
        io::write_analytic_csv(csv, h, meta);
        out.files["analytic.csv"] = csv.str();
        out.add_json("summary.json", io::document(meta, "intensity", io::histogram_summary(h)));
        log << "analytic grid: " << h.bins.size() << " bins\n";
        return ok;
    }
    const auto h = experiments::empirical_intensity(signal, spec, c.n, c.seed, run_options(c));
    std::ostringstream analytic_csv, hist_csv;
    io::write_analytic_csv(analytic_csv, h, meta);
    io::write_histogram_csv(hist_csv, h, meta);
    out.files["analytic.csv"] = analytic_csv.str();
    out.files["histogram.csv"] = hist_csv.str();
    out.add_json("summary.json", io::document(meta, "intensity", io::histogram_summary(h)));
    log << h.bins.size() << " bins, " << h.used_realizations() << " realizations, max |emp-analytic|/SE = "
        << h.max_standardized_deviation() << ", outside 3 SE: " << 100.0 * h.fraction_outside(3.0) << "%\n";
    return ok;
}

int cmd_zeros(const Config& c, const SignalModel& signal, const io::Meta& meta, Outputs& out,
              std::ostream& log)
{
    const zeros::GridSpec grid{parse_domain(c.domain), c.res};
    grid.validate();
    if (!(c.spec_step > 0.0)) {
        throw UsageError("--spec-step must be positive");
    }
    std::optional<noise::NoisyField> noisy;
    zeros::HolomorphicField field;
    if (c.noiseless) {
        if (is_zero_signal(signal)) {
            throw UsageError("a zero signal has no isolated zeros; drop --noiseless");
        }
        field = zeros::tf_field(signal);
    } else {
        const auto plan = noise::GafPlan::for_radius(grid.domain.max_modulus() + noise::default_margin);
        noisy.emplace(signal, noise::sample_gaf(noise::derive_seed(c.seed, 0), plan));
        field = zeros::tf_field(*noisy);
    }
    const auto zs = zeros::find_zeros(field, grid);

    std::ostringstream zcsv, scsv;
    io::write_zeros_csv(zcsv, zs, meta);
    out.files["zeros.csv"] = zcsv.str();
    out.add_json("zeros.json", io::document(meta, "zeros", io::to_json(zs)));
    if (noisy) {
        out.add_json("noise.json", io::document(meta, "noise", io::to_json(noisy->noise())));
    }
    std::vector<io::SpectrogramSample> samples;
    const int nx = static_cast<int>(std::floor(grid.domain.width() / c.spec_step + 1e-9));
    const int ny = static_cast<int>(std::floor(grid.domain.height() / c.spec_step + 1e-9));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const TFPoint p{grid.domain.x0 + i * c.spec_step, grid.domain.y0 + j * c.spec_step};
            const double v = noisy ? noise::noisy_spectrogram(*noisy, p) : analytic::spectrogram(signal, p);
            samples.push_back({p.tau, p.omega, v});
        }
    }
    io::write_spectrogram_csv(scsv, samples, meta);
    out.files["spectrogram.csv"] = scsv.str();
    log << zs.total_count << " zeros (" << zs.zeros.size() << " distinct) in the domain\n";
    return ok;
}

Contour count_region(const Config& c, const SignalModel& signal, int disc)
{
    const int given = int{c.has_radius} + int{c.has_cell} + int{c.has_strip};
    if (given > 1) {
        throw UsageError("give at most one of --radius, --cell, --strip");
    }
    if (c.has_radius) {
        if (!(c.radius > 0.0)) {
            throw UsageError("--radius must be positive");
        }
        return Contour::circle({0.0, 0.0}, c.radius, disc);
    }
    if (c.has_cell) {
        const auto* p = std::get_if<ChirpPair>(&signal);
        if (!p) {
            throw UsageError("--cell needs --signal pair");
        }
        return Contour::rectangle_cn(*p, c.cell, disc);
    }
    if (c.has_strip) {
        const auto* ch = std::get_if<LinearChirp>(&signal);
        if (!ch || !(c.strip > 0.0)) {
            throw UsageError("--strip needs --signal chirp and a positive width");
        }
        return Contour::chirp_rectangle(*ch, 0.0, c.strip, -0.5, 0.5, disc);
    }
    const auto d = parse_domain(c.domain);
    return Contour::rectangle(d.x0, d.y0, d.x1, d.y1, disc);
}

int cmd_counts(const Config& c, const SignalModel& signal, const io::Meta& meta, Outputs& out,
               std::ostream& log)
{
    if (c.n < 1) {
        throw UsageError("--n must be at least 1");
    }
    const Contour region = count_region(c, signal, 256);
    const auto st = experiments::count_statistics(signal, region, c.n, c.seed, run_options(c));
    json j = io::to_json(st);
    j["region"] = io::to_json(region);
    j["signal"] = io::to_json(signal);
    std::optional<double> expected;
    if (is_zero_signal(signal)) {
        const double r = c.has_radius ? c.radius : 0.0;
        if (c.has_radius) {
            expected = pi * r * r;
        } else if (c.has_strip) {
            expected = c.strip;
        } else if (!c.has_cell) {
            expected = parse_domain(c.domain).area();
        }
    } else if (const auto* h = std::get_if<Hermite>(&signal); h && c.has_radius) {
        expected = analytic::expected_count_ball(h->k, h->gamma, c.radius);
    } else if (const auto* ch = std::get_if<LinearChirp>(&signal); ch && c.has_strip) {
        expected = analytic::expected_count_chirp_strip(c.strip, ch->b, ch->gamma);
    }
    if (expected) {
        j["expected"] = *expected;
        j["within_3se"] = std::abs(st.mean - *expected) <= 3.0 * st.std_error;
    }
    out.add_json("counts.json", io::document(meta, "counts", j));
    log << "mean count " << st.mean << " +- " << st.std_error;
    if (expected) {
        log << " (closed form " << *expected << ")";
    }
    log << "\n";
    return ok;
}

int default_disc(const Config& c, const Contour& contour)
{
    if (c.has_disc) {
        return c.disc;
    }
    const int needed = static_cast<int>(std::ceil(experiments::min_sup_points_per_length * contour.length()));
    return std::max(256, needed);
}

int cmd_trap(Config c, SignalModel signal, const io::Meta& meta, Outputs& out, std::ostream& log)
{
    if (!(c.eps > 0.0 && c.eps < 0.25)) {
        throw UsageError("--eps must lie in (0, 1/4)");
    }
    if (c.n < 1 || c.m_samples < 1) {
        throw UsageError("--n and --m-samples must be at least 1");
    }
    // The region (and so the sup estimate) does not depend on the SNR.
    Contour region = experiments::trapping_region(signal, c.cell);
    const int disc = default_disc(c, region);
    region = region.with_discretization(disc);
    const auto sup =
        experiments::estimate_sup_mean(region, c.m_samples, disc, c.seed + 1, run_options(c));

    if (auto* h = std::get_if<Hermite>(&signal); h && !c.has_gamma) {
        h->gamma = analytic::hermite_gamma_threshold(h->k, c.eps, sup.mean);
    }
    if (auto* p = std::get_if<ChirpPair>(&signal); p && !c.has_gamma12) {
        const ChirpFrame frame = ChirpFrame::for_pair(*p);
        p->gamma1 = p->gamma2 = analytic::pair_equal_gamma_threshold(p->b, frame.distance(), c.eps, sup.mean);
    }
    int target = c.target;
    if (!c.has_target) {
        target = std::holds_alternative<Hermite>(signal) ? std::get<Hermite>(signal).k : 1;
    }
    const auto rep = experiments::trapping_experiment(signal, region, target, c.n, c.seed, c.eps, sup,
                                                      run_options(c));
    out.add_json("trap.json", io::document(meta, "trapping", io::to_json(rep)));
    log << "P(N = " << target << ") = " << rep.empirical_prob << " +- " << rep.std_error
        << ", lower bound " << rep.bound.lower_bound << ", M_hat " << sup.mean << ", verdict "
        << experiments::to_string(rep.verdict) << "\n";
    switch (rep.verdict) {
    case experiments::Verdict::pass:
        return ok;
    case experiments::Verdict::fail:
        return numerical_failure;
    case experiments::Verdict::not_applicable:
        return assumption_not_met;
    }
    return ok;
}

int cmd_sup(const Config& c, const SignalModel& signal, const io::Meta& meta, Outputs& out,
            std::ostream& log)
{
    if (c.n < 1) {
        throw UsageError("--n must be at least 1");
    }
    Contour contour = Contour::circle({0.0, 0.0}, std::sqrt(1.0 / pi));
    if (c.has_radius || c.has_cell || c.has_strip) {
        contour = count_region(c, signal, 256);
    }
    const int disc = default_disc(c, contour);
    contour = contour.with_discretization(disc);
    const auto offsets = parse_list(c.u_offsets, "--u-offsets");
    const auto table = experiments::sup_tail_check(contour, offsets, c.n, disc, c.seed, run_options(c));
    json j = io::to_json(table);
    j["contour"] = io::to_json(contour);
    out.add_json("sup.json", io::document(meta, "sup", j));
    log << "M_hat = " << table.sup.mean << " +- " << table.sup.std_error << " (coarse "
        << table.sup.coarse_mean << "), tail bound " << (table.all_pass() ? "holds" : "violated") << "\n";
    return table.all_pass() ? ok : numerical_failure;
}

int cmd_validate(const Config& c, const io::Meta& meta, Outputs& out, std::ostream& log)
{
    validation::Options o;
    if (c.has_family) {
        o.family = c.family;
    }
    if (c.has_tol) {
        o.tolerance = c.tol;
    }
    const auto results = validation::run(o);
    json all = json::array(), failures = json::array();
    for (const auto& r : results) {
        all.push_back(io::to_json(r));
        if (!r.passed) {
            failures.push_back(io::to_json(r));
        }
        log << (r.passed ? "PASS " : "FAIL ") << r.family << " [" << r.instance << "] " << r.name << " "
            << io::format_double(r.value) << " (tol " << io::format_double(r.tolerance) << ")\n";
    }
    out.add_json("validate.json", io::document(meta, "validation", {{"checks", all}, {"failures", failures}}));
    if (!failures.empty()) {
        log << failures.dump() << "\n";
    }
    return failures.empty() ? ok : numerical_failure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config c;
    CLI::App app{"Zeros of spectrograms of noisy signals: closed forms and Monte Carlo checks", "tfzeros"};
    app.set_config("--config", "", "Read options from a key=value file; flags take precedence");
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(TFZ_VERSION));

    app.add_option("--signal", c.signal, "hermite, chirp, pair or noise")->capture_default_str();
    app.add_option("--k", c.k, "Hermite index")->capture_default_str();
    app.add_option("--a", c.a, "Chirp frequency offset")->capture_default_str();
    app.add_option("--b", c.b, "Chirp slope (single chirp or pair)")->capture_default_str();
    auto* gamma = app.add_option("--gamma", c.gamma, "SNR of a Hermite signal or single chirp");
    app.add_option("--a1", c.a1, "Offset of the first chirp of a pair")->capture_default_str();
    app.add_option("--a2", c.a2, "Offset of the second chirp of a pair")->capture_default_str();
    auto* gamma1 = app.add_option("--gamma1", c.gamma1, "SNR of the first chirp");
    auto* gamma2 = app.add_option("--gamma2", c.gamma2, "SNR of the second chirp");
    app.add_option("--domain", c.domain, "Rectangle x0,y0,x1,y1 of the time-frequency plane")
        ->capture_default_str();
    auto* res = app.add_option("--res", c.res, "Zero-search grid lines per unit length (>= 8)");
    app.add_option("--n", c.n, "Number of noise realizations")->capture_default_str();
    app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
    app.add_option("--eps", c.eps, "Trapping failure probability, in (0, 1/4)")->capture_default_str();
    app.add_option("--out", c.out, "Output directory")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads (0: all cores); results do not depend on it")
        ->capture_default_str();

    app.add_option("--profile", c.profile, "intensity: grid, radial or distance")->capture_default_str();
    app.add_option("--bin", c.bin, "intensity: bin side of the grid profile")->capture_default_str();
    auto* edges = app.add_option("--edges", c.edges, "intensity: profile edges lo:hi:step or a list");
    app.add_option("--s-range", c.s_range, "intensity: s0,s1 window of the distance profile")
        ->capture_default_str();
    auto* radius = app.add_option("--radius", c.radius, "Region: disk of this radius around 0");
    auto* cell = app.add_option("--cell", c.cell, "Region: rectangle C_N of a chirp pair");
    auto* strip = app.add_option("--strip", c.strip, "Region: unit-length strip of this width along a chirp");
    auto* target = app.add_option("--target", c.target, "trap: zero count to trap (default k, or 1)");
    app.add_option("--m-samples", c.m_samples, "trap: realizations for the sup-mean estimate")
        ->capture_default_str();
    auto* disc = app.add_option("--disc", c.disc, "Contour points of sup estimates");
    app.add_option("--u-offsets", c.u_offsets, "sup: offsets of u above the sup-mean estimate")
        ->capture_default_str();
    app.add_flag("--noiseless", c.noiseless, "zeros: search the noiseless spectrogram");
    app.add_option("--spec-step", c.spec_step, "zeros: step of the spectrogram grid")->capture_default_str();
    auto* tol = app.add_option("--tol", c.tol, "validate: replace every tolerance");
    auto* family = app.add_option("--family", c.family, "validate: only this family");

    app.add_subcommand("intensity", "Zero intensity: closed form and Monte Carlo histogram");
    app.add_subcommand("zeros", "Zeros of one noisy (or noiseless) spectrogram");
    app.add_subcommand("counts", "Zero-count statistics in a region");
    app.add_subcommand("trap", "Trapping frequency against the analytic lower bound");
    app.add_subcommand("sup", "Sup-mean estimate and Gaussian tail check on a contour");
    app.add_subcommand("validate", "Cross-route consistency checks of the closed forms");

    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.has_gamma = gamma->count() > 0;
    c.has_gamma12 = gamma1->count() > 0 || gamma2->count() > 0;
    c.has_res = res->count() > 0;
    c.has_radius = radius->count() > 0;
    c.has_cell = cell->count() > 0;
    c.has_strip = strip->count() > 0;
    c.has_edges = edges->count() > 0;
    c.has_target = target->count() > 0;
    c.has_disc = disc->count() > 0;
    c.has_tol = tol->count() > 0;
    c.has_family = family->count() > 0;
    if (!c.has_res) {
        c.res = c.command == "zeros" ? 32.0 : zeros::min_resolution;
    }
    if (!c.has_edges) {
        c.edges = c.profile == "radial" ? "0:6:0.1" : "0:2:0.1";
    }

    try {
        const SignalModel signal = build_signal(c);
        const json resolved = resolved_config(c);
        io::Meta meta;
        meta.kind = c.command;
        meta.config_hash = io::fnv1a64(resolved.dump());
        meta.master_seed = c.seed;

        Outputs outputs;
        outputs.files["config.ini"] = config_text(resolved);
        int code = ok;
        if (c.command == "intensity") {
            code = cmd_intensity(c, signal, meta, outputs, out);
        } else if (c.command == "zeros") {
            code = cmd_zeros(c, signal, meta, outputs, out);
        } else if (c.command == "counts") {
            code = cmd_counts(c, signal, meta, outputs, out);
        } else if (c.command == "trap") {
            code = cmd_trap(c, signal, meta, outputs, out);
        } else if (c.command == "sup") {
            code = cmd_sup(c, signal, meta, outputs, out);
        } else {
            code = cmd_validate(c, meta, outputs, out);
        }
        write_outputs(outputs, c.out);
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const DomainError& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return usage_error;
    } catch (const AssumptionError& e) {
        err << "assumption not met: " << e.what() << "\n";
        return assumption_not_met;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    }
}

} // namespace tfz::cli
