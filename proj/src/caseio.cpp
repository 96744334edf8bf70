#include "kinfree/caseio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kinfree {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("bad numeric value for '" + key + "': " + v);
    }
}

int to_int(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("bad integer value for '" + key + "': " + v);
    }
}

std::string fmt(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

SolverVariant parse_variant(const std::string& name)
{
    if (name == "explicit") return SolverVariant::Explicit;
    if (name == "anandh") return SolverVariant::Anandh;
    if (name == "anandh_ad") return SolverVariant::AnandhAD;
    if (name == "manish") return SolverVariant::Manish;
    if (name == "manish_ad") return SolverVariant::ManishAD;
    throw config_error("unknown variant '" + name + "'");
}

PointCloud CloudSource::make() const
{
    if (!generate.empty()) {
        std::string spec = generate;
        std::replace(spec.begin(), spec.end(), ':', ' ');
        std::istringstream ss(spec);
        std::string shape;
        int nw = 0, nr = 0;
        double rf = 0.0;
        if (!(ss >> shape >> nw >> nr >> rf) ||
            shape.rfind("naca", 0) != 0 || shape.size() != 8)
            throw config_error("bad generator spec '" + generate +
                               "' (expected nacaDDDD:n_wall:n_radial:radius)");
        return generate_naca_ogrid(shape.substr(4), nw, nr, rf);
    }
    return load_cloud(file);
}

void apply_case_key(CaseFile& c, const std::string& key, const std::string& value)
{
    if (key == "cloud") {
        std::istringstream ss(value);
        std::string kind, rest;
        ss >> kind;
        std::getline(ss, rest);
        rest = trim(rest);
        if (kind == "generate" && !rest.empty())
            c.cloud.generate = rest;
        else if (kind == "file" && !rest.empty())
            c.cloud.file = rest;
        else
            throw config_error("bad cloud source '" + value +
                               "' (expected 'generate SPEC' or 'file PATH')");
    } else if (key == "variant") {
        c.solver.variant = parse_variant(value);
    } else if (key == "mach") {
        c.solver.mach_inf = to_double(key, value);
    } else if (key == "aoa") {
        c.solver.aoa_deg = to_double(key, value);
    } else if (key == "cfl") {
        c.solver.cfl = to_double(key, value);
    } else if (key == "iterations") {
        c.solver.n_iterations = to_int(key, value);
    } else if (key == "inner_iterations") {
        c.solver.n_inner = to_int(key, value);
    } else if (key == "convergence_decades") {
        c.solver.convergence_decades = to_double(key, value);
    } else if (key == "cfl_ramp_iters") {
        c.solver.cfl_ramp_iters = to_int(key, value);
    } else if (key == "cfl_start") {
        c.solver.cfl_start = to_double(key, value);
    } else if (key == "bc_mode") {
        if (value == "physical")
            c.solver.bc_mode = BcMode::Physical;
        else if (value == "freestream")
            c.solver.bc_mode = BcMode::FreestreamAll;
        else
            throw config_error("bad bc_mode '" + value + "'");
    } else if (key == "out") {
        c.out_dir = value;
    } else {
        throw config_error("unknown case key '" + key + "'");
    }
}

void validate_case(const CaseFile& c)
{
    const int sources = (!c.cloud.generate.empty()) + (!c.cloud.file.empty());
    if (sources != 1)
        throw config_error("exactly one cloud source required (have " +
                           std::to_string(sources) + ")");
    if (!(c.solver.cfl > 0.0)) throw config_error("cfl must be positive");
    if (!(c.solver.mach_inf > 0.0)) throw config_error("mach must be positive");
    if (c.solver.n_iterations < 1) throw config_error("iterations must be >= 1");
    if (c.solver.n_inner < 1) throw config_error("inner_iterations must be >= 1");
}

CaseFile parse_case_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open case file: " + path);
    CaseFile c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
        try {
            apply_case_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const config_error& e) {
            throw config_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return c;
}

namespace {

void write_residual_history(const fs::path& dir, const RunHistory& h)
{
    std::ofstream out(dir / "residual_history.csv");
    out << "iter,residual,cl,cd\n";
    for (std::size_t k = 0; k < h.iters.size(); ++k)
        out << (k + 1) << "," << fmt(h.iters[k].residual) << ","
            << fmt(h.iters[k].cl) << "," << fmt(h.iters[k].cd) << "\n";
}

void write_surface_cp(const fs::path& dir, const PointCloud& cloud,
                      const std::vector<Vec4>& state, const Freestream& fsr)
{
    std::ofstream out(dir / "surface_cp.csv");
    out << "arc_position,x,cp\n";
    const std::vector<double> cp = surface_cp(cloud, state, fsr);
    double arc = 0.0;
    for (std::size_t k = 0; k < cloud.wall_ids.size(); ++k) {
        const int p = cloud.wall_ids[k];
        if (k > 0) {
            const int prev = cloud.wall_ids[k - 1];
            arc += std::hypot(cloud.x[p] - cloud.x[prev], cloud.y[p] - cloud.y[prev]);
        }
        out << fmt(arc) << "," << fmt(cloud.x[p]) << "," << fmt(cp[k]) << "\n";
    }
}

void write_color_report(const fs::path& dir, const SweepPlan& plan)
{
    std::ofstream out(dir / "color_report.csv");
    out << "color,group_size\n";
    for (std::size_t g = 0; g < plan.groups.size(); ++g)
        out << (g + 1) << "," << plan.groups[g].size() << "\n";
}

void write_rdp_report(const fs::path& dir, const std::vector<RdpReport>& rows)
{
    std::ofstream out(dir / "rdp_report.csv");
    out << "variant,points,iterations,total_seconds,rdp,split_flux_evals,"
           "full_flux_evals,erf_evals,jvp_split_evals,jvp_full_evals\n";
    for (const RdpReport& r : rows)
        out << r.variant << "," << r.points << "," << r.iterations << ","
            << fmt(r.total_seconds) << "," << fmt(r.rdp) << ","
            << r.counters.split_flux() << "," << r.counters.full_flux() << ","
            << r.counters.erf() << "," << r.counters.jvp_split() << ","
            << r.counters.jvp_full() << "\n";
}

void write_manifest(const fs::path& dir, const CaseFile& c)
{
    std::ofstream out(dir / "manifest.txt");
    if (!c.cloud.generate.empty()) out << "cloud = generate " << c.cloud.generate << "\n";
    if (!c.cloud.file.empty()) out << "cloud = file " << c.cloud.file << "\n";
    out << "variant = " << variant_name(c.solver.variant) << "\n";
    out << "mach = " << fmt(c.solver.mach_inf) << "\n";
    out << "aoa = " << fmt(c.solver.aoa_deg) << "\n";
    out << "cfl = " << fmt(c.solver.cfl) << "\n";
    out << "iterations = " << c.solver.n_iterations << "\n";
    out << "inner_iterations = " << c.solver.n_inner << "\n";
    out << "convergence_decades = " << fmt(c.solver.convergence_decades) << "\n";
    out << "cfl_ramp_iters = " << c.solver.cfl_ramp_iters << "\n";
    out << "cfl_start = " << fmt(c.solver.cfl_start) << "\n";
    out << "bc_mode = "
        << (c.solver.bc_mode == BcMode::Physical ? "physical" : "freestream") << "\n";
    out << "out = " << c.out_dir << "\n";
}

RdpReport make_rdp(const std::string& variant, const RunHistory& h,
                   const EvalSnapshot& evals)
{
    RdpReport r;
    r.variant = variant;
    r.points = h.points;
    r.iterations = static_cast<int>(h.iters.size());
    r.total_seconds = h.loop_seconds;
    r.rdp = (r.iterations > 0 && r.points > 0)
                ? r.total_seconds / (static_cast<double>(r.iterations) * r.points)
                : 0.0;
    r.counters = evals;
    return r;
}

}  // namespace

RunArtifacts run_case(const CaseFile& c)
{
    validate_case(c);
    const PointCloud cloud = c.cloud.make();
    const ColorAssignment colors = color_points(cloud);
    const SweepPlan plan = build_sweep_plan(colors);
    const LsCoefficients ls = build_ls_coefficients(cloud);

    const fs::path dir(c.out_dir);
    fs::create_directories(dir);

    const EvalSnapshot before = flux_counters().snapshot();
    std::vector<Vec4> state;
    RunHistory hist = run_fixed_point(cloud, ls, plan, c.solver, &state);
    const EvalSnapshot evals = flux_counters().snapshot() - before;

    write_residual_history(dir, hist);
    write_surface_cp(dir, cloud, state, Freestream::make(c.solver.mach_inf,
                                                         c.solver.aoa_deg));
    write_color_report(dir, plan);

    RunArtifacts art;
    art.history = std::move(hist);
    art.rdp = make_rdp(variant_name(c.solver.variant), art.history, evals);
    art.directory = dir.string();
    write_rdp_report(dir, {art.rdp});
    write_manifest(dir, c);
    return art;
}

BenchResult benchmark(const CaseFile& c, const std::vector<SolverVariant>& variants)
{
    CaseFile base = c;
    base.solver.n_iterations = std::max(base.solver.n_iterations, 100);
    base.solver.convergence_decades = 0.0;  // fixed-length runs for timing

    BenchResult result;
    std::vector<RunHistory> histories;
    for (SolverVariant v : variants) {
        CaseFile one = base;
        one.solver.variant = v;
        one.out_dir = (fs::path(base.out_dir) / variant_name(v)).string();
        RunArtifacts art = run_case(one);
        result.reports.push_back(art.rdp);
        histories.push_back(std::move(art.history));
    }

    // Sweep counter relation: per iteration the incremental variants must
    // evaluate exactly twice as many split fluxes as the exact variants
    // evaluate tangent-linear split products.
    auto check_pair = [&](SolverVariant inc, SolverVariant ad) {
        const auto it_inc = std::find(variants.begin(), variants.end(), inc);
        const auto it_ad = std::find(variants.begin(), variants.end(), ad);
        if (it_inc == variants.end() || it_ad == variants.end()) return;
        const RunHistory& hi = histories[it_inc - variants.begin()];
        const RunHistory& ha = histories[it_ad - variants.begin()];
        if (hi.iters.size() != ha.iters.size()) {
            result.counter_ratio_ok = false;
            return;
        }
        for (std::size_t k = 0; k < hi.iters.size(); ++k)
            if (hi.iters[k].sweep.split_flux() != 2 * ha.iters[k].sweep.jvp_split())
                result.counter_ratio_ok = false;
    };
    check_pair(SolverVariant::Anandh, SolverVariant::AnandhAD);
    check_pair(SolverVariant::Manish, SolverVariant::ManishAD);

    const fs::path dir(base.out_dir);
    fs::create_directories(dir);
    write_rdp_report(dir, result.reports);
    return result;
}

}  // namespace kinfree
