#include "sfcusp/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfcusp/errors.hpp"
#include "sfcusp/modforms.hpp"
#include "sfcusp/newform_io.hpp"
#include "sfcusp/rslfun.hpp"
#include "sfcusp/runconfig.hpp"
#include "sfcusp/threshold.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sfcusp {
namespace cli {

namespace {

using json = nlohmann::ordered_json;
using modforms::NewformRecord;

std::vector<std::string> artifact_header(const RunConfig& cfg) {
    return {std::string(kToolName) + " " + kToolVersion,
            "config-hash " + cfg.hash(),
            "config " + cfg.to_json_string()};
}

json meta_block(const RunConfig& cfg) {
    json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["config_hash"] = cfg.hash();
    m["config"] = json::parse(cfg.to_json_string());
    return m;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open \"" + cfg.out_path + "\" for writing");
    out << text;
    if (!out) throw IoError("write failed for \"" + cfg.out_path + "\"");
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
    if (points < 2 || lo <= 0 || hi <= lo)
        throw InvalidArgument("grid: need x_max > x_min > 0 and at least 2 points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    return g;
}

// record from a form spec; empty spec infers from (k, N)
NewformRecord build_record(const RunConfig& cfg, const std::string& spec_in, int which) {
    std::string spec = spec_in;
    if (spec.empty()) {
        if (cfg.N == 1)
            spec = (cfg.k == 24) ? ("eigen:24:" + std::to_string(which)) : ("eigen:" + std::to_string(cfg.k));
        else if (modforms::has_builtin_eta_newform(cfg.N))
            spec = "eta:" + std::to_string(cfg.N);
        else
            throw InvalidArgument("no built-in form at level " + std::to_string(cfg.N) +
                                  "; pass --form");
    }
    std::vector<std::string> parts;
    {
        std::stringstream ss(spec);
        std::string p;
        while (std::getline(ss, p, ':')) parts.push_back(p);
    }
    const std::string& kind = parts[0];
    if (kind == "delta") return modforms::level1_newform(12, cfg.prec);
    if (kind == "eigen") {
        int k = parts.size() > 1 ? std::stoi(parts[1]) : cfg.k;
        if (k == 24) {
            auto [f, g] = modforms::weight24_newforms(cfg.prec);
            int idx = parts.size() > 2 ? std::stoi(parts[2]) : which;
            return idx == 1 ? g : f;
        }
        return modforms::level1_newform(k, cfg.prec);
    }
    if (kind == "eta") {
        uint64_t N = parts.size() > 1 ? std::stoull(parts[1]) : cfg.N;
        return modforms::builtin_eta_newform(N, cfg.prec);
    }
    if (kind == "file") {
        if (parts.size() < 2) throw InvalidArgument("file form spec needs a path");
        auto recs = newform_io::load_newforms(parts[1], cfg.tolerance);
        size_t idx = parts.size() > 2 ? std::stoull(parts[2]) : 0;
        if (idx >= recs.size())
            throw InvalidArgument("file \"" + parts[1] + "\" has no record " + std::to_string(idx));
        return recs[idx];
    }
    throw InvalidArgument("unknown form spec \"" + spec + "\"");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_basis(const RunConfig& cfg) {
    if (cfg.N != 1)
        throw InvalidArgument("basis: computed bases exist at level 1 only; "
                              "other levels are ingested through newform files");
    size_t prec = std::min<uint64_t>(cfg.prec, 64);
    auto sp = modforms::level1_basis(cfg.k, prec);
    std::string out;
    for (const std::string& h : artifact_header(cfg)) out += "# " + h + "\n";
    out += "# weight " + std::to_string(cfg.k) + "  dim M = " +
           std::to_string(sp.modular_basis.size()) + "  dim S = " +
           std::to_string(sp.basis.size()) + "\n";
    for (size_t i = 0; i < sp.basis.size(); ++i) {
        out += "S[" + std::to_string(i) + "]";
        for (size_t n = 0; n < std::min<size_t>(prec, 16); ++n)
            out += " " + sp.basis[i].coefficient(n).to_string();
        out += " ...\n";
    }
    emit(cfg, out);
    return 0;
}

int cmd_eigen(const RunConfig& cfg) {
    std::vector<NewformRecord> recs;
    if (cfg.N == 1 && cfg.k == 24) {
        auto [f, g] = modforms::weight24_newforms(cfg.prec);
        recs = {f, g};
    } else if (cfg.N == 1) {
        recs = {modforms::level1_newform(cfg.k, cfg.prec)};
    } else if (modforms::has_builtin_eta_newform(cfg.N)) {
        recs = {modforms::builtin_eta_newform(cfg.N, cfg.prec)};
    } else {
        throw InvalidArgument("eigen: no computed newforms at level " + std::to_string(cfg.N));
    }
    for (const auto& r : recs) {
        auto v = newform_io::validate(r, cfg.tolerance);
        if (!v.ok())
            throw InternalInconsistency("computed record violates: " + v.violations.front());
    }
    if (!cfg.out_path.empty()) newform_io::save_newforms(recs, cfg.out_path);
    std::string out;
    for (const std::string& h : artifact_header(cfg)) out += "# " + h + "\n";
    out += "index,level,weight,lambda2,lambda3,lambda5\n";
    for (size_t i = 0; i < recs.size(); ++i)
        out += std::to_string(i) + "," + std::to_string(recs[i].level) + "," +
               std::to_string(recs[i].weight) + "," + fmt(recs[i].lambda(2).real()) + "," +
               fmt(recs[i].lambda(3).real()) + "," + fmt(recs[i].lambda(5).real()) + "\n";
    std::cout << out;
    return 0;
}

int cmd_sfmin(const RunConfig& cfg) {
    threshold::ScanEntry entry;
    entry.k = cfg.k;
    entry.N = cfg.N;
    if (!cfg.form.empty())
        entry.form_spec = cfg.form;
    else if (cfg.N == 1)
        entry.form_spec = "eigen:" + std::to_string(cfg.k);
    else if (modforms::has_builtin_eta_newform(cfg.N))
        entry.form_spec = "eta:" + std::to_string(cfg.N);
    else
        throw InvalidArgument("sfmin: no built-in form at level " + std::to_string(cfg.N) +
                              "; pass --form");
    threshold::ScanConfig sc;
    sc.search_limit = cfg.search_limit;
    sc.eps = cfg.eps;
    sc.a0 = cfg.a0;
    sc.prec = cfg.prec;
    sc.threads = cfg.threads;
    auto reports = threshold::scan({entry}, sc);
    if (!reports[0].error.empty())
        throw Error("computation", reports[0].error);
    if (cfg.format == "json") {
        json j;
        j["meta"] = meta_block(cfg);
        json r;
        const auto& rep = reports[0];
        r["form"] = rep.form;
        r["k"] = rep.k;
        r["N"] = rep.N;
        r["d0"] = rep.d0;
        if (rep.observed_min_sf) r["observed_min_sf"] = *rep.observed_min_sf;
        r["search_limit"] = rep.search_limit;
        r["theorem_bound"] = rep.theorem_bound_value;
        r["legacy_bound_log"] = rep.legacy_bound_log_value;
        r["dim_proxy"] = rep.dim_proxy;
        r["satisfied"] = rep.satisfied;
        r["zero_mode"] = rep.zero_mode;
        j["report"] = r;
        emit(cfg, j.dump(2) + "\n");
    } else {
        emit(cfg, threshold::reports_to_csv(reports, artifact_header(cfg)));
    }
    return 0;
}

int cmd_bounds(const RunConfig& cfg) {
    std::string out;
    for (const std::string& h : artifact_header(cfg)) out += "# " + h + "\n";
    out += "k,N,eps,a0,theorem_bound,theorem_bound_log,legacy_bound_log,improvement_log\n";
    std::vector<uint64_t> Ns = {1, 2, 11};
    if (cfg.N != 1) Ns = {cfg.N};
    std::vector<int> ks;
    if (cfg.k != 0) {
        ks = {cfg.k};
    } else {
        for (int k = 12; k <= 26; ++k) ks.push_back(k);
    }
    for (int k : ks)
        for (uint64_t N : Ns) {
            double tb = threshold::theorem_bound(k, N, cfg.eps);
            double lg = threshold::legacy_bound_log(k, N, cfg.a0);
            out += std::to_string(k) + "," + std::to_string(N) + "," + fmt(cfg.eps) + "," +
                   fmt(cfg.a0) + "," + fmt(tb) + "," + fmt(std::log(tb)) + "," + fmt(lg) + "," +
                   fmt(lg - std::log(tb)) + "\n";
        }
    emit(cfg, out);
    return 0;
}

// the analysis commands size their coefficient tables to the requested range
RunConfig sized_for(const RunConfig& cfg, double x_max) {
    RunConfig c = cfg;
    c.prec = std::max<uint64_t>(c.prec, static_cast<uint64_t>(std::ceil(x_max)) + 2);
    return c;
}

int cmd_asymp(const RunConfig& cfg) {
    NewformRecord f = build_record(sized_for(cfg, cfg.x_max), cfg.form, 0);
    weights::SmoothWeight w;
    w.beta = cfg.beta;
    w.quad_tol = cfg.quad_tol;
    auto grid = geometric_grid(cfg.x_min, cfg.x_max, cfg.x_points);
    auto fit = threshold::fit_diagonal(f, w, cfg.N, grid);
    double cconst = rslfun::c_constant(f, w, cfg.N, cfg.P);
    double agree = std::abs(fit.C_hat - cconst) / std::max(std::abs(fit.C_hat), 1e-300);
    if (cfg.format == "plotdata") {
        emit(cfg, threshold::fit_to_plotdata(fit, artifact_header(cfg)));
        return 0;
    }
    if (cfg.format == "json") {
        json j;
        j["meta"] = meta_block(cfg);
        json jf;
        jf["diagonal"] = true;
        jf["C_hat"] = fit.C_hat;
        jf["K_hat"] = fit.K_hat;
        jf["c_hat"] = fit.c_hat;
        jf["residual"] = fit.residual;
        jf["samples"] = json::array();
        for (auto& [x, S] : fit.samples) jf["samples"].push_back({x, S});
        j["fit"] = jf;
        j["c_constant"] = cconst;
        j["relative_agreement"] = agree;
        emit(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::string out;
    for (const std::string& h : artifact_header(cfg)) out += "# " + h + "\n";
    out += "C_hat,K_hat,c_hat,residual,c_constant,relative_agreement\n";
    out += fmt(fit.C_hat) + "," + fmt(fit.K_hat) + "," + fmt(fit.c_hat) + "," +
           fmt(fit.residual) + "," + fmt(cconst) + "," + fmt(agree) + "\n";
    emit(cfg, out);
    return 0;
}

int cmd_cross(const RunConfig& cfg) {
    RunConfig sized = sized_for(cfg, cfg.x_max);
    NewformRecord f = build_record(sized, cfg.form, 0);
    NewformRecord g = build_record(sized, cfg.form2, 1);
    weights::SmoothWeight w;
    w.beta = cfg.beta;
    w.quad_tol = cfg.quad_tol;
    auto grid = geometric_grid(cfg.x_min, cfg.x_max, cfg.x_points);
    auto fit = threshold::fit_cross(f, g, w, cfg.N, grid);
    if (cfg.format == "plotdata") {
        emit(cfg, threshold::fit_to_plotdata(fit, artifact_header(cfg)));
        return 0;
    }
    if (cfg.format == "json") {
        json j;
        j["meta"] = meta_block(cfg);
        json jf;
        jf["diagonal"] = false;
        jf["K_hat"] = fit.K_hat;
        jf["c_hat"] = fit.c_hat;
        jf["residual"] = fit.residual;
        jf["samples"] = json::array();
        for (auto& [x, S] : fit.samples) jf["samples"].push_back({x, S});
        j["fit"] = jf;
        emit(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::string out;
    for (const std::string& h : artifact_header(cfg)) out += "# " + h + "\n";
    out += "K_hat,c_hat,residual\n";
    out += fmt(fit.K_hat) + "," + fmt(fit.c_hat) + "," + fmt(fit.residual) + "\n";
    emit(cfg, out);
    return 0;
}

int cmd_oracle(const RunConfig& cfg) {
    uint64_t P = std::max<uint64_t>(cfg.P, static_cast<uint64_t>(std::ceil(cfg.x)));
    RunConfig sized = sized_for(cfg, static_cast<double>(P));
    NewformRecord f = build_record(sized, cfg.form, 0);
    // with no explicit forms the weight-24 space defaults to its cross pair
    NewformRecord g = cfg.form2.empty() && cfg.form.empty() && cfg.N == 1 && cfg.k == 24
                          ? build_record(sized, "", 1)
                          : (cfg.form2.empty() ? f : build_record(sized, cfg.form2, 1));
    weights::SmoothWeight w;
    w.beta = cfg.beta;
    w.quad_tol = cfg.quad_tol;
    auto direct = rslfun::direct_weighted_sum(f, g, w, cfg.x, cfg.N);
    auto contour = rslfun::contour_sum_oracle(f, g, w, cfg.x, cfg.N, cfg.sigma0, cfg.contour_T, P);
    double dev = std::abs(direct.value - contour.value) / (1.0 + std::abs(direct.value));
    std::string out;
    for (const std::string& h : artifact_header(cfg)) out += "# " + h + "\n";
    out += "x,direct_re,direct_im,contour_re,contour_im,deviation,direct_terms\n";
    out += fmt(cfg.x) + "," + fmt(direct.value.real()) + "," + fmt(direct.value.imag()) + "," +
           fmt(contour.value.real()) + "," + fmt(contour.value.imag()) + "," + fmt(dev) + "," +
           std::to_string(direct.term_count) + "\n";
    emit(cfg, out);
    return 0;
}

int cmd_scan(const RunConfig& cfg) {
    std::vector<threshold::ScanEntry> grid;
    if (!cfg.data_path.empty()) {
        std::ifstream in(cfg.data_path);
        if (!in) throw IoError("cannot open grid file \"" + cfg.data_path + "\"");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            threshold::ScanEntry e;
            ls >> e.form_spec >> e.k >> e.N;
            grid.push_back(e);
        }
    } else {
        for (int k : {12, 16, 18, 20, 22, 26})
            grid.push_back({"eigen:" + std::to_string(k), k, 1});
        for (uint64_t N : {2ull, 3ull, 5ull, 11ull})
            grid.push_back({"eta:" + std::to_string(N), 0, N});
        grid.push_back({"lift:delta:2", 12, 2});
    }
    threshold::ScanConfig sc;
    sc.search_limit = cfg.search_limit;
    sc.eps = cfg.eps;
    sc.a0 = cfg.a0;
    sc.prec = cfg.prec;
    sc.threads = cfg.threads;
    auto reports = threshold::scan(grid, sc);
    if (cfg.format == "json") {
        json j;
        j["meta"] = meta_block(cfg);
        j["reports"] = json::array();
        for (const auto& r : reports) {
            json jr;
            jr["form"] = r.form;
            jr["k"] = r.k;
            jr["N"] = r.N;
            jr["d0"] = r.d0;
            if (r.observed_min_sf)
                jr["observed_min_sf"] = *r.observed_min_sf;
            else
                jr["observed_min_sf"] = nullptr;
            jr["search_limit"] = r.search_limit;
            jr["eps"] = r.eps;
            jr["a0"] = r.a0;
            jr["theorem_bound"] = r.theorem_bound_value;
            jr["legacy_bound_log"] = r.legacy_bound_log_value;
            jr["dim_proxy"] = r.dim_proxy;
            jr["satisfied"] = r.satisfied;
            jr["zero_mode"] = r.zero_mode;
            jr["note"] = r.note;
            jr["error"] = r.error;
            j["reports"].push_back(jr);
        }
        emit(cfg, j.dump(2) + "\n");
    } else {
        emit(cfg, threshold::reports_to_csv(reports, artifact_header(cfg)));
    }
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    if (cfg.data_path.empty()) throw InvalidArgument("validate: pass --in <file>");
    auto recs = newform_io::load_newforms(cfg.data_path, cfg.tolerance);
    std::string out;
    for (const std::string& h : artifact_header(cfg)) out += "# " + h + "\n";
    out += "record,level,weight,count,status\n";
    for (size_t i = 0; i < recs.size(); ++i)
        out += std::to_string(i) + "," + std::to_string(recs[i].level) + "," +
               std::to_string(recs[i].weight) + "," + std::to_string(recs[i].prec()) + ",ok\n";
    emit(cfg, out);
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"square-free Fourier coefficient laboratory for cusp forms"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file");
    app.fallthrough();

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "weight");
        sub->add_option("--N", cfg.N, "level");
        sub->add_option("--form", cfg.form, "form spec");
        sub->add_option("--prec", cfg.prec, "coefficient precision");
        sub->add_option("--eps", cfg.eps, "epsilon in the bound exponents");
        sub->add_option("--a0", cfg.a0, "legacy bound constant");
        sub->add_option("--beta", cfg.beta, "weight sharpness");
        sub->add_option("--quad-tol", cfg.quad_tol, "Mellin quadrature tolerance");
        sub->add_option("--P", cfg.P, "prime / Dirichlet cutoff");
        sub->add_option("--tolerance", cfg.tolerance, "validation tolerance");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv | json | plotdata");
        sub->add_option("--seed", cfg.seed, "seed echoed into artifacts");
        sub->add_option("--threads", cfg.threads, "parallelism budget (0 = default)");
        return sub;
    };

    CLI::App* basis = add_common(app.add_subcommand("basis", "print cusp space bases"));
    CLI::App* eigen = add_common(app.add_subcommand("eigen", "compute newform records"));
    CLI::App* sfmin = add_common(
        app.add_subcommand("sfmin", "minimal square-free nonvanishing index and bounds"));
    sfmin->add_option("--search-limit", cfg.search_limit, "search limit");
    sfmin->get_option("--k")->required();
    sfmin->get_option("--N")->required();
    CLI::App* asymp = add_common(app.add_subcommand("asymp", "diagonal weighted-sum fit"));
    asymp->add_option("--x-min", cfg.x_min, "grid start");
    asymp->add_option("--x-max", cfg.x_max, "grid end");
    asymp->add_option("--points", cfg.x_points, "grid points");
    CLI::App* cross = add_common(app.add_subcommand("cross", "off-diagonal weighted-sum fit"));
    cross->add_option("--form2", cfg.form2, "second form spec");
    cross->add_option("--x-min", cfg.x_min, "grid start");
    cross->add_option("--x-max", cfg.x_max, "grid end");
    cross->add_option("--points", cfg.x_points, "grid points");
    CLI::App* oracle = add_common(app.add_subcommand("oracle", "direct vs contour comparison"));
    oracle->add_option("--form2", cfg.form2, "second form spec");
    oracle->add_option("--x", cfg.x, "sum scale x");
    oracle->add_option("--sigma0", cfg.sigma0, "contour line");
    oracle->add_option("--T", cfg.contour_T, "contour truncation height");
    CLI::App* scan = add_common(app.add_subcommand("scan", "grid of threshold reports"));
    scan->add_option("--grid-file", cfg.data_path, "grid file: lines of <spec> <k> <N>");
    scan->add_option("--search-limit", cfg.search_limit, "search limit");
    CLI::App* bounds = add_common(app.add_subcommand("bounds", "threshold vs legacy bound table"));
    CLI::App* validate = add_common(app.add_subcommand("validate", "check a newform file"));
    validate->add_option("--in", cfg.data_path, "newform file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

    try {
        if (basis->parsed()) { cfg.command = "basis"; return cmd_basis(cfg); }
        if (eigen->parsed()) { cfg.command = "eigen"; return cmd_eigen(cfg); }
        if (sfmin->parsed()) { cfg.command = "sfmin"; return cmd_sfmin(cfg); }
        if (asymp->parsed()) { cfg.command = "asymp"; return cmd_asymp(cfg); }
        if (cross->parsed()) { cfg.command = "cross"; return cmd_cross(cfg); }
        if (oracle->parsed()) { cfg.command = "oracle"; return cmd_oracle(cfg); }
        if (scan->parsed()) { cfg.command = "scan"; return cmd_scan(cfg); }
        if (bounds->parsed()) {
            cfg.command = "bounds";
            // absent --k / --N select the whole built-in table
            if (bounds->count("--k") == 0) cfg.k = 0;
            if (bounds->count("--N") == 0) cfg.N = 1;
            return cmd_bounds(cfg);
        }
        if (validate->parsed()) { cfg.command = "validate"; return cmd_validate(cfg); }
        return 2;
    } catch (const Error& e) {
        nlohmann::ordered_json err;
        err["error"] = e.category();
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::ordered_json err;
        err["error"] = "internal";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
}

} // namespace cli
} // namespace sfcusp
