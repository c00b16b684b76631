#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/kernels_complex.hpp"
#include "rmtlab/kernels_real.hpp"
#include "rmtlab/logdet_flow.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/statistics.hpp"

namespace rmtlab::cli {

using nlohmann::json;

namespace {

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string complex_text(cplx z) { return format_double(z.real()) + "," + format_double(z.imag()); }

SamplingPath sampling_path(const std::string& method) {
    if (method == "direct") return SamplingPath::direct;
    if (method == "hessenberg") return SamplingPath::hessenberg;
    return SamplingPath::automatic;
}

struct Artifacts {
    std::string format;
    std::filesystem::path csv_path;
    std::filesystem::path json_path;
};

Artifacts resolve_artifacts(const ExperimentConfig& c) {
    Artifacts a;
    if (c.out.empty()) return a;
    std::filesystem::path p(c.out);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("RMTLAB_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
    }
    a.format = !c.format.empty() ? c.format : (p.extension() == ".csv" ? "csv" : "json");
    if (a.format == "csv") {
        a.csv_path = p;
        a.json_path = p;
        a.json_path.replace_extension(".json");
    } else {
        a.json_path = p;
    }
    return a;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + p.string());
    f << text;
    if (!f) throw DomainError("cannot write output file " + p.string());
}

// Result of one subcommand: summary fields, optional per-sample CSV, and
// the line printed to stdout.
struct Result {
    json summary = json::object();
    std::string csv;
    std::string line;
};

EnsembleSpec ensemble_spec(const ExperimentConfig& c) {
    return EnsembleSpec{c.n, AtomDistribution::parse(c.ensemble), c.seed};
}

RunOptions run_options(const ExperimentConfig& c) { return RunOptions{c.threads, sampling_path(c.method)}; }

Result sample_spectrum_cmd(const ExperimentConfig& c) {
    const EnsembleSpec spec = ensemble_spec(c);
    Rng rng = replicate_rng(spec, 0);
    const Spectrum s = sample_spectrum(spec, rng, sampling_path(c.method));
    Result r;
    std::ostringstream csv;
    csv << "re,im\n";
    double radius = 0.0;
    for (cplx z : s.eigenvalues) {
        csv << complex_text(z) << "\n";
        radius = std::max(radius, std::abs(z));
    }
    r.csv = csv.str();
    const double root = std::sqrt(double(c.n));
    r.summary["eigenvalue_count"] = s.eigenvalues.size();
    r.summary["spectral_radius_normalized"] = radius / root;
    r.summary["inside_disk"] = count_region(s, Disk{0.0, root});
    if (spec.atom.field() == Field::real) r.summary["real_count"] = split_real_complex(s).reals.size();
    r.line = "sample-spectrum n=" + std::to_string(c.n) + " spectral_radius/sqrt(n)=" + format_double(radius / root);
    return r;
}

KernelArg kernel_arg(cplx z) { return z.imag() == 0.0 ? KernelArg::real(z.real()) : KernelArg::upper(z); }

Result kernel_eval_cmd(const ExperimentConfig& c) {
    Result r;
    if (!c.real_kernel) {
        const cplx k = kernel_finite(c.n, c.z, c.w);
        r.summary["kernel"] = complex_json(k);
        r.line = "K_n(z,w) = " + complex_text(k);
        return r;
    }
    const MatrixKernelValue v = matrix_kernel(c.n, kernel_arg(c.z), kernel_arg(c.w));
    json entries = json::array();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) entries.push_back(complex_json(v.k(i, j)));
    r.summary["matrix_kernel"] = entries;
    r.summary["case"] = to_string(v.kase);
    r.line = "K_n(z,w) [" + to_string(v.kase) + "] = [[" + complex_text(v.k(0, 0)) + "],[" + complex_text(v.k(0, 1)) +
             "];[" + complex_text(v.k(1, 0)) + "],[" + complex_text(v.k(1, 1)) + "]]";
    return r;
}

Result logdet_cmd(const ExperimentConfig& c) {
    const EnsembleSpec spec = ensemble_spec(c);
    const SamplingPath path = sampling_path(c.method);
    const bool hess =
        path == SamplingPath::hessenberg || (path == SamplingPath::automatic && spec.atom.is_gaussian() && c.n >= 2);
    if (hess) {
        require(spec.atom.is_gaussian(), "logdet-concentration: the Hessenberg path needs a gaussian ensemble");
        require(spec.atom.field() == Field::complex || c.z.imag() == 0.0,
                "logdet-concentration: the real Hessenberg path needs a real z");
    }
    std::vector<LogDetSample> samples(c.samples);
    parallel_for(c.samples, c.threads, [&](long i) {
        Rng rng = replicate_rng(spec, i);
        samples[i] = hess ? hessenberg_logdet_sample(c.n, c.z, spec.atom.field(), rng)
                          : direct_logdet_sample(c.n, spec.atom, c.z, rng);
    });
    std::vector<double> values;
    std::ostringstream csv;
    csv << "value,method,seed_index\n";
    for (long i = 0; i < c.samples; ++i) {
        values.push_back(samples[i].value);
        csv << format_double(samples[i].value) << "," << to_string(samples[i].method) << "," << i << "\n";
    }
    const MCEstimate e = estimate_from_values(values);
    const double sd = std::sqrt(e.variance * double(e.m));
    const double target = target_logdet(c.n, c.z);
    Result r;
    r.csv = csv.str();
    r.summary["mean"] = e.mean;
    r.summary["sd"] = sd;
    r.summary["mean_se"] = e.se();
    r.summary["target"] = target;
    r.summary["heuristic"] = heuristic_integral(c.n, c.z);
    r.summary["mean_minus_target"] = e.mean - target;
    r.summary["log_n"] = std::log(double(c.n));
    r.summary["method"] = to_string(hess ? LogDetMethod::hessenberg : LogDetMethod::direct);
    r.line = "logdet-concentration mean-target=" + format_double(e.mean - target) + " sd=" + format_double(sd) +
             " log(n)=" + format_double(std::log(double(c.n)));
    return r;
}

Result local_law_cmd(const ExperimentConfig& c) {
    const auto rows = local_law_experiment(ensemble_spec(c), {c.z}, c.r, c.samples, run_options(c));
    Result r;
    std::ostringstream csv;
    csv << "anchor_re,anchor_im,r,expected,mean_count,mean_deviation,max_deviation\n";
    json table = json::array();
    double worst = 0.0;
    for (const auto& row : rows) {
        csv << complex_text(row.anchor) << "," << format_double(row.r) << "," << format_double(row.expected) << ","
            << format_double(row.mean_count) << "," << format_double(row.mean_deviation) << ","
            << format_double(row.max_deviation) << "\n";
        table.push_back(json{{"anchor", complex_json(row.anchor)},
                             {"r", row.r},
                             {"expected", row.expected},
                             {"mean_count", row.mean_count},
                             {"mean_deviation", row.mean_deviation},
                             {"max_deviation", row.max_deviation}});
        worst = std::max(worst, row.mean_deviation);
    }
    r.csv = csv.str();
    r.summary["rows"] = table;
    r.line = "local-law max mean |N-expected|/r=" + format_double(worst);
    return r;
}

Result clt_cmd(const ExperimentConfig& c) {
    const double radius = c.r.front();
    const CltResult res = clt_experiment(ensemble_spec(c), c.z, radius, c.samples, run_options(c));
    Result r;
    std::ostringstream csv;
    csv << "count,seed_index\n";
    for (std::size_t i = 0; i < res.counts.size(); ++i) csv << res.counts[i] << "," << i << "\n";
    r.csv = csv.str();
    r.summary["mean"] = res.mean;
    r.summary["variance"] = res.variance;
    r.summary["mean_se"] = res.mean_se;
    r.summary["skewness"] = res.skewness;
    r.summary["moments"] = res.moments;
    r.summary["target_mean"] = radius * radius;
    r.summary["target_variance"] = radius / std::sqrt(std::numbers::pi);
    r.line = "clt mean=" + format_double(res.mean) + " variance=" + format_double(res.variance) +
             " skewness=" + format_double(res.skewness);
    return r;
}

Result real_count_cmd(const ExperimentConfig& c) {
    const RealCountResult res = real_count_experiment(ensemble_spec(c), c.samples, run_options(c));
    Result r;
    std::ostringstream csv;
    csv << "real_count,seed_index\n";
    for (std::size_t i = 0; i < res.counts.size(); ++i) csv << res.counts[i] << "," << i << "\n";
    r.csv = csv.str();
    r.summary["mean"] = res.mean;
    r.summary["variance"] = res.variance;
    r.summary["target_mean"] = res.target_mean;
    r.summary["target_variance"] = res.target_variance;
    r.line = "real-count mean=" + format_double(res.mean) + " target=" + format_double(res.target_mean);
    return r;
}

Result universality_cmd(const ExperimentConfig& c) {
    const EnsembleSpec a = ensemble_spec(c);
    const EnsembleSpec b{c.n, AtomDistribution::parse(c.ensemble_b), c.seed};
    const std::vector<TestFunction> tests{TestFunction{c.z, c.test_radius}};
    const CorrelationEstimate ea = smoothed_correlation_statistic(a, tests, c.samples, run_options(c));
    const CorrelationEstimate eb = smoothed_correlation_statistic(b, tests, c.samples, run_options(c));
    const double gap = ea.estimate.mean - eb.estimate.mean;
    const double se = std::sqrt(ea.estimate.variance + eb.estimate.variance);
    Result r;
    std::ostringstream csv;
    csv << "ensemble,value,seed_index\n";
    for (long i = 0; i < c.samples; ++i) csv << c.ensemble << "," << format_double(ea.values[i]) << "," << i << "\n";
    for (long i = 0; i < c.samples; ++i) csv << c.ensemble_b << "," << format_double(eb.values[i]) << "," << i << "\n";
    r.csv = csv.str();
    r.summary["estimate_a"] = json{{"mean", ea.estimate.mean}, {"se", ea.estimate.se()}};
    r.summary["estimate_b"] = json{{"mean", eb.estimate.mean}, {"se", eb.estimate.se()}};
    r.summary["gap"] = gap;
    r.summary["combined_se"] = se;
    r.summary["matching_order"] = matching_order(a.atom, b.atom);
    r.line = "universality gap=" + format_double(gap) + " combined_se=" + format_double(se);
    return r;
}

Result jensen_cmd(const ExperimentConfig& c) {
    const EnsembleSpec spec = ensemble_spec(c);
    const double radius = c.r.front();
    const cplx center = c.z * std::sqrt(double(c.n));
    std::vector<JensenCount> counts(c.samples);
    std::vector<long> direct(c.samples);
    parallel_for(c.samples, c.threads, [&](long i) {
        Rng rng = replicate_rng(spec, i);
        const SquareMatrix m = sample_matrix(spec, rng);
        counts[i] = jensen_count(HessenbergLogDet(m), center, radius, c.nodes, rng);
        direct[i] = count_region(eigenvalues(m), Disk{center, radius});
    });
    Result r;
    std::ostringstream csv;
    csv << "jensen,direct,raw,residual,attempts,seed_index\n";
    long exact = 0, worst = 0;
    for (long i = 0; i < c.samples; ++i) {
        csv << counts[i].count << "," << direct[i] << "," << format_double(counts[i].raw) << ","
            << format_double(counts[i].residual) << "," << counts[i].attempts << "," << i << "\n";
        exact += counts[i].count == direct[i];
        worst = std::max(worst, std::abs(counts[i].count - direct[i]));
    }
    r.csv = csv.str();
    r.summary["exact_fraction"] = double(exact) / double(c.samples);
    r.summary["max_discrepancy"] = worst;
    r.line = "jensen-count exact=" + std::to_string(exact) + "/" + std::to_string(c.samples) +
             " max_discrepancy=" + std::to_string(worst);
    return r;
}

Result dispatch(const ExperimentConfig& c) {
    if (c.command == "sample-spectrum") return sample_spectrum_cmd(c);
    if (c.command == "kernel-eval") return kernel_eval_cmd(c);
    if (c.command == "logdet-concentration") return logdet_cmd(c);
    if (c.command == "local-law") return local_law_cmd(c);
    if (c.command == "clt") return clt_cmd(c);
    if (c.command == "real-count") return real_count_cmd(c);
    if (c.command == "universality") return universality_cmd(c);
    if (c.command == "jensen-count") return jensen_cmd(c);
    throw DomainError("unknown subcommand '" + c.command + "'");
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"sample-spectrum", "kernel-eval", "logdet-concentration", "local-law",
                                                "clt",             "real-count",  "universality",         "jensen-count"};
    return names;
}

json to_json(const ExperimentConfig& c) {
    return json{{"command", c.command},   {"ensemble", c.ensemble}, {"ensemble_b", c.ensemble_b},
                {"n", c.n},               {"z", complex_json(c.z)}, {"w", complex_json(c.w)},
                {"r", c.r},               {"samples", c.samples},   {"seed", c.seed},
                {"method", c.method},     {"real_kernel", c.real_kernel},
                {"test_radius", c.test_radius},
                {"nodes", c.nodes},       {"threads", c.threads},   {"out", c.out},
                {"format", c.format}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.command = j.at("command").get<std::string>();
    c.ensemble = j.at("ensemble").get<std::string>();
    c.ensemble_b = j.at("ensemble_b").get<std::string>();
    c.n = j.at("n").get<int>();
    c.z = complex_from_json(j.at("z"));
    c.w = complex_from_json(j.at("w"));
    c.r = j.at("r").get<std::vector<double>>();
    c.samples = j.at("samples").get<long>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.method = j.at("method").get<std::string>();
    c.real_kernel = j.at("real_kernel").get<bool>();
    c.test_radius = j.at("test_radius").get<double>();
    c.nodes = j.at("nodes").get<int>();
    c.threads = j.at("threads").get<int>();
    c.out = j.at("out").get<std::string>();
    c.format = j.at("format").get<std::string>();
    return c;
}

std::string config_hash(const ExperimentConfig& c) {
    json j = to_json(c);
    j.erase("out");
    j.erase("format");
    j.erase("threads");
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

cplx parse_complex(const std::string& s) {
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char sep = 0;
    if (!(in >> re)) throw DomainError("invalid complex value '" + s + "'");
    if (in >> sep) {
        if (sep != ',' || !(in >> im)) throw DomainError("invalid complex value '" + s + "'");
    }
    if (in >> sep) throw DomainError("invalid complex value '" + s + "'");
    return {re, im};
}

void validate(const ExperimentConfig& c) {
    bool known = false;
    for (const auto& s : subcommands()) known = known || s == c.command;
    require(known, "unknown subcommand '" + c.command + "'");
    const AtomDistribution atom = AtomDistribution::parse(c.ensemble);
    AtomDistribution::parse(c.ensemble_b);
    require(c.n >= 1, "n must be positive");
    require(c.samples >= 1, "samples must be positive");
    require(std::isfinite(c.z.real()) && std::isfinite(c.z.imag()), "z must be finite");
    require(std::isfinite(c.w.real()) && std::isfinite(c.w.imag()), "w must be finite");
    require(!c.r.empty(), "at least one radius is required");
    for (double r : c.r) require(std::isfinite(r) && r > 0.0, "radii must be positive");
    require(c.method == "auto" || c.method == "direct" || c.method == "hessenberg",
            "method must be auto, direct or hessenberg");
    require(c.format.empty() || c.format == "csv" || c.format == "json", "format must be csv or json");
    require(c.threads >= 0, "threads must be nonnegative");
    require(c.test_radius > 0.0 && std::isfinite(c.test_radius), "test radius must be positive");
    if (c.method == "hessenberg") {
        require(atom.is_gaussian(), "the Hessenberg path needs a gaussian ensemble");
        require(c.n >= 2, "the Hessenberg path needs n >= 2");
    }
    if (c.command == "kernel-eval" && c.real_kernel) {
        require(c.n % 2 == 0, "the real kernel needs even n");
        require(c.z.imag() >= 0.0 && c.w.imag() >= 0.0, "real kernel arguments must lie in the closed upper half-plane");
    }
    if (c.command == "real-count") {
        require(atom.field() == Field::real, "real-count needs a real ensemble");
        require(c.n % 2 == 0, "real-count needs even n");
        require(c.samples >= 2, "real-count needs at least two samples");
    }
    if (c.command == "clt") require(c.samples >= 2, "clt needs at least two samples");
    if (c.command == "local-law")
        for (double r : c.r) require(r >= 1.0, "local-law radii must be at least 1");
    if (c.command == "universality")
        require(AtomDistribution::parse(c.ensemble_b).field() == atom.field(),
                "universality compares ensembles over the same field");
    if (c.command == "jensen-count") {
        require(c.nodes >= 8 && c.nodes % 2 == 0, "nodes must be even and at least 8");
        require(c.r.front() - 1.5 / c.n > 0.0, "jensen-count radius too small for n");
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rmtlab: random matrix experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key = value file");

    ExperimentConfig c;
    std::string z = "0", w = "0";
    app.add_option("--ensemble", c.ensemble, "Atom law: gaussian-c, gaussian-r, bernoulli-c, bernoulli-r, fourmatch-c, fourmatch-r");
    app.add_option("--ensemble-b", c.ensemble_b, "Second ensemble for universality");
    app.add_option("--n", c.n, "Matrix size");
    app.add_option("--z", z, "Point or anchor as re or re,im (normalized for local-law, clt, universality, jensen-count and logdet-concentration)");
    app.add_option("--w", w, "Second kernel argument as re or re,im");
    app.add_option("--r", c.r, "Radius or comma separated radii")->delimiter(',');
    app.add_option("--samples", c.samples, "Number of replicates");
    app.add_option("--seed", c.seed, "Base seed");
    app.add_option("--method", c.method, "Sampling path: auto, direct, hessenberg");
    app.add_flag("--real", c.real_kernel, "kernel-eval: evaluate the real 2x2 matrix kernel");
    app.add_option("--test-radius", c.test_radius, "universality: radius of the bump test function");
    app.add_option("--nodes", c.nodes, "jensen-count: quadrature nodes per circle");
    app.add_option("--threads", c.threads, "Worker threads (0 = available cores)");
    app.add_option("--out", c.out, "Artifact path (.json summary, or .csv samples plus .json summary)");
    app.add_option("--format", c.format, "csv or json (default from --out extension)");
    static const std::map<std::string, std::string> blurbs{
        {"sample-spectrum", "Eigenvalues of one sampled matrix"},
        {"kernel-eval", "Evaluate K_n(z, w), or the real matrix kernel with --real"},
        {"logdet-concentration", "Samples of log|det(M - sqrt(n) z)| against the deterministic target"},
        {"local-law", "Eigenvalue counts in disks of radius r around sqrt(n) z"},
        {"clt", "Moments of the disk count N(sqrt(n) z, r)"},
        {"real-count", "Number of real eigenvalues of a real ensemble"},
        {"universality", "Smoothed one-point statistic for two ensembles and their gap"},
        {"jensen-count", "Eigenvalue counts from log|det| on circles against direct counts"},
    };
    for (const auto& name : subcommands()) app.add_subcommand(name, blurbs.at(name))->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        c.command = app.get_subcommands().front()->get_name();
        c.z = parse_complex(z);
        c.w = parse_complex(w);
        validate(c);
        const Artifacts art = resolve_artifacts(c);
        Result r = dispatch(c);
        json summary = json::object();
        summary["config"] = to_json(c);
        summary["seed"] = c.seed;
        summary["config_hash"] = config_hash(c);
        summary["result"] = r.summary;
        if (!art.csv_path.empty()) write_file(art.csv_path, r.csv);
        if (!art.json_path.empty()) write_file(art.json_path, summary.dump(2) + "\n");
        out << r.line << "\n";
        return kOk;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    }
}

}  // namespace rmtlab::cli
