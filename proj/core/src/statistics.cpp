#include "rmtlab/statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "rmtlab/errors.hpp"

namespace rmtlab {

namespace {

constexpr double kPi = std::numbers::pi;

double sample_variance(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

cplx uniform_in_disk(cplx center, double radius, Rng& rng) {
    const double rho = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * kPi * rng.uniform();
    return center + std::polar(rho, theta);
}

}  // namespace

double MCEstimate::se() const { return std::sqrt(variance); }

MCEstimate estimate_from_values(const std::vector<double>& values) {
    require(!values.empty(), "estimate_from_values: no samples");
    MCEstimate e;
    e.m = static_cast<long>(values.size());
    e.mean = mean_of(values);
    e.variance = sample_variance(values, e.mean) / static_cast<double>(e.m);
    return e;
}

MCEstimate monte_carlo(const std::function<double(Rng&)>& sampler, long m, Rng& rng) {
    require(m >= 1, "monte_carlo: m must be at least 1");
    std::vector<double> v(m);
    for (long i = 0; i < m; ++i) v[i] = sampler(rng);
    return estimate_from_values(v);
}

double TestFunction::value(cplx w) const {
    double s;
    if (support == Support::interval) {
        if (w.imag() != 0.0) return 0.0;
        s = w.real() * w.real() / (radius * radius);
    } else {
        s = std::norm(w) / (radius * radius);
    }
    if (s >= 1.0) return 0.0;
    const double t = 1.0 - s;
    const double t2 = t * t;
    return t2 * t2 * t2;
}

double TestFunction::laplacian(cplx w) const {
    require(support == Support::disk, "TestFunction: laplacian needs disk support");
    const double s = std::norm(w) / (radius * radius);
    if (s >= 1.0) return 0.0;
    const double t = 1.0 - s;
    const double t2 = t * t;
    return t2 * t2 * (144.0 * s - 24.0) / (radius * radius);
}

double TestFunction::green_weight(cplx w) const { return laplacian(w) / (2.0 * kPi); }

cplx TestFunction::spectral_center(int n) const { return center * std::sqrt(static_cast<double>(n)); }

double linear_statistic(const std::vector<cplx>& eigenvalues, int n, const TestFunction& f) {
    const cplx c = f.spectral_center(n);
    double s = 0.0;
    for (cplx z : eigenvalues) s += f.value(z - c);
    return s;
}

JensenCount jensen_count(const HessenbergLogDet& logdet, cplx z0, double r, int m_nodes, Rng& rng,
                         int max_attempts) {
    const int n = logdet.n();
    require(r >= 1.0 / n, "jensen_count: r must be at least 1/n");
    require(m_nodes >= 8 && m_nodes % 2 == 0, "jensen_count: m_nodes must be even and at least 8");
    require(max_attempts >= 1, "jensen_count: max_attempts must be positive");
    const double delta = 0.5 / n;
    require(r - 3.0 * delta > 0.0, "jensen_count: r too small for the radius jitter");

    JensenCount out;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        out.attempts = attempt;
        const double rho1 = rng.uniform(r - 2.0 * delta, r);
        const double rho2 = rho1 - delta;
        const double theta0 = rng.uniform(0.0, 2.0 * kPi / m_nodes);
        double full1 = 0.0, full2 = 0.0, half1 = 0.0, half2 = 0.0;
        bool ok = true;
        for (int k = 0; k < m_nodes && ok; ++k) {
            const cplx u = std::polar(1.0, theta0 + 2.0 * kPi * k / m_nodes);
            try {
                const double f1 = logdet(z0 + rho1 * u);
                const double f2 = logdet(z0 + rho2 * u);
                full1 += f1;
                full2 += f2;
                if (k % 2 == 0) half1 += f1, half2 += f2;
            } catch (const NumericalError&) {
                ok = false;
            }
        }
        if (!ok) continue;
        const double gap = std::log1p(delta / rho2);
        const double raw = (full1 - full2) / m_nodes / gap;
        const double raw_half = (half1 - half2) / (m_nodes / 2) / gap;
        const double rounded = std::round(raw);
        out.count = static_cast<long>(rounded);
        out.raw = raw;
        out.residual = std::abs(raw - rounded);
        out.rho_outer = rho1;
        out.rho_inner = rho2;
        if (out.residual <= 0.25 && std::abs(raw - raw_half) <= 0.2) return out;
    }
    throw NumericalError("jensen_count: circle repeatedly too close to an eigenvalue");
}

JensenCount jensen_count(const SquareMatrix& m, cplx z0, double r, int m_nodes, Rng& rng) {
    return jensen_count(HessenbergLogDet(m), z0, r, m_nodes, rng);
}

VarianceReducedEstimate variance_reduced_statistic(const HessenbergLogDet& logdet, const TestFunction& f, long m,
                                                   Rng& rng) {
    require(m >= 1, "variance_reduced_statistic: m must be at least 1");
    require(f.support == TestFunction::Support::disk, "variance_reduced_statistic: disk test function required");
    constexpr int kMaxRedraws = 100;
    const cplx c = f.spectral_center(logdet.n());
    const double area = kPi * f.radius * f.radius;

    VarianceReducedEstimate out;
    auto redraw = [&]() {
        if (++out.redraws > kMaxRedraws)
            throw NumericalError("variance_reduced_statistic: too many evaluations at eigenvalues");
    };

    double f0 = 0.0, fx = 0.0, fy = 0.0;
    for (;;) {
        out.anchor = uniform_in_disk(c, 1.0, rng);
        try {
            f0 = logdet(out.anchor);
            fx = logdet(out.anchor + 1.0);
            fy = logdet(out.anchor + cplx(0.0, 1.0));
            break;
        } catch (const NumericalError&) {
            redraw();
        }
    }
    auto affine = [&](cplx z) {
        const cplx d = z - out.anchor;
        return f0 + (fx - f0) * d.real() + (fy - f0) * d.imag();
    };

    std::vector<double> reduced(m), plain(m);
    for (long i = 0; i < m; ++i) {
        for (;;) {
            const cplx w = uniform_in_disk(c, f.radius, rng);
            try {
                const double g = logdet(w);
                const double h = area * f.green_weight(w - c);
                reduced[i] = (g - affine(w)) * h;
                plain[i] = g * h;
                break;
            } catch (const NumericalError&) {
                redraw();
            }
        }
    }
    out.reduced = estimate_from_values(reduced);
    out.plain = estimate_from_values(plain);
    return out;
}

VarianceReducedEstimate variance_reduced_statistic(const SquareMatrix& mat, const TestFunction& f, long m,
                                                   Rng& rng) {
    return variance_reduced_statistic(HessenbergLogDet(mat), f, m, rng);
}

double correlation_sum(const std::vector<cplx>& eigenvalues, int n, const std::vector<TestFunction>& tests) {
    const std::size_t k = tests.size();
    require(k >= 1 && k <= 3, "correlation_sum: k must lie in [1, 3]");
    std::vector<cplx> centers;
    for (const auto& t : tests) centers.push_back(t.spectral_center(n));

    // f[j] holds F_j at each eigenvalue inside the union of supports.
    std::vector<std::vector<double>> f(k);
    for (cplx z : eigenvalues) {
        bool inside = false;
        for (std::size_t j = 0; j < k; ++j) inside = inside || tests[j].value(z - centers[j]) != 0.0;
        if (!inside) continue;
        for (std::size_t j = 0; j < k; ++j) f[j].push_back(tests[j].value(z - centers[j]));
    }
    const std::size_t m = f[0].size();
    auto sum_prod = [&](std::initializer_list<std::size_t> idx) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double p = 1.0;
            for (std::size_t j : idx) p *= f[j][i];
            s += p;
        }
        return s;
    };
    if (k == 1) return sum_prod({0});
    if (k == 2) return sum_prod({0}) * sum_prod({1}) - sum_prod({0, 1});
    const double s1 = sum_prod({0}), s2 = sum_prod({1}), s3 = sum_prod({2});
    return s1 * s2 * s3 - sum_prod({0, 1}) * s3 - sum_prod({0, 2}) * s2 - sum_prod({1, 2}) * s1 +
           2.0 * sum_prod({0, 1, 2});
}

Rng replicate_rng(const EnsembleSpec& spec, long index) {
    return Rng(spec.seed, static_cast<std::uint64_t>(index) + 1);
}

Spectrum sample_spectrum(const EnsembleSpec& spec, Rng& rng, SamplingPath path) {
    require(spec.n >= 1, "sample_spectrum: n must be positive");
    bool hess = false;
    switch (path) {
        case SamplingPath::automatic:
            hess = spec.atom.is_gaussian() && spec.n >= 2;
            break;
        case SamplingPath::hessenberg:
            require(spec.atom.is_gaussian(), "sample_spectrum: the Hessenberg path needs a gaussian atom");
            require(spec.n >= 2, "sample_spectrum: the Hessenberg path needs n >= 2");
            hess = true;
            break;
        case SamplingPath::direct:
            break;
    }
    if (hess) return eigenvalues(hessenberg_matrix(spec.n, spec.atom.field(), rng));
    return eigenvalues(sample_matrix(spec, rng));
}

void parallel_for(long count, int threads, const std::function<void(long)>& body) {
    if (count <= 0) return;
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::min<long>(count, 1 << 20))));
    if (workers == 1) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

CorrelationEstimate smoothed_correlation_statistic(const EnsembleSpec& spec, const std::vector<TestFunction>& tests,
                                                   long samples, const RunOptions& options) {
    require(samples >= 1, "smoothed_correlation_statistic: samples must be positive");
    require(!tests.empty() && tests.size() <= 3, "smoothed_correlation_statistic: k must lie in [1, 3]");
    CorrelationEstimate out;
    out.values.resize(samples);
    parallel_for(samples, options.threads, [&](long i) {
        Rng rng = replicate_rng(spec, i);
        const Spectrum s = sample_spectrum(spec, rng, options.path);
        out.values[i] = correlation_sum(s.eigenvalues, spec.n, tests);
    });
    out.estimate = estimate_from_values(out.values);
    return out;
}

GapReport universality_gap(const EnsembleSpec& a, const EnsembleSpec& b, const std::vector<TestFunction>& tests,
                           long samples, const RunOptions& options) {
    require(a.n == b.n, "universality_gap: ensembles must share n");
    GapReport g;
    g.a = smoothed_correlation_statistic(a, tests, samples, options).estimate;
    g.b = smoothed_correlation_statistic(b, tests, samples, options).estimate;
    g.gap = g.a.mean - g.b.mean;
    g.combined_se = std::sqrt(g.a.variance + g.b.variance);
    g.matching_order = matching_order(a.atom, b.atom);
    return g;
}

double disk_intersection_area(cplx c1, double r1, cplx c2, double r2) {
    require(r1 >= 0.0 && r2 >= 0.0, "disk_intersection_area: radii must be nonnegative");
    const double d = std::abs(c1 - c2);
    if (d >= r1 + r2) return 0.0;
    if (d <= std::abs(r1 - r2)) {
        const double r = std::min(r1, r2);
        return kPi * r * r;
    }
    const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
    const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
    const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(0.0, k));
}

std::vector<LocalLawRow> local_law_experiment(const EnsembleSpec& spec, const std::vector<cplx>& anchors,
                                              const std::vector<double>& radii, long samples,
                                              const RunOptions& options) {
    require(samples >= 1, "local_law_experiment: samples must be positive");
    for (double r : radii) require(r >= 1.0, "local_law_experiment: r must be at least 1");
    const double root = std::sqrt(static_cast<double>(spec.n));
    std::vector<LocalLawRow> rows;
    for (cplx z0 : anchors) {
        for (double r : radii) {
            LocalLawRow row;
            row.anchor = z0;
            row.r = r;
            row.expected = disk_intersection_area(root * z0, r, 0.0, root) / kPi;
            rows.push_back(row);
        }
    }
    std::vector<std::vector<long>> counts(samples);
    parallel_for(samples, options.threads, [&](long i) {
        Rng rng = replicate_rng(spec, i);
        const Spectrum s = sample_spectrum(spec, rng, options.path);
        for (const auto& row : rows) counts[i].push_back(count_region(s, Disk{root * row.anchor, row.r}));
    });
    for (std::size_t k = 0; k < rows.size(); ++k) {
        auto& row = rows[k];
        double sum = 0.0, dev = 0.0;
        for (long i = 0; i < samples; ++i) {
            const double c = static_cast<double>(counts[i][k]);
            const double d = std::abs(c - row.expected) / row.r;
            sum += c;
            dev += d;
            row.max_deviation = std::max(row.max_deviation, d);
        }
        row.mean_count = sum / samples;
        row.mean_deviation = dev / samples;
    }
    return rows;
}

CltResult clt_experiment(const EnsembleSpec& spec, cplx z0, double r, long samples, const RunOptions& options) {
    require(samples >= 2, "clt_experiment: at least two samples required");
    require(r > 0.0, "clt_experiment: r must be positive");
    const double root = std::sqrt(static_cast<double>(spec.n));
    CltResult out;
    out.counts.resize(samples);
    parallel_for(samples, options.threads, [&](long i) {
        Rng rng = replicate_rng(spec, i);
        const Spectrum s = sample_spectrum(spec, rng, options.path);
        out.counts[i] = count_region(s, Disk{root * z0, r});
    });
    std::vector<double> v(out.counts.begin(), out.counts.end());
    out.mean = mean_of(v);
    out.variance = sample_variance(v, out.mean);
    out.mean_se = std::sqrt(out.variance / samples);
    double m3 = 0.0;
    for (double x : v) m3 += std::pow(x - out.mean, 3);
    m3 /= samples;
    out.skewness = out.variance > 0.0 ? m3 / std::pow(out.variance, 1.5) : 0.0;
    const double scale = std::sqrt(r) * std::pow(kPi, -0.25);
    out.moments.assign(4, 0.0);
    for (double x : v) {
        const double y = (x - r * r) / scale;
        double p = 1.0;
        for (int k = 0; k < 4; ++k) out.moments[k] += (p *= y);
    }
    for (double& m : out.moments) m /= samples;
    return out;
}

RealCountResult real_count_experiment(const EnsembleSpec& spec, long samples, const RunOptions& options) {
    require(spec.atom.field() == Field::real, "real_count_experiment: a real atom is required");
    require(spec.n >= 2 && spec.n % 2 == 0, "real_count_experiment: n must be even");
    require(samples >= 2, "real_count_experiment: at least two samples required");
    RealCountResult out;
    out.counts.resize(samples);
    parallel_for(samples, options.threads, [&](long i) {
        Rng rng = replicate_rng(spec, i);
        const Spectrum s = sample_spectrum(spec, rng, options.path);
        out.counts[i] = static_cast<long>(split_real_complex(s).reals.size());
    });
    std::vector<double> v(out.counts.begin(), out.counts.end());
    out.mean = mean_of(v);
    out.variance = sample_variance(v, out.mean);
    out.target_mean = std::sqrt(2.0 * spec.n / kPi);
    out.target_variance = (2.0 - std::sqrt(2.0)) * out.target_mean;
    return out;
}

}  // namespace rmtlab
