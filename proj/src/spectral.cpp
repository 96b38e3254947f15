#include "scarham/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <type_traits>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace scarham {
namespace spectral {

namespace {

using Cd = std::complex<double>;

void check_lapack(lapack_int info, const char* what) {
    if (info != 0)
        throw std::runtime_error(std::string(what) + " failed with info " + std::to_string(info));
}

bool all_terms_real(const ham::HamiltonianTerms& h) {
    for (const auto& t : h.terms())
        if (t.op.y_count() % 2 == 1) return false;
    return true;
}

std::size_t parity_bit(std::uint64_t s) { return static_cast<std::size_t>(std::popcount(s)) & 1; }

// Eigenvalues of a symmetric tridiagonal matrix, ascending. Destroys inputs.
std::vector<double> tridiag_eigenvalues(std::vector<double> diag, std::vector<double> off) {
    check_lapack(LAPACKE_dsterf(static_cast<lapack_int>(diag.size()), diag.data(), off.data()),
                 "tridiagonal eigensolver");
    return diag;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

bool commutes_with_x_parity(const ham::HamiltonianTerms& h) {
    for (const auto& t : h.terms())
        if (t.op.z_bits().popcount() % 2 == 1) return false;
    return true;
}

bool commutes_with_z_parity(const ham::HamiltonianTerms& h) {
    for (const auto& t : h.terms())
        if (t.op.x_bits().popcount() % 2 == 1) return false;
    return true;
}

double SpectrumReport::spectral_width() const {
    if (eigenvalues.empty()) return 0.0;
    return eigenvalues.back() - eigenvalues.front();
}

std::vector<Cd> SpectrumReport::eigenvector_full(std::size_t k) const {
    if (!vectors_kept) throw std::invalid_argument("eigenvectors were not retained");
    const std::size_t d = dim();
    if (k >= d) throw std::invalid_argument("eigenvector index out of range");
    if (!sector) return {eigenvectors.begin() + k * d, eigenvectors.begin() + (k + 1) * d};
    const std::uint64_t mask = (std::uint64_t{1} << n_qubits) - 1;
    const double sx = sector->x_parity;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Cd> v(std::size_t{1} << n_qubits, Cd{0.0, 0.0});
    for (std::size_t j = 0; j < d; ++j) {
        const Cd c = eigenvectors[j + k * d] * inv_sqrt2;
        v[reps[j]] += c;
        v[~reps[j] & mask] += sx * c;
    }
    return v;
}

SpectrumReport diagonalize(const ham::HamiltonianTerms& h, std::optional<SectorLabel> sector,
                           bool keep_vectors) {
    const std::size_t n = h.n_qubits();
    SpectrumReport rep;
    rep.n_qubits = n;
    rep.sector = sector;
    const bool real_path = all_terms_real(h);

    std::size_t dim = 0;
    if (sector) {
        if (n > kSectorDenseCap)
            throw resource_error("sector diagonalization is capped at " +
                                 std::to_string(kSectorDenseCap) + " sites");
        if (n < 2 || n % 2 != 0)
            throw std::invalid_argument("parity sectors need an even number of sites");
        if (std::abs(sector->x_parity) != 1 || std::abs(sector->z_parity) != 1)
            throw std::invalid_argument("parity signs must be +1 or -1");
        if (!commutes_with_x_parity(h) || !commutes_with_z_parity(h))
            throw std::invalid_argument(
                "hamiltonian does not commute with both parity operators");
        const std::uint64_t dimf = std::uint64_t{1} << n;
        const std::uint64_t mask = dimf - 1;
        const std::size_t want = sector->z_parity == 1 ? 0 : 1;
        for (std::uint64_t s = 0; s < dimf; ++s)
            if (s < (~s & mask) && parity_bit(s) == want) rep.reps.push_back(s);
        dim = rep.reps.size();
    } else {
        if (n > kFullDenseCap)
            throw resource_error("full-space diagonalization is capped at " +
                                 std::to_string(kFullDenseCap) + " sites");
        dim = std::size_t{1} << n;
    }

    // Accumulate one matrix entry per (term, column, source-half).
    const auto accumulate = [&](auto& a) {
        using Entry = typename std::decay_t<decltype(a)>::value_type;
        if (!sector) {
            for (const auto& t : h.terms()) {
                for (std::uint64_t s = 0; s < dim; ++s) {
                    const auto img = t.op.apply_to_basis(s);
                    if constexpr (std::is_same_v<Entry, double>)
                        a[img.state + s * dim] += t.coeff * img.amp.real();
                    else
                        a[img.state + s * dim] += t.coeff * img.amp;
                }
            }
            return;
        }
        const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
        const double sx = sector->x_parity;
        for (const auto& t : h.terms()) {
            for (std::size_t j = 0; j < dim; ++j) {
                const std::uint64_t s = rep.reps[j];
                for (int half = 0; half < 2; ++half) {
                    const std::uint64_t u = half == 0 ? s : (~s & mask);
                    const double wu = half == 0 ? 0.5 : 0.5 * sx;
                    const auto img = t.op.apply_to_basis(u);
                    const std::uint64_t r = std::min(img.state, ~img.state & mask);
                    const auto it =
                        std::lower_bound(rep.reps.begin(), rep.reps.end(), r);
                    const std::size_t i =
                        static_cast<std::size_t>(it - rep.reps.begin());
                    const double st = img.state == r ? 1.0 : sx;
                    if constexpr (std::is_same_v<Entry, double>)
                        a[i + j * dim] += t.coeff * img.amp.real() * wu * st;
                    else
                        a[i + j * dim] += t.coeff * img.amp * wu * st;
                }
            }
        }
    };

    rep.eigenvalues.assign(dim, 0.0);
    const char jobz = keep_vectors ? 'V' : 'N';
    const auto ld = static_cast<lapack_int>(dim);
    if (dim == 0) {
        rep.vectors_kept = keep_vectors;
        return rep;
    }
    if (real_path) {
        std::vector<double> a(dim * dim, 0.0);
        accumulate(a);
        check_lapack(LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', ld, a.data(), ld,
                                    rep.eigenvalues.data()),
                     "symmetric eigensolver");
        if (keep_vectors) rep.eigenvectors.assign(a.begin(), a.end());
    } else {
        std::vector<Cd> a(dim * dim, Cd{0.0, 0.0});
        accumulate(a);
        check_lapack(LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', ld, a.data(), ld,
                                    rep.eigenvalues.data()),
                     "hermitian eigensolver");
        if (keep_vectors) rep.eigenvectors = std::move(a);
    }
    rep.vectors_kept = keep_vectors;
    return rep;
}

std::vector<double> eigenstate_overlaps(const SpectrumReport& report,
                                        const std::vector<Cd>& scar) {
    if (!report.vectors_kept) throw std::invalid_argument("eigenvectors were not retained");
    if (scar.size() != (std::size_t{1} << report.n_qubits))
        throw std::invalid_argument("scar vector dimension mismatch");
    double norm2 = 0.0;
    for (const auto& v : scar) norm2 += std::norm(v);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("scar state must be unit norm");

    const std::size_t d = report.dim();
    std::vector<Cd> coords;
    if (report.sector) {
        const std::uint64_t mask = (std::uint64_t{1} << report.n_qubits) - 1;
        const double sx = report.sector->x_parity;
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        coords.resize(d);
        for (std::size_t j = 0; j < d; ++j)
            coords[j] =
                (scar[report.reps[j]] + sx * scar[~report.reps[j] & mask]) * inv_sqrt2;
    } else {
        coords = scar;
    }
    std::vector<double> out(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        Cd dot{0.0, 0.0};
        const Cd* col = report.eigenvectors.data() + k * d;
        for (std::size_t j = 0; j < d; ++j) dot += std::conj(col[j]) * coords[j];
        out[k] = std::norm(dot);
    }
    return out;
}

ScarOverlap scar_overlap(const SpectrumReport& report, const std::vector<Cd>& scar,
                         double zero_tol) {
    if (!(zero_tol >= 0.0)) throw std::invalid_argument("zero tolerance must be nonnegative");
    const auto overlaps = eigenstate_overlaps(report, scar);
    const double threshold = zero_tol * report.spectral_width();
    ScarOverlap result;
    for (std::size_t k = 0; k < overlaps.size(); ++k) {
        if (std::abs(report.eigenvalues[k]) <= threshold) {
            result.value += overlaps[k];
            ++result.n_states;
        }
    }
    result.empty_eigenspace = result.n_states == 0;
    return result;
}

double state_entropy(const std::vector<Cd>& state, const stab::BipartitionMask& mask) {
    const std::size_t n = mask.n_sites();
    if (state.size() != (std::size_t{1} << n))
        throw std::invalid_argument("state dimension does not match the mask");
    if (mask.count() == 0 || mask.count() == n)
        throw std::invalid_argument("bipartition must be a proper nonempty subset");

    // Trace out the larger side: the reduced matrix lives on the smaller one.
    const bool flip = mask.count() > n - mask.count();
    std::vector<std::size_t> a_sites, b_sites;
    for (std::size_t i = 0; i < n; ++i)
        (mask.test(i) != flip ? a_sites : b_sites).push_back(i);
    const std::size_t na = a_sites.size();
    const std::size_t dim_a = std::size_t{1} << na;
    const std::size_t dim_b = std::size_t{1} << b_sites.size();

    std::vector<Cd> m(dim_a * dim_b);
    for (std::uint64_t s = 0; s < state.size(); ++s) {
        std::size_t a = 0, b = 0;
        for (std::size_t i = 0; i < na; ++i) a |= ((s >> a_sites[i]) & 1) << i;
        for (std::size_t i = 0; i < b_sites.size(); ++i) b |= ((s >> b_sites[i]) & 1) << i;
        m[a + dim_a * b] = state[s];
    }
    std::vector<Cd> rho(dim_a * dim_a, Cd{0.0, 0.0});
    for (std::size_t b = 0; b < dim_b; ++b) {
        const Cd* col = m.data() + dim_a * b;
        for (std::size_t a2 = 0; a2 < dim_a; ++a2) {
            const Cd cj = std::conj(col[a2]);
            if (cj == Cd{0.0, 0.0}) continue;
            for (std::size_t a1 = 0; a1 < dim_a; ++a1) rho[a1 + dim_a * a2] += col[a1] * cj;
        }
    }
    std::vector<double> evals(dim_a, 0.0);
    check_lapack(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', static_cast<lapack_int>(dim_a),
                                rho.data(), static_cast<lapack_int>(dim_a), evals.data()),
                 "density matrix eigensolver");
    double s = 0.0;
    for (const double p : evals)
        if (p > 1e-14) s -= p * std::log(p);
    return s;
}

std::vector<double> eigenstate_entropies(const SpectrumReport& report,
                                         const stab::BipartitionMask& mask) {
    if (!report.vectors_kept) throw std::invalid_argument("eigenvectors were not retained");
    if (mask.n_sites() != report.n_qubits)
        throw std::invalid_argument("bipartition mask width mismatch");
    std::vector<double> out(report.dim(), 0.0);
    for (std::size_t k = 0; k < report.dim(); ++k)
        out[k] = state_entropy(report.eigenvector_full(k), mask);
    return out;
}

LevelStatistics level_statistics(const std::vector<double>& eigenvalues, double window,
                                 std::size_t n_bins) {
    if (!(window > 0.0) || window > 1.0)
        throw std::invalid_argument("window must be a fraction in (0, 1]");
    if (n_bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    if (eigenvalues.size() < 3)
        throw std::invalid_argument("level statistics need at least 3 eigenvalues");
    std::vector<double> e = eigenvalues;
    std::sort(e.begin(), e.end());

    const std::size_t keep =
        std::max<std::size_t>(3, static_cast<std::size_t>(std::llround(window * e.size())));
    const std::size_t lo = (e.size() - std::min(keep, e.size())) / 2;
    const std::size_t hi = std::min(lo + keep, e.size());

    LevelStatistics stats;
    stats.small_sample = (hi - lo) < 50;
    std::vector<double> spacings;
    spacings.reserve(hi - lo - 1);
    for (std::size_t i = lo + 1; i < hi; ++i) spacings.push_back(e[i] - e[i - 1]);
    const double window_width = e[hi - 1] - e[lo];
    double mean = 0.0;
    for (const double s : spacings) {
        mean += s;
        if (s <= 1e-12 * window_width) stats.degenerate = true;
    }
    mean /= static_cast<double>(spacings.size());

    stats.normalized_spacings.resize(spacings.size(), 0.0);
    if (mean > 0.0)
        for (std::size_t i = 0; i < spacings.size(); ++i)
            stats.normalized_spacings[i] = spacings[i] / mean;

    double r_sum = 0.0;
    for (std::size_t i = 0; i + 1 < spacings.size(); ++i) {
        const double mx = std::max(spacings[i], spacings[i + 1]);
        const double mn = std::min(spacings[i], spacings[i + 1]);
        r_sum += mx > 0.0 ? mn / mx : 1.0;
    }
    stats.mean_r = r_sum / static_cast<double>(spacings.size() - 1);

    double top = 0.0;
    for (const double s : stats.normalized_spacings) top = std::max(top, s);
    if (top <= 0.0) top = 1.0;
    stats.bin_edges.resize(n_bins + 1);
    stats.bin_density.assign(n_bins, 0.0);
    const double width = top / static_cast<double>(n_bins);
    for (std::size_t i = 0; i <= n_bins; ++i)
        stats.bin_edges[i] = width * static_cast<double>(i);
    for (const double s : stats.normalized_spacings) {
        auto bin = static_cast<std::size_t>(s / width);
        if (bin >= n_bins) bin = n_bins - 1;
        stats.bin_density[bin] += 1.0;
    }
    const double total = static_cast<double>(stats.normalized_spacings.size());
    for (auto& d : stats.bin_density) d /= total * width;
    return stats;
}

LevelStatistics level_statistics(const SpectrumReport& report, double window,
                                 std::size_t n_bins) {
    return level_statistics(report.eigenvalues, window, n_bins);
}

std::vector<double> sample_ensemble_spectrum(Ensemble ensemble, std::size_t dim, Rng& rng) {
    if (dim < 3) throw std::invalid_argument("ensemble spectra need dimension >= 3");
    if (ensemble == Ensemble::poisson) {
        std::vector<double> e(dim);
        double acc = 0.0;
        for (auto& v : e) {
            acc += -std::log1p(-rng.uniform01());
            v = acc;
        }
        return e;
    }
    // Tridiagonal beta-ensemble: same joint eigenvalue density as the dense
    // Gaussian ensembles, at O(dim^2) solve cost.
    const double beta = ensemble == Ensemble::goe ? 1.0 : 2.0;
    std::vector<double> diag(dim), off(dim - 1);
    for (auto& v : diag) v = rng.normal();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i + 1 < dim; ++i)
        off[i] = rng.chi(beta * static_cast<double>(dim - 1 - i)) * inv_sqrt2;
    return tridiag_eigenvalues(std::move(diag), std::move(off));
}

EnsembleBand reference_band(Ensemble ensemble, std::size_t dim, std::size_t n_samples,
                            double window, std::uint64_t seed) {
    if (n_samples < 2) throw std::invalid_argument("reference band needs >= 2 samples");

    using Key = std::tuple<int, std::size_t, std::size_t, double, std::uint64_t>;
    static std::map<Key, EnsembleBand> cache;
    static std::mutex cache_mutex;
    const Key key{static_cast<int>(ensemble), dim, n_samples, window, seed};
    {
        const std::lock_guard<std::mutex> lock(cache_mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    Rng rng(seed);
    std::vector<double> rs(n_samples);
    for (auto& r : rs)
        r = level_statistics(sample_ensemble_spectrum(ensemble, dim, rng), window).mean_r;
    double mean = 0.0;
    for (const double r : rs) mean += r;
    mean /= static_cast<double>(n_samples);
    double var = 0.0;
    for (const double r : rs) var += (r - mean) * (r - mean);
    var /= static_cast<double>(n_samples - 1);

    EnsembleBand band;
    band.mean = mean;
    band.sigma = std::sqrt(var);
    band.lo = mean - 3.0 * band.sigma;
    band.hi = mean + 3.0 * band.sigma;
    {
        const std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(key, band);
    }
    return band;
}

OverlapBound scar_overlap_bound(const ham::HamiltonianTerms& h, const std::vector<Cd>& scar,
                                double zero_tol, std::size_t iterations, std::uint64_t seed) {
    if (!(zero_tol > 0.0)) throw std::invalid_argument("zero tolerance must be positive");
    const std::size_t dim = std::size_t{1} << h.n_qubits();
    if (scar.size() != dim) throw std::invalid_argument("scar vector dimension mismatch");

    OverlapBound out;
    out.epsilon = ham::residual_norm(h, scar);

    // Lanczos with full reorthogonalization; Ritz extremes only shrink the
    // width, which keeps the bound valid.
    const std::size_t m = std::min(iterations, dim);
    Rng rng(seed);
    std::vector<std::vector<Cd>> basis;
    std::vector<double> alpha, beta;
    std::vector<Cd> v(dim);
    double norm2 = 0.0;
    for (auto& x : v) {
        x = {rng.normal(), rng.normal()};
        norm2 += std::norm(x);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    basis.push_back(v);

    for (std::size_t j = 0; j < m; ++j) {
        auto w = ham::apply(h, basis[j]);
        if (j > 0)
            for (std::size_t i = 0; i < dim; ++i) w[i] -= beta[j - 1] * basis[j - 1][i];
        Cd a{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) a += std::conj(basis[j][i]) * w[i];
        alpha.push_back(a.real());
        for (std::size_t i = 0; i < dim; ++i) w[i] -= a.real() * basis[j][i];
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                Cd c{0.0, 0.0};
                for (std::size_t i = 0; i < dim; ++i) c += std::conj(b[i]) * w[i];
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * b[i];
            }
        }
        double wn2 = 0.0;
        for (const auto& x : w) wn2 += std::norm(x);
        const double bnorm = std::sqrt(wn2);
        if (j + 1 == m || bnorm < 1e-12 * (1.0 + std::abs(a.real()))) break;
        beta.push_back(bnorm);
        for (auto& x : w) x /= bnorm;
        basis.push_back(std::move(w));
    }

    const auto ritz = tridiag_eigenvalues(alpha, beta);
    out.width_lb = ritz.empty() ? 0.0 : ritz.back() - ritz.front();
    out.valid = out.width_lb > 0.0 && std::isfinite(out.epsilon);
    if (out.valid) {
        const double miss = out.epsilon / (zero_tol * out.width_lb);
        out.bound = std::max(0.0, 1.0 - miss * miss);
    }
    return out;
}

std::string scatter_csv(const SpectrumReport& report, const std::vector<double>& entropies,
                        const std::vector<double>& overlaps) {
    if (entropies.size() != report.dim() || overlaps.size() != report.dim())
        throw std::invalid_argument("scatter columns must match the eigenvalue count");
    std::string out = "index,energy,entropy,scar_overlap\n";
    for (std::size_t k = 0; k < report.dim(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += format_double(report.eigenvalues[k]);
        out += ',';
        out += format_double(entropies[k]);
        out += ',';
        out += format_double(overlaps[k]);
        out += '\n';
    }
    return out;
}

std::string spacing_histogram_csv(const LevelStatistics& stats) {
    std::string out = "bin_left,bin_right,density\n";
    for (std::size_t i = 0; i < stats.bin_density.size(); ++i) {
        out += format_double(stats.bin_edges[i]);
        out += ',';
        out += format_double(stats.bin_edges[i + 1]);
        out += ',';
        out += format_double(stats.bin_density[i]);
        out += '\n';
    }
    return out;
}

}  // namespace spectral
}  // namespace scarham
