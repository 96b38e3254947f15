#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scarham/hamiltonian.hpp"
#include "scarham/rng.hpp"
#include "scarham/stabilizer_group.hpp"

namespace scarham {
namespace spectral {

// Dense eigensolver caps: the full space tops out at 2^14, a parity sector of
// a 16-site model at the same 2^14 columns.
inline constexpr std::size_t kFullDenseCap = 14;
inline constexpr std::size_t kSectorDenseCap = 16;

// Near-zero window, relative to spectral width. The certified eigenvalue is
// exactly zero, so the tolerance only absorbs floating-point error.
inline constexpr double kZeroTol = 1e-8;

// Joint eigensector of the whole-system X parity (product of sigma^X) and
// Z parity (product of sigma^Z); each sign is +1 or -1.
struct SectorLabel {
    int x_parity = 1;
    int z_parity = 1;

    bool operator==(const SectorLabel&) const = default;
};

// True iff conjugating every term by the parity operator leaves it fixed:
// X parity flips terms with odd Z+Y content, Z parity those with odd X+Y.
bool commutes_with_x_parity(const ham::HamiltonianTerms& h);
bool commutes_with_z_parity(const ham::HamiltonianTerms& h);

// Immutable result of one dense diagonalization. Eigenvalues ascend; when
// kept, eigenvectors are column-major in the report's own coordinates (the
// computational basis, or the paired sector basis when `sector` is set).
struct SpectrumReport {
    std::size_t n_qubits = 0;
    std::vector<double> eigenvalues;
    std::vector<std::complex<double>> eigenvectors;
    bool vectors_kept = false;
    std::optional<SectorLabel> sector;
    // Sector pair representatives, ascending: basis vector j is
    // (|reps[j]> + x_parity |~reps[j]>)/sqrt(2).
    std::vector<std::uint64_t> reps;

    std::size_t dim() const { return eigenvalues.size(); }
    double spectral_width() const;

    // Eigenvector k as a full 2^N computational-basis vector (lifts sector
    // coordinates). Requires vectors_kept.
    std::vector<std::complex<double>> eigenvector_full(std::size_t k) const;
};

// Dense exact diagonalization, real-symmetric fast path when every term has
// an even number of Y sites. A sector request projects onto the joint parity
// eigenspace first; it requires an even number of sites and a Hamiltonian
// that commutes with both parity operators.
SpectrumReport diagonalize(const ham::HamiltonianTerms& h,
                           std::optional<SectorLabel> sector = std::nullopt,
                           bool keep_vectors = true);

// |<v_k|scar>|^2 for every eigenvector; sector reports project the scar into
// sector coordinates first, so weight outside the sector is simply absent.
std::vector<double> eigenstate_overlaps(const SpectrumReport& report,
                                        const std::vector<std::complex<double>>& scar);

struct ScarOverlap {
    double value = 0.0;
    std::size_t n_states = 0;      // eigenstates inside the near-zero window
    bool empty_eigenspace = false;  // no eigenvalue within zero_tol * width
};

// Squared norm of the scar's projection onto the span of eigenvectors with
// |E| <= zero_tol * spectral_width. The scar must be unit norm.
ScarOverlap scar_overlap(const SpectrumReport& report,
                         const std::vector<std::complex<double>>& scar,
                         double zero_tol = kZeroTol);

// Von Neumann entropy (nats) of the mask side of every eigenvector.
std::vector<double> eigenstate_entropies(const SpectrumReport& report,
                                         const stab::BipartitionMask& mask);

// Entropy of a single pure state for the mask side.
double state_entropy(const std::vector<std::complex<double>>& state,
                     const stab::BipartitionMask& mask);

struct LevelStatistics {
    std::vector<double> normalized_spacings;  // s / mean(s) over the window
    double mean_r = 0.0;                      // mean of min(s_i, s_{i+1}) / max(...)
    std::vector<double> bin_edges;            // n_bins + 1 edges from 0
    std::vector<double> bin_density;          // normalized so sum(density * width) = 1
    bool small_sample = false;                // fewer than 50 levels in the window
    bool degenerate = false;                  // a spacing collapsed below resolution
};

// Spacing statistics of the central `window` fraction of a sorted spectrum.
LevelStatistics level_statistics(const std::vector<double>& eigenvalues, double window = 0.5,
                                 std::size_t n_bins = 24);
LevelStatistics level_statistics(const SpectrumReport& report, double window = 0.5,
                                 std::size_t n_bins = 24);

enum class Ensemble { goe, gue, poisson };

struct EnsembleBand {
    double mean = 0.0;
    double sigma = 0.0;
    double lo = 0.0;  // mean - 3 sigma
    double hi = 0.0;  // mean + 3 sigma

    bool contains(double r) const { return r >= lo && r <= hi; }
};

// Mean adjacent-gap ratio band for an ensemble at the given dimension,
// estimated from `n_samples` sampled spectra over the same central window.
// Random-matrix ensembles are drawn in their tridiagonal form, so large
// dimensions stay cheap; results are cached per argument tuple.
EnsembleBand reference_band(Ensemble ensemble, std::size_t dim, std::size_t n_samples = 100,
                            double window = 0.5, std::uint64_t seed = 20240901);

// One spectrum draw from the tridiagonal (or Poisson) ensemble; exposed so
// tests can cross-check the tridiagonal trick against dense sampling.
std::vector<double> sample_ensemble_spectrum(Ensemble ensemble, std::size_t dim, Rng& rng);

struct OverlapBound {
    double epsilon = 0.0;    // ||H scar||
    double width_lb = 0.0;   // Lanczos lower bound on the spectral width
    double bound = 0.0;      // >= 1 - (epsilon / (zero_tol * width_lb))^2, clamped at 0
    bool valid = false;      // width bound positive and epsilon finite
};

// Rigorous lower bound on the near-zero scar overlap without eigenvectors:
// 1 - overlap <= (||H scar|| / (zero_tol * width))^2 and the Lanczos Ritz
// spread only underestimates the width. Useful past the dense-vector cap.
OverlapBound scar_overlap_bound(const ham::HamiltonianTerms& h,
                                const std::vector<std::complex<double>>& scar,
                                double zero_tol = kZeroTol, std::size_t iterations = 40,
                                std::uint64_t seed = 1);

// CSV emitters. Columns, in order:
//   scatter: index,energy,entropy,scar_overlap
//   histogram: bin_left,bin_right,density
std::string scatter_csv(const SpectrumReport& report, const std::vector<double>& entropies,
                        const std::vector<double>& overlaps);
std::string spacing_histogram_csv(const LevelStatistics& stats);

}  // namespace spectral
}  // namespace scarham
