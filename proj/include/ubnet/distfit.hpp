#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ubnet/rng.hpp"

namespace ubnet {

// Candidate degree-distribution families. All four are discrete models
// over integers >= x_min: the power law uses the Hurwitz-zeta
// normalization, exponential is the geometric form, lognormal is the
// continuous density evaluated at integers and renormalized, and the
// stretched exponential takes differences of the Weibull-type
// complementary CDF exp(-(lambda x)^beta).
enum class ModelKind {
    exponential,
    powerlaw,
    lognormal,
    stretched_exponential,
};

constexpr int kModelKindCount = 4;
const char* model_name(ModelKind kind);

struct CandidateModel {
    ModelKind kind;
    // lambda: exponential and stretched_exponential rate
    // alpha:  power-law exponent
    // mu, sigma: lognormal location and scale (of ln k)
    // beta:   stretched-exponential shape, in (0, 1]
    double lambda = 0.0;
    double alpha = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
    double beta = 0.0;
    int x_min = 1;

    // Cached log of the normalization constant over k >= x_min.
    double log_norm = 0.0;

    // Filled by the fit routines.
    double loglikelihood = 0.0;
    std::size_t n_tail = 0;
};

// Constructors validating parameter ranges and caching the normalizer.
CandidateModel make_exponential(double lambda, int x_min = 1);
CandidateModel make_powerlaw(double alpha, int x_min = 1);
CandidateModel make_lognormal(double mu, double sigma, int x_min = 1);
CandidateModel make_stretched_exponential(double lambda, double beta,
                                          int x_min = 1);

double log_pmf(const CandidateModel& m, std::int64_t k);
double pmf(const CandidateModel& m, std::int64_t k);

// Sum of counted log-pmf over observations >= m.x_min.
double log_likelihood(std::span<const std::uint32_t> degrees,
                      const CandidateModel& m);

struct FitOptions {
    // Pairwise comparisons with p below this level count as decisive.
    double significance = 0.1;
    // Power-law x_min search: candidate lower bounds are unique data
    // values, log-thinned to at most this many, each keeping a tail of
    // at least min_tail_size observations.
    std::size_t max_xmin_candidates = 75;
    std::size_t min_tail_size = 10;
};

// Maximum-likelihood fit of one family. The power law also selects x_min
// by minimizing the KS distance between the data tail and the fitted
// CDF; the other families fit at x_min = 1.
CandidateModel fit_model(std::span<const std::uint32_t> degrees,
                         ModelKind kind, const FitOptions& options = {});

// Fit with a fixed support bound (comparisons on a shared tail).
CandidateModel fit_model_at(std::span<const std::uint32_t> degrees,
                            ModelKind kind, int x_min,
                            const FitOptions& options = {});

struct ModelComparison {
    ModelKind a;
    ModelKind b;
    double r = 0.0;  // sum of pointwise log-likelihood differences; > 0 favors a
    double p = 1.0;  // Vuong normal-approximation p-value
    std::size_t n = 0;
    int support_min = 1;
};

// Normalized log-likelihood ratio test on the common support
// max(a.x_min, b.x_min). Callers must pass models fitted on that
// support; best_fit takes care of the refits.
ModelComparison compare_models(std::span<const std::uint32_t> degrees,
                               const CandidateModel& a,
                               const CandidateModel& b,
                               const FitOptions& options = {});

struct FitResult {
    std::vector<CandidateModel> models;        // one per ModelKind
    std::vector<ModelComparison> comparisons;  // all 6 unordered pairs
    ModelKind best;
    // Set when no comparison reached significance (or a significant
    // cycle left no undefeated model); `best` is then the highest
    // per-point log-likelihood model.
    bool inconclusive = false;
};

// Fits all four families, runs the 6 pairwise tests, and picks the model
// that is never significantly beaten; equal winners resolve to the model
// with more significant wins, then fewer parameters, then higher
// per-point log-likelihood.
FitResult best_fit(std::span<const std::uint32_t> degrees,
                   const FitOptions& options = {});

// Inverse-CDF sampler for any candidate model; exact for the model's own
// discrete PMF. Used by the generator-recovery suites.
std::vector<std::uint32_t> sample_model(const CandidateModel& m,
                                        std::size_t n, SplitMix64& rng);

// Hurwitz zeta sum_{j>=0} (q + j)^-s for s > 1, q >= 1 (exposed for the
// numeric tests).
double hurwitz_zeta(double s, double q);

}  // namespace ubnet
