#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mscn/mixtures.hpp"
#include "mscn/numerics.hpp"

namespace mscn {

/// Raised when a mixture component collapses (effective size below d+1)
/// or the data cannot support the requested model.
class DegenerateComponentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FitConfig {
    std::size_t k = 1;
    double epsilon = 1e-3;       // Aitken tolerance
    std::size_t max_iter = 200;
    double eta_floor = 1.001;    // smallest admissible contamination degree
    double alpha_floor = 0.5;    // at least half the points are assumed good
    double alpha_cap = 0.999;    // keeps alpha strictly inside (0,1)
    double v_init = 0.99;
    MaximizeOptions cm2_opts{1e-6, 200};  // per component, per iteration
    std::uint64_t seed = 0;      // reserved for stochastic initializers; PAM is deterministic
    std::ostream* diagnostics = nullptr;  // line-delimited iteration records when set

    void validate() const;
};

struct ConvergenceInfo {
    bool converged = false;
    std::string reason;  // "aitken" or "max_iter"
};

struct FitState {
    Matrix z;             // n x k responsibilities
    Tensor3 v;            // n x d x k good-posteriors
    Vector loglik_trace;  // observed log-likelihood per iteration
    std::size_t iterations = 0;
    ConvergenceInfo convergence;
    std::size_t cm2_retained = 0;  // iterations where a component kept its previous scale
};

/// Deterministic PAM: greedy BUILD seeding, then best improving SWAP until
/// no exchange lowers the total dissimilarity. Returns cluster labels.
std::vector<int> init_kmedoids(const Matrix& data, std::size_t k);

/// Builds the starting model and state from hard labels: cluster means,
/// eigendecomposed cluster covariances, proportions, and near-Gaussian
/// contamination parameters; z is the label indicator matrix and v is
/// filled with cfg.v_init.
std::pair<MixtureModel, FitState> init_state(const Matrix& data, const std::vector<int>& labels,
                                             const FitConfig& cfg, Family family = Family::Mscnm);

/// Refreshes z and v from the posteriors of the current model.
void e_step(const Matrix& data, const MixtureModel& m, Matrix& z, Tensor3& v);

/// First conditional maximization: updates weights, alpha, mu, eta with
/// each component's orientation and scales held fixed.
void cm_step1(const Matrix& data, MixtureModel& m, const Matrix& z, const Tensor3& v,
              const FitConfig& cfg);

/// Second conditional maximization: per component, maximizes the
/// z-weighted log-likelihood over the Cholesky factor of the scale matrix
/// (log-parametrized diagonal), then back-transforms to orientation and
/// scales. Keeps the previous values when the optimizer fails to improve.
/// Returns the number of components that kept their previous values.
std::size_t cm_step2(const Matrix& data, MixtureModel& m, const Matrix& z, const FitConfig& cfg,
                     std::vector<double>& scratch);

/// Aitken-acceleration stopping rule on the last three trace entries.
bool aitken_converged(std::span<const double> loglik_trace, double epsilon);

/// The asymptotic log-likelihood gap the rule thresholds; NaN while it is
/// undefined (fewer than 3 entries or the a = 1 guard).
double aitken_gap(std::span<const double> loglik_trace);

std::pair<MixtureModel, FitState> fit(const Matrix& data, const FitConfig& cfg);
std::pair<MixtureModel, FitState> fit(const Matrix& data, const FitConfig& cfg,
                                      const std::vector<int>& init_labels);

/// EM for the multivariate normal mixture baseline: closed-form M-step,
/// same initialization and stopping rule.
std::pair<MixtureModel, FitState> fit_gaussian_baseline(const Matrix& data, const FitConfig& cfg);
std::pair<MixtureModel, FitState> fit_gaussian_baseline(const Matrix& data, const FitConfig& cfg,
                                                        const std::vector<int>& init_labels);

}  // namespace mscn
