#pragma once

#include <span>
#include <string>
#include <vector>

#include "mscn/distributions.hpp"
#include "mscn/matrix.hpp"

namespace mscn {

enum class Family {
    Mscnm,  // multiple scaled contaminated normal mixture
    Mnm,    // multivariate normal mixture (alpha, eta pinned at 1)
};

const char* to_string(Family f);
Family family_from_string(const std::string& s);

struct MixtureModel {
    Family family = Family::Mscnm;
    Vector weights;
    std::vector<MscnParams> components;

    std::size_t k() const { return components.size(); }
    std::size_t d() const { return components.empty() ? 0 : components.front().dim(); }

    void validate() const;
};

/// Output of the two-step MAP classification: cluster labels, then per
/// rotated dimension a good/bad verdict from the assigned component's
/// posterior (v >= 0.5 counts as good).
struct ClassificationReport {
    std::vector<int> labels;                     // n MAP cluster assignments
    Mask good_flags;                             // n x d, true = good
    Matrix z_hat;                                // n x k responsibilities
    Tensor3 v_hat;                               // n x d x k good-posteriors
    std::vector<std::size_t> outliers_per_dimension;  // count of bad flags per dimension
};

double mixture_logpdf(std::span<const double> x, const MixtureModel& m);

/// Sum of mixture_logpdf over the rows of data.
double observed_loglik(const Matrix& data, const MixtureModel& m);

/// Posterior component-membership probabilities (sums to 1).
Vector posterior_z(std::span<const double> x, const MixtureModel& m);

/// Posterior probability, per rotated dimension, that x is good under
/// component c.
Vector posterior_v(std::span<const double> x, const MscnParams& c);

ClassificationReport classify(const Matrix& data, const MixtureModel& m);

/// Weight given to an observation at squared Mahalanobis coordinate
/// distance delta when estimating a mean: decreasing from ~1 at delta = 0
/// to 1/eta as delta grows.
double downweight(double delta, double alpha, double eta);

/// d/d(delta) of downweight; strictly negative.
double downweight_derivative(double delta, double alpha, double eta);

}  // namespace mscn
