#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "mscn/matrix.hpp"

namespace mscn {

/// Parameters of one multiple scaled contaminated normal component:
/// mean mu, orthogonal orientation gamma (eigenvector columns), positive
/// scales lambda (eigenvalues of the good-part scale matrix), and per
/// rotated dimension the proportion of good points alpha in (0,1) and the
/// contamination inflation eta > 1.
struct MscnParams {
    Vector mu;
    Matrix gamma;
    Vector lambda;
    Vector alpha;
    Vector eta;

    std::size_t dim() const { return mu.size(); }

    /// Throws std::invalid_argument on shape/range violations.
    /// With allow_pinned, alpha == 1 and eta == 1 are accepted (the plain
    /// normal special case used by the Gaussian-mixture baseline).
    void validate(bool allow_pinned = false) const;

    /// gamma * diag(lambda) * gamma^T, built exactly symmetric.
    Matrix scale_matrix() const;
};

/// Parameters of the (elliptical) multivariate contaminated normal.
struct McnParams {
    Vector mu;
    Matrix sigma;
    double alpha = 0.99;
    double eta = 1.01;

    std::size_t dim() const { return mu.size(); }
    void validate() const;
};

/// Per-dimension good/bad indicator pattern; 1 = good.
struct ContaminationPattern {
    std::vector<std::uint8_t> v;
};

/// Log density of the multivariate normal.
double mn_logpdf(std::span<const double> x, std::span<const double> mu, const Matrix& sigma);

/// Contaminated normal density: alpha MN(mu, sigma) + (1-alpha) MN(mu, eta sigma).
double mcn_pdf(std::span<const double> x, const McnParams& p);

/// Posterior probability that x was generated by the good component.
double mcn_posterior_good(std::span<const double> x, const McnParams& p);

/// Log of the two-term univariate contaminated normal density with mean 0:
/// alpha N(r; 0, lam) + (1-alpha) N(r; 0, eta*lam), evaluated in log space.
double cn1_logpdf(double r, double lam, double alpha, double eta);

/// Log MSCN density: sum over rotated coordinates of cn1_logpdf.
double mscn_logpdf(std::span<const double> x, const MscnParams& p);

/// n draws via the stochastic representation
/// X = mu + Gamma Lambda^{1/2} W_v^{1/2} Y. Per row the draw order is: d
/// Bernoulli(alpha_h) indicators, then d standard normals.
Matrix mscn_sample(const MscnParams& p, std::size_t n, std::uint64_t seed);

struct DensityGrid {
    Vector x;       // resolution ascending coordinates
    Vector y;
    Matrix logpdf;  // logpdf(i, j) at (x[i], y[j])
};

/// Bivariate log-density evaluated on a regular grid (d must be 2).
DensityGrid mscn_density_grid(const MscnParams& p, double xmin, double xmax, double ymin,
                              double ymax, std::size_t resolution);

/// Writes a grid as CSV with header "x,y,logpdf", x-major row order.
std::string density_grid_to_csv(const DensityGrid& g);

/// 2x2 counter-clockwise rotation.
Matrix rotation_matrix(double theta);

}  // namespace mscn
