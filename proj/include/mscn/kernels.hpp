#pragma once

#include <span>

#include "mscn/matrix.hpp"
#include "mscn/mixtures.hpp"

namespace mscn::kernels {

// Row-parallel kernels behind the statistical modules. Each row's
// arithmetic is independent and results are written by row index, then
// reduced in fixed index order, so outputs are bit-identical for any
// thread count. The serial namespace holds the plain-loop reference
// implementations used by the equivalence tests and the benchmark.

/// out[i] = log mixture density of row i.
void mixture_logpdf_rows(const Matrix& data, const MixtureModel& m, std::span<double> out);

/// Fills z (n x k responsibilities) and v (n x d x k good-posteriors).
void estep_rows(const Matrix& data, const MixtureModel& m, Matrix& z, Tensor3& v);

/// sum_i weights[i] * mscn_logpdf(row i; c). scratch must hold n doubles;
/// the reduction runs in fixed row order.
double weighted_loglik(const Matrix& data, std::span<const double> weights, const MscnParams& c,
                       std::span<double> scratch);

/// out(i, j) = log density at (xs[i], ys[j]) for a bivariate component.
void logpdf_grid(const MscnParams& p, std::span<const double> xs, std::span<const double> ys,
                 Matrix& out);

/// Full symmetric Euclidean distance matrix.
void pairwise_distances(const Matrix& data, Matrix& out);

namespace serial {
void mixture_logpdf_rows(const Matrix& data, const MixtureModel& m, std::span<double> out);
void estep_rows(const Matrix& data, const MixtureModel& m, Matrix& z, Tensor3& v);
double weighted_loglik(const Matrix& data, std::span<const double> weights, const MscnParams& c,
                       std::span<double> scratch);
void logpdf_grid(const MscnParams& p, std::span<const double> xs, std::span<const double> ys,
                 Matrix& out);
void pairwise_distances(const Matrix& data, Matrix& out);
}  // namespace serial

}  // namespace mscn::kernels
