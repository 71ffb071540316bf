#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "mscn/matrix.hpp"

namespace mscn {

/// Eigen decomposition of a symmetric matrix. Eigenvalues are sorted
/// descending; each eigenvector column is sign-canonicalized so its
/// largest-magnitude entry is non-negative.
struct SymEigen {
    Vector eigenvalues;
    Matrix eigenvectors;  // columns aligned with eigenvalues
};

/// Upper-triangular factor Omega with positive diagonal, Omega^T Omega = m.
struct CholFactor {
    Matrix omega;
};

SymEigen sym_eigen(const Matrix& m);

CholFactor cholesky(const Matrix& m);

/// Solves Omega^T y = b (forward substitution on the transposed factor).
Vector chol_forward_solve(const Matrix& omega, std::span<const double> b);

/// 2 * sum(log diag(Omega)) = log det(Omega^T Omega).
double chol_logdet(const Matrix& omega);

struct MaximizeOptions {
    double grad_tol = 1e-6;
    std::size_t max_evals = 1000;
};

enum class MaximizeStatus {
    GradientTolerance,  // gradient norm at the returned point <= grad_tol
    EvalBudget,         // function-evaluation budget exhausted
    NoProgress,         // backtracking found no improving step
};

struct MaximizeResult {
    Vector argmax;
    double value = 0.0;
    MaximizeStatus status = MaximizeStatus::EvalBudget;
    std::size_t evals = 0;
    double grad_norm = 0.0;
};

const char* to_string(MaximizeStatus s);

/// Maximizes f by a BFGS quasi-Newton ascent with Armijo backtracking.
/// Gradients come from central finite differences with step
/// h_i = 1e-6 * max(1, |x_i|). If the inverse-Hessian update would lose
/// positive definiteness (curvature condition fails) the update is skipped
/// and the next direction falls back to steepest ascent. The returned value
/// is never below f(x0).
MaximizeResult maximize(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> x0, const MaximizeOptions& opts = {});

}  // namespace mscn
