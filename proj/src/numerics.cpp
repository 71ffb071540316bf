#include "mscn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mscn {

namespace {

void check_symmetric(const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
    if (!all_finite(m))
        throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
    if (max_asymmetry(m) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
}

}  // namespace

SymEigen sym_eigen(const Matrix& m) {
    check_symmetric(m, "sym_eigen");
    const std::size_t d = m.rows();

    // Work on the symmetrized copy so tiny input asymmetry cannot bias the sweep.
    Matrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    Matrix v = Matrix::identity(d);

    const double scale = std::max(max_abs(a), 1e-300);

    // Cyclic Jacobi sweeps.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-15 * scale * d) break;

        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = a(p, i) = c * aip - s * aiq;
                    a(i, q) = a(q, i) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    // Sort descending, stable in the original column order.
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    SymEigen out;
    out.eigenvalues.resize(d);
    out.eigenvectors = Matrix(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = a(src, src);
        // Sign canonicalization: largest-magnitude entry non-negative.
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double mag = std::fabs(v(i, src));
            if (mag > amax) {
                amax = mag;
                imax = i;
            }
        }
        const double sign = (v(imax, src) < 0.0) ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, j) = sign * v(i, src);
    }
    return out;
}

CholFactor cholesky(const Matrix& m) {
    check_symmetric(m, "cholesky");
    const std::size_t d = m.rows();

    // Lower factor first, then Omega = L^T.
    Matrix l(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        double diag = m(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0))
            throw std::runtime_error("cholesky: matrix is not positive definite (leading minor "
                                     + std::to_string(j + 1) + ")");
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < d; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return CholFactor{transpose(l)};
}

Vector chol_forward_solve(const Matrix& omega, std::span<const double> b) {
    const std::size_t d = omega.rows();
    if (b.size() != d) throw std::invalid_argument("chol_forward_solve: size mismatch");
    Vector y(d);
    for (std::size_t i = 0; i < d; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= omega(k, i) * y[k];
        y[i] = s / omega(i, i);
    }
    return y;
}

double chol_logdet(const Matrix& omega) {
    double s = 0.0;
    for (std::size_t i = 0; i < omega.rows(); ++i) s += std::log(omega(i, i));
    return 2.0 * s;
}

const char* to_string(MaximizeStatus s) {
    switch (s) {
        case MaximizeStatus::GradientTolerance: return "gradient_tolerance";
        case MaximizeStatus::EvalBudget: return "eval_budget";
        case MaximizeStatus::NoProgress: return "no_progress";
    }
    return "unknown";
}

namespace {

struct Evaluator {
    const std::function<double(std::span<const double>)>& f;
    std::size_t count = 0;
    double operator()(std::span<const double> x) {
        ++count;
        return f(x);
    }
};

// Central differences, degrading to one-sided when a probe leaves the
// objective's finite region.
Vector fd_gradient(Evaluator& ev, Vector x, double fx) {
    const std::size_t p = x.size();
    Vector g(p);
    for (std::size_t i = 0; i < p; ++i) {
        const double h = 1e-6 * std::max(1.0, std::fabs(x[i]));
        const double xi = x[i];
        x[i] = xi + h;
        const double fp = ev(x);
        x[i] = xi - h;
        const double fm = ev(x);
        x[i] = xi;
        if (std::isfinite(fp) && std::isfinite(fm))
            g[i] = (fp - fm) / (2.0 * h);
        else if (std::isfinite(fp))
            g[i] = (fp - fx) / h;
        else if (std::isfinite(fm))
            g[i] = (fx - fm) / h;
        else
            g[i] = 0.0;
    }
    return g;
}

}  // namespace

MaximizeResult maximize(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> x0, const MaximizeOptions& opts) {
    const std::size_t p = x0.size();
    if (p == 0) throw std::invalid_argument("maximize: empty start vector");

    Evaluator ev{f};
    Vector x(x0.begin(), x0.end());
    double fx = ev(x);
    if (!std::isfinite(fx)) throw std::invalid_argument("maximize: objective non-finite at x0");

    Matrix hinv = Matrix::identity(p);  // inverse Hessian of -f
    Vector g = fd_gradient(ev, x, fx);

    MaximizeResult res;
    res.status = MaximizeStatus::EvalBudget;

    auto finish = [&](MaximizeStatus status) {
        res.argmax = x;
        res.value = fx;
        res.status = status;
        res.evals = ev.count;
        res.grad_norm = norm2(g);
        return res;
    };

    while (true) {
        const double gnorm = norm2(g);
        if (gnorm <= opts.grad_tol) return finish(MaximizeStatus::GradientTolerance);
        if (ev.count >= opts.max_evals) return finish(MaximizeStatus::EvalBudget);

        Vector dir = matvec(hinv, g);
        double slope = dot(dir, g);
        if (!(slope > 0.0) || !all_finite(dir)) {
            dir = g;  // steepest ascent fallback
            slope = gnorm * gnorm;
        }

        // Armijo backtracking.
        const double c1 = 1e-4;
        double t = 1.0;
        Vector xn(p);
        double fn = -std::numeric_limits<double>::infinity();
        bool improved = false;
        for (int bt = 0; bt < 50 && ev.count < opts.max_evals; ++bt) {
            for (std::size_t i = 0; i < p; ++i) xn[i] = x[i] + t * dir[i];
            fn = ev(xn);
            if (std::isfinite(fn) && fn >= fx + c1 * t * slope) {
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if (!improved) {
            return finish(ev.count >= opts.max_evals ? MaximizeStatus::EvalBudget
                                                     : MaximizeStatus::NoProgress);
        }

        Vector gn = fd_gradient(ev, xn, fn);

        // BFGS update on the minimization of -f: y = g_old - g_new.
        Vector s(p), y(p);
        for (std::size_t i = 0; i < p; ++i) {
            s[i] = xn[i] - x[i];
            y[i] = g[i] - gn[i];
        }
        const double sy = dot(s, y);
        const double curv_floor = 1e-12 * norm2(s) * norm2(y);
        if (sy > curv_floor && sy > 0.0) {
            const double rho = 1.0 / sy;
            // H' = (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            Vector hy = matvec(hinv, y);
            const double yhy = dot(y, hy);
            for (std::size_t i = 0; i < p; ++i) {
                for (std::size_t j = 0; j < p; ++j) {
                    hinv(i, j) += rho * rho * yhy * s[i] * s[j] + rho * s[i] * s[j]
                                  - rho * (s[i] * hy[j] + hy[i] * s[j]);
                }
            }
        } else {
            hinv = Matrix::identity(p);  // curvature lost; restart from steepest ascent
        }

        x = xn;
        fx = fn;
        g = std::move(gn);
    }
}

}  // namespace mscn
