#include "mscn/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "mscn/kernels.hpp"

namespace mscn {

void FitConfig::validate() const {
    if (k < 1) throw std::invalid_argument("FitConfig: k must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("FitConfig: epsilon must be positive");
    if (!(eta_floor > 1.0)) throw std::invalid_argument("FitConfig: eta_floor must exceed 1");
    if (!(alpha_floor >= 0.0 && alpha_floor < 1.0))
        throw std::invalid_argument("FitConfig: alpha_floor must lie in [0,1)");
    if (!(alpha_cap > alpha_floor && alpha_cap < 1.0))
        throw std::invalid_argument("FitConfig: alpha_cap must lie in (alpha_floor, 1)");
    if (!(v_init > 0.0 && v_init < 1.0))
        throw std::invalid_argument("FitConfig: v_init must lie in (0,1)");
    if (max_iter < 1) throw std::invalid_argument("FitConfig: max_iter must be >= 1");
}

// ---------------------------------------------------------------------------
// k-medoids (PAM)

std::vector<int> init_kmedoids(const Matrix& data, std::size_t k) {
    const std::size_t n = data.rows();
    if (k < 1 || k > n) throw std::invalid_argument("init_kmedoids: need 1 <= k <= n");

    // Enough distinct rows to host k distinct medoids?
    {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(data.row(a).begin(), data.row(a).end(),
                                                data.row(b).begin(), data.row(b).end());
        });
        std::size_t distinct = n == 0 ? 0 : 1;
        for (std::size_t i = 1; i < n; ++i) {
            if (!std::equal(data.row(idx[i]).begin(), data.row(idx[i]).end(),
                            data.row(idx[i - 1]).begin()))
                ++distinct;
        }
        if (distinct < k)
            throw std::invalid_argument("init_kmedoids: fewer distinct rows than clusters");
    }

    Matrix dist;
    kernels::pairwise_distances(data, dist);

    std::vector<std::size_t> medoids;
    std::vector<char> is_medoid(n, 0);

    // BUILD: first medoid minimizes the total distance; the rest greedily
    // maximize the reduction in assignment cost.
    {
        std::size_t best = 0;
        double best_cost = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            double cost = 0.0;
            for (std::size_t i = 0; i < n; ++i) cost += dist(i, c);
            if (cost < best_cost) {
                best_cost = cost;
                best = c;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = 1;
    }
    Vector nearest(n);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = dist(i, medoids[0]);
    while (medoids.size() < k) {
        std::size_t best = n;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            if (is_medoid[c]) continue;
            double gain = 0.0;
            for (std::size_t i = 0; i < n; ++i) gain += std::max(0.0, nearest[i] - dist(i, c));
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = 1;
        for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, best));
    }

    // SWAP: apply the best strictly improving medoid exchange until none.
    // Swap deltas come from each point's nearest and second-nearest medoid
    // distances, refreshed once per sweep.
    std::vector<std::size_t> near_idx(n);
    Vector near_d(n), second_d(n);
    auto refresh_nearest = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            double d1 = std::numeric_limits<double>::infinity();
            double d2 = d1;
            std::size_t which = 0;
            for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
                const double dd = dist(i, medoids[mi]);
                if (dd < d1) {
                    d2 = d1;
                    d1 = dd;
                    which = mi;
                } else if (dd < d2) {
                    d2 = dd;
                }
            }
            near_idx[i] = which;
            near_d[i] = d1;
            second_d[i] = d2;
        }
    };
    for (;;) {
        refresh_nearest();
        double best_delta = -1e-12;
        std::size_t best_m = 0, best_h = 0;
        bool found = false;
        for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
            for (std::size_t h = 0; h < n; ++h) {
                if (is_medoid[h]) continue;
                double delta = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double dih = dist(i, h);
                    if (near_idx[i] == mi)
                        delta += std::min(dih, second_d[i]) - near_d[i];
                    else if (dih < near_d[i])
                        delta += dih - near_d[i];
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_m = mi;
                    best_h = h;
                    found = true;
                }
            }
        }
        if (!found) break;
        is_medoid[medoids[best_m]] = 0;
        medoids[best_m] = best_h;
        is_medoid[best_h] = 1;
    }
    std::sort(medoids.begin(), medoids.end());

    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < medoids.size(); ++j)
            if (dist(i, medoids[j]) < dist(i, medoids[best])) best = j;
        labels[i] = static_cast<int>(best);
    }
    return labels;
}

// ---------------------------------------------------------------------------
// Initialization

namespace {

// Cluster covariance eigendecomposition with a ridge fallback for tiny or
// degenerate clusters.
SymEigen cluster_eigen(Matrix scatter, std::size_t d) {
    SymEigen se = sym_eigen(scatter);
    const double trace = std::accumulate(se.eigenvalues.begin(), se.eigenvalues.end(), 0.0);
    const double lam_max = se.eigenvalues.front();
    if (se.eigenvalues.back() <= 1e-10 * std::max(lam_max, 0.0) || se.eigenvalues.back() <= 0.0) {
        if (!(trace > 0.0))
            throw DegenerateComponentError("init_state: cluster has zero scatter");
        const double ridge = 1e-6 * trace / static_cast<double>(d);
        for (std::size_t i = 0; i < d; ++i) scatter(i, i) += ridge;
        se = sym_eigen(scatter);
    }
    return se;
}

}  // namespace

std::pair<MixtureModel, FitState> init_state(const Matrix& data, const std::vector<int>& labels,
                                             const FitConfig& cfg, Family family) {
    cfg.validate();
    const std::size_t n = data.rows(), d = data.cols();
    if (labels.size() != n) throw std::invalid_argument("init_state: label length mismatch");
    if (!all_finite(data)) throw std::invalid_argument("init_state: data has non-finite entries");
    const std::size_t k = cfg.k;

    std::vector<std::size_t> count(k, 0);
    for (int lab : labels) {
        if (lab < 0 || static_cast<std::size_t>(lab) >= k)
            throw std::invalid_argument("init_state: label out of range");
        ++count[lab];
    }
    for (std::size_t j = 0; j < k; ++j)
        if (count[j] == 0)
            throw DegenerateComponentError("init_state: empty initial cluster "
                                           + std::to_string(j));

    MixtureModel m;
    m.family = family;
    m.weights.resize(k);
    m.components.resize(k);

    for (std::size_t j = 0; j < k; ++j) {
        MscnParams& c = m.components[j];
        c.mu.assign(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<std::size_t>(labels[i]) != j) continue;
            for (std::size_t h = 0; h < d; ++h) c.mu[h] += data(i, h);
        }
        for (std::size_t h = 0; h < d; ++h) c.mu[h] /= static_cast<double>(count[j]);

        Matrix scatter(d, d);
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<std::size_t>(labels[i]) != j) continue;
            for (std::size_t a = 0; a < d; ++a) {
                const double da = data(i, a) - c.mu[a];
                for (std::size_t b = a; b < d; ++b)
                    scatter(a, b) += da * (data(i, b) - c.mu[b]);
            }
        }
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b)
                scatter(b, a) = scatter(a, b) /= static_cast<double>(count[j]);

        SymEigen se = cluster_eigen(std::move(scatter), d);
        c.gamma = std::move(se.eigenvectors);
        c.lambda = std::move(se.eigenvalues);
        if (family == Family::Mnm) {
            c.alpha.assign(d, 1.0);
            c.eta.assign(d, 1.0);
        } else {
            // Near-Gaussian start: contamination grows only if the data ask for it.
            c.alpha.assign(d, 0.99);
            c.eta.assign(d, 1.01);
        }
        m.weights[j] = static_cast<double>(count[j]) / static_cast<double>(n);
    }

    FitState state;
    state.z = Matrix(n, k);
    for (std::size_t i = 0; i < n; ++i) state.z(i, labels[i]) = 1.0;
    state.v = Tensor3(n, d, k, family == Family::Mnm ? 1.0 : cfg.v_init);
    return {std::move(m), std::move(state)};
}

void e_step(const Matrix& data, const MixtureModel& m, Matrix& z, Tensor3& v) {
    kernels::estep_rows(data, m, z, v);
}

// ---------------------------------------------------------------------------
// CM step 1: weights, alpha, mu, eta (orientation and scales fixed)

void cm_step1(const Matrix& data, MixtureModel& m, const Matrix& z, const Tensor3& v,
              const FitConfig& cfg) {
    const std::size_t n = data.rows(), d = data.cols(), k = m.k();
    Vector u(d), mrot(d), num(d), den(d), sumzv(d);

    for (std::size_t j = 0; j < k; ++j) {
        MscnParams& c = m.components[j];

        double nj = 0.0;
        for (std::size_t i = 0; i < n; ++i) nj += z(i, j);
        if (nj < static_cast<double>(d) + 1.0)
            throw DegenerateComponentError("cm_step1: component " + std::to_string(j)
                                           + " collapsed (effective size "
                                           + std::to_string(nj) + ")");
        m.weights[j] = nj / static_cast<double>(n);

        const Vector eta_old = c.eta;

        // Weighted coordinate means in the rotated frame. The weights
        // z*(v + (1-v)/eta) use the previous eta; eta itself is refreshed
        // afterwards from the new mean.
        std::fill(num.begin(), num.end(), 0.0);
        std::fill(den.begin(), den.end(), 0.0);
        std::fill(sumzv.begin(), sumzv.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double zi = z(i, j);
            for (std::size_t h = 0; h < d; ++h) u[h] = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                const double xa = data(i, a);
                for (std::size_t h = 0; h < d; ++h) u[h] += c.gamma(a, h) * xa;
            }
            for (std::size_t h = 0; h < d; ++h) {
                const double vi = v(i, h, j);
                const double w = zi * (vi + (1.0 - vi) / eta_old[h]);
                num[h] += w * u[h];
                den[h] += w;
                sumzv[h] += zi * vi;
            }
        }
        for (std::size_t h = 0; h < d; ++h) {
            c.alpha[h] = std::min(cfg.alpha_cap, std::max(cfg.alpha_floor, sumzv[h] / nj));
            mrot[h] = num[h] / den[h];
        }
        for (std::size_t a = 0; a < d; ++a) {
            double s = 0.0;
            for (std::size_t h = 0; h < d; ++h) s += c.gamma(a, h) * mrot[h];
            c.mu[a] = s;
        }

        // eta from the refreshed mean, previous scales, previous posteriors.
        Vector bad_num(d, 0.0), bad_den(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double zi = z(i, j);
            for (std::size_t h = 0; h < d; ++h) u[h] = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                const double xa = data(i, a);
                for (std::size_t h = 0; h < d; ++h) u[h] += c.gamma(a, h) * xa;
            }
            for (std::size_t h = 0; h < d; ++h) {
                const double res = u[h] - mrot[h];
                const double zb = zi * (1.0 - v(i, h, j));
                bad_num[h] += zb * res * res / c.lambda[h];
                bad_den[h] += zb;
            }
        }
        for (std::size_t h = 0; h < d; ++h) {
            if (bad_den[h] <= 1e-300) {
                c.eta[h] = cfg.eta_floor;  // no bad mass left in this dimension
            } else {
                c.eta[h] = std::max(cfg.eta_floor, bad_num[h] / bad_den[h]);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// CM step 2: orientation and scales via the Cholesky-parametrized scale

namespace {

// theta layout: d log-diagonal entries, then the strict upper triangle of
// Omega row-major.
Vector pack_cholesky(const Matrix& omega) {
    const std::size_t d = omega.rows();
    Vector theta(d * (d + 1) / 2);
    for (std::size_t i = 0; i < d; ++i) theta[i] = std::log(omega(i, i));
    std::size_t t = d;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) theta[t++] = omega(i, j);
    return theta;
}

Matrix unpack_cholesky(std::span<const double> theta, std::size_t d) {
    Matrix omega(d, d);
    for (std::size_t i = 0; i < d; ++i) omega(i, i) = std::exp(theta[i]);
    std::size_t t = d;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) omega(i, j) = theta[t++];
    return omega;
}

// Symmetric product Omega^T Omega.
Matrix cholesky_product(const Matrix& omega) {
    const std::size_t d = omega.rows();
    Matrix s(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r <= i; ++r) acc += omega(r, i) * omega(r, j);
            s(i, j) = s(j, i) = acc;
        }
    }
    return s;
}

}  // namespace

std::size_t cm_step2(const Matrix& data, MixtureModel& m, const Matrix& z, const FitConfig& cfg,
                     std::vector<double>& scratch) {
    const std::size_t n = data.rows(), d = data.cols(), k = m.k();
    if (scratch.size() < n) scratch.resize(n);
    std::size_t retained = 0;
    Vector zcol(n);

    for (std::size_t j = 0; j < k; ++j) {
        MscnParams& c = m.components[j];
        for (std::size_t i = 0; i < n; ++i) zcol[i] = z(i, j);

        const double q_in = kernels::weighted_loglik(data, zcol, c, scratch);

        const CholFactor start = cholesky(c.scale_matrix());
        const Vector theta0 = pack_cholesky(start.omega);

        MscnParams cand = c;
        auto objective = [&](std::span<const double> theta) {
            // Explosive steps (overflowing exp, infinite products) score -inf
            // so the line search backs off instead of the eigensolver throwing.
            const Matrix omega = unpack_cholesky(theta, d);
            if (!all_finite(omega)) return -std::numeric_limits<double>::infinity();
            const Matrix product = cholesky_product(omega);
            if (!all_finite(product)) return -std::numeric_limits<double>::infinity();
            SymEigen se = sym_eigen(product);
            if (se.eigenvalues.back() <= 0.0) return -std::numeric_limits<double>::infinity();
            cand.gamma = std::move(se.eigenvectors);
            cand.lambda = std::move(se.eigenvalues);
            return kernels::weighted_loglik(data, zcol, cand, scratch);
        };

        const MaximizeResult res = maximize(objective, theta0, cfg.cm2_opts);
        if (res.value > q_in) {
            const Matrix omega = unpack_cholesky(res.argmax, d);
            SymEigen se = sym_eigen(cholesky_product(omega));
            c.gamma = std::move(se.eigenvectors);
            c.lambda = std::move(se.eigenvalues);
        } else {
            ++retained;  // GEM fallback: keep the previous orientation/scales
        }
    }
    return retained;
}

// ---------------------------------------------------------------------------
// Convergence

namespace {

// Differences below 12 significant digits of the trace value count as
// coincident: they sit at the numerical resolution of the log-likelihood
// sums and carry no geometric-rate information.
bool coincide(double diff, double scale) { return std::fabs(diff) <= 1e-12 * (1.0 + scale); }

}  // namespace

double aitken_gap(std::span<const double> t) {
    if (t.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    const double l_new = t[t.size() - 1];
    const double l_r = t[t.size() - 2];
    const double l_rm1 = t[t.size() - 3];
    const double scale = std::fabs(l_r);
    if (coincide(l_new - l_r, scale) || coincide(l_r - l_rm1, scale)) return 0.0;
    const double a = (l_new - l_r) / (l_r - l_rm1);
    if (a >= 1.0) return std::numeric_limits<double>::quiet_NaN();  // no geometric limit
    return (l_new - l_r) / (1.0 - a);
}

bool aitken_converged(std::span<const double> loglik_trace, double epsilon) {
    if (loglik_trace.size() < 3)
        throw std::invalid_argument("aitken_converged: needs at least 3 trace entries");
    const double l_new = loglik_trace[loglik_trace.size() - 1];
    const double l_r = loglik_trace[loglik_trace.size() - 2];
    const double l_rm1 = loglik_trace[loglik_trace.size() - 3];
    const double scale = std::fabs(l_r);
    // consecutive log-likelihoods coinciding means the fit has stalled at
    // the resolution of the computation
    if (coincide(l_new - l_r, scale) || coincide(l_r - l_rm1, scale)) return true;
    const double a = (l_new - l_r) / (l_r - l_rm1);
    if (a >= 1.0) return false;
    const double gap = (l_new - l_r) / (1.0 - a);
    return gap > 0.0 && gap < epsilon;
}

// ---------------------------------------------------------------------------
// Full fits

namespace {

void emit_diagnostic(const FitConfig& cfg, std::size_t iteration, double loglik,
                     std::span<const double> trace) {
    if (!cfg.diagnostics) return;
    char buf[160];
    const double gap = aitken_gap(trace);
    if (std::isnan(gap))
        std::snprintf(buf, sizeof buf, "{\"iteration\":%zu,\"loglik\":%.17g,\"aitken_gap\":null}",
                      iteration, loglik);
    else
        std::snprintf(buf, sizeof buf,
                      "{\"iteration\":%zu,\"loglik\":%.17g,\"aitken_gap\":%.17g}", iteration,
                      loglik, gap);
    (*cfg.diagnostics) << buf << '\n';
}

void check_fit_inputs(const Matrix& data, const FitConfig& cfg) {
    cfg.validate();
    if (data.rows() == 0 || data.cols() == 0) throw std::invalid_argument("fit: empty data");
    if (!all_finite(data)) throw std::invalid_argument("fit: data has non-finite entries");
    if (data.rows() <= cfg.k) throw std::invalid_argument("fit: need more rows than components");
}

std::pair<MixtureModel, FitState> fit_impl(const Matrix& data, const FitConfig& cfg,
                                           const std::vector<int>& labels) {
    auto [model, state] = init_state(data, labels, cfg, Family::Mscnm);
    std::vector<double> scratch(data.rows());

    for (std::size_t r = 0; r < cfg.max_iter; ++r) {
        // The first pass consumes the initial z and v; later passes refresh
        // them from the current parameters.
        if (r > 0) e_step(data, model, state.z, state.v);
        cm_step1(data, model, state.z, state.v, cfg);
        if (cm_step2(data, model, state.z, cfg, scratch) > 0) ++state.cm2_retained;

        state.loglik_trace.push_back(observed_loglik(data, model));
        emit_diagnostic(cfg, r + 1, state.loglik_trace.back(), state.loglik_trace);

        if (state.loglik_trace.size() >= 3 && aitken_converged(state.loglik_trace, cfg.epsilon)) {
            state.convergence = {true, "aitken"};
            break;
        }
    }
    if (!state.convergence.converged) state.convergence = {false, "max_iter"};
    state.iterations = state.loglik_trace.size();

    // Leave z and v consistent with the returned parameters.
    e_step(data, model, state.z, state.v);
    model.validate();
    return {std::move(model), std::move(state)};
}

}  // namespace

std::pair<MixtureModel, FitState> fit(const Matrix& data, const FitConfig& cfg) {
    check_fit_inputs(data, cfg);
    return fit_impl(data, cfg, init_kmedoids(data, cfg.k));
}

std::pair<MixtureModel, FitState> fit(const Matrix& data, const FitConfig& cfg,
                                      const std::vector<int>& init_labels) {
    check_fit_inputs(data, cfg);
    return fit_impl(data, cfg, init_labels);
}

namespace {

std::pair<MixtureModel, FitState> baseline_impl(const Matrix& data, const FitConfig& cfg,
                                                const std::vector<int>& labels) {
    const std::size_t n = data.rows(), d = data.cols(), k = cfg.k;
    auto [model, state] = init_state(data, labels, cfg, Family::Mnm);

    for (std::size_t r = 0; r < cfg.max_iter; ++r) {
        if (r > 0) e_step(data, model, state.z, state.v);

        // Closed-form M-step: weighted means and covariances.
        for (std::size_t j = 0; j < k; ++j) {
            MscnParams& c = model.components[j];
            double nj = 0.0;
            for (std::size_t i = 0; i < n; ++i) nj += state.z(i, j);
            if (nj < static_cast<double>(d) + 1.0)
                throw DegenerateComponentError("fit_gaussian_baseline: component "
                                               + std::to_string(j) + " collapsed");
            model.weights[j] = nj / static_cast<double>(n);

            Vector mu(d, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t h = 0; h < d; ++h) mu[h] += state.z(i, j) * data(i, h);
            for (std::size_t h = 0; h < d; ++h) mu[h] /= nj;

            Matrix scatter(d, d);
            for (std::size_t i = 0; i < n; ++i) {
                const double zi = state.z(i, j);
                for (std::size_t a = 0; a < d; ++a) {
                    const double da = data(i, a) - mu[a];
                    for (std::size_t b = a; b < d; ++b)
                        scatter(a, b) += zi * da * (data(i, b) - mu[b]);
                }
            }
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a; b < d; ++b) scatter(b, a) = scatter(a, b) /= nj;

            SymEigen se = sym_eigen(scatter);
            if (se.eigenvalues.back() <= 1e-10 * std::max(se.eigenvalues.front(), 0.0)) {
                const double trace =
                    std::accumulate(se.eigenvalues.begin(), se.eigenvalues.end(), 0.0);
                if (!(trace > 0.0))
                    throw DegenerateComponentError("fit_gaussian_baseline: zero scatter");
                const double ridge = 1e-6 * trace / static_cast<double>(d);
                for (std::size_t a = 0; a < d; ++a) scatter(a, a) += ridge;
                se = sym_eigen(scatter);
                if (cfg.diagnostics)
                    (*cfg.diagnostics) << "{\"warning\":\"singular covariance ridged\",\"component\":"
                                       << j << "}\n";
            }
            c.mu = std::move(mu);
            c.gamma = std::move(se.eigenvectors);
            c.lambda = std::move(se.eigenvalues);
        }

        state.loglik_trace.push_back(observed_loglik(data, model));
        emit_diagnostic(cfg, r + 1, state.loglik_trace.back(), state.loglik_trace);

        if (state.loglik_trace.size() >= 3 && aitken_converged(state.loglik_trace, cfg.epsilon)) {
            state.convergence = {true, "aitken"};
            break;
        }
    }
    if (!state.convergence.converged) state.convergence = {false, "max_iter"};
    state.iterations = state.loglik_trace.size();
    e_step(data, model, state.z, state.v);
    model.validate();
    return {std::move(model), std::move(state)};
}

}  // namespace

std::pair<MixtureModel, FitState> fit_gaussian_baseline(const Matrix& data, const FitConfig& cfg) {
    check_fit_inputs(data, cfg);
    return baseline_impl(data, cfg, init_kmedoids(data, cfg.k));
}

std::pair<MixtureModel, FitState> fit_gaussian_baseline(const Matrix& data, const FitConfig& cfg,
                                                        const std::vector<int>& init_labels) {
    check_fit_inputs(data, cfg);
    return baseline_impl(data, cfg, init_labels);
}

}  // namespace mscn
