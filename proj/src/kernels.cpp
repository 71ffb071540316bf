#include "mscn/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mscn::kernels {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-component constants hoisted out of the row loops.
struct Prepared {
    const MscnParams* p = nullptr;
    Vector log_alpha;      // log(alpha_h)
    Vector log_1malpha;    // log(1 - alpha_h); -inf when pinned
    Vector cg, cb;         // normalizing constants of the good/bad branches
    Vector qg, qb;         // 0.5 / variance of the good/bad branches
    double log_weight = 0.0;

    explicit Prepared(const MscnParams& params, double weight = 1.0) : p(&params) {
        const std::size_t d = params.dim();
        log_alpha.resize(d);
        log_1malpha.resize(d);
        cg.resize(d);
        cb.resize(d);
        qg.resize(d);
        qb.resize(d);
        for (std::size_t h = 0; h < d; ++h) {
            const double lam = params.lambda[h];
            const double a = params.alpha[h];
            const double e = params.eta[h];
            log_alpha[h] = std::log(a);
            log_1malpha[h] = a >= 1.0 ? kNegInf : std::log1p(-a);
            cg[h] = -0.5 * (kLog2Pi + std::log(lam));
            cb[h] = -0.5 * (kLog2Pi + std::log(e * lam));
            qg[h] = 0.5 / lam;
            qb[h] = 0.5 / (e * lam);
        }
        log_weight = std::log(weight);
    }
};

inline double lse2(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = a > b ? a : b;
    return m + std::log1p(std::exp((a > b ? b : a) - m));
}

// Rotated residual r = gamma^T (x - mu) for one row.
inline void rotate_row(std::span<const double> x, const MscnParams& p, std::span<double> r) {
    const std::size_t d = p.dim();
    for (std::size_t h = 0; h < d; ++h) r[h] = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double diff = x[i] - p.mu[i];
        for (std::size_t h = 0; h < d; ++h) r[h] += p.gamma(i, h) * diff;
    }
}

// Log density of one row under one prepared component.
inline double row_logpdf(std::span<const double> x, const Prepared& pc, std::span<double> rbuf) {
    rotate_row(x, *pc.p, rbuf);
    const std::size_t d = pc.p->dim();
    double acc = 0.0;
    for (std::size_t h = 0; h < d; ++h) {
        const double r2 = rbuf[h] * rbuf[h];
        const double lg = pc.cg[h] - pc.qg[h] * r2;
        if (pc.log_1malpha[h] == kNegInf) {
            acc += lg;
        } else {
            acc += lse2(pc.log_alpha[h] + lg, pc.log_1malpha[h] + pc.cb[h] - pc.qb[h] * r2);
        }
    }
    return acc;
}

// Mixture log density plus, optionally, the z and v posteriors of one row.
inline double row_estep(std::span<const double> x, const std::vector<Prepared>& comps,
                        std::span<double> rbuf, std::span<double> zrow, Tensor3* v,
                        std::size_t row) {
    const std::size_t k = comps.size();
    double lmix = kNegInf;
    for (std::size_t j = 0; j < k; ++j) {
        const Prepared& pc = comps[j];
        rotate_row(x, *pc.p, rbuf);
        const std::size_t d = pc.p->dim();
        double acc = 0.0;
        for (std::size_t h = 0; h < d; ++h) {
            const double r2 = rbuf[h] * rbuf[h];
            const double lg = pc.log_alpha[h] + pc.cg[h] - pc.qg[h] * r2;
            double lb = kNegInf;
            if (pc.log_1malpha[h] != kNegInf)
                lb = pc.log_1malpha[h] + pc.cb[h] - pc.qb[h] * r2;
            acc += lse2(lg, lb);
            if (v) (*v)(row, h, j) = lb == kNegInf ? 1.0 : 1.0 / (1.0 + std::exp(lb - lg));
        }
        zrow[j] = pc.log_weight + acc;
        lmix = lse2(lmix, zrow[j]);
    }
    for (std::size_t j = 0; j < k; ++j) zrow[j] = std::exp(zrow[j] - lmix);
    return lmix;
}

constexpr std::size_t kMaxStackDim = 32;

std::vector<Prepared> prepare(const MixtureModel& m) {
    if (m.d() > kMaxStackDim) throw std::invalid_argument("kernels: dimension too large");
    std::vector<Prepared> comps;
    comps.reserve(m.k());
    for (std::size_t j = 0; j < m.k(); ++j) comps.emplace_back(m.components[j], m.weights[j]);
    return comps;
}

}  // namespace

// ---------------------------------------------------------------------------
// OpenMP drivers.

void mixture_logpdf_rows(const Matrix& data, const MixtureModel& m, std::span<double> out) {
    if (out.size() != data.rows()) throw std::invalid_argument("mixture_logpdf_rows: bad output");
    const auto comps = prepare(m);
    const std::size_t d = m.d(), k = m.k();
    if (data.cols() != d) throw std::invalid_argument("mixture_logpdf_rows: dimension mismatch");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(data.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double rbuf[kMaxStackDim];
        double lmix = kNegInf;
        for (std::size_t j = 0; j < k; ++j)
            lmix = lse2(lmix, comps[j].log_weight
                                  + row_logpdf(data.row(i), comps[j], {rbuf, d}));
        out[i] = lmix;
    }
}

void estep_rows(const Matrix& data, const MixtureModel& m, Matrix& z, Tensor3& v) {
    const std::size_t d = m.d(), k = m.k();
    if (data.cols() != d) throw std::invalid_argument("estep_rows: dimension mismatch");
    if (z.rows() != data.rows() || z.cols() != k) z = Matrix(data.rows(), k);
    if (v.n != data.rows() || v.d != d || v.k != k) v = Tensor3(data.rows(), d, k);
    const auto comps = prepare(m);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(data.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double rbuf[kMaxStackDim];
        row_estep(data.row(i), comps, {rbuf, d}, z.row(i), &v, static_cast<std::size_t>(i));
    }
}

double weighted_loglik(const Matrix& data, std::span<const double> weights, const MscnParams& c,
                       std::span<double> scratch) {
    const std::size_t d = c.dim();
    if (weights.size() != data.rows() || scratch.size() < data.rows())
        throw std::invalid_argument("weighted_loglik: bad buffer sizes");
    const Prepared pc(c);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(data.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double rbuf[kMaxStackDim];
        scratch[i] = weights[i] * row_logpdf(data.row(i), pc, {rbuf, d});
    }
    double acc = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) acc += scratch[i];
    return acc;
}

void logpdf_grid(const MscnParams& p, std::span<const double> xs, std::span<const double> ys,
                 Matrix& out) {
    if (p.dim() != 2) throw std::invalid_argument("logpdf_grid: requires d = 2");
    if (out.rows() != xs.size() || out.cols() != ys.size())
        out = Matrix(xs.size(), ys.size());
    const Prepared pc(p);
    const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nx; ++i) {
        double rbuf[2];
        double pt[2];
        pt[0] = xs[i];
        for (std::size_t j = 0; j < ys.size(); ++j) {
            pt[1] = ys[j];
            out(i, j) = row_logpdf({pt, 2}, pc, {rbuf, 2});
        }
    }
}

void pairwise_distances(const Matrix& data, Matrix& out) {
    const std::size_t n = data.rows();
    if (out.rows() != n || out.cols() != n) out = Matrix(n, n);
    const std::ptrdiff_t ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < ni; ++i) {
        out(i, i) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < data.cols(); ++c) {
                const double diff = data(i, c) - data(j, c);
                s += diff * diff;
            }
            out(i, j) = std::sqrt(s);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out(j, i) = out(i, j);
}

// ---------------------------------------------------------------------------
// Serial reference drivers: same row arithmetic, plain loops.

namespace serial {

void mixture_logpdf_rows(const Matrix& data, const MixtureModel& m, std::span<double> out) {
    if (out.size() != data.rows()) throw std::invalid_argument("mixture_logpdf_rows: bad output");
    const auto comps = prepare(m);
    const std::size_t d = m.d(), k = m.k();
    double rbuf[kMaxStackDim];
    for (std::size_t i = 0; i < data.rows(); ++i) {
        double lmix = kNegInf;
        for (std::size_t j = 0; j < k; ++j)
            lmix = lse2(lmix, comps[j].log_weight
                                  + row_logpdf(data.row(i), comps[j], {rbuf, d}));
        out[i] = lmix;
    }
}

void estep_rows(const Matrix& data, const MixtureModel& m, Matrix& z, Tensor3& v) {
    const std::size_t d = m.d(), k = m.k();
    if (z.rows() != data.rows() || z.cols() != k) z = Matrix(data.rows(), k);
    if (v.n != data.rows() || v.d != d || v.k != k) v = Tensor3(data.rows(), d, k);
    const auto comps = prepare(m);
    double rbuf[kMaxStackDim];
    for (std::size_t i = 0; i < data.rows(); ++i)
        row_estep(data.row(i), comps, {rbuf, d}, z.row(i), &v, i);
}

double weighted_loglik(const Matrix& data, std::span<const double> weights, const MscnParams& c,
                       std::span<double> scratch) {
    const std::size_t d = c.dim();
    if (weights.size() != data.rows() || scratch.size() < data.rows())
        throw std::invalid_argument("weighted_loglik: bad buffer sizes");
    const Prepared pc(c);
    double rbuf[kMaxStackDim];
    for (std::size_t i = 0; i < data.rows(); ++i)
        scratch[i] = weights[i] * row_logpdf(data.row(i), pc, {rbuf, d});
    double acc = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) acc += scratch[i];
    return acc;
}

void logpdf_grid(const MscnParams& p, std::span<const double> xs, std::span<const double> ys,
                 Matrix& out) {
    if (p.dim() != 2) throw std::invalid_argument("logpdf_grid: requires d = 2");
    if (out.rows() != xs.size() || out.cols() != ys.size())
        out = Matrix(xs.size(), ys.size());
    const Prepared pc(p);
    double rbuf[2];
    double pt[2];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        pt[0] = xs[i];
        for (std::size_t j = 0; j < ys.size(); ++j) {
            pt[1] = ys[j];
            out(i, j) = row_logpdf({pt, 2}, pc, {rbuf, 2});
        }
    }
}

void pairwise_distances(const Matrix& data, Matrix& out) {
    const std::size_t n = data.rows();
    if (out.rows() != n || out.cols() != n) out = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < data.cols(); ++c) {
                const double diff = data(i, c) - data(j, c);
                s += diff * diff;
            }
            out(i, j) = out(j, i) = std::sqrt(s);
        }
    }
}

}  // namespace serial

}  // namespace mscn::kernels
