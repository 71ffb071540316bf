#include "mscn/distributions.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "mscn/numerics.hpp"
#include "mscn/rng.hpp"

namespace mscn {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double norm1_logpdf(double r, double var) {
    return -0.5 * (kLog2Pi + std::log(var) + r * r / var);
}

double logsumexp2(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

void MscnParams::validate(bool allow_pinned) const {
    const std::size_t d = mu.size();
    if (d == 0) throw std::invalid_argument("MscnParams: empty mean");
    if (gamma.rows() != d || gamma.cols() != d)
        throw std::invalid_argument("MscnParams: gamma must be d x d");
    if (lambda.size() != d || alpha.size() != d || eta.size() != d)
        throw std::invalid_argument("MscnParams: vector length mismatch");
    if (!all_finite(mu) || !all_finite(gamma) || !all_finite(lambda) || !all_finite(alpha)
        || !all_finite(eta))
        throw std::invalid_argument("MscnParams: non-finite entries");

    // Orthogonality: gamma^T gamma = I within 1e-8.
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < d; ++r) s += gamma(r, i) * gamma(r, j);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::fabs(s - want) > 1e-8)
                throw std::invalid_argument("MscnParams: gamma is not orthogonal");
        }
    }
    for (std::size_t h = 0; h < d; ++h) {
        if (!(lambda[h] > 0.0)) throw std::invalid_argument("MscnParams: lambda must be positive");
        const bool pinned = allow_pinned && alpha[h] == 1.0 && eta[h] == 1.0;
        if (!pinned) {
            if (!(alpha[h] > 0.0 && alpha[h] < 1.0))
                throw std::invalid_argument("MscnParams: alpha must lie in (0,1)");
            if (!(eta[h] > 1.0)) throw std::invalid_argument("MscnParams: eta must exceed 1");
        }
    }
}

Matrix MscnParams::scale_matrix() const {
    const std::size_t d = dim();
    Matrix s(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            double v = 0.0;
            for (std::size_t h = 0; h < d; ++h) v += gamma(i, h) * lambda[h] * gamma(j, h);
            s(i, j) = s(j, i) = v;
        }
    }
    return s;
}

void McnParams::validate() const {
    const std::size_t d = mu.size();
    if (d == 0) throw std::invalid_argument("McnParams: empty mean");
    if (sigma.rows() != d || sigma.cols() != d)
        throw std::invalid_argument("McnParams: sigma must be d x d");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("McnParams: alpha not in (0,1)");
    if (!(eta > 1.0)) throw std::invalid_argument("McnParams: eta must exceed 1");
}

double mn_logpdf(std::span<const double> x, std::span<const double> mu, const Matrix& sigma) {
    const std::size_t d = x.size();
    if (mu.size() != d || sigma.rows() != d || sigma.cols() != d)
        throw std::invalid_argument("mn_logpdf: dimension mismatch");
    const CholFactor f = cholesky(sigma);
    Vector diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = x[i] - mu[i];
    const Vector y = chol_forward_solve(f.omega, diff);
    const double quad = dot(y, y);
    return -0.5 * (static_cast<double>(d) * kLog2Pi + chol_logdet(f.omega) + quad);
}

namespace {

// Log weights of the good and bad MCN branches at x.
std::pair<double, double> mcn_branches(std::span<const double> x, const McnParams& p) {
    p.validate();
    const std::size_t d = p.dim();
    Matrix inflated(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) inflated(i, j) = p.eta * p.sigma(i, j);
    const double la = std::log(p.alpha) + mn_logpdf(x, p.mu, p.sigma);
    const double lb = std::log1p(-p.alpha) + mn_logpdf(x, p.mu, inflated);
    return {la, lb};
}

}  // namespace

double mcn_pdf(std::span<const double> x, const McnParams& p) {
    const auto [la, lb] = mcn_branches(x, p);
    return std::exp(logsumexp2(la, lb));
}

double mcn_posterior_good(std::span<const double> x, const McnParams& p) {
    const auto [la, lb] = mcn_branches(x, p);
    return 1.0 / (1.0 + std::exp(lb - la));
}

double cn1_logpdf(double r, double lam, double alpha, double eta) {
    const double lgood = norm1_logpdf(r, lam);
    if (alpha >= 1.0) return lgood;
    const double la = std::log(alpha) + lgood;
    const double lb = std::log1p(-alpha) + norm1_logpdf(r, eta * lam);
    return logsumexp2(la, lb);
}

double mscn_logpdf(std::span<const double> x, const MscnParams& p) {
    const std::size_t d = p.dim();
    if (x.size() != d) throw std::invalid_argument("mscn_logpdf: dimension mismatch");
    Vector diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = x[i] - p.mu[i];
    const Vector r = tmatvec(p.gamma, diff);
    double acc = 0.0;
    for (std::size_t h = 0; h < d; ++h) acc += cn1_logpdf(r[h], p.lambda[h], p.alpha[h], p.eta[h]);
    return acc;
}

Matrix mscn_sample(const MscnParams& p, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("mscn_sample: n must be positive");
    p.validate(true);
    const std::size_t d = p.dim();
    Rng rng(seed);
    Matrix out(n, d);
    Vector scaled(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t h = 0; h < d; ++h) {
            const bool good = rng.uniform() < p.alpha[h];
            scaled[h] = std::sqrt(p.lambda[h] * (good ? 1.0 : p.eta[h]));
        }
        for (std::size_t h = 0; h < d; ++h) scaled[h] *= rng.normal();
        for (std::size_t r = 0; r < d; ++r) {
            double v = p.mu[r];
            for (std::size_t h = 0; h < d; ++h) v += p.gamma(r, h) * scaled[h];
            out(i, r) = v;
        }
    }
    return out;
}

DensityGrid mscn_density_grid(const MscnParams& p, double xmin, double xmax, double ymin,
                              double ymax, std::size_t resolution) {
    if (p.dim() != 2) throw std::invalid_argument("mscn_density_grid: requires d = 2");
    if (resolution < 2) throw std::invalid_argument("mscn_density_grid: resolution must be >= 2");
    if (!(xmax > xmin) || !(ymax > ymin))
        throw std::invalid_argument("mscn_density_grid: empty axis range");
    DensityGrid g;
    g.x.resize(resolution);
    g.y.resize(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(resolution - 1);
        g.x[i] = xmin + t * (xmax - xmin);
        g.y[i] = ymin + t * (ymax - ymin);
    }
    g.logpdf = Matrix(resolution, resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        double pt[2];
        pt[0] = g.x[i];
        for (std::size_t j = 0; j < resolution; ++j) {
            pt[1] = g.y[j];
            g.logpdf(i, j) = mscn_logpdf(std::span<const double>(pt, 2), p);
        }
    }
    return g;
}

std::string density_grid_to_csv(const DensityGrid& g) {
    std::string out = "x,y,logpdf\n";
    char buf[96];
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        for (std::size_t j = 0; j < g.y.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x[i], g.y[j], g.logpdf(i, j));
            out += buf;
        }
    }
    return out;
}

Matrix rotation_matrix(double theta) {
    Matrix r(2, 2);
    const double c = std::cos(theta), s = std::sin(theta);
    r(0, 0) = c;
    r(0, 1) = -s;
    r(1, 0) = s;
    r(1, 1) = c;
    return r;
}

}  // namespace mscn
