#include "mscn/mixtures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mscn/kernels.hpp"

namespace mscn {

const char* to_string(Family f) { return f == Family::Mscnm ? "mscnm" : "mnm"; }

Family family_from_string(const std::string& s) {
    if (s == "mscnm") return Family::Mscnm;
    if (s == "mnm") return Family::Mnm;
    throw std::invalid_argument("unknown model family: " + s);
}

void MixtureModel::validate() const {
    if (components.empty()) throw std::invalid_argument("MixtureModel: no components");
    if (weights.size() != components.size())
        throw std::invalid_argument("MixtureModel: weights/components length mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("MixtureModel: weights must be positive");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("MixtureModel: weights must sum to 1");
    const std::size_t dd = components.front().dim();
    for (const MscnParams& c : components) {
        if (c.dim() != dd) throw std::invalid_argument("MixtureModel: mixed dimensions");
        c.validate(family == Family::Mnm);
        if (family == Family::Mnm) {
            for (std::size_t h = 0; h < dd; ++h)
                if (c.alpha[h] != 1.0 || c.eta[h] != 1.0)
                    throw std::invalid_argument("MixtureModel: mnm requires pinned alpha/eta");
        }
    }
}

double mixture_logpdf(std::span<const double> x, const MixtureModel& m) {
    const std::size_t k = m.k();
    Vector logp(k);
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        logp[j] = std::log(m.weights[j]) + mscn_logpdf(x, m.components[j]);
        hi = std::max(hi, logp[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += std::exp(logp[j] - hi);
    return hi + std::log(sum);
}

double observed_loglik(const Matrix& data, const MixtureModel& m) {
    Vector per_row(data.rows());
    kernels::mixture_logpdf_rows(data, m, per_row);
    double acc = 0.0;
    for (double v : per_row) acc += v;
    return acc;
}

Vector posterior_z(std::span<const double> x, const MixtureModel& m) {
    const std::size_t k = m.k();
    Vector logp(k);
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        logp[j] = std::log(m.weights[j]) + mscn_logpdf(x, m.components[j]);
        hi = std::max(hi, logp[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        logp[j] = std::exp(logp[j] - hi);
        sum += logp[j];
    }
    for (std::size_t j = 0; j < k; ++j) logp[j] /= sum;
    return logp;
}

Vector posterior_v(std::span<const double> x, const MscnParams& c) {
    const std::size_t d = c.dim();
    if (x.size() != d) throw std::invalid_argument("posterior_v: dimension mismatch");
    Vector diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = x[i] - c.mu[i];
    const Vector r = tmatvec(c.gamma, diff);
    Vector v(d);
    for (std::size_t h = 0; h < d; ++h) {
        if (c.alpha[h] >= 1.0) {
            v[h] = 1.0;
            continue;
        }
        const double r2 = r[h] * r[h];
        const double la = std::log(c.alpha[h]) - 0.5 * std::log(c.lambda[h])
                          - 0.5 * r2 / c.lambda[h];
        const double lb = std::log1p(-c.alpha[h]) - 0.5 * std::log(c.eta[h] * c.lambda[h])
                          - 0.5 * r2 / (c.eta[h] * c.lambda[h]);
        v[h] = 1.0 / (1.0 + std::exp(lb - la));
    }
    return v;
}

ClassificationReport classify(const Matrix& data, const MixtureModel& m) {
    m.validate();
    const std::size_t n = data.rows(), d = m.d(), k = m.k();
    if (data.cols() != d) throw std::invalid_argument("classify: dimension mismatch");

    ClassificationReport rep;
    kernels::estep_rows(data, m, rep.z_hat, rep.v_hat);
    rep.labels.resize(n);
    rep.good_flags = Mask(n, d);
    rep.outliers_per_dimension.assign(d, 0);

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < k; ++j)
            if (rep.z_hat(i, j) > rep.z_hat(i, best)) best = j;  // ties keep the lowest index
        rep.labels[i] = static_cast<int>(best);
        for (std::size_t h = 0; h < d; ++h) {
            const bool good = rep.v_hat(i, h, best) >= 0.5;
            rep.good_flags(i, h) = good ? 1 : 0;
            if (!good) ++rep.outliers_per_dimension[h];
        }
    }
    return rep;
}

namespace {

void check_downweight_args(double delta, double alpha, double eta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("downweight: delta must be >= 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("downweight: alpha must lie in (0,1)");
    if (!(eta > 1.0)) throw std::invalid_argument("downweight: eta must exceed 1");
}

}  // namespace

double downweight(double delta, double alpha, double eta) {
    check_downweight_args(delta, alpha, eta);
    // Closed form with exp(delta/2) factored out of numerator and
    // denominator so large delta cannot overflow; the limit is 1/eta.
    const double t = std::exp(-0.5 * delta * (eta - 1.0) / eta);
    return 1.0 - ((1.0 - alpha) * (eta - 1.0))
                     / (eta * ((1.0 - alpha) + alpha * std::sqrt(eta) * t));
}

double downweight_derivative(double delta, double alpha, double eta) {
    check_downweight_args(delta, alpha, eta);
    const double t = std::exp(-0.5 * delta * (eta - 1.0) / eta);
    const double den = (1.0 - alpha) + alpha * std::sqrt(eta) * t;
    return -(alpha * (1.0 - alpha) * (eta - 1.0) * (eta - 1.0) * t)
           / (2.0 * eta * std::sqrt(eta) * den * den);
}

}  // namespace mscn
