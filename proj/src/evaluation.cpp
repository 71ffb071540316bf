#include "mscn/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mscn {

namespace {

// Maps arbitrary labels to 0..m-1 by ascending label value.
std::vector<int> compact(std::span<const int> labels, std::vector<int>& values) {
    values.assign(labels.begin(), labels.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i] = static_cast<int>(
            std::lower_bound(values.begin(), values.end(), labels[i]) - values.begin());
    }
    return out;
}

double comb2(double x) { return x * (x - 1.0) / 2.0; }

// Exact min-cost assignment (Hungarian algorithm with potentials) on a
// square cost matrix; returns the column matched to each row.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = std::numeric_limits<double>::infinity();
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> match(n);
    for (std::size_t j = 1; j <= n; ++j)
        if (p[j] != 0) match[p[j] - 1] = j - 1;
    return match;
}

}  // namespace

double adjusted_rand(std::span<const int> labels_a, std::span<const int> labels_b) {
    if (labels_a.size() != labels_b.size())
        throw std::invalid_argument("adjusted_rand: length mismatch");
    const std::size_t n = labels_a.size();
    if (n < 2) throw std::invalid_argument("adjusted_rand: need at least 2 observations");

    std::vector<int> va, vb;
    const std::vector<int> a = compact(labels_a, va);
    const std::vector<int> b = compact(labels_b, vb);
    const std::size_t ka = va.size(), kb = vb.size();

    std::vector<std::vector<std::int64_t>> cont(ka, std::vector<std::int64_t>(kb, 0));
    for (std::size_t i = 0; i < n; ++i) ++cont[a[i]][b[i]];

    double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (std::size_t i = 0; i < ka; ++i) {
        std::int64_t row = 0;
        for (std::size_t j = 0; j < kb; ++j) {
            row += cont[i][j];
            sum_ij += comb2(static_cast<double>(cont[i][j]));
        }
        sum_a += comb2(static_cast<double>(row));
    }
    for (std::size_t j = 0; j < kb; ++j) {
        std::int64_t col = 0;
        for (std::size_t i = 0; i < ka; ++i) col += cont[i][j];
        sum_b += comb2(static_cast<double>(col));
    }

    const double total = comb2(static_cast<double>(n));
    const double expected = sum_a * sum_b / total;
    const double denom = 0.5 * (sum_a + sum_b) - expected;
    if (denom == 0.0) {
        // Both single-class or both all-singletons: identical partitions.
        return 1.0;
    }
    return (sum_ij - expected) / denom;
}

AgreementScores error_rate(std::span<const int> true_labels, std::span<const int> pred_labels) {
    if (true_labels.size() != pred_labels.size())
        throw std::invalid_argument("error_rate: length mismatch");
    const std::size_t n = true_labels.size();
    if (n == 0) throw std::invalid_argument("error_rate: empty labels");

    std::vector<int> vt, vp;
    const std::vector<int> t = compact(true_labels, vt);
    const std::vector<int> p = compact(pred_labels, vp);
    const std::size_t k = std::max(vt.size(), vp.size());

    // conf[pc][tc] = number of rows with predicted class pc and true class tc.
    std::vector<std::vector<std::int64_t>> conf(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < n; ++i) ++conf[p[i]][t[i]];

    std::vector<std::size_t> assign(k);
    if (k <= 10) {
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::int64_t best = -1;
        do {
            std::int64_t agree = 0;
            for (std::size_t pc = 0; pc < k; ++pc) agree += conf[pc][perm[pc]];
            if (agree > best) {
                best = agree;
                assign = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        std::vector<std::vector<double>> cost(k, std::vector<double>(k));
        for (std::size_t pc = 0; pc < k; ++pc)
            for (std::size_t tc = 0; tc < k; ++tc)
                cost[pc][tc] = -static_cast<double>(conf[pc][tc]);
        assign = hungarian(cost);
    }

    std::int64_t agree = 0;
    for (std::size_t pc = 0; pc < k; ++pc) agree += conf[pc][assign[pc]];

    AgreementScores out;
    out.er = 1.0 - static_cast<double>(agree) / static_cast<double>(n);
    out.permutation.resize(vp.size());
    for (std::size_t pc = 0; pc < vp.size(); ++pc) {
        const std::size_t tc = assign[pc];
        // Padded columns (true classes that do not exist) keep the
        // predicted label itself as a placeholder.
        out.permutation[pc] = tc < vt.size() ? vt[tc] : vp[pc];
    }
    return out;
}

AgreementScores agreement(std::span<const int> true_labels, std::span<const int> pred_labels) {
    AgreementScores s = error_rate(true_labels, pred_labels);
    s.ari = adjusted_rand(true_labels, pred_labels);
    return s;
}

OutlierConfusion outlier_confusion(const Mask& true_bad, const Mask& flagged_bad) {
    if (true_bad.rows != flagged_bad.rows || true_bad.cols != flagged_bad.cols)
        throw std::invalid_argument("outlier_confusion: shape mismatch");
    OutlierConfusion out;
    out.per_dimension.resize(true_bad.cols);
    for (std::size_t i = 0; i < true_bad.rows; ++i) {
        for (std::size_t h = 0; h < true_bad.cols; ++h) {
            ConfusionCounts& c = out.per_dimension[h];
            const bool truth = true_bad(i, h), flag = flagged_bad(i, h);
            if (truth && flag)
                ++c.tp;
            else if (!truth && flag)
                ++c.fp;
            else if (truth && !flag)
                ++c.fn;
            else
                ++c.tn;
        }
    }
    for (const ConfusionCounts& c : out.per_dimension) {
        out.overall.tp += c.tp;
        out.overall.fp += c.fp;
        out.overall.fn += c.fn;
        out.overall.tn += c.tn;
    }
    return out;
}

}  // namespace mscn
