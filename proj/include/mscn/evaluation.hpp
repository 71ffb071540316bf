#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mscn/matrix.hpp"

namespace mscn {

struct AgreementScores {
    double er = 0.0;
    double ari = 0.0;
    /// For each distinct predicted label (ascending), the true label it was
    /// matched to by the ER-minimizing assignment.
    std::vector<int> permutation;
};

/// Pair-counting adjusted Rand index; 1 for identical partitions, expected
/// value 0 under independent random labelings.
double adjusted_rand(std::span<const int> labels_a, std::span<const int> labels_b);

/// Minimum misclassification proportion over label matchings: exhaustive
/// permutation search up to 10 classes, Hungarian assignment beyond.
AgreementScores error_rate(std::span<const int> true_labels, std::span<const int> pred_labels);

/// Convenience: error_rate plus the ARI in one report.
AgreementScores agreement(std::span<const int> true_labels, std::span<const int> pred_labels);

struct ConfusionCounts {
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
};

struct OutlierConfusion {
    ConfusionCounts overall;
    std::vector<ConfusionCounts> per_dimension;
};

/// Cell-level confusion between true bad cells and flagged bad cells.
OutlierConfusion outlier_confusion(const Mask& true_bad, const Mask& flagged_bad);

}  // namespace mscn
