#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mscn/matrix.hpp"

namespace mscn {

struct Standardization {
    Vector mean;
    Vector sd;  // sample standard deviation, divisor n-1
};

struct Dataset {
    Matrix x;
    std::vector<int> true_labels;  // empty when absent
    Mask true_bad;                 // empty when absent
    std::vector<std::string> column_names;
    std::optional<Standardization> standardization;

    bool has_labels() const { return !true_labels.empty(); }
    bool has_bad_mask() const { return !true_bad.empty(); }
};

/// The three-cluster bivariate benchmark: 400 + 600 + 600 normal draws,
/// then the first coordinate of 11 points of cluster 2 replaced by draws
/// from the uniform law on (-10,-7) u (8,15) (mass proportional to
/// interval length). Labels and bad cells are recorded.
Dataset generate_synthetic(std::uint64_t seed);

struct CsvOptions {
    bool has_header = false;
    /// Column to treat as the true labels (name, or 0-based index given as
    /// digits); excluded from x. Categorical values are mapped to integers
    /// by sorted order of the distinct strings.
    std::optional<std::string> label_column;
    /// Further columns to exclude from x (names or indices).
    std::vector<std::string> drop_columns;
};

Dataset load_csv(const std::string& path, const CsvOptions& opts = {});

/// Writes x (and a header when column names are present and with_header is
/// set) with 17 significant digits.
void save_csv(const Dataset& ds, const std::string& path, bool with_header = false);

void save_labels(const std::vector<int>& labels, const std::string& path);
std::vector<int> load_labels(const std::string& path);

/// 0/1 cells, comma-separated, one row per line.
void save_mask(const Mask& mask, const std::string& path);
Mask load_mask(const std::string& path);

/// Returns a copy whose columns have mean 0 and sample standard deviation 1;
/// the transform is recorded for the inverse mapping.
Dataset standardize(const Dataset& ds);

/// Inverse of standardize using the recorded transform.
Dataset destandardize(const Dataset& ds);

}  // namespace mscn
