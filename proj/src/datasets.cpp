#include "mscn/datasets.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mscn/numerics.hpp"
#include "mscn/rng.hpp"

namespace mscn {

namespace {

Matrix make_sigma(double a, double b, double c, double d) {
    Matrix s(2, 2);
    s(0, 0) = a;
    s(0, 1) = b;
    s(1, 0) = c;
    s(1, 1) = d;
    return s;
}

// One bivariate normal draw through the lower Cholesky factor.
void mvn_draw(Rng& rng, const Vector& mu, const Matrix& lower, std::span<double> out) {
    const std::size_t d = mu.size();
    Vector z(d);
    for (std::size_t h = 0; h < d; ++h) z[h] = rng.normal();
    for (std::size_t r = 0; r < d; ++r) {
        double v = mu[r];
        for (std::size_t c = 0; c <= r; ++c) v += lower(r, c) * z[c];
        out[r] = v;
    }
}

}  // namespace

Dataset generate_synthetic(std::uint64_t seed) {
    const std::size_t sizes[3] = {400, 600, 600};
    const Vector mus[3] = {{0.0, 0.0}, {2.0, 6.0}, {0.0, 12.0}};
    const Matrix sigmas[3] = {make_sigma(1.0, -0.5, -0.5, 1.0), make_sigma(2.0, 0.5, 0.5, 2.0),
                              make_sigma(1.0, -0.5, -0.5, 1.0)};

    const std::size_t n = sizes[0] + sizes[1] + sizes[2];
    Dataset ds;
    ds.x = Matrix(n, 2);
    ds.true_labels.resize(n);
    ds.true_bad = Mask(n, 2);
    ds.column_names = {"x1", "x2"};

    Rng root(seed);
    std::size_t row = 0;
    std::size_t cluster2_start = 0;
    for (int g = 0; g < 3; ++g) {
        Rng stream = root.substream(static_cast<std::uint64_t>(g + 1));
        const Matrix lower = transpose(cholesky(sigmas[g]).omega);
        if (g == 1) cluster2_start = row;
        for (std::size_t i = 0; i < sizes[g]; ++i, ++row) {
            mvn_draw(stream, mus[g], lower, ds.x.row(row));
            ds.true_labels[row] = g;
        }
    }

    // 11 distinct points of cluster 2; replace x1 with a draw from the
    // union (-10,-7) u (8,15), intervals weighted 3:7 by length.
    Rng sel = root.substream(100);
    Rng val = root.substream(101);
    std::vector<std::size_t> idx(sizes[1]);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < 11; ++i) {
        const std::size_t j = i + sel.uniform_below(sizes[1] - i);
        std::swap(idx[i], idx[j]);
    }
    std::vector<std::size_t> chosen(idx.begin(), idx.begin() + 11);
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t off : chosen) {
        const double u = val.uniform();
        const double scaled = 10.0 * u;  // total support length
        const double x1 = scaled < 3.0 ? -10.0 + scaled : 8.0 + (scaled - 3.0);
        ds.x(cluster2_start + off, 0) = x1;
        ds.true_bad(cluster2_start + off, 0) = 1;
    }
    return ds;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    cells.push_back(cur);
    for (std::string& c : cells) {
        const auto b = c.find_first_not_of(" \t");
        const auto e = c.find_last_not_of(" \t");
        c = b == std::string::npos ? std::string{} : c.substr(b, e - b + 1);
    }
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno == 0 && std::isfinite(out);
}

std::size_t resolve_column(const std::string& spec, const std::vector<std::string>& names,
                           std::size_t ncols) {
    if (!names.empty()) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == spec) return i;
    }
    if (!spec.empty() && spec.find_first_not_of("0123456789") == std::string::npos) {
        const std::size_t i = std::stoul(spec);
        if (i < ncols) return i;
        throw std::invalid_argument("column index out of range: " + spec);
    }
    throw std::invalid_argument("unknown column: " + spec);
}

}  // namespace

Dataset load_csv(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        rows.push_back(split_line(line));
    }
    if (rows.empty()) throw std::runtime_error("load_csv: " + path + " is empty");

    std::vector<std::string> names;
    std::size_t first_data = 0;
    if (opts.has_header) {
        names = rows[0];
        first_data = 1;
        if (rows.size() == 1) throw std::runtime_error("load_csv: header but no data rows");
    }
    const std::size_t ncols = rows[first_data].size();
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        if (rows[r].size() != ncols)
            throw std::runtime_error("load_csv: ragged row " + std::to_string(r + 1) + " in "
                                     + path);
    }
    if (opts.has_header && names.size() != ncols)
        throw std::runtime_error("load_csv: header width differs from data width");

    std::vector<char> drop(ncols, 0);
    std::size_t label_col = ncols;  // sentinel: none
    if (opts.label_column) {
        label_col = resolve_column(*opts.label_column, names, ncols);
        drop[label_col] = 1;
    }
    for (const std::string& spec : opts.drop_columns) drop[resolve_column(spec, names, ncols)] = 1;

    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < ncols; ++c)
        if (!drop[c]) keep.push_back(c);
    if (keep.empty()) throw std::runtime_error("load_csv: no feature columns left");

    const std::size_t n = rows.size() - first_data;
    Dataset ds;
    ds.x = Matrix(n, keep.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < keep.size(); ++c) {
            double v;
            if (!parse_double(rows[r + first_data][keep[c]], v))
                throw std::runtime_error("load_csv: non-numeric cell at row "
                                         + std::to_string(r + first_data + 1) + ", column "
                                         + std::to_string(keep[c] + 1) + " in " + path);
            ds.x(r, c) = v;
        }
    }
    if (!names.empty()) {
        for (std::size_t c : keep) ds.column_names.push_back(names[c]);
    }

    if (label_col < ncols) {
        ds.true_labels.resize(n);
        bool numeric = true;
        std::vector<double> numeric_vals(n);
        for (std::size_t r = 0; r < n && numeric; ++r)
            numeric = parse_double(rows[r + first_data][label_col], numeric_vals[r]);
        if (numeric) {
            for (std::size_t r = 0; r < n; ++r)
                ds.true_labels[r] = static_cast<int>(std::llround(numeric_vals[r]));
        } else {
            std::map<std::string, int> codes;
            for (std::size_t r = 0; r < n; ++r) codes[rows[r + first_data][label_col]] = 0;
            int next = 0;
            for (auto& [key, code] : codes) code = next++;
            for (std::size_t r = 0; r < n; ++r)
                ds.true_labels[r] = codes[rows[r + first_data][label_col]];
        }
    }
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path, bool with_header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot open " + path);
    if (with_header) {
        if (ds.column_names.size() != ds.x.cols())
            throw std::runtime_error("save_csv: missing column names for header");
        for (std::size_t c = 0; c < ds.column_names.size(); ++c)
            out << (c ? "," : "") << ds.column_names[c];
        out << '\n';
    }
    char buf[40];
    for (std::size_t r = 0; r < ds.x.rows(); ++r) {
        for (std::size_t c = 0; c < ds.x.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", ds.x(r, c));
            out << (c ? "," : "") << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_csv: write failed for " + path);
}

void save_labels(const std::vector<int>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_labels: cannot open " + path);
    for (int lab : labels) out << lab << '\n';
    if (!out) throw std::runtime_error("save_labels: write failed for " + path);
}

std::vector<int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_labels: cannot open " + path);
    std::vector<int> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        try {
            labels.push_back(std::stoi(line));
        } catch (const std::exception&) {
            throw std::runtime_error("load_labels: non-integer line in " + path);
        }
    }
    if (labels.empty()) throw std::runtime_error("load_labels: " + path + " is empty");
    return labels;
}

void save_mask(const Mask& mask, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_mask: cannot open " + path);
    for (std::size_t r = 0; r < mask.rows; ++r) {
        for (std::size_t c = 0; c < mask.cols; ++c)
            out << (c ? "," : "") << (mask(r, c) ? 1 : 0);
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_mask: write failed for " + path);
}

Mask load_mask(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_mask: cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        rows.push_back(split_line(line));
    }
    if (rows.empty()) throw std::runtime_error("load_mask: " + path + " is empty");
    Mask m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols)
            throw std::runtime_error("load_mask: ragged row " + std::to_string(r + 1));
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (rows[r][c] == "1")
                m(r, c) = 1;
            else if (rows[r][c] != "0")
                throw std::runtime_error("load_mask: cell must be 0 or 1");
        }
    }
    return m;
}

Dataset standardize(const Dataset& ds) {
    const std::size_t n = ds.x.rows(), d = ds.x.cols();
    if (n < 2) throw std::invalid_argument("standardize: need at least 2 rows");
    Standardization st;
    st.mean.assign(d, 0.0);
    st.sd.assign(d, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += ds.x(r, c);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double diff = ds.x(r, c) - mean;
            ss += diff * diff;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (!(sd > 0.0))
            throw std::invalid_argument("standardize: zero-variance column "
                                        + std::to_string(c + 1));
        st.mean[c] = mean;
        st.sd[c] = sd;
    }
    Dataset out = ds;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) out.x(r, c) = (ds.x(r, c) - st.mean[c]) / st.sd[c];
    out.standardization = std::move(st);
    return out;
}

Dataset destandardize(const Dataset& ds) {
    if (!ds.standardization) throw std::invalid_argument("destandardize: no stored transform");
    const Standardization& st = *ds.standardization;
    Dataset out = ds;
    for (std::size_t r = 0; r < ds.x.rows(); ++r)
        for (std::size_t c = 0; c < ds.x.cols(); ++c)
            out.x(r, c) = ds.x(r, c) * st.sd[c] + st.mean[c];
    out.standardization.reset();
    return out;
}

}  // namespace mscn
