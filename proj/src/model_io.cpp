#include "mscn/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mscn {

namespace {

// Fixed-format emitter: nlohmann serializes doubles with shortest
// round-trip digits, which is exact but not guaranteed to show 15+
// significant digits; reports and models are written with %.17g instead.
void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void append_vector(std::string& out, std::span<const double> v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        append_number(out, v[i]);
    }
    out += ']';
}

void append_matrix_row_major(std::string& out, const Matrix& m) {
    out += '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i || j) out += ',';
            append_number(out, m(i, j));
        }
    }
    out += ']';
}

Vector to_vector(const nlohmann::json& j, const char* what, std::size_t want) {
    if (!j.is_array() || j.size() != want)
        throw std::runtime_error(std::string("model JSON: bad ") + what);
    Vector v(want);
    for (std::size_t i = 0; i < want; ++i) v[i] = j[i].get<double>();
    return v;
}

}  // namespace

std::string model_to_json(const MixtureModel& m) {
    std::string out = "{\"family\":\"";
    out += to_string(m.family);
    out += "\",\"k\":" + std::to_string(m.k());
    out += ",\"d\":" + std::to_string(m.d());
    out += ",\"weights\":";
    append_vector(out, m.weights);
    out += ",\"components\":[";
    for (std::size_t j = 0; j < m.k(); ++j) {
        const MscnParams& c = m.components[j];
        if (j) out += ',';
        out += "{\"mu\":";
        append_vector(out, c.mu);
        out += ",\"gamma\":";
        append_matrix_row_major(out, c.gamma);
        out += ",\"lambda\":";
        append_vector(out, c.lambda);
        out += ",\"alpha\":";
        append_vector(out, c.alpha);
        out += ",\"eta\":";
        append_vector(out, c.eta);
        out += '}';
    }
    out += "]}\n";
    return out;
}

MixtureModel model_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    MixtureModel m;
    m.family = family_from_string(j.at("family").get<std::string>());
    const std::size_t k = j.at("k").get<std::size_t>();
    const std::size_t d = j.at("d").get<std::size_t>();
    m.weights = to_vector(j.at("weights"), "weights", k);
    const nlohmann::json& comps = j.at("components");
    if (!comps.is_array() || comps.size() != k)
        throw std::runtime_error("model JSON: components/k mismatch");
    m.components.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        MscnParams& p = m.components[c];
        p.mu = to_vector(comps[c].at("mu"), "mu", d);
        const Vector flat = to_vector(comps[c].at("gamma"), "gamma", d * d);
        p.gamma = Matrix(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t jj = 0; jj < d; ++jj) p.gamma(i, jj) = flat[i * d + jj];
        p.lambda = to_vector(comps[c].at("lambda"), "lambda", d);
        p.alpha = to_vector(comps[c].at("alpha"), "alpha", d);
        p.eta = to_vector(comps[c].at("eta"), "eta", d);
    }
    m.validate();
    return m;
}

MixtureModel load_model(const std::string& path) { return model_from_json(read_text(path)); }

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

void append_confusion(std::string& out, const ConfusionCounts& c) {
    out += "{\"tp\":" + std::to_string(c.tp) + ",\"fp\":" + std::to_string(c.fp)
           + ",\"fn\":" + std::to_string(c.fn) + ",\"tn\":" + std::to_string(c.tn) + "}";
}

void append_scores(std::string& out, const AgreementScores& a, const OutlierConfusion* conf) {
    out += "\"scores\":{\"er\":";
    append_number(out, a.er);
    out += ",\"ari\":";
    append_number(out, a.ari);
    out += ",\"permutation\":[";
    for (std::size_t i = 0; i < a.permutation.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a.permutation[i]);
    }
    out += ']';
    if (conf) {
        out += ",\"outlier_confusion\":{\"overall\":";
        append_confusion(out, conf->overall);
        out += ",\"per_dimension\":[";
        for (std::size_t h = 0; h < conf->per_dimension.size(); ++h) {
            if (h) out += ',';
            append_confusion(out, conf->per_dimension[h]);
        }
        out += "]}";
    }
    out += '}';
}

}  // namespace

std::string report_to_json(const ClassificationReport& rep, const ReportScores* scores) {
    const std::size_t n = rep.labels.size();
    const std::size_t d = rep.good_flags.cols;
    std::string out = "{\"n\":" + std::to_string(n) + ",\"d\":" + std::to_string(d)
                      + ",\"k\":" + std::to_string(rep.z_hat.cols());
    out += ",\"labels\":[";
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ',';
        out += std::to_string(rep.labels[i]);
    }
    out += "],\"good_flags\":[";
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ',';
        out += '[';
        for (std::size_t h = 0; h < d; ++h) {
            if (h) out += ',';
            out += rep.good_flags(i, h) ? '1' : '0';
        }
        out += ']';
    }
    out += "],\"outliers_per_dimension\":[";
    for (std::size_t h = 0; h < d; ++h) {
        if (h) out += ',';
        out += std::to_string(rep.outliers_per_dimension[h]);
    }
    out += ']';
    if (scores) {
        out += ',';
        append_scores(out, scores->agreement, scores->has_confusion ? &scores->confusion : nullptr);
    }
    out += "}\n";
    return out;
}

std::string scores_to_json(const AgreementScores& agreement, const OutlierConfusion* confusion) {
    std::string out = "{";
    append_scores(out, agreement, confusion);
    out += "}\n";
    return out;
}

}  // namespace mscn
