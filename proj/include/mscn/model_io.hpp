#pragma once

#include <string>

#include "mscn/evaluation.hpp"
#include "mscn/mixtures.hpp"

namespace mscn {

/// Model document: {"family", "k", "d", "weights", "components":
/// [{"mu","gamma","lambda","alpha","eta"}, ...]} with gamma flattened
/// row-major. Numbers carry 17 significant digits, so serialization is
/// byte-deterministic and round-trips exactly.
std::string model_to_json(const MixtureModel& m);
MixtureModel model_from_json(const std::string& text);

MixtureModel load_model(const std::string& path);

/// Writes through a temporary file in the same directory, then renames.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// Classification report document; scores/confusion blocks are included
/// when present (ari stored in scores.ari, er in scores.er).
struct ReportScores {
    AgreementScores agreement;
    bool has_confusion = false;
    OutlierConfusion confusion;
};

std::string report_to_json(const ClassificationReport& rep, const ReportScores* scores);

std::string scores_to_json(const AgreementScores& agreement, const OutlierConfusion* confusion);

}  // namespace mscn
