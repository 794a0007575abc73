#pragma once

#include <string>
#include <utility>

#include "iprob/calibration.hpp"
#include "iprob/credal_set.hpp"
#include "iprob/decisions.hpp"
#include "iprob/dataset.hpp"
#include "iprob/entropy.hpp"
#include "iprob/losses.hpp"
#include "iprob/model.hpp"

namespace iprob {

// All writers print numbers with 17 significant digits.  Readers throw
// IoError on malformed JSON and DomainError/DimensionError on invalid content.

// {"outcomes": [...], "feature_of": [...], "vertices": [[...], ...]}, plus the
// optional keys "feature_labels" and "label_of".
std::string credal_set_to_json(const CredalSet& c);
CredalSet credal_set_from_json(const std::string& text);

// {"actions": [...], "entries": [[...], ...]}
std::string loss_matrix_to_json(const LossMatrix& l);
LossMatrix loss_matrix_from_json(const std::string& text);

// {"kind": "winkler", "c": 0.3, "smooth_f": 1000}
std::string parametric_loss_to_json(const ParametricBinaryLoss& l);
ParametricBinaryLoss parametric_loss_from_json(const std::string& text);

// {"weights": [...], "bias": b, "standardizer": {"mean": [...], "std": [...]},
//  "interactions": false}
std::string model_to_json(const TrainedModel& m);
TrainedModel model_from_json(const std::string& text);

// {"space": {credal-set keys without vertices}, "per_feature": {label: [[...]]}}
// or {"constant": {credal set}}.
std::string forecast_to_json(const Forecast& f);
Forecast forecast_from_json(const std::string& text);

std::string maxent_result_to_json(const MaxentResult& r, const CredalSet& data, const LossMatrix& l);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace iprob
