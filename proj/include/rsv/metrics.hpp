#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsv/knowledge.hpp"

namespace rsv {

// Confusion matrix over categorical codes.  `labels` is the sorted union of
// the codes observed in ground truth and predictions; rows index ground
// truth, columns predictions.  Codes absent from the ground truth leave
// all-zero rows.
struct confusion_matrix {
    std::vector<std::int64_t> labels;
    std::vector<std::vector<std::int64_t>> counts;

    std::size_t size() const { return labels.size(); }
};

// Encodes each concept vector as its positional code (base b, concept 0 most
// significant) and tabulates ground truth against predictions.  When
// `positions` is given, only those concept positions enter the code — this
// is how per-attribute views (e.g. shapes only) are produced.
confusion_matrix concept_confusion(const std::vector<concept_vector>& ground_truth,
                                   const std::vector<concept_vector>& predicted,
                                   const concept_space& space,
                                   const std::vector<int>& positions = {});

// Tabulates plain categorical sequences.
confusion_matrix categorical_confusion(const std::vector<std::int64_t>& ground_truth,
                                       const std::vector<std::int64_t>& predicted);

// Concept collapse: 1 - p/m where p is the number of matrix columns with any
// positive entry and m the matrix size.
double collapse(const confusion_matrix& cm);

// Unweighted mean of per-class binary F1.  A class with no true and no
// predicted occurrences contributes 0 (the conservative zero-division
// convention; keeps numbers reproducible across implementations).
double macro_f1(const std::vector<std::int64_t>& ground_truth,
                const std::vector<std::int64_t>& predicted,
                const std::vector<std::int64_t>& classes);

// Per-position binary F1 averaged across vector positions.
double mean_f1(const std::vector<std::vector<int>>& ground_truth,
               const std::vector<std::vector<int>>& predicted);

// Per-position accuracy averaged across vector positions.
double mean_accuracy(const std::vector<std::vector<int>>& ground_truth,
                     const std::vector<std::vector<int>>& predicted);

struct metric_report {
    double collapse = 0.0;
    double macro_f1 = 0.0;                 // over concept codes
    std::optional<double> mean_f1;         // over label positions (binary labels only)
    std::optional<double> label_accuracy;  // per-position, averaged
    double concept_accuracy = 0.0;         // per-position, averaged
    std::size_t n_records = 0;
    confusion_matrix confusion;
};

// One prediction record: concepts always present, labels optional.
struct prediction_record {
    concept_vector gt_concepts;
    concept_vector pred_concepts;
    std::optional<label_vector> gt_label;
    std::optional<label_vector> pred_label;
};

// Reads JSON-lines records {"gt_concepts": [...], "pred_concepts": [...],
// "gt_label": [...], "pred_label": [...]}; label fields may be scalars.
// Malformed lines raise parse_error with the line number.
std::vector<prediction_record> parse_prediction_lines(std::istream& in);

// Computes the full report.  `base` is the per-concept cardinality; when
// absent it defaults to 1 + the largest observed concept value (at least 2).
// `positions` projects the concept code as in concept_confusion.
metric_report evaluate_predictions(const std::vector<prediction_record>& records,
                                   std::optional<int> base = std::nullopt,
                                   const std::vector<int>& positions = {});

}  // namespace rsv
