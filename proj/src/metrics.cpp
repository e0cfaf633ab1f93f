#include "rsv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <set>

#include "json.hpp"

namespace rsv {

namespace {

std::int64_t project_code(const concept_vector& c, int base, const std::vector<int>& positions) {
    std::int64_t code = 0;
    for (int p : positions) code = code * base + c[static_cast<std::size_t>(p)];
    return code;
}

confusion_matrix tabulate(const std::vector<std::int64_t>& gt, const std::vector<std::int64_t>& pred) {
    if (gt.size() != pred.size())
        throw eval_error("confusion matrix inputs differ in length: " + std::to_string(gt.size()) +
                         " vs " + std::to_string(pred.size()));
    std::set<std::int64_t> codes(gt.begin(), gt.end());
    codes.insert(pred.begin(), pred.end());

    confusion_matrix cm;
    cm.labels.assign(codes.begin(), codes.end());
    std::map<std::int64_t, std::size_t> index;
    for (std::size_t i = 0; i < cm.labels.size(); ++i) index[cm.labels[i]] = i;
    cm.counts.assign(cm.labels.size(), std::vector<std::int64_t>(cm.labels.size(), 0));
    for (std::size_t i = 0; i < gt.size(); ++i) ++cm.counts[index[gt[i]]][index[pred[i]]];
    return cm;
}

double binary_f1(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
    // 2tp / (2tp + fp + fn); zero when the class never occurs on either side.
    std::int64_t denom = 2 * tp + fp + fn;
    return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

confusion_matrix concept_confusion(const std::vector<concept_vector>& ground_truth,
                                   const std::vector<concept_vector>& predicted,
                                   const concept_space& space, const std::vector<int>& positions) {
    std::vector<int> pos = positions;
    if (pos.empty())
        for (int j = 0; j < space.k; ++j) pos.push_back(j);
    double width = static_cast<double>(pos.size()) * std::log2(static_cast<double>(space.b));
    if (width > 62.0) throw capacity_error("concept code does not fit 63 bits");

    std::vector<std::int64_t> gt, pr;
    gt.reserve(ground_truth.size());
    pr.reserve(predicted.size());
    for (const auto& c : ground_truth) gt.push_back(project_code(c, space.b, pos));
    for (const auto& c : predicted) pr.push_back(project_code(c, space.b, pos));
    return tabulate(gt, pr);
}

confusion_matrix categorical_confusion(const std::vector<std::int64_t>& ground_truth,
                                       const std::vector<std::int64_t>& predicted) {
    return tabulate(ground_truth, predicted);
}

double collapse(const confusion_matrix& cm) {
    if (cm.size() == 0) throw eval_error("collapse of an empty confusion matrix");
    std::size_t used_columns = 0;
    for (std::size_t j = 0; j < cm.size(); ++j) {
        for (std::size_t i = 0; i < cm.size(); ++i) {
            if (cm.counts[i][j] > 0) {
                ++used_columns;
                break;
            }
        }
    }
    return 1.0 - static_cast<double>(used_columns) / static_cast<double>(cm.size());
}

double macro_f1(const std::vector<std::int64_t>& ground_truth,
                const std::vector<std::int64_t>& predicted,
                const std::vector<std::int64_t>& classes) {
    if (ground_truth.size() != predicted.size())
        throw eval_error("macro_f1 inputs differ in length");
    if (classes.empty()) throw eval_error("macro_f1 needs at least one class");
    double total = 0;
    for (std::int64_t cls : classes) {
        std::int64_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < ground_truth.size(); ++i) {
            bool is_gt = ground_truth[i] == cls, is_pred = predicted[i] == cls;
            tp += is_gt && is_pred;
            fp += !is_gt && is_pred;
            fn += is_gt && !is_pred;
        }
        total += binary_f1(tp, fp, fn);
    }
    return total / static_cast<double>(classes.size());
}

namespace {

double positionwise(const std::vector<std::vector<int>>& gt, const std::vector<std::vector<int>>& pred,
                    bool f1) {
    if (gt.size() != pred.size()) throw eval_error("inputs differ in length");
    if (gt.empty()) throw eval_error("no records");
    std::size_t width = gt[0].size();
    for (const auto& v : gt)
        if (v.size() != width) throw eval_error("ground-truth width mismatch");
    for (const auto& v : pred)
        if (v.size() != width) throw eval_error("prediction width mismatch");
    if (width == 0) throw eval_error("zero-width vectors");

    double total = 0;
    for (std::size_t p = 0; p < width; ++p) {
        std::int64_t tp = 0, fp = 0, fn = 0, correct = 0;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            int g = gt[i][p], q = pred[i][p];
            correct += g == q;
            tp += g == 1 && q == 1;
            fp += g != 1 && q == 1;
            fn += g == 1 && q != 1;
        }
        total += f1 ? binary_f1(tp, fp, fn)
                    : static_cast<double>(correct) / static_cast<double>(gt.size());
    }
    return total / static_cast<double>(width);
}

}  // namespace

double mean_f1(const std::vector<std::vector<int>>& ground_truth,
               const std::vector<std::vector<int>>& predicted) {
    return positionwise(ground_truth, predicted, true);
}

double mean_accuracy(const std::vector<std::vector<int>>& ground_truth,
                     const std::vector<std::vector<int>>& predicted) {
    return positionwise(ground_truth, predicted, false);
}

namespace {

std::vector<int> as_int_vector(const nlohmann::json& v, const char* field, long line) {
    std::vector<int> out;
    if (v.is_boolean()) {
        out.push_back(v.get<bool>() ? 1 : 0);
    } else if (v.is_number_integer()) {
        out.push_back(v.get<int>());
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (e.is_boolean())
                out.push_back(e.get<bool>() ? 1 : 0);
            else if (e.is_number_integer())
                out.push_back(e.get<int>());
            else
                throw parse_error(std::string(field) + " holds a non-integer entry", line);
        }
    } else {
        throw parse_error(std::string(field) + " must be a scalar or array of integers", line);
    }
    return out;
}

}  // namespace

std::vector<prediction_record> parse_prediction_lines(std::istream& in) {
    std::vector<prediction_record> records;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw parse_error("invalid JSON record", line_no);
        if (!j.contains("gt_concepts") || !j.contains("pred_concepts"))
            throw parse_error("record needs gt_concepts and pred_concepts", line_no);
        prediction_record r;
        r.gt_concepts = as_int_vector(j["gt_concepts"], "gt_concepts", line_no);
        r.pred_concepts = as_int_vector(j["pred_concepts"], "pred_concepts", line_no);
        if (r.gt_concepts.size() != r.pred_concepts.size())
            throw parse_error("concept vectors differ in width", line_no);
        if (j.contains("gt_label")) r.gt_label = as_int_vector(j["gt_label"], "gt_label", line_no);
        if (j.contains("pred_label"))
            r.pred_label = as_int_vector(j["pred_label"], "pred_label", line_no);
        if (r.gt_label.has_value() != r.pred_label.has_value())
            throw parse_error("gt_label and pred_label must come together", line_no);
        if (r.gt_label && r.gt_label->size() != r.pred_label->size())
            throw parse_error("label vectors differ in width", line_no);
        records.push_back(std::move(r));
    }
    return records;
}

metric_report evaluate_predictions(const std::vector<prediction_record>& records,
                                   std::optional<int> base, const std::vector<int>& positions) {
    if (records.empty()) throw eval_error("no prediction records");
    const std::size_t k = records[0].gt_concepts.size();
    int b = base.value_or(2);
    for (const auto& r : records) {
        if (r.gt_concepts.size() != k || r.pred_concepts.size() != k)
            throw eval_error("prediction records have inconsistent concept width");
        if (!base) {
            for (int v : r.gt_concepts) b = std::max(b, v + 1);
            for (int v : r.pred_concepts) b = std::max(b, v + 1);
        }
    }

    concept_space space{static_cast<int>(k), b};
    std::vector<concept_vector> gt, pred;
    gt.reserve(records.size());
    pred.reserve(records.size());
    for (const auto& r : records) {
        gt.push_back(r.gt_concepts);
        pred.push_back(r.pred_concepts);
    }

    metric_report rep;
    rep.n_records = records.size();
    rep.confusion = concept_confusion(gt, pred, space, positions);
    rep.collapse = collapse(rep.confusion);
    {
        std::vector<int> pos = positions;
        if (pos.empty())
            for (int j = 0; j < space.k; ++j) pos.push_back(j);
        std::vector<std::int64_t> gt_codes, pred_codes;
        for (const auto& c : gt) gt_codes.push_back(project_code(c, b, pos));
        for (const auto& c : pred) pred_codes.push_back(project_code(c, b, pos));
        rep.macro_f1 = macro_f1(gt_codes, pred_codes, rep.confusion.labels);
    }
    rep.concept_accuracy = mean_accuracy(gt, pred);

    if (records[0].gt_label) {
        std::vector<std::vector<int>> gt_labels, pred_labels;
        bool all_binary = true;
        for (const auto& r : records) {
            if (!r.gt_label) throw eval_error("some records carry labels and some do not");
            gt_labels.push_back(*r.gt_label);
            pred_labels.push_back(*r.pred_label);
            for (int v : *r.gt_label) all_binary &= v == 0 || v == 1;
            for (int v : *r.pred_label) all_binary &= v == 0 || v == 1;
        }
        rep.label_accuracy = mean_accuracy(gt_labels, pred_labels);
        if (all_binary) rep.mean_f1 = mean_f1(gt_labels, pred_labels);
    }
    return rep;
}

}  // namespace rsv
