#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace mhs {

/// Binary classification report. precision, recall and f1 refer to the
/// positive class; weighted_f1 is the support-weighted mean of both classes'
/// F1. auc is NaN when it was not computed or only one class is present.
struct EvalReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double weighted_f1 = 0.0;
  double auc = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const EvalReport&) const = default;
};

/// Labels are 0 (negative) or 1 (positive). Throws LengthMismatch or
/// ValidationError (empty input, label outside {0,1}). auc is left NaN.
EvalReport confusion_metrics(std::span<const int> predictions, std::span<const int> truths);

/// Mann-Whitney AUC of positive-class scores; tied pairs count one half.
/// Throws LengthMismatch, SingleClass.
double roc_auc(std::span<const double> scores, std::span<const int> truths);

/// Compact JSON object with exactly the report fields (auc null when NaN).
std::string report_json(const EvalReport& report);

}  // namespace mhs
