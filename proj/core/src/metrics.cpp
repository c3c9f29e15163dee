#include "mhs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "json.hpp"
#include "mhs/error.hpp"

namespace mhs {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f1_score(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

void check_label(int label) {
  if (label != 0 && label != 1) throw Error(ErrorCode::ValidationError, "label must be 0 or 1");
}

}  // namespace

EvalReport confusion_metrics(std::span<const int> predictions, std::span<const int> truths) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predictions.size()) + " predictions for " +
                                               std::to_string(truths.size()) + " labels");
  }
  if (truths.empty()) throw Error(ErrorCode::ValidationError, "no samples");

  EvalReport r;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    check_label(predictions[i]);
    check_label(truths[i]);
    if (truths[i] == 1) {
      (predictions[i] == 1 ? r.tp : r.fn)++;
    } else {
      (predictions[i] == 1 ? r.fp : r.tn)++;
    }
  }
  const std::size_t n = truths.size();
  r.accuracy = ratio(r.tp + r.tn, n);
  r.precision = ratio(r.tp, r.tp + r.fp);
  r.recall = ratio(r.tp, r.tp + r.fn);
  r.f1 = f1_score(r.precision, r.recall);

  const double neg_f1 = f1_score(ratio(r.tn, r.tn + r.fn), ratio(r.tn, r.tn + r.fp));
  const double pos_support = static_cast<double>(r.tp + r.fn);
  const double neg_support = static_cast<double>(r.tn + r.fp);
  r.weighted_f1 = (pos_support * r.f1 + neg_support * neg_f1) / static_cast<double>(n);
  r.auc = std::numeric_limits<double>::quiet_NaN();
  return r;
}

double roc_auc(std::span<const double> scores, std::span<const int> truths) {
  if (scores.size() != truths.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(scores.size()) + " scores for " + std::to_string(truths.size()) + " labels");
  }
  std::size_t n_pos = 0;
  for (int t : truths) {
    check_label(t);
    n_pos += t == 1 ? 1 : 0;
  }
  const std::size_t n_neg = truths.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw Error(ErrorCode::SingleClass, "AUC needs both classes");

  // Sum of positive ranks with average ranks for ties.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (truths[order[t]] == 1) positive_rank_sum += avg_rank;
    }
    i = j;
  }
  const double np = static_cast<double>(n_pos);
  const double u = positive_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

std::string report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["accuracy"] = r.accuracy;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["weighted_f1"] = r.weighted_f1;
  j["auc"] = std::isnan(r.auc) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.auc);
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["tn"] = r.tn;
  j["fn"] = r.fn;
  return j.dump();
}

}  // namespace mhs
