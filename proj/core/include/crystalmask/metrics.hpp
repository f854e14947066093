#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crystalmask/instance.hpp"
#include "crystalmask/matching.hpp"

namespace crystalmask {

// Instance-area histogram. edges has one more entry than counts; bins are
// half-open [edges[i], edges[i+1]) with the last bin closed on the right,
// and out-of-range areas are clamped into the first/last bin.
struct SizeHistogram {
  std::vector<double> edges;
  std::vector<std::int64_t> counts;
  std::vector<double> normalized;  // fractions summing to 1, or all zero
};

std::vector<double> equal_width_edges(std::int64_t max_area, int bins = 10);
SizeHistogram size_histogram(const std::vector<std::int64_t>& areas,
                             const std::vector<double>& edges);

// Pearson correlation of the normalized vectors, in percent. Equal
// vectors give 100; otherwise zero variance on either side gives 0.
double histogram_correlation(const SizeHistogram& p, const SizeHistogram& g);

// Mean over bins of squared percentage-point differences between the
// normalized vectors.
double histogram_chi2(const SizeHistogram& p, const SizeHistogram& g);

// Average precision at the IoU threshold (all-point interpolation of the
// precision envelope), in percent. No ground truth: 100 when there are no
// predictions either, else 0.
double map50(const InstanceSet& preds, const InstanceSet& gts, double iou_thresh = 0.5);

// Fraction of ground-truth instances matched at the IoU threshold, in
// percent. No ground truth gives 100.
double recall50(const InstanceSet& preds, const InstanceSet& gts, double iou_thresh = 0.5);

// Fraction of predictions in the residual group, in percent (the
// instance-wise false positive rate). Zero predictions give 0.
double residual_error(const ConfidencePartition& partition, std::int64_t n_preds);

// Fraction of the ground-truth agglomeration area covered by predictions
// classified agglomerated, in percent.
double agglomeration_tpr(const BinaryMask& gt_agg, const InstanceSet& preds);

struct EvalOptions {
  int bins = 10;
  double iou_thresh = 0.5;
  double overlap_thresh = 0.5;
};

struct ImageMetrics {
  std::string name;
  double high_corr = 0;
  double high_chi2 = 0;
  double low_corr = 0;
  double low_chi2 = 0;
  double map50 = 0;
  double recall50 = 0;
  double res_err = 0;
  std::optional<double> tpr;
};

struct EvalReport {
  ImageMetrics pooled;
  std::vector<ImageMetrics> per_image;
};

struct EvalInput {
  std::string name;
  InstanceSet preds;
  InstanceSet gt;
  std::optional<BinaryMask> gt_agg;
};

// Full per-image evaluation: Fig.-2 style confidence split, size
// histograms per level, mAP/recall against high-confidence ground truth
// (low-assigned predictions excluded from the pool), residual error over
// all predictions, TPR when an agglomeration mask is supplied.
EvalReport evaluate(const InstanceSet& preds, const InstanceSet& gt,
                    const std::optional<BinaryMask>& gt_agg = std::nullopt,
                    const EvalOptions& opts = {});

// Same metrics over a set of images plus the pooled row: pooled
// histograms share edges from the pooled maximum area, detections are
// ranked globally, counts and areas accumulate.
EvalReport evaluate_pooled(const std::vector<EvalInput>& inputs,
                           const EvalOptions& opts = {});

// Deterministic renderings, 3 decimal places.
std::string render_report_json(const EvalReport& report);
std::string render_report_text(const EvalReport& report);

}  // namespace crystalmask
