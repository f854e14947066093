#include "crystalmask/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

namespace crystalmask {

namespace {

void check_same_edges(const SizeHistogram& p, const SizeHistogram& g) {
  if (p.edges != g.edges)
    fail(ErrorCode::EdgeMismatch, "histograms have different bin edges");
}

// (score, tie-break keys, tp flag) of one ranked detection.
struct RankedDetection {
  double score = 1.0;
  std::string image;
  int pred_id = 0;
  bool tp = false;
};

bool rank_before(const RankedDetection& a, const RankedDetection& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.image != b.image) return a.image < b.image;
  return a.pred_id < b.pred_id;
}

// Area under the precision-recall curve with the precision envelope
// (all-point interpolation), given TP flags in rank order.
double average_precision(const std::vector<RankedDetection>& ranked, std::int64_t n_gt) {
  if (n_gt == 0) return ranked.empty() ? 100.0 : 0.0;
  const std::size_t n = ranked.size();
  std::vector<double> precision(n);
  std::int64_t tp_cum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (ranked[k].tp) ++tp_cum;
    precision[k] = static_cast<double>(tp_cum) / static_cast<double>(k + 1);
  }
  // Envelope: max precision at this rank or any later one.
  for (std::size_t k = n; k-- > 1;)
    precision[k - 1] = std::max(precision[k - 1], precision[k]);
  double ap = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (ranked[k].tp) ap += precision[k] / static_cast<double>(n_gt);
  return ap * 100.0;
}

// TP flags for the predictions of one image under score-ordered greedy
// matching at the IoU threshold.
std::vector<RankedDetection> rank_detections(const InstanceSet& preds,
                                             const InstanceSet& gts, double iou_thresh,
                                             const std::string& image_name) {
  std::vector<std::size_t> order(preds.instances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = preds.instances[a].effective_score();
    const double sb = preds.instances[b].effective_score();
    if (sa != sb) return sa > sb;
    return preds.instances[a].id < preds.instances[b].id;
  });

  std::vector<std::int64_t> gt_area(gts.instances.size());
  for (std::size_t j = 0; j < gts.instances.size(); ++j)
    gt_area[j] = gts.instances[j].mask.area();

  std::vector<std::uint8_t> taken(gts.instances.size(), 0);
  std::vector<RankedDetection> ranked;
  ranked.reserve(order.size());
  for (std::size_t oi : order) {
    const Instance& pred = preds.instances[oi];
    const std::int64_t pred_area = pred.mask.area();
    std::int64_t best_inter = 0, best_union = 1;
    std::size_t best_j = gts.instances.size();
    for (std::size_t j = 0; j < gts.instances.size(); ++j) {
      if (taken[j]) continue;
      const std::int64_t inter = intersection_area(pred.mask, gts.instances[j].mask);
      if (inter <= 0) continue;
      const std::int64_t uni = pred_area + gt_area[j] - inter;
      const std::int64_t lhs = inter * best_union;
      const std::int64_t rhs = best_inter * uni;
      if (lhs > rhs || (lhs == rhs && best_j < gts.instances.size() &&
                        gts.instances[j].id < gts.instances[best_j].id)) {
        best_inter = inter;
        best_union = uni;
        best_j = j;
      }
    }
    RankedDetection det;
    det.score = pred.effective_score();
    det.image = image_name;
    det.pred_id = pred.id;
    det.tp = best_j < gts.instances.size() &&
             static_cast<double>(best_inter) >= iou_thresh * static_cast<double>(best_union);
    if (det.tp) taken[best_j] = 1;
    ranked.push_back(det);
  }
  std::sort(ranked.begin(), ranked.end(), rank_before);
  return ranked;
}

// Everything needed to fold one image into the pooled row.
struct ImageAccumulator {
  std::string name;
  std::vector<std::int64_t> pred_high_areas, pred_low_areas;
  std::vector<std::int64_t> gt_high_areas, gt_low_areas;
  std::vector<RankedDetection> ranked;  // high pool only
  std::int64_t n_high_gt = 0;
  std::int64_t n_preds = 0;
  std::int64_t n_residual = 0;
  std::int64_t agg_inter = 0, agg_area = 0;
  bool has_agg = false;
  std::int64_t max_area = 0;
};

ImageAccumulator accumulate_image(const EvalInput& input, const EvalOptions& opts) {
  validate(input.preds);
  validate(input.gt);
  ImageAccumulator acc;
  acc.name = input.name;

  const ConfidencePartition part =
      assign_confidence(input.preds, input.gt, opts.overlap_thresh);

  std::vector<std::int64_t> pred_area(input.preds.instances.size());
  for (std::size_t i = 0; i < input.preds.instances.size(); ++i) {
    pred_area[i] = input.preds.instances[i].mask.area();
    acc.max_area = std::max(acc.max_area, pred_area[i]);
  }

  // Low-assigned predictions are excluded from the mAP/recall pool; they
  // are matched against uncertain annotations, not false positives.
  std::vector<std::uint8_t> in_pool(input.preds.instances.size(), 1);
  for (const MatchRecord& m : part.low_matched)
    for (std::size_t i = 0; i < input.preds.instances.size(); ++i)
      if (input.preds.instances[i].id == m.pred_id) in_pool[i] = 0;

  InstanceSet high_pool{input.preds.width, input.preds.height, {}, std::nullopt};
  for (std::size_t i = 0; i < input.preds.instances.size(); ++i)
    if (in_pool[i]) high_pool.instances.push_back(input.preds.instances[i]);

  InstanceSet gt_high{input.gt.width, input.gt.height, {}, std::nullopt};
  for (const Instance& g : input.gt.instances) {
    const std::int64_t area = g.mask.area();
    acc.max_area = std::max(acc.max_area, area);
    if (g.confidence == ConfidenceLevel::High) {
      gt_high.instances.push_back(g);
      acc.gt_high_areas.push_back(area);
    } else {
      acc.gt_low_areas.push_back(area);
    }
  }
  acc.n_high_gt = static_cast<std::int64_t>(gt_high.instances.size());
  acc.ranked = rank_detections(high_pool, gt_high, opts.iou_thresh, input.name);

  for (const MatchRecord& m : part.high_matched)
    for (std::size_t i = 0; i < input.preds.instances.size(); ++i)
      if (input.preds.instances[i].id == m.pred_id)
        acc.pred_high_areas.push_back(pred_area[i]);
  for (const MatchRecord& m : part.low_matched)
    for (std::size_t i = 0; i < input.preds.instances.size(); ++i)
      if (input.preds.instances[i].id == m.pred_id)
        acc.pred_low_areas.push_back(pred_area[i]);

  acc.n_preds = static_cast<std::int64_t>(input.preds.instances.size());
  acc.n_residual = static_cast<std::int64_t>(part.residual.size());

  if (input.gt_agg) {
    const std::int64_t gt_agg_area = input.gt_agg->area();
    if (gt_agg_area < 1)
      fail(ErrorCode::EmptyGroundTruth, "agglomeration ground truth is empty");
    BinaryMask agg_union = make_mask(input.preds.width, input.preds.height);
    for (const Instance& p : input.preds.instances)
      if (p.class_label == ClassLabel::Agglomerated) mask_union_into(agg_union, p.mask);
    acc.agg_inter = intersection_area(*input.gt_agg, agg_union);
    acc.agg_area = gt_agg_area;
    acc.has_agg = true;
  }
  return acc;
}

ImageMetrics metrics_from(const ImageAccumulator& acc, const EvalOptions& opts) {
  ImageMetrics m;
  m.name = acc.name;

  const std::vector<double> edges = equal_width_edges(acc.max_area, opts.bins);
  const SizeHistogram pred_high = size_histogram(acc.pred_high_areas, edges);
  const SizeHistogram gt_high = size_histogram(acc.gt_high_areas, edges);
  const SizeHistogram pred_low = size_histogram(acc.pred_low_areas, edges);
  const SizeHistogram gt_low = size_histogram(acc.gt_low_areas, edges);
  m.high_corr = histogram_correlation(pred_high, gt_high);
  m.high_chi2 = histogram_chi2(pred_high, gt_high);
  m.low_corr = histogram_correlation(pred_low, gt_low);
  m.low_chi2 = histogram_chi2(pred_low, gt_low);

  m.map50 = average_precision(acc.ranked, acc.n_high_gt);
  std::int64_t matched = 0;
  for (const RankedDetection& d : acc.ranked)
    if (d.tp) ++matched;
  m.recall50 = acc.n_high_gt == 0
                   ? 100.0
                   : 100.0 * static_cast<double>(matched) / static_cast<double>(acc.n_high_gt);
  m.res_err = acc.n_preds == 0 ? 0.0
                               : 100.0 * static_cast<double>(acc.n_residual) /
                                     static_cast<double>(acc.n_preds);
  if (acc.has_agg)
    m.tpr = 100.0 * static_cast<double>(acc.agg_inter) / static_cast<double>(acc.agg_area);
  return m;
}

void append(std::vector<std::int64_t>& into, const std::vector<std::int64_t>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

}  // namespace

std::vector<double> equal_width_edges(std::int64_t max_area, int bins) {
  if (bins < 1) fail(ErrorCode::BadEdges, "histogram needs at least one bin");
  const double top = static_cast<double>(std::max<std::int64_t>(max_area, 1));
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i)
    edges[i] = top * static_cast<double>(i) / static_cast<double>(bins);
  return edges;
}

SizeHistogram size_histogram(const std::vector<std::int64_t>& areas,
                             const std::vector<double>& edges) {
  if (edges.size() < 2) fail(ErrorCode::BadEdges, "need at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      fail(ErrorCode::BadEdges, "edges must be strictly ascending");

  SizeHistogram hist;
  hist.edges = edges;
  const std::size_t bins = edges.size() - 1;
  hist.counts.assign(bins, 0);
  for (std::int64_t area : areas) {
    const double a = static_cast<double>(area);
    std::size_t bin;
    if (a < edges.front()) {
      bin = 0;  // clamp below
    } else if (a >= edges.back()) {
      bin = bins - 1;  // final bin closed on the right, clamp above
    } else {
      bin = static_cast<std::size_t>(
                std::upper_bound(edges.begin(), edges.end(), a) - edges.begin()) -
            1;
    }
    ++hist.counts[bin];
  }
  const std::int64_t total = std::accumulate(hist.counts.begin(), hist.counts.end(),
                                             static_cast<std::int64_t>(0));
  hist.normalized.assign(bins, 0.0);
  if (total > 0)
    for (std::size_t i = 0; i < bins; ++i)
      hist.normalized[i] = static_cast<double>(hist.counts[i]) / static_cast<double>(total);
  return hist;
}

double histogram_correlation(const SizeHistogram& p, const SizeHistogram& g) {
  check_same_edges(p, g);
  if (p.normalized == g.normalized) return 100.0;
  const std::size_t n = p.normalized.size();
  double mean_p = 0, mean_g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_p += p.normalized[i];
    mean_g += g.normalized[i];
  }
  mean_p /= static_cast<double>(n);
  mean_g /= static_cast<double>(n);
  double cov = 0, var_p = 0, var_g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dp = p.normalized[i] - mean_p;
    const double dg = g.normalized[i] - mean_g;
    cov += dp * dg;
    var_p += dp * dp;
    var_g += dg * dg;
  }
  if (var_p == 0.0 || var_g == 0.0) return 0.0;  // unequal by the check above
  return 100.0 * cov / std::sqrt(var_p * var_g);
}

double histogram_chi2(const SizeHistogram& p, const SizeHistogram& g) {
  check_same_edges(p, g);
  const std::size_t n = p.normalized.size();
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = 100.0 * p.normalized[i] - 100.0 * g.normalized[i];
    acc += diff * diff;
  }
  return acc / static_cast<double>(n);
}

double map50(const InstanceSet& preds, const InstanceSet& gts, double iou_thresh) {
  if (preds.width != gts.width || preds.height != gts.height)
    fail(ErrorCode::DimensionMismatch, "instance set dimensions differ");
  const std::vector<RankedDetection> ranked = rank_detections(preds, gts, iou_thresh, "");
  return average_precision(ranked, static_cast<std::int64_t>(gts.instances.size()));
}

double recall50(const InstanceSet& preds, const InstanceSet& gts, double iou_thresh) {
  if (preds.width != gts.width || preds.height != gts.height)
    fail(ErrorCode::DimensionMismatch, "instance set dimensions differ");
  if (gts.instances.empty()) return 100.0;
  const std::size_t matched = greedy_match(preds, gts, iou_thresh).size();
  return 100.0 * static_cast<double>(matched) /
         static_cast<double>(gts.instances.size());
}

double residual_error(const ConfidencePartition& partition, std::int64_t n_preds) {
  const std::int64_t total = static_cast<std::int64_t>(partition.high_matched.size()) +
                             static_cast<std::int64_t>(partition.low_matched.size()) +
                             static_cast<std::int64_t>(partition.residual.size());
  if (total != n_preds)
    fail(ErrorCode::CountMismatch, "partition totals " + std::to_string(total) +
                                       " predictions, expected " + std::to_string(n_preds));
  if (n_preds == 0) return 0.0;
  return 100.0 * static_cast<double>(partition.residual.size()) /
         static_cast<double>(n_preds);
}

double agglomeration_tpr(const BinaryMask& gt_agg, const InstanceSet& preds) {
  const std::int64_t gt_area = gt_agg.area();
  if (gt_area < 1)
    fail(ErrorCode::EmptyGroundTruth, "agglomeration ground truth is empty");
  BinaryMask agg_union = make_mask(gt_agg.width, gt_agg.height);
  for (const Instance& p : preds.instances) {
    if (p.class_label != ClassLabel::Agglomerated) continue;
    mask_union_into(agg_union, p.mask);
  }
  return 100.0 * static_cast<double>(intersection_area(gt_agg, agg_union)) /
         static_cast<double>(gt_area);
}

EvalReport evaluate(const InstanceSet& preds, const InstanceSet& gt,
                    const std::optional<BinaryMask>& gt_agg, const EvalOptions& opts) {
  EvalInput input{"image", preds, gt, gt_agg};
  return evaluate_pooled({input}, opts);
}

EvalReport evaluate_pooled(const std::vector<EvalInput>& inputs, const EvalOptions& opts) {
  std::vector<ImageAccumulator> accs;
  accs.reserve(inputs.size());
  for (const EvalInput& input : inputs) accs.push_back(accumulate_image(input, opts));

  EvalReport report;
  for (const ImageAccumulator& acc : accs)
    report.per_image.push_back(metrics_from(acc, opts));

  ImageAccumulator pooled;
  pooled.name = "pooled";
  for (const ImageAccumulator& acc : accs) {
    append(pooled.pred_high_areas, acc.pred_high_areas);
    append(pooled.pred_low_areas, acc.pred_low_areas);
    append(pooled.gt_high_areas, acc.gt_high_areas);
    append(pooled.gt_low_areas, acc.gt_low_areas);
    pooled.ranked.insert(pooled.ranked.end(), acc.ranked.begin(), acc.ranked.end());
    pooled.n_high_gt += acc.n_high_gt;
    pooled.n_preds += acc.n_preds;
    pooled.n_residual += acc.n_residual;
    if (acc.has_agg) {
      pooled.has_agg = true;
      pooled.agg_inter += acc.agg_inter;
      pooled.agg_area += acc.agg_area;
    }
    pooled.max_area = std::max(pooled.max_area, acc.max_area);
  }
  std::sort(pooled.ranked.begin(), pooled.ranked.end(), rank_before);
  report.pooled = metrics_from(pooled, opts);
  return report;
}

namespace {

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void append_metrics_json(std::string& out, const ImageMetrics& m, const char* indent) {
  out += indent;
  out += "\"high_corr\": " + fmt3(m.high_corr) + ",\n";
  out += indent;
  out += "\"high_chi2\": " + fmt3(m.high_chi2) + ",\n";
  out += indent;
  out += "\"low_corr\": " + fmt3(m.low_corr) + ",\n";
  out += indent;
  out += "\"low_chi2\": " + fmt3(m.low_chi2) + ",\n";
  out += indent;
  out += "\"map50\": " + fmt3(m.map50) + ",\n";
  out += indent;
  out += "\"recall50\": " + fmt3(m.recall50) + ",\n";
  out += indent;
  out += "\"res_err\": " + fmt3(m.res_err) + ",\n";
  out += indent;
  out += "\"tpr\": " + (m.tpr ? fmt3(*m.tpr) : std::string("null"));
}

}  // namespace

std::string render_report_json(const EvalReport& report) {
  std::string out = "{\n";
  append_metrics_json(out, report.pooled, "  ");
  out += ",\n  \"per_image\": [";
  for (std::size_t i = 0; i < report.per_image.size(); ++i) {
    const ImageMetrics& m = report.per_image[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\n      \"image\": \"" + json_escape(m.name) + "\",\n";
    append_metrics_json(out, m, "      ");
    out += "\n    }";
  }
  if (!report.per_image.empty()) out += "\n  ";
  out += "]\n}\n";
  return out;
}

std::string render_report_text(const EvalReport& report) {
  // Column order mirrors the evaluation table: size-distribution metrics
  // first, then instance-wise accuracy, residual rate, TPR.
  static const char* kHeader =
      "image                 high corr  high chi2   low corr   low chi2      mAP50   recall50     ResErr        TPR\n";
  std::string out = kHeader;
  auto row = [](const ImageMetrics& m) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-20s %10.3f %10.3f %10.3f %10.3f %10.3f %10.3f %10.3f %10s\n",
                  m.name.c_str(), m.high_corr, m.high_chi2, m.low_corr, m.low_chi2,
                  m.map50, m.recall50, m.res_err,
                  m.tpr ? fmt3(*m.tpr).c_str() : "-");
    return std::string(buf);
  };
  out += row(report.pooled);
  for (const ImageMetrics& m : report.per_image) out += row(m);
  return out;
}

}  // namespace crystalmask
