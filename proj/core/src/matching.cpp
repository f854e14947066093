#include "crystalmask/matching.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace crystalmask {

namespace {

void check_set_dims(const InstanceSet& a, const InstanceSet& b) {
  if (a.width != b.width || a.height != b.height)
    fail(ErrorCode::DimensionMismatch, "instance set dimensions differ");
}

}  // namespace

double overlap_ratio(const BinaryMask& pred, const BinaryMask& reference) {
  if (!dims_match(pred, reference))
    fail(ErrorCode::DimensionMismatch, "mask dimensions differ");
  const std::int64_t pred_area = pred.area();
  if (pred_area < 1) fail(ErrorCode::EmptyMask, "overlap ratio of an empty mask");
  return static_cast<double>(intersection_area(pred, reference)) /
         static_cast<double>(pred_area);
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  if (!dims_match(a, b))
    fail(ErrorCode::DimensionMismatch, "mask dimensions differ");
  const std::int64_t area_a = a.area();
  const std::int64_t area_b = b.area();
  if (area_a + area_b < 1) fail(ErrorCode::BothEmpty, "IoU of two empty masks");
  const std::int64_t inter = intersection_area(a, b);
  return static_cast<double>(inter) / static_cast<double>(area_a + area_b - inter);
}

ConfidencePartition assign_confidence(const InstanceSet& preds, const InstanceSet& gt,
                                      double thresh) {
  check_set_dims(preds, gt);
  for (const Instance& g : gt.instances)
    if (g.confidence == ConfidenceLevel::None)
      fail(ErrorCode::MissingConfidence,
           "ground-truth instance " + std::to_string(g.id) + " has no confidence level");

  ConfidencePartition part;
  for (const Instance& pred : preds.instances) {
    const std::int64_t pred_area = pred.mask.area();
    if (pred_area < 1)
      fail(ErrorCode::EmptyMask,
           "prediction " + std::to_string(pred.id) + " has an empty mask");
    // Per-instance argmax within each level; ratios share the prediction
    // area as denominator, so intersection counts compare exactly.
    std::int64_t best_inter[2] = {-1, -1};  // [high, low]
    int best_id[2] = {0, 0};
    for (const Instance& g : gt.instances) {
      const int level = g.confidence == ConfidenceLevel::High ? 0 : 1;
      const std::int64_t inter = intersection_area(pred.mask, g.mask);
      if (inter > best_inter[level] ||
          (inter == best_inter[level] && g.id < best_id[level])) {
        best_inter[level] = inter;
        best_id[level] = g.id;
      }
    }
    const double r_high =
        best_inter[0] < 0 ? -1.0 : static_cast<double>(best_inter[0]) / pred_area;
    const double r_low =
        best_inter[1] < 0 ? -1.0 : static_cast<double>(best_inter[1]) / pred_area;
    const double r_max = std::max(r_high, r_low);
    if (r_max < 0.0 || r_max < thresh) {
      part.residual.push_back(pred.id);
    } else if (r_high >= r_low) {  // ties resolve to high
      part.high_matched.push_back({pred.id, best_id[0], r_high});
    } else {
      part.low_matched.push_back({pred.id, best_id[1], r_low});
    }
  }
  return part;
}

std::vector<std::pair<int, int>> greedy_match(const InstanceSet& preds,
                                              const InstanceSet& gts,
                                              double iou_thresh) {
  check_set_dims(preds, gts);
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
  std::vector<std::pair<int, int>> matches;
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
      // Exact rational comparison of inter/uni, ties to the smaller id.
      const std::int64_t lhs = inter * best_union;
      const std::int64_t rhs = best_inter * uni;
      if (lhs > rhs || (lhs == rhs && best_j < gts.instances.size() &&
                        gts.instances[j].id < gts.instances[best_j].id)) {
        best_inter = inter;
        best_union = uni;
        best_j = j;
      }
    }
    if (best_j < gts.instances.size() &&
        static_cast<double>(best_inter) >= iou_thresh * static_cast<double>(best_union)) {
      taken[best_j] = 1;
      matches.emplace_back(pred.id, gts.instances[best_j].id);
    }
  }
  return matches;
}

}  // namespace crystalmask
