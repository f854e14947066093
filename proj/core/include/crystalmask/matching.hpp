#pragma once

#include <utility>
#include <vector>

#include "crystalmask/instance.hpp"

namespace crystalmask {

struct MatchRecord {
  int pred_id = 0;
  int gt_id = 0;
  double ratio = 0;

  bool operator==(const MatchRecord&) const = default;
};

// Three-way split of one image's predictions against the two ground-truth
// confidence levels. Every prediction lands in exactly one group.
struct ConfidencePartition {
  std::vector<MatchRecord> high_matched;
  std::vector<MatchRecord> low_matched;
  std::vector<int> residual;
};

// |pred ∩ reference| / |pred| — the fraction of the predicted instance
// covered. Throws EmptyMask when pred has no pixels.
double overlap_ratio(const BinaryMask& pred, const BinaryMask& reference);

// |a ∩ b| / |a ∪ b|. Throws BothEmpty when both masks are empty.
double iou(const BinaryMask& a, const BinaryMask& b);

// For each prediction the per-instance maximum overlap ratio against each
// confidence level is computed; below thresh the prediction is residual,
// otherwise it goes to the level with the larger ratio (ties to high) and
// is paired with the argmax ground-truth instance (ties to smaller id).
ConfidencePartition assign_confidence(const InstanceSet& preds, const InstanceSet& gt,
                                      double thresh = 0.5);

// Score-ordered greedy one-to-one matching (ties by smaller id); each
// prediction takes the unmatched ground truth with the highest IoU when
// that IoU reaches iou_thresh.
std::vector<std::pair<int, int>> greedy_match(const InstanceSet& preds,
                                              const InstanceSet& gts,
                                              double iou_thresh = 0.5);

}  // namespace crystalmask
