#include "crystalmask/instance.hpp"

#include <string>
#include <unordered_set>

namespace crystalmask {

const char* to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::Single: return "single";
    case ClassLabel::Agglomerated: return "agglomerated";
    case ClassLabel::Unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

const char* to_string(ConfidenceLevel level) {
  switch (level) {
    case ConfidenceLevel::High: return "high";
    case ConfidenceLevel::Low: return "low";
    case ConfidenceLevel::None: return "none";
  }
  return "none";
}

std::optional<ClassLabel> class_label_from_string(const std::string& s) {
  if (s == "single") return ClassLabel::Single;
  if (s == "agglomerated") return ClassLabel::Agglomerated;
  if (s == "unlabeled") return ClassLabel::Unlabeled;
  return std::nullopt;
}

std::optional<ConfidenceLevel> confidence_from_string(const std::string& s) {
  if (s == "high") return ConfidenceLevel::High;
  if (s == "low") return ConfidenceLevel::Low;
  if (s == "none") return ConfidenceLevel::None;
  return std::nullopt;
}

void validate(const InstanceSet& set) {
  if (set.width < 1 || set.height < 1)
    fail(ErrorCode::SchemaError, "instance set dimensions must be at least 1x1");
  std::unordered_set<int> ids;
  for (const Instance& inst : set.instances) {
    if (inst.mask.width != set.width || inst.mask.height != set.height)
      fail(ErrorCode::DimensionMismatch,
           "instance " + std::to_string(inst.id) + " mask does not match set dimensions");
    if (inst.mask.area() < 1)
      fail(ErrorCode::SchemaError,
           "instance " + std::to_string(inst.id) + " has an empty mask");
    if (inst.score && (*inst.score < 0.0 || *inst.score > 1.0))
      fail(ErrorCode::SchemaError,
           "instance " + std::to_string(inst.id) + " score outside [0,1]");
    if (!ids.insert(inst.id).second)
      fail(ErrorCode::SchemaError, "duplicate instance id " + std::to_string(inst.id));
  }
}

BinaryMask instances_union(const InstanceSet& set) {
  BinaryMask acc = make_mask(set.width, set.height);
  for (const Instance& inst : set.instances) mask_union_into(acc, inst.mask);
  return acc;
}

}  // namespace crystalmask
