#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crystalmask/mask.hpp"

namespace crystalmask {

enum class ClassLabel { Single, Agglomerated, Unlabeled };

// Annotator certainty on ground-truth crystals. Predictions carry None.
enum class ConfidenceLevel { High, Low, None };

const char* to_string(ClassLabel label);
const char* to_string(ConfidenceLevel level);
std::optional<ClassLabel> class_label_from_string(const std::string& s);
std::optional<ConfidenceLevel> confidence_from_string(const std::string& s);

// One crystal: mask plus class label, confidence level and an optional
// detection score (absent means 1.0).
struct Instance {
  int id = 0;
  BinaryMask mask;
  ClassLabel class_label = ClassLabel::Unlabeled;
  ConfidenceLevel confidence = ConfidenceLevel::None;
  std::optional<double> score;

  double effective_score() const { return score ? *score : 1.0; }

  bool operator==(const Instance&) const = default;
};

// All instances of one image. Instances may overlap pixel-wise; crystals
// occlude each other, so a flat label image cannot represent them.
struct InstanceSet {
  int width = 0;
  int height = 0;
  std::vector<Instance> instances;
  std::optional<std::string> source_image;

  bool operator==(const InstanceSet&) const = default;
};

// Throws SchemaError / DimensionMismatch when the invariants are violated:
// dimensions at least 1x1, every mask matching the set dimensions, masks
// non-empty, ids unique.
void validate(const InstanceSet& set);

// Union of all instance masks (empty mask when the set has no instances).
BinaryMask instances_union(const InstanceSet& set);

}  // namespace crystalmask
