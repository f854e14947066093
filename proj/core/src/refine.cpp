#include "crystalmask/refine.hpp"

#include "crystalmask/matching.hpp"

namespace crystalmask {

InstanceSet generate_pseudo_labels(const InstanceSet& instances,
                                   const std::vector<CoarseRegion>& regions) {
  validate(instances);
  BinaryMask region_union = make_mask(instances.width, instances.height);
  for (const CoarseRegion& region : regions)
    mask_union_into(region_union,
                    rasterize_region(region, instances.width, instances.height));

  InstanceSet out = instances;
  for (Instance& inst : out.instances) {
    const double ratio = overlap_ratio(inst.mask, region_union);
    // Strictly over one half; exactly 50% coverage stays single.
    inst.class_label = ratio > 0.5 ? ClassLabel::Agglomerated : ClassLabel::Single;
  }
  return out;
}

InstanceSet refine_classification(const InstanceSet& seg, const InstanceSet& cls,
                                  double thresh) {
  if (seg.width != cls.width || seg.height != cls.height)
    fail(ErrorCode::DimensionMismatch, "instance set dimensions differ");
  validate(seg);
  validate(cls);

  BinaryMask agg_union = make_mask(seg.width, seg.height);
  for (const Instance& inst : cls.instances)
    if (inst.class_label == ClassLabel::Agglomerated)
      mask_union_into(agg_union, inst.mask);

  InstanceSet out = seg;  // segmentation geometry is authoritative
  for (Instance& inst : out.instances) {
    const double ratio = overlap_ratio(inst.mask, agg_union);
    inst.class_label = ratio > thresh ? ClassLabel::Agglomerated : ClassLabel::Single;
  }
  return out;
}

}  // namespace crystalmask
