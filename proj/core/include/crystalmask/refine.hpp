#pragma once

#include <vector>

#include "crystalmask/instance.hpp"
#include "crystalmask/polygon.hpp"

namespace crystalmask {

// Labels every instance whose overlap ratio with the union of the
// rasterized regions exceeds 50% as agglomerated, all others as single.
// The inequality is strict: exactly 50% stays single. Masks, ids and
// scores are unchanged.
InstanceSet generate_pseudo_labels(const InstanceSet& instances,
                                   const std::vector<CoarseRegion>& regions);

// Two-model fusion: segmentation geometry is kept verbatim; a seg
// instance becomes agglomerated when its overlap ratio with the union of
// the cls model's agglomerated masks is strictly over thresh.
InstanceSet refine_classification(const InstanceSet& seg, const InstanceSet& cls,
                                  double thresh = 0.5);

}  // namespace crystalmask
