#pragma once

#include <string>
#include <vector>

#include "crystalmask/instance.hpp"
#include "crystalmask/polygon.hpp"

namespace crystalmask {

// Instance sets travel as one JSON object per file:
//   {"width":W,"height":H,"instances":[{"id":1,"rle":[...],
//    "class":"single","confidence":"high","score":0.93}]}
// "class", "confidence" and "score" are optional on load (defaults
// unlabeled / none / absent-meaning-1.0); "source_image" is written only
// when present. In strict mode unknown fields are rejected.

std::string instance_set_to_json(const InstanceSet& set);
InstanceSet instance_set_from_json(const std::string& text, bool strict = true);
void save_instance_set(const InstanceSet& set, const std::string& path);
InstanceSet load_instance_set(const std::string& path, bool strict = true);

// Coarse region files: {"regions":[{"polygon":[[x,y],...]}]}
std::string regions_to_json(const std::vector<CoarseRegion>& regions);
std::vector<CoarseRegion> regions_from_json(const std::string& text, bool strict = true);
void save_regions(const std::vector<CoarseRegion>& regions, const std::string& path);
std::vector<CoarseRegion> load_regions(const std::string& path, bool strict = true);

// Whole-file helpers shared by the JSON and report writers.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace crystalmask
