#ifndef PTLOC_IO_HPP
#define PTLOC_IO_HPP

#include <optional>
#include <string>

#include "json.hpp"
#include "ptloc/fusion.hpp"
#include "ptloc/locality.hpp"
#include "ptloc/reconstruction.hpp"
#include "ptloc/transporter.hpp"

namespace ptloc {

using nlohmann::json;

json group_spec_to_json(const DPGroup::Spec& s);
DPGroup::Spec group_spec_from_json(const json& j);

json element_to_json(const DPGroup& g, const DPElement& e);
DPElement element_from_json(const DPGroup& g, const json& j);

json subgroup_to_json(const Subgroup& s);
Subgroup subgroup_from_json(DPGroupPtr g, const json& j);

struct LocalityFile {
  DPGroupPtr group;
  Subgroup sylow;
  std::vector<Subgroup> delta;
  DomainOverride overrides;
};
LocalityFile locality_file_from_json(const json& j, std::int32_t truncation_override = 0);
json locality_file_to_json(const DPGroup::Spec& spec, const Subgroup& sylow,
                           const std::vector<Subgroup>& delta, const DomainOverride& overrides);

struct FusionFile {
  DPGroupPtr group;
  Subgroup sylow;
  std::vector<RawMap> generators;
};
FusionFile fusion_file_from_json(const json& j, std::int32_t truncation_override = 0);

struct TransporterFile {
  TransporterSystem system;
  std::optional<BulletData> bullet;
};
TransporterFile transporter_file_from_json(const json& j, std::int32_t truncation_override = 0);
json transporter_file_to_json(const TransporterSystem& t);

// Emit the reconstructed locality as a group-backed locality file.  Needs
// the binary product to be total on the carrier (true whenever Delta holds
// an object normal under every class, e.g. the desk examples).
json reconstructed_to_locality_json(const ReconstructedLocality& lp);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace ptloc

#endif
