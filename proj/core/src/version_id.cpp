#include "mergeprobe/version_id.hpp"

namespace mergeprobe {

std::string_view version_key(VersionId v) {
  switch (v) {
    case VersionId::Base:
      return "base";
    case VersionId::Left:
      return "left";
    case VersionId::Right:
      return "right";
    case VersionId::Merge:
      return "merge";
  }
  return "base";
}

std::string_view version_label(VersionId v) {
  switch (v) {
    case VersionId::Base:
      return "Base";
    case VersionId::Left:
      return "Left";
    case VersionId::Right:
      return "Right";
    case VersionId::Merge:
      return "Merge";
  }
  return "Base";
}

std::optional<VersionId> parse_version_key(std::string_view key) {
  if (key == "base" || key == "Base") return VersionId::Base;
  if (key == "left" || key == "Left") return VersionId::Left;
  if (key == "right" || key == "Right") return VersionId::Right;
  if (key == "merge" || key == "Merge") return VersionId::Merge;
  return std::nullopt;
}

}  // namespace mergeprobe
