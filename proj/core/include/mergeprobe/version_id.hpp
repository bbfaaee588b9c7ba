#ifndef MERGEPROBE_VERSION_ID_HPP_
#define MERGEPROBE_VERSION_ID_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace mergeprobe {

/// The four revisions of a merge quadruple. The enumerator order
/// (Base < Left < Right < Merge) is the canonical report ordering.
enum class VersionId { Base = 0, Left = 1, Right = 2, Merge = 3 };

inline constexpr std::array<VersionId, 4> kAllVersions = {
    VersionId::Base, VersionId::Left, VersionId::Right, VersionId::Merge};

/// Lowercase key used in datasets, file names, and report columns.
std::string_view version_key(VersionId v);

/// Capitalized display name ("Base", "Left", ...).
std::string_view version_label(VersionId v);

std::optional<VersionId> parse_version_key(std::string_view key);

}  // namespace mergeprobe

#endif  // MERGEPROBE_VERSION_ID_HPP_
