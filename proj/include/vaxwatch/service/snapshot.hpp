#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "vaxwatch/analytics/reports.hpp"

namespace vaxwatch::service {

class SnapshotError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Snapshot id from the manifest alone; nullopt when the manifest is
/// missing or unreadable. Cheap enough to poll.
std::optional<std::string> read_manifest_snapshot_id(const std::filesystem::path& dir);

/// Loads and validates a complete snapshot directory: the manifest must be
/// present, every report file must match its recorded content hash, and the
/// recomputed snapshot id must equal the manifest's. A half-written
/// directory therefore never loads.
analytics::SnapshotData load_snapshot(const std::filesystem::path& dir);

}  // namespace vaxwatch::service
