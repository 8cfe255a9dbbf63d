#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "vaxwatch/analytics/reports.hpp"

namespace vaxwatch::service {

/// Inclusive date slice of a time-series point vector. Throws
/// std::invalid_argument on an inverted range.
template <typename Point>
std::vector<Point> filter_range(const std::vector<Point>& points, core::Date from,
                                core::Date to) {
    if (to < from) throw std::invalid_argument("filter_range: inverted date range");
    std::vector<Point> out;
    for (const Point& p : points)
        if (!(p.date < from) && !(to < p.date)) out.push_back(p);
    return out;
}

struct ServerOptions {
    /// Manifest poll cadence for hot reload; zero disables polling.
    std::chrono::milliseconds reload_interval{1000};
};

/// Read-only JSON API over a published snapshot directory. All state lives
/// in an immutable SnapshotData shared_ptr swapped wholesale on reload, so
/// every response is built from exactly one snapshot.
class ApiServer {
  public:
    using Options = ServerOptions;

    /// Loads the snapshot immediately; throws SnapshotError if the
    /// directory does not hold a complete one.
    explicit ApiServer(std::filesystem::path snapshot_dir, Options options = Options());
    ~ApiServer();

    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds and serves on a background thread. Pass port 0 for an
    /// ephemeral port. Returns the bound port.
    int start(const std::string& host, int port);

    /// Blocks until stop() is called from elsewhere.
    void wait();
    void stop();

    /// Re-checks the manifest and swaps in the new snapshot if its id
    /// changed and it loads cleanly. Returns true when a swap happened.
    bool reload_if_changed();

    std::shared_ptr<const analytics::SnapshotData> snapshot() const;

  private:
    class Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace vaxwatch::service
