#ifndef SO3TRACK_IO_HPP_
#define SO3TRACK_IO_HPP_

#include <span>
#include <string>

#include "so3track/analysis.hpp"
#include "so3track/integrator.hpp"

namespace so3track {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Locale-independent, 17 significant digits, round-trip exact.
std::string format_double(double v);

// Binding column contract of the trajectory CSV.
extern const char* const kCsvHeader;

std::string format_csv(std::span<const TrajectoryRecord> records);

// All writers go through a temp file + rename so interrupted runs never
// leave truncated output behind.
void atomic_write(const std::string& path, const std::string& content);

void write_csv(const std::string& path, std::span<const TrajectoryRecord> records);
void write_report(const std::string& path, const ConvergenceReport& report);

// Self-contained SVG: target/follower first-column entries (i,1), i = 1,2,
// plus the active error metric on a log scale.
std::string format_svg_plot(std::span<const TrajectoryRecord> records,
                            const ControllerKind& kind);
void write_svg_plot(const std::string& path,
                    std::span<const TrajectoryRecord> records,
                    const ControllerKind& kind);

}  // namespace so3track

#endif  // SO3TRACK_IO_HPP_
