#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tangentplan/scenario.hpp"

namespace tangentplan {

/// Environment classes of the benchmark:
///   E1 sparse elongated obstacles with corridors,
///   E2 sparse circles,
///   E3 dense non-overlapping circles,
///   E4 dense overlapping circles,
///   E5 dense overlapping circles with corridors.
enum class EnvironmentKind { E1, E2, E3, E4, E5 };

const char* to_string(EnvironmentKind kind);
std::optional<EnvironmentKind> environment_from_string(const std::string& text);

/// Deterministic scenario of the given class in a field x field km square.
/// Start and end sit near opposite corners and are re-sampled until they are
/// strictly outside every inflated obstacle. `known` sets every obstacle's
/// initially-known flag. Throws GenerationFailed when the field is too
/// crowded to place all obstacles.
Scenario generate_environment(EnvironmentKind kind, double field, int count, std::uint64_t seed,
                              bool known = true);

/// Known environment plus `popups` circular pop-up obstacles dropped near
/// the offline route. About half are present from the start but unknown;
/// the rest trigger while the UAV is still about 15% of the field away.
/// Throws GenerationFailed when the base scenario has no offline route.
Scenario generate_popup_scenario(EnvironmentKind kind, double field, int count, int popups,
                                 std::uint64_t seed);

/// Wall segment modelled as an elongated ellipse.
struct WallSpec {
  Point2 center;
  double length = 10.0;     // full length, km
  double thickness = 1.0;   // full thickness, km
  double angle = 0.0;       // radians
};

struct MazeSpec {
  std::string name;
  Bounds bounds;
  Point2 start;
  Point2 end;
  double safety_margin = 0.5;
  std::vector<WallSpec> walls;
  double jitter = 0.0;  // uniform wall-center jitter in km, drawn from the seed
};

/// Walls of a U-shaped trap. `center` is the middle of the trap interior and
/// `opening` the direction (radians) the open side faces.
std::vector<WallSpec> u_trap(Point2 center, double width, double depth, double opening,
                             double thickness = 1.5);

/// Throws GenerationFailed if start or end is not strictly outside every
/// wall.
Scenario generate_maze(const MazeSpec& spec, std::uint64_t seed = 0);

/// Canned maze layouts M1..M6: traps, an S-corridor and nested traps.
MazeSpec canned_maze(int index);
inline constexpr int kCannedMazeCount = 6;

/// mt19937_64 with a fixed bits-to-double conversion, so generated
/// scenarios do not depend on the standard library's distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tangentplan
