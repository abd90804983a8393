#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opaque/geometry.hpp"
#include "opaque/opacity.hpp"

namespace opaque {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int witness = 1;
inline constexpr int inconclusive = 2;
inline constexpr int usage = 64;
inline constexpr int parse = 65;
inline constexpr int internal = 70;
}  // namespace exit_code

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + what),
          line(line),
          column(column) {}
    std::size_t line, column;
};

struct BarrierFile {
    std::optional<std::string> name;
    Barrier barrier;
};

// {"segments": [[[x1,y1],[x2,y2]], ...], "name": "..."}; coordinates are JSON
// numbers or strings such as "1/3" or "0.25".
BarrierFile parse_barrier_file(std::string_view text);
std::string serialize_barrier(const Barrier& barrier, const std::optional<std::string>& name = {});

struct RenderOptions {
    std::optional<double> partition_w;
    std::optional<Line> witness;
    double scale = 400.0;
};

std::string render_svg(const Barrier& barrier, const RenderOptions& options = {});

// Whole command line minus the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace opaque
