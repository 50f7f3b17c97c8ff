#pragma once

#include <array>
#include <string_view>

namespace catbox {

// Accepts plain numbers ("0.785") and multiples of pi: "pi", "-pi/2",
// "3pi/4", "3*pi/4". Throws DomainError otherwise.
double parse_angle(std::string_view text);

// Four comma-separated angles, in the order a, a', b, b'.
std::array<double, 4> parse_angle_list(std::string_view text);

}  // namespace catbox
