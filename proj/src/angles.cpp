#include "catbox/angles.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "catbox/quantum.hpp"

namespace catbox {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

bool to_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace

double parse_angle(std::string_view raw) {
    const std::string_view text = trim(raw);
    const auto fail = [&]() -> double {
        throw DomainError("invalid angle '" + std::string(raw) + "'");
    };
    double value = 0.0;
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos) {
        return to_double(text, value) ? value : fail();
    }

    std::string_view coeff = text.substr(0, pi_pos);
    if (!coeff.empty() && coeff.back() == '*') coeff.remove_suffix(1);
    double factor = 1.0;
    if (coeff == "-") {
        factor = -1.0;
    } else if (!coeff.empty() && coeff != "+" && !to_double(coeff, factor)) {
        fail();
    }

    std::string_view rest = text.substr(pi_pos + 2);
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/' || !to_double(rest.substr(1), divisor) || divisor == 0.0) fail();
    }
    return factor * std::acos(-1.0) / divisor;
}

std::array<double, 4> parse_angle_list(std::string_view text) {
    std::array<double, 4> out{};
    std::size_t count = 0;
    while (true) {
        const auto comma = text.find(',');
        if (count == out.size()) throw DomainError("expected exactly four angles");
        out[count++] = parse_angle(text.substr(0, comma));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (count != out.size()) throw DomainError("expected exactly four angles");
    return out;
}

}  // namespace catbox
