#include "apchar/format.hpp"

#include <array>
#include <charconv>

namespace apchar {

std::string format_double(double value) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), end);
}

}  // namespace apchar
