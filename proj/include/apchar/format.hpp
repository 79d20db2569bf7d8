#pragma once

#include <string>

namespace apchar {

// Shortest decimal that round-trips to the same double (at most 17
// significant digits).
std::string format_double(double value);

}  // namespace apchar
