#pragma once

#include <string>

namespace heatflow {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace heatflow
