#include "heatflow/format.hpp"

#include <charconv>
#include <system_error>

namespace heatflow {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace heatflow
