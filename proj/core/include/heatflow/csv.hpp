#pragma once

#include <string>

#include "heatflow/dataset.hpp"

namespace heatflow {

// One point per row, comma-separated coordinates. A first row containing any
// non-numeric token is treated as a header and skipped; the dimension comes
// from the first data row and every later row must match it.
Dataset load_csv(const std::string& path);

// Same parse applied to in-memory text (row numbers refer to the text).
Dataset parse_csv(const std::string& text);

}  // namespace heatflow
