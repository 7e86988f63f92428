#pragma once

#include <string>

namespace ptqes {

// Fixed rendering contract for every float the tools emit: 17 significant
// digits, shortest general form, lowercase exponent, locale-independent.
std::string format_float(double v);

}  // namespace ptqes
