#include "ptqes/format.hpp"

#include <charconv>

namespace ptqes {

std::string format_float(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace ptqes
