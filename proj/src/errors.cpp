#include "ivgreen/errors.hpp"

#include <cstdio>

namespace ivgreen {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace ivgreen
