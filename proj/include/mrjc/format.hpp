#pragma once
// Deterministic 12-significant-digit decimal formatting for CSV: always
// plain notation (never scientific), locale independent.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace mrjc {

inline std::string format_significant(double x, int digits = 12) {
  if (digits < 1 || digits > 17) digits = 12;
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";  // folds -0 as well
  const bool neg = x < 0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, neg ? -x : x);
  // buf is "d.ddd...e[+-]XX": split mantissa digits and exponent
  std::string mantissa;
  int exp10 = 0;
  for (const char* p = buf; *p; ++p) {
    if (*p == '.') continue;
    if (*p == 'e') {
      exp10 = std::atoi(p + 1);
      break;
    }
    mantissa += *p;
  }
  std::string out = neg ? "-" : "";
  const int len = static_cast<int>(mantissa.size());
  if (exp10 >= len - 1) {  // integer, possibly padded with zeros
    out += mantissa;
    out.append(static_cast<std::size_t>(exp10 - (len - 1)), '0');
  } else if (exp10 >= 0) {  // point inside the mantissa
    out += mantissa.substr(0, exp10 + 1);
    out += '.';
    out += mantissa.substr(exp10 + 1);
  } else {  // leading zeros after "0."
    out += "0.";
    out.append(static_cast<std::size_t>(-exp10 - 1), '0');
    out += mantissa;
  }
  return out;
}

}  // namespace mrjc
