#include "sawq/series.hpp"

#include <sstream>

#include "sawq/io.hpp"

namespace sawq {

std::string to_csv(const CountSeries& s) {
  std::ostringstream out;
  out << "n,value\n";
  for (int n = 0; n <= s.n_max(); ++n) out << n << ',' << s[n] << '\n';
  return out.str();
}

std::string to_csv(const RealSeries& s) {
  std::ostringstream out;
  out << "n,value\n";
  for (int n = 0; n <= s.n_max(); ++n) out << n << ',' << format_double(s[n]) << '\n';
  return out.str();
}

}  // namespace sawq
