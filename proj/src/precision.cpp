#include "nopair/precision.hpp"

#include <cctype>
#include <iomanip>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace nopair {

HighReal parse_real(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t\r\n");
  const auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("empty number");
  s = s.substr(first, last - first + 1);
  static const std::regex number(R"([+-]?(\d+\.?\d*|\.\d+)([eEdD][+-]?\d+)?)");
  if (!std::regex_match(s, number)) throw std::invalid_argument("not a number: '" + s + "'");
  for (auto& ch : s)
    if (ch == 'd' || ch == 'D') ch = 'e';
  return HighReal(s);
}

std::string to_string(const HighReal& value, int digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits > 0 ? digits - 1 : 0) << value;
  return os.str();
}

std::string to_fixed(const HighReal& value, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << value;
  return os.str();
}

}  // namespace nopair
