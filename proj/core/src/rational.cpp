#include "noksurf/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "noksurf/errors.hpp"

namespace noksurf {

Rat::Rat(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  Integer num;
  Integer den = 1;
  auto parse_int = [&](const std::string& part) {
    Integer v;
    const std::size_t digits = !part.empty() && part[0] == '-' ? 1 : 0;
    const bool well_formed = part.size() > digits &&
                             std::all_of(part.begin() + static_cast<std::ptrdiff_t>(digits), part.end(),
                                         [](unsigned char c) { return std::isdigit(c) != 0; });
    if (!well_formed || v.set_str(part, 10) != 0) {
      throw InputError("malformed rational '" + s + "'");
    }
    return v;
  };
  if (slash == std::string::npos) {
    num = parse_int(s);
  } else {
    num = parse_int(s.substr(0, slash));
    den = parse_int(s.substr(slash + 1));
  }
  return Rat(num, den);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw InternalError("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rat::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace noksurf
