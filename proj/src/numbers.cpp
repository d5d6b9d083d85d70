#include "grsym/numbers.hpp"

namespace grsym {

std::string to_string(const Rat& r) {
  return r.get_str();
}

static std::string imag_part_str(const Rat& im) {
  if (im == 1) return "I";
  if (im == -1) return "-I";
  return im.get_str() + "*I";
}

std::string to_string(const GaussRat& q) {
  if (q.im == 0) return q.re.get_str();
  if (q.re == 0) return imag_part_str(q.im);
  std::string s = q.re.get_str();
  if (q.im > 0) {
    s += "+" + imag_part_str(q.im);
  } else {
    s += "-" + imag_part_str(-q.im);
  }
  return s;
}

bool is_simple_coeff(const GaussRat& q) {
  return q.re == 0 || q.im == 0;
}

}  // namespace grsym
