#pragma once

// gtest value printers: failures show canonical text instead of bytes.

#include <ostream>

#include "weil/base_poly.hpp"
#include "weil/cahiers.hpp"
#include "weil/element.hpp"
#include "weil/polynomial.hpp"

namespace weil {

inline void PrintTo(const Monomial& m, std::ostream* os) { *os << to_string(m); }
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << to_string(p); }
template <class S>
void PrintTo(const Element<S>& a, std::ostream* os) {
  *os << to_string(a);
}
template <class C>
void PrintTo(const BasePoly<C>& p, std::ostream* os) {
  *os << to_string(p);
}
inline void PrintTo(const JValue& v, std::ostream* os) { *os << to_string(v); }

}  // namespace weil
