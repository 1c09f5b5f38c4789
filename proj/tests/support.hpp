#pragma once

#include "doctest.h"

#include "cyclap/real.hpp"

namespace doctest {

template <>
struct StringMaker<cyclap::Real> {
  static String convert(const cyclap::Real& x) { return x.to_string(20).c_str(); }
};

}  // namespace doctest
