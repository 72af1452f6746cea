#pragma once
// Internal registry row shared between catalog.cpp and builtins.cpp.

#include <vector>

#include "ddrs/catalog.hpp"

namespace ddrs {

struct BuiltinDef {
  const char* name;
  const char* source;
  SystemStatus status;
  View view;
};

const std::vector<BuiltinDef>& builtin_defs();

}  // namespace ddrs
