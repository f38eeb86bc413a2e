#pragma once

// Data files compiled into the library at build time (see embedded_data.cpp.in).

namespace roadrules::detail {

extern const char* const kUkHighwaySampleRules;

extern const char* const kTrafficLightMap;
extern const char* const kOvertakeMap;
extern const char* const kRightTurnMap;

}  // namespace roadrules::detail
