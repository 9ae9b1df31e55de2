#pragma once

#include <string>

namespace d2d {

/// Shortest round-trip decimal form ("." separator, locale independent).
std::string format_double(double value);

/// Linear watts to dBm; 0 W maps to -inf.
double watts_to_dbm(double watts);
double dbm_to_watts(double dbm);
double linear_to_db(double ratio);
double db_to_linear(double db);

}  // namespace d2d
