#pragma once

#include <string>

#include <json.hpp>

#include "d2d/allocation.hpp"

namespace d2d {

/// Structured record: RB lists, denied pairs, powers in dBm, SINRs in dB,
/// rates and sum-rate in bits/s/Hz, effort counters. Zero powers and the
/// SINRs of denied pairs appear as null.
nlohmann::json to_json(const AllocationResult& result);

std::string to_json_text(const AllocationResult& result, int indent = 2);

}  // namespace d2d
