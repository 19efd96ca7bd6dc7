#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ncartan/classgroup.hpp"

namespace ncartan::app {

/// A class group result plus run provenance. Big integers are serialized as
/// decimal strings so the JSON round trip is lossless.
struct OutputRecord {
  ClassGroupResult result;
  std::string version;
  double elapsed_ms = 0;
};

nlohmann::json to_json(const OutputRecord& r);
/// Throws InputError on a missing or mistyped field.
OutputRecord record_from_json(const nlohmann::json& j);

bool operator==(const OutputRecord& a, const OutputRecord& b);

/// "Z/13 x Z/91", or "trivial".
std::string format_structure(const std::vector<BigInteger>& factors);

}  // namespace ncartan::app
