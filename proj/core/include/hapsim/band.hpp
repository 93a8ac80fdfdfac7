#pragma once

#include <string>

namespace hapsim {

/// Carrier band of a HAPS-to-ground link. S-band serves handheld terminals,
/// Ka-band serves VSAT dishes.
enum class Band { S, Ka };

const char* to_string(Band band);
Band band_from_string(const std::string& name);  // "s" / "ka", throws ConfigError

}  // namespace hapsim
