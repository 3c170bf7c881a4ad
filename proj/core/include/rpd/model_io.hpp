#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rpd/descriptor.hpp"

namespace rpd {

inline constexpr int kModelFormatVersion = 1;

/// JSON text:
///   {version, d, m, ell, master_seed, shared_Y, policy,
///    classes: [{label, n, directions (m*d, row-major), offsets (m),
///               central_point (d), policy, fallback_applied}]}
/// Floating-point values carry 17 significant digits and always a decimal
/// point or exponent, so deserialize() restores every bit.
std::string serialize(const RpdModel& model);

/// Throws ParseError (with byte offset or JSON path) on malformed input and
/// UnsupportedVersion for any version other than kModelFormatVersion.
RpdModel deserialize(std::string_view text);

void save_model(const RpdModel& model, const std::filesystem::path& path);
RpdModel load_model(const std::filesystem::path& path);

} // namespace rpd
