// The convention ledger: every sign and ordering choice that the printed
// results depend on, fixed in one place.  Result records embed a hash of
// this text so outputs are traceable to the conventions that produced
// them.  docs/conventions.md carries the same content for human readers.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace diraclab {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string_view conventions_text();

// FNV-1a 64-bit over conventions_text().
std::uint64_t conventions_hash();
std::string conventions_hash_hex();

}  // namespace diraclab
