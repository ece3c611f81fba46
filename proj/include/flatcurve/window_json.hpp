/**
 * @file window_json.hpp
 * @brief JSON form of a zero window.
 *
 *   {"mode":"exact|float","radius":R,"translation":[re,im],"points":[[re,im],...],
 *    "source":"...","eps":e}
 *
 * Exact mode writes coordinates as "p/q" strings ("p" for integers); float mode
 * writes shortest round-trip decimals. "eps" is written in float mode only.
 */

#pragma once

#include "flatcurve/zseq.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace flatcurve {

std::string window_to_json(const ZeroWindow& w);

/// Throws InvalidWindow on malformed input, or when check is set and the
/// stored window fails validate().
ZeroWindow window_from_json(std::string_view text, bool check = true);

/// Throws IoError, InvalidWindow.
ZeroWindow read_window_file(const std::filesystem::path& path, bool check = true);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace flatcurve
