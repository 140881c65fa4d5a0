#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "arls/frame.hpp"

namespace arls {

/// Parse failure for binary PGM (P5) payloads. `offset` is the byte offset
/// into the input at which the problem was detected.
struct PgmError : std::runtime_error {
    enum class Kind {
        MalformedHeader,
        UnsupportedMaxval,
        TruncatedData,
        TrailingData,
    };

    Kind kind;
    std::size_t offset;

    PgmError(Kind k, std::size_t off, const std::string& message)
        : std::runtime_error(message), kind(k), offset(off) {}
};

/// Decodes a binary PGM (P5) image with maxval 255.
///
/// The header is ASCII: magic "P5", width, height, maxval, separated by
/// whitespace runs ('#' comments allowed), then exactly one whitespace byte
/// before the raw pixel rows. Throws PgmError naming the byte offset on
/// malformed headers, unsupported maxval, truncated or trailing pixel data.
Frame load_frame(const std::vector<std::uint8_t>& bytes);

/// Encodes a frame as canonical P5: "P5 <w> <h> 255\n" (single-space
/// separators) followed by the raw rows. load_frame(save_frame(f))
/// round-trips bit-exactly.
std::vector<std::uint8_t> save_frame(const Frame& frame);

Frame load_frame_file(const std::filesystem::path& path);
void save_frame_file(const Frame& frame, const std::filesystem::path& path);

/// Canonical sequence file name: frame_000000.pgm, frame_000001.pgm, ...
std::string sequence_file_name(std::int64_t index);

/// Lists `frame_<digits>.pgm` entries in a directory, sorted by the index
/// parsed from the file name. Non-matching entries are ignored; duplicate
/// indices are an error.
std::vector<std::pair<std::int64_t, std::filesystem::path>>
list_sequence(const std::filesystem::path& dir);

} // namespace arls
