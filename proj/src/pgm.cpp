#include "arls/pgm.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <regex>

namespace arls {

namespace {

constexpr std::int64_t kMaxDimension = 1'000'000;
constexpr std::int64_t kMaxPixels = 100'000'000;

struct Cursor {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    bool done() const { return pos >= bytes.size(); }
    std::uint8_t peek() const { return bytes[pos]; }
};

void skip_separators(Cursor& c) {
    while (!c.done()) {
        if (std::isspace(c.peek())) {
            ++c.pos;
        } else if (c.peek() == '#') {
            while (!c.done() && c.peek() != '\n') ++c.pos;
        } else {
            break;
        }
    }
}

// Reads one decimal token; returns its value and start offset.
std::pair<std::int64_t, std::size_t> parse_number(Cursor& c, const char* what) {
    skip_separators(c);
    const std::size_t start = c.pos;
    if (c.done() || !std::isdigit(c.peek()))
        throw PgmError(PgmError::Kind::MalformedHeader, start,
                       std::string("expected ") + what + " at byte offset " +
                           std::to_string(start));
    std::int64_t value = 0;
    while (!c.done() && std::isdigit(c.peek())) {
        value = value * 10 + (c.peek() - '0');
        if (value > kMaxPixels * 256)
            throw PgmError(PgmError::Kind::MalformedHeader, start,
                           std::string(what) + " out of range at byte offset " +
                               std::to_string(start));
        ++c.pos;
    }
    return {value, start};
}

} // namespace

Frame load_frame(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw PgmError(PgmError::Kind::MalformedHeader, 0,
                       "not a binary PGM (P5) payload at byte offset 0");
    Cursor c{bytes, 2};

    const auto [width, w_off] = parse_number(c, "width");
    const auto [height, h_off] = parse_number(c, "height");
    if (width <= 0 || width > kMaxDimension)
        throw PgmError(PgmError::Kind::MalformedHeader, w_off,
                       "invalid width at byte offset " + std::to_string(w_off));
    if (height <= 0 || height > kMaxDimension || width * height > kMaxPixels)
        throw PgmError(PgmError::Kind::MalformedHeader, h_off,
                       "invalid height at byte offset " + std::to_string(h_off));

    const auto [maxval, m_off] = parse_number(c, "maxval");
    if (maxval != 255)
        throw PgmError(PgmError::Kind::UnsupportedMaxval, m_off,
                       "unsupported maxval " + std::to_string(maxval) +
                           " at byte offset " + std::to_string(m_off) + " (need 255)");

    // Exactly one whitespace byte separates the header from the rows.
    if (c.done() || !std::isspace(c.peek()))
        throw PgmError(PgmError::Kind::MalformedHeader, c.pos,
                       "missing header terminator at byte offset " + std::to_string(c.pos));
    ++c.pos;

    const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t have = bytes.size() - c.pos;
    if (have < need)
        throw PgmError(PgmError::Kind::TruncatedData, bytes.size(),
                       "pixel data truncated at byte offset " + std::to_string(bytes.size()) +
                           " (need " + std::to_string(need) + " bytes, have " +
                           std::to_string(have) + ")");
    if (have > need)
        throw PgmError(PgmError::Kind::TrailingData, c.pos + need,
                       "trailing bytes after pixel data at byte offset " +
                           std::to_string(c.pos + need));

    Frame frame(static_cast<int>(width), static_cast<int>(height));
    std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(c.pos), bytes.end(),
              frame.pixels.begin());
    return frame;
}

std::vector<std::uint8_t> save_frame(const Frame& frame) {
    char header[64];
    const int n = std::snprintf(header, sizeof header, "P5 %d %d 255\n", frame.width,
                                frame.height);
    std::vector<std::uint8_t> out(header, header + n);
    out.insert(out.end(), frame.pixels.begin(), frame.pixels.end());
    return out;
}

Frame load_frame_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return load_frame(bytes);
    } catch (const PgmError& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void save_frame_file(const Frame& frame, const std::filesystem::path& path) {
    const auto bytes = save_frame(frame);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

std::string sequence_file_name(std::int64_t index) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06lld.pgm", static_cast<long long>(index));
    return name;
}

std::vector<std::pair<std::int64_t, std::filesystem::path>>
list_sequence(const std::filesystem::path& dir) {
    static const std::regex pattern(R"(frame_(\d+)\.pgm)");
    std::vector<std::pair<std::int64_t, std::filesystem::path>> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (!std::regex_match(name, m, pattern)) continue;
        files.emplace_back(std::stoll(m[1].str()), entry.path());
    }
    std::sort(files.begin(), files.end());
    for (std::size_t i = 1; i < files.size(); ++i)
        if (files[i].first == files[i - 1].first)
            throw std::runtime_error("duplicate frame index " +
                                     std::to_string(files[i].first) + " in " + dir.string());
    return files;
}

} // namespace arls
