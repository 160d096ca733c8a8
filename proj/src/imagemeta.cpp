#include "forge/imagemeta.hpp"

#include <cstdint>

namespace forge::fetch {

namespace {

std::uint32_t be32(std::string_view b, std::size_t at) {
    return (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) << 24) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 8) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3]));
}

std::uint32_t be16(std::string_view b, std::size_t at) {
    return (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) << 8) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1]));
}

std::uint32_t le16(std::string_view b, std::size_t at) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8);
}

std::uint32_t le24(std::string_view b, std::size_t at) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 16);
}

std::uint32_t le32(std::string_view b, std::size_t at) {
    return le24(b, at) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3])) << 24);
}

std::optional<ImageMeta> decode_png(std::string_view b) {
    // signature + IHDR length/type + 8 dimension bytes
    if (b.size() < 24) return std::nullopt;
    if (b.compare(12, 4, "IHDR") != 0) return std::nullopt;
    const std::uint32_t w = be32(b, 16);
    const std::uint32_t h = be32(b, 20);
    if (w == 0 || h == 0) return std::nullopt;
    return ImageMeta{assemble::ImageFormat::PNG, static_cast<int>(w),
                     static_cast<int>(h)};
}

std::optional<ImageMeta> decode_jpeg(std::string_view b) {
    std::size_t pos = 2;
    while (pos + 3 < b.size()) {
        if (static_cast<unsigned char>(b[pos]) != 0xFF) return std::nullopt;
        unsigned char marker = static_cast<unsigned char>(b[pos + 1]);
        while (marker == 0xFF && pos + 2 < b.size()) {  // fill bytes
            ++pos;
            marker = static_cast<unsigned char>(b[pos + 1]);
        }
        if (marker == 0xD8 || marker == 0x01 ||
            (marker >= 0xD0 && marker <= 0xD7)) {
            pos += 2;
            continue;
        }
        if (pos + 3 >= b.size()) return std::nullopt;
        const std::uint32_t length = be16(b, pos + 2);
        if (length < 2) return std::nullopt;
        const bool is_sof = marker >= 0xC0 && marker <= 0xCF && marker != 0xC4 &&
                            marker != 0xC8 && marker != 0xCC;
        if (is_sof) {
            if (pos + 8 >= b.size()) return std::nullopt;
            const std::uint32_t h = be16(b, pos + 5);
            const std::uint32_t w = be16(b, pos + 7);
            if (w == 0 || h == 0) return std::nullopt;
            return ImageMeta{assemble::ImageFormat::JPEG, static_cast<int>(w),
                             static_cast<int>(h)};
        }
        if (marker == 0xDA) return std::nullopt;  // scan data before any SOF
        pos += 2 + length;
    }
    return std::nullopt;
}

std::optional<ImageMeta> decode_webp(std::string_view b) {
    if (b.size() < 30) return std::nullopt;
    const std::string_view fourcc = b.substr(12, 4);
    if (fourcc == "VP8 ") {
        // key frame: 3-byte frame tag, 9D 01 2A sync, 14-bit dimensions
        if (static_cast<unsigned char>(b[23]) != 0x9D ||
            static_cast<unsigned char>(b[24]) != 0x01 ||
            static_cast<unsigned char>(b[25]) != 0x2A)
            return std::nullopt;
        const int w = static_cast<int>(le16(b, 26) & 0x3FFF);
        const int h = static_cast<int>(le16(b, 28) & 0x3FFF);
        if (w == 0 || h == 0) return std::nullopt;
        return ImageMeta{assemble::ImageFormat::WEBP, w, h};
    }
    if (fourcc == "VP8L") {
        if (static_cast<unsigned char>(b[20]) != 0x2F) return std::nullopt;
        const std::uint32_t bits = le32(b, 21);
        const int w = static_cast<int>((bits & 0x3FFF) + 1);
        const int h = static_cast<int>(((bits >> 14) & 0x3FFF) + 1);
        return ImageMeta{assemble::ImageFormat::WEBP, w, h};
    }
    if (fourcc == "VP8X") {
        const int w = static_cast<int>(le24(b, 24) + 1);
        const int h = static_cast<int>(le24(b, 27) + 1);
        return ImageMeta{assemble::ImageFormat::WEBP, w, h};
    }
    return std::nullopt;
}

}  // namespace

std::optional<ImageMeta> decode_meta(std::string_view bytes) {
    if (bytes.size() >= 8 && bytes.compare(0, 8, "\x89PNG\r\n\x1a\n") == 0)
        return decode_png(bytes);
    if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0xFF &&
        static_cast<unsigned char>(bytes[1]) == 0xD8)
        return decode_jpeg(bytes);
    if (bytes.size() >= 12 && bytes.compare(0, 4, "RIFF") == 0 &&
        bytes.compare(8, 4, "WEBP") == 0)
        return decode_webp(bytes);
    return std::nullopt;
}

}  // namespace forge::fetch
