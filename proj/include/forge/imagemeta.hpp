#pragma once

#include <optional>
#include <string_view>

#include "forge/assemble.hpp"

namespace forge::fetch {

struct ImageMeta {
    assemble::ImageFormat format = assemble::ImageFormat::Other;
    int width_px = 0;
    int height_px = 0;

    bool operator==(const ImageMeta&) const = default;
};

// Identifies JPEG/PNG/WEBP by magic bytes and reads the dimensions from the
// format headers without a pixel decode. nullopt for unknown signatures or
// truncated headers.
std::optional<ImageMeta> decode_meta(std::string_view bytes);

}  // namespace forge::fetch
