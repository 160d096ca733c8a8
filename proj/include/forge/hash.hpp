#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace forge {

// 128-bit FNV-1a. Stable non-cryptographic content hash; the algorithm id
// ("fnv1a128") is stamped into output metadata so identifiers are never
// compared across hash revisions.
struct Hash128 {
    using u128 = unsigned __int128;

    // offset basis 0x6c62272e07bb014262b821756295c58d
    u128 state = (u128{0x6c62272e07bb0142ULL} << 64) | 0x62b821756295c58dULL;

    void update(std::string_view data) {
        constexpr u128 prime = (u128{1} << 88) | 0x13B;
        for (unsigned char c : data) {
            state ^= c;
            state *= prime;
        }
    }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(32, '0');
        u128 v = state;
        for (int i = 31; i >= 0; --i) {
            out[i] = digits[static_cast<unsigned>(v & 0xF)];
            v >>= 4;
        }
        return out;
    }
};

inline std::string fnv1a128_hex(std::string_view data) {
    Hash128 h;
    h.update(data);
    return h.hex();
}

inline const char* hash_algorithm_id() { return "fnv1a128"; }

}  // namespace forge
