/*
   Copyright 2026 The mcpgate Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mcpgate {

/// Portable BLAKE3 (hash mode only, 32-byte digests).
///
/// Self-contained implementation of the tree-hash construction: 1 KiB
/// chunks, parent nodes over chaining-value pairs, ROOT flag on the final
/// compression. Verified against the reference implementation's published
/// test vectors (see tests/test_blake3.cpp).
class Blake3 {
public:
    static constexpr std::size_t kDigestLen = 32;
    using Digest = std::array<std::uint8_t, kDigestLen>;

    Blake3();

    void update(const void* data, std::size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }

    /// Digest of everything fed so far. Does not consume the hasher state.
    Digest finalize() const;

    static Digest hash(const void* data, std::size_t len);
    static Digest hash(std::string_view s) { return hash(s.data(), s.size()); }
    static std::string hex(const Digest& d);

private:
    using Words8 = std::array<std::uint32_t, 8>;

    struct OutputNode {
        Words8 input_cv;
        std::array<std::uint32_t, 16> block_words;
        std::uint64_t counter;
        std::uint32_t block_len;
        std::uint32_t flags;

        Words8 chaining_value() const;
        Digest root_bytes() const;
    };

    OutputNode chunk_output() const;
    void add_chunk_chaining_value(Words8 cv, std::uint64_t total_chunks);

    // Current chunk state.
    Words8 chunk_cv_;
    std::uint64_t chunk_counter_ = 0;
    std::array<std::uint8_t, 64> block_{};
    std::uint32_t block_len_ = 0;
    std::uint32_t blocks_compressed_ = 0;
    // Subtree chaining values, deepest first.
    std::vector<Words8> cv_stack_;
};

}  // namespace mcpgate
