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

#include "mcpgate/blake3.hpp"

#include <algorithm>
#include <cstring>

namespace mcpgate {
namespace {

constexpr std::size_t kBlockLen = 64;
constexpr std::size_t kChunkLen = 1024;

constexpr std::uint32_t kChunkStart = 1u << 0;
constexpr std::uint32_t kChunkEnd = 1u << 1;
constexpr std::uint32_t kParent = 1u << 2;
constexpr std::uint32_t kRoot = 1u << 3;

constexpr std::array<std::uint32_t, 8> kIv = {
    0x6A09E667u, 0xBB67AE85u, 0x3C6EF372u, 0xA54FF53Au,
    0x510E527Fu, 0x9B05688Cu, 0x1F83D9ABu, 0x5BE0CD19u,
};

constexpr std::array<std::size_t, 16> kMsgPermutation = {
    2, 6, 3, 10, 7, 0, 4, 13, 1, 11, 12, 5, 9, 14, 15, 8,
};

inline std::uint32_t rotr(std::uint32_t x, int n) {
    return (x >> n) | (x << (32 - n));
}

inline void g(std::array<std::uint32_t, 16>& v, std::size_t a, std::size_t b,
              std::size_t c, std::size_t d, std::uint32_t mx, std::uint32_t my) {
    v[a] = v[a] + v[b] + mx;
    v[d] = rotr(v[d] ^ v[a], 16);
    v[c] = v[c] + v[d];
    v[b] = rotr(v[b] ^ v[c], 12);
    v[a] = v[a] + v[b] + my;
    v[d] = rotr(v[d] ^ v[a], 8);
    v[c] = v[c] + v[d];
    v[b] = rotr(v[b] ^ v[c], 7);
}

inline void round_fn(std::array<std::uint32_t, 16>& v,
                     const std::array<std::uint32_t, 16>& m) {
    g(v, 0, 4, 8, 12, m[0], m[1]);
    g(v, 1, 5, 9, 13, m[2], m[3]);
    g(v, 2, 6, 10, 14, m[4], m[5]);
    g(v, 3, 7, 11, 15, m[6], m[7]);
    g(v, 0, 5, 10, 15, m[8], m[9]);
    g(v, 1, 6, 11, 12, m[10], m[11]);
    g(v, 2, 7, 8, 13, m[12], m[13]);
    g(v, 3, 4, 9, 14, m[14], m[15]);
}

std::array<std::uint32_t, 16> compress(const std::array<std::uint32_t, 8>& cv,
                                       const std::array<std::uint32_t, 16>& block_words,
                                       std::uint64_t counter,
                                       std::uint32_t block_len,
                                       std::uint32_t flags) {
    std::array<std::uint32_t, 16> v = {
        cv[0], cv[1], cv[2], cv[3], cv[4], cv[5], cv[6], cv[7],
        kIv[0], kIv[1], kIv[2], kIv[3],
        static_cast<std::uint32_t>(counter),
        static_cast<std::uint32_t>(counter >> 32),
        block_len, flags,
    };
    std::array<std::uint32_t, 16> m = block_words;
    for (int r = 0; r < 7; ++r) {
        round_fn(v, m);
        if (r < 6) {
            std::array<std::uint32_t, 16> p;
            for (std::size_t i = 0; i < 16; ++i) p[i] = m[kMsgPermutation[i]];
            m = p;
        }
    }
    for (std::size_t i = 0; i < 8; ++i) {
        v[i] ^= v[i + 8];
        v[i + 8] ^= cv[i];
    }
    return v;
}

std::array<std::uint32_t, 16> words_from_block(const std::uint8_t* block) {
    std::array<std::uint32_t, 16> w;
    for (std::size_t i = 0; i < 16; ++i) {
        w[i] = static_cast<std::uint32_t>(block[4 * i]) |
               static_cast<std::uint32_t>(block[4 * i + 1]) << 8 |
               static_cast<std::uint32_t>(block[4 * i + 2]) << 16 |
               static_cast<std::uint32_t>(block[4 * i + 3]) << 24;
    }
    return w;
}

}  // namespace

Blake3::Blake3() : chunk_cv_(kIv) {}

Blake3::Words8 Blake3::OutputNode::chaining_value() const {
    auto v = compress(input_cv, block_words, counter, block_len, flags);
    Words8 out;
    std::copy_n(v.begin(), 8, out.begin());
    return out;
}

Blake3::Digest Blake3::OutputNode::root_bytes() const {
    auto v = compress(input_cv, block_words, 0, block_len, flags | kRoot);
    Digest out;
    for (std::size_t i = 0; i < 8; ++i) {
        out[4 * i] = static_cast<std::uint8_t>(v[i]);
        out[4 * i + 1] = static_cast<std::uint8_t>(v[i] >> 8);
        out[4 * i + 2] = static_cast<std::uint8_t>(v[i] >> 16);
        out[4 * i + 3] = static_cast<std::uint8_t>(v[i] >> 24);
    }
    return out;
}

Blake3::OutputNode Blake3::chunk_output() const {
    std::array<std::uint8_t, kBlockLen> padded = block_;
    std::fill(padded.begin() + block_len_, padded.end(), 0);
    std::uint32_t flags = kChunkEnd;
    if (blocks_compressed_ == 0) flags |= kChunkStart;
    return OutputNode{chunk_cv_, words_from_block(padded.data()), chunk_counter_,
                      block_len_, flags};
}

void Blake3::add_chunk_chaining_value(Words8 cv, std::uint64_t total_chunks) {
    // Each trailing zero bit of the chunk total marks a completed subtree
    // whose left sibling is on the stack.
    while ((total_chunks & 1) == 0) {
        Words8 left = cv_stack_.back();
        cv_stack_.pop_back();
        std::array<std::uint32_t, 16> block;
        std::copy_n(left.begin(), 8, block.begin());
        std::copy_n(cv.begin(), 8, block.begin() + 8);
        auto v = compress(kIv, block, 0, kBlockLen, kParent);
        std::copy_n(v.begin(), 8, cv.begin());
        total_chunks >>= 1;
    }
    cv_stack_.push_back(cv);
}

void Blake3::update(const void* data, std::size_t len) {
    const auto* in = static_cast<const std::uint8_t*>(data);
    while (len > 0) {
        std::size_t chunk_filled =
            static_cast<std::size_t>(blocks_compressed_) * kBlockLen + block_len_;
        if (chunk_filled == kChunkLen) {
            // More input is coming, so the full chunk cannot be the root.
            add_chunk_chaining_value(chunk_output().chaining_value(),
                                     chunk_counter_ + 1);
            chunk_counter_ += 1;
            chunk_cv_ = kIv;
            block_.fill(0);
            block_len_ = 0;
            blocks_compressed_ = 0;
        }
        if (block_len_ == kBlockLen) {
            std::uint32_t flags = blocks_compressed_ == 0 ? kChunkStart : 0;
            auto v = compress(chunk_cv_, words_from_block(block_.data()),
                              chunk_counter_, kBlockLen, flags);
            std::copy_n(v.begin(), 8, chunk_cv_.begin());
            blocks_compressed_ += 1;
            block_.fill(0);
            block_len_ = 0;
        }
        std::size_t want = kBlockLen - block_len_;
        std::size_t take = std::min(want, len);
        std::memcpy(block_.data() + block_len_, in, take);
        block_len_ += static_cast<std::uint32_t>(take);
        in += take;
        len -= take;
    }
}

Blake3::Digest Blake3::finalize() const {
    OutputNode out = chunk_output();
    for (auto it = cv_stack_.rbegin(); it != cv_stack_.rend(); ++it) {
        Words8 right = out.chaining_value();
        std::array<std::uint32_t, 16> block;
        std::copy_n(it->begin(), 8, block.begin());
        std::copy_n(right.begin(), 8, block.begin() + 8);
        out = OutputNode{kIv, block, 0, kBlockLen, kParent};
    }
    return out.root_bytes();
}

Blake3::Digest Blake3::hash(const void* data, std::size_t len) {
    Blake3 h;
    h.update(data, len);
    return h.finalize();
}

std::string Blake3::hex(const Digest& d) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * kDigestLen);
    for (std::uint8_t b : d) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

}  // namespace mcpgate
