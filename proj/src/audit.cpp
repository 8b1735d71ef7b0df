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

#include "mcpgate/audit.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <random>

namespace mcpgate {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_string(std::vector<std::uint8_t>& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
}

void put_digest(std::vector<std::uint8_t>& out, const Blake3::Digest& d) {
    out.insert(out.end(), d.begin(), d.end());
}

// Bounds-checked cursor over a serialized stream; any failure poisons it.
struct Reader {
    const std::uint8_t* p;
    std::size_t left;
    bool ok = true;

    bool take(void* dst, std::size_t n) {
        if (!ok || left < n) {
            ok = false;
            return false;
        }
        std::memcpy(dst, p, n);
        p += n;
        left -= n;
        return true;
    }

    std::uint32_t u32() {
        std::uint8_t b[4] = {};
        take(b, 4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }

    std::uint64_t u64() {
        std::uint8_t b[8] = {};
        take(b, 8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
};

bool decode_record(Reader& r, AuditRecord& out) {
    out.timestamp_ns = r.u64();
    std::uint32_t agent_len = r.u32();
    if (!r.ok || agent_len > r.left) return false;
    out.agent_id.resize(agent_len);
    r.take(out.agent_id.data(), agent_len);
    std::uint32_t tool_len = r.u32();
    if (!r.ok || tool_len > r.left) return false;
    out.tool_name.resize(tool_len);
    r.take(out.tool_name.data(), tool_len);
    r.take(out.arg_hash.data(), out.arg_hash.size());
    std::uint8_t layer = 0;
    std::uint8_t verdict = 0;
    r.take(&layer, 1);
    r.take(&verdict, 1);
    if (!r.ok || layer > 6 || verdict > 2) return false;
    out.deciding_layer = layer;
    out.verdict = static_cast<AuditVerdict>(verdict);
    r.take(out.prev_hash.data(), out.prev_hash.size());
    r.take(out.self_hash.data(), out.self_hash.size());
    return r.ok;
}

std::string random_session_nonce_hex() {
    std::random_device rd;
    std::string hex;
    hex.reserve(32);
    static const char* kHex = "0123456789abcdef";
    for (int i = 0; i < 4; ++i) {
        std::uint32_t word = rd();
        for (int j = 0; j < 8; ++j) {
            hex.push_back(kHex[word & 0xF]);
            word >>= 4;
        }
    }
    return hex;
}

}  // namespace

std::vector<std::uint8_t> serialize_for_hash(const AuditRecord& record) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + 4 + record.agent_id.size() + 4 + record.tool_name.size() + 32 + 2 + 32);
    put_u64(out, record.timestamp_ns);
    put_string(out, record.agent_id);
    put_string(out, record.tool_name);
    put_digest(out, record.arg_hash);
    out.push_back(record.deciding_layer);
    out.push_back(static_cast<std::uint8_t>(record.verdict));
    put_digest(out, record.prev_hash);
    return out;
}

std::vector<std::uint8_t> serialize_record(const AuditRecord& record) {
    auto out = serialize_for_hash(record);
    put_digest(out, record.self_hash);
    return out;
}

VerifyResult verify_chain(const std::vector<AuditRecord>& records) {
    static const Blake3::Digest kZero{};
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        auto body = serialize_for_hash(rec);
        if (Blake3::hash(body.data(), body.size()) != rec.self_hash) {
            return VerifyResult::broken(i);
        }
        const Blake3::Digest& expected_prev = (i == 0) ? kZero : records[i - 1].self_hash;
        if (rec.prev_hash != expected_prev) return VerifyResult::broken(i);
    }
    return VerifyResult::okay();
}

ParsedSink parse_sink_bytes(const std::vector<std::uint8_t>& bytes) {
    ParsedSink out;
    Reader stream{bytes.data(), bytes.size()};
    std::size_t index = 0;
    while (stream.left > 0) {
        std::uint32_t len = stream.u32();
        if (!stream.ok || len > stream.left) {
            out.parse_break = index;
            return out;
        }
        Reader body{stream.p, len};
        AuditRecord rec;
        if (!decode_record(body, rec) || body.left != 0) {
            out.parse_break = index;
            return out;
        }
        stream.p += len;
        stream.left -= len;
        out.records.push_back(std::move(rec));
        ++index;
    }
    return out;
}

VerifyResult verify_sink_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return VerifyResult::broken(0);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    ParsedSink parsed = parse_sink_bytes(bytes);
    VerifyResult chain = verify_chain(parsed.records);
    if (parsed.parse_break && (chain.ok || *parsed.parse_break < chain.first_break)) {
        return VerifyResult::broken(*parsed.parse_break);
    }
    return chain;
}

AuditChain::AuditChain(std::string sink_path) : sink_path_(std::move(sink_path)) {
    genesis_.timestamp_ns = 0;
    genesis_.agent_id = "genesis";
    genesis_.tool_name = random_session_nonce_hex();  // distinguishes boot sessions
    auto body = serialize_for_hash(genesis_);
    genesis_.self_hash = Blake3::hash(body.data(), body.size());
    ring_.push_back(genesis_);
    ring_bytes_ = serialize_record(genesis_).size() + 4;
    last_hash_ = genesis_.self_hash;
}

void AuditChain::flush_front_locked() {
    const AuditRecord& front = ring_.front();
    auto bytes = serialize_record(front);
    if (!sink_path_.empty()) {
        std::ofstream out(sink_path_, std::ios::binary | std::ios::app);
        std::uint8_t len[4];
        std::uint32_t n = static_cast<std::uint32_t>(bytes.size());
        for (int i = 0; i < 4; ++i) len[i] = static_cast<std::uint8_t>(n >> (8 * i));
        out.write(reinterpret_cast<const char*>(len), 4);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) sink_degraded_ = true;  // keep serving from memory
    }
    ring_bytes_ -= bytes.size() + 4;
    ring_.pop_front();
}

Blake3::Digest AuditChain::append(std::uint64_t timestamp_ns, const std::string& agent_id,
                                  const std::string& tool_name, const Blake3::Digest& arg_hash,
                                  std::uint8_t deciding_layer, AuditVerdict verdict) {
    std::lock_guard<std::mutex> lock(mu_);
    AuditRecord rec;
    rec.timestamp_ns = std::max(timestamp_ns, last_timestamp_ns_);
    rec.agent_id = agent_id;
    rec.tool_name = tool_name;
    rec.arg_hash = arg_hash;
    rec.deciding_layer = deciding_layer;
    rec.verdict = verdict;
    rec.prev_hash = last_hash_;
    auto body = serialize_for_hash(rec);
    rec.self_hash = Blake3::hash(body.data(), body.size());

    std::size_t framed_size = body.size() + 32 + 4;
    while (!ring_.empty() && ring_bytes_ + framed_size > kRingCapacityBytes) {
        flush_front_locked();
    }

    last_timestamp_ns_ = rec.timestamp_ns;
    last_hash_ = rec.self_hash;
    ring_bytes_ += framed_size;
    ring_.push_back(std::move(rec));
    ++appended_;
    return last_hash_;
}

void AuditChain::flush_all() {
    std::lock_guard<std::mutex> lock(mu_);
    while (!ring_.empty()) flush_front_locked();
}

std::vector<AuditRecord> AuditChain::ring_snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return std::vector<AuditRecord>(ring_.begin(), ring_.end());
}

std::size_t AuditChain::records_appended() const {
    std::lock_guard<std::mutex> lock(mu_);
    return appended_;
}

bool AuditChain::sink_degraded() const {
    std::lock_guard<std::mutex> lock(mu_);
    return sink_degraded_;
}

}  // namespace mcpgate
