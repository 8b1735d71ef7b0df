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

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mcpgate/blake3.hpp"

namespace mcpgate {

enum class AuditVerdict : std::uint8_t {
    Allow = 0,
    Deny = 1,
    Warn = 2,  // allowed, flagged by the warn band
};

struct AuditRecord {
    std::uint64_t timestamp_ns = 0;  // monotonic since session start
    std::string agent_id;
    std::string tool_name;
    Blake3::Digest arg_hash{};
    std::uint8_t deciding_layer = 0;  // 0 = ALLOW, 1..6 = deny layer
    AuditVerdict verdict = AuditVerdict::Allow;
    Blake3::Digest prev_hash{};
    Blake3::Digest self_hash{};
};

// Bit-exact serialization of everything self_hash covers: u64 LE timestamp,
// two u32-LE-length-prefixed strings, 32-byte arg hash, layer byte, verdict
// byte, 32-byte prev hash. Hash stability is the module's whole point, so
// this layout must never change silently.
std::vector<std::uint8_t> serialize_for_hash(const AuditRecord& record);

// serialize_for_hash plus the 32-byte self_hash (the sink/wire form, without
// the outer length prefix).
std::vector<std::uint8_t> serialize_record(const AuditRecord& record);

struct VerifyResult {
    bool ok;
    std::size_t first_break;  // meaningful when !ok

    static VerifyResult okay() { return {true, 0}; }
    static VerifyResult broken(std::size_t index) { return {false, index}; }
};

// Ok iff every self_hash recomputes, every prev_hash links, and record 0
// carries the zero prev_hash of a genesis record.
VerifyResult verify_chain(const std::vector<AuditRecord>& records);

struct ParsedSink {
    std::vector<AuditRecord> records;
    std::optional<std::size_t> parse_break;  // index of the first undecodable record
};

// Decodes a length-prefixed record stream; stops at the first undecodable
// record and reports its index.
ParsedSink parse_sink_bytes(const std::vector<std::uint8_t>& bytes);

// Parse + verify of a sink file; a parse failure counts as a break at the
// failing record's index.
VerifyResult verify_sink_file(const std::string& path);

class AuditChain {
  public:
    static constexpr std::size_t kRingCapacityBytes = 4 * 1024 * 1024;

    // sink_path empty: flushed records are dropped (verification then covers
    // the in-memory ring only).
    explicit AuditChain(std::string sink_path = "");

    // Appends with correct prev/self hashes; returns self_hash. Timestamps
    // are forced monotonic. When the ring would exceed capacity, oldest
    // records flush to the sink first; a sink write failure raises
    // sink_degraded and the append still succeeds in memory.
    Blake3::Digest append(std::uint64_t timestamp_ns, const std::string& agent_id,
                          const std::string& tool_name, const Blake3::Digest& arg_hash,
                          std::uint8_t deciding_layer, AuditVerdict verdict);

    // Writes every buffered record to the sink (shutdown path).
    void flush_all();

    std::vector<AuditRecord> ring_snapshot() const;
    const AuditRecord& genesis() const { return genesis_; }
    std::size_t records_appended() const;  // excludes genesis
    bool sink_degraded() const;

  private:
    void flush_front_locked();

    mutable std::mutex mu_;
    AuditRecord genesis_;
    std::deque<AuditRecord> ring_;  // genesis lives at the front until flushed
    std::size_t ring_bytes_ = 0;
    std::uint64_t last_timestamp_ns_ = 0;
    Blake3::Digest last_hash_{};
    std::size_t appended_ = 0;
    std::string sink_path_;
    bool sink_degraded_ = false;
};

}  // namespace mcpgate
