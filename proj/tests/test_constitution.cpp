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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mcpgate/constitution.hpp"

using mcpgate::AgentId;
using mcpgate::Cidr;
using mcpgate::Constitution;
using mcpgate::parse_ipv4;
using mcpgate::TrustTier;
using mcpgate::url_host;

namespace {

AgentId agent(TrustTier tier) { return AgentId{"test-agent", tier}; }

nlohmann::json args(const char* json_text) { return nlohmann::json::parse(json_text); }

}  // namespace

TEST_CASE("ipv4 parser is strict dotted-quad decimal") {
    CHECK(parse_ipv4("0.0.0.0") == 0u);
    CHECK(parse_ipv4("255.255.255.255") == 0xFFFFFFFFu);
    CHECK(parse_ipv4("10.0.0.5") == 0x0A000005u);
    CHECK(parse_ipv4("192.168.1.1") == 0xC0A80101u);
    CHECK_FALSE(parse_ipv4("256.0.0.1").has_value());
    CHECK_FALSE(parse_ipv4("1.2.3").has_value());
    CHECK_FALSE(parse_ipv4("1.2.3.4.5").has_value());
    CHECK_FALSE(parse_ipv4("1.2.3.x").has_value());
    CHECK_FALSE(parse_ipv4("").has_value());
    CHECK_FALSE(parse_ipv4("1..2.3").has_value());
    CHECK_FALSE(parse_ipv4("1.2.3.4 ").has_value());
}

TEST_CASE("url host extraction") {
    CHECK(url_host("http://10.0.0.5/x") == "10.0.0.5");
    CHECK(url_host("https://example.com:8443/path?q=1") == "example.com");
    CHECK(url_host("http://169.254.169.254/latest/meta-data") == "169.254.169.254");
    CHECK(url_host("ftp://host") == "host");
    CHECK(url_host("not a url") == "");
    CHECK(url_host("http://") == "");
}

TEST_CASE("cidr membership") {
    auto ten = Cidr::parse("10.0.0.0/8");
    CHECK(ten.contains(*parse_ipv4("10.1.2.3")));
    CHECK_FALSE(ten.contains(*parse_ipv4("11.0.0.0")));
    auto twelve = Cidr::parse("172.16.0.0/12");
    CHECK(twelve.contains(*parse_ipv4("172.16.0.1")));
    CHECK(twelve.contains(*parse_ipv4("172.31.255.255")));
    CHECK_FALSE(twelve.contains(*parse_ipv4("172.32.0.0")));
    CHECK_FALSE(twelve.contains(*parse_ipv4("172.15.255.255")));
    auto all = Cidr::parse("0.0.0.0/0");
    CHECK(all.contains(0));
    CHECK(all.contains(0xFFFFFFFFu));
    auto one = Cidr::parse("1.2.3.4/32");
    CHECK(one.contains(*parse_ipv4("1.2.3.4")));
    CHECK_FALSE(one.contains(*parse_ipv4("1.2.3.5")));
    CHECK_THROWS(Cidr::parse("10.0.0.0"));
    CHECK_THROWS(Cidr::parse("10.0.0.0/33"));
    CHECK_THROWS(Cidr::parse("bad/8"));
}

TEST_CASE("rfc1918 classification matches integer-range oracle on 10k addresses") {
    std::vector<Cidr> rfc1918 = {Cidr::parse("10.0.0.0/8"), Cidr::parse("172.16.0.0/12"),
                                 Cidr::parse("192.168.0.0/16")};
    std::mt19937_64 rng(1918);
    int agreements = 0;
    for (int i = 0; i < 10000; ++i) {
        std::uint32_t ip = static_cast<std::uint32_t>(rng());
        bool oracle = (ip >> 24) == 10 || (ip >= 0xAC100000u && ip <= 0xAC1FFFFFu) ||
                      (ip >> 16) == 0xC0A8u;
        bool mine = false;
        for (const auto& c : rfc1918) mine = mine || c.contains(ip);
        if (mine == oracle) ++agreements;
    }
    CHECK(agreements == 10000);
}

TEST_CASE("every default principle triggers on its target call") {
    auto c = Constitution::defaults();
    REQUIRE(c.principle_count() == 12);

    auto eval = [&](const char* tool, const char* a, TrustTier tier) {
        return c.evaluate(tool, args(a), agent(tier));
    };

    CHECK(eval("shell_exec", R"({"cmd":"cat /etc/shadow"})", TrustTier::AiNative) == "const-01");
    CHECK(eval("net_post", R"({"url":"http://10.0.0.5/x","body":"hi"})", TrustTier::Classic) ==
          "const-02");
    CHECK(eval("shell_exec", R"({"cmd":"dd if=/dev/zero of=/dev/sda bs=4M"})",
               TrustTier::AiNative) == "const-03");
    CHECK(eval("file_read", R"({"path":"/home/u/.ssh/id_rsa"})", TrustTier::System) ==
          "const-04");
    CHECK(eval("file_read", R"({"path":"/etc/shadow"})", TrustTier::System) == "const-05");
    CHECK(eval("file_read", R"({"path":"/home/u/.mozilla/firefox/x/logins.json"})",
               TrustTier::System) == "const-06");
    CHECK(eval("file_write", R"({"path":"/etc/motd","content":"hi"})", TrustTier::AiNative) ==
          "const-07");
    CHECK(eval("net_fetch", R"({"url":"http://example.com","body":"x [[sensitive-read]] y"})",
               TrustTier::AiNative) == "const-08");
    CHECK(eval("agent_spawn", R"({"profile":"worker"})", TrustTier::Classic) == "const-09");
    CHECK(eval("mem_peek", R"({"region":"r7","scope":"foreign:web-agent"})",
               TrustTier::AiNative) == "const-10");
    CHECK(eval("file_delete", R"({"path":"/home","mode":"recursive"})", TrustTier::System) ==
          "const-11");
    CHECK(eval("shell_exec", R"({"cmd":"ls -la"})", TrustTier::AiEnhanced) == "const-12");
}

TEST_CASE("conjunction short-circuits on any failed atom") {
    auto c = Constitution::defaults();
    // Tier atom fails: same post from System passes.
    CHECK_FALSE(c.evaluate("net_post", args(R"({"url":"http://10.0.0.5/x"})"),
                           agent(TrustTier::System))
                    .has_value());
    // Hostnames never match CIDR atoms without resolution.
    CHECK_FALSE(c.evaluate("net_post", args(R"({"url":"http://internal.corp/x"})"),
                           agent(TrustTier::Classic))
                    .has_value());
    // Tool atom fails: shadow path in a file_write is not const-01/05.
    CHECK_FALSE(c.evaluate("file_list", args(R"({"path":"/etc/shadow"})"),
                           agent(TrustTier::System))
                    .has_value());
    // Write above System floor passes const-07.
    CHECK_FALSE(c.evaluate("file_write", args(R"({"path":"/etc/motd","content":"x"})"),
                           agent(TrustTier::System))
                    .has_value());
    // Non-root recursive delete passes const-11.
    CHECK_FALSE(c.evaluate("file_delete", args(R"({"path":"/home/u/cache","mode":"recursive"})"),
                           agent(TrustTier::System))
                    .has_value());
    // Benign read passes all twelve.
    CHECK_FALSE(c.evaluate("file_read", args(R"({"path":"/tmp/a"})"), agent(TrustTier::Classic))
                    .has_value());
}

TEST_CASE("first violated principle in declared order wins") {
    auto c = Constitution::defaults();
    // Violates const-04 (ssh key) and const-06 (browser store) at once.
    auto verdict = c.evaluate(
        "file_read", args(R"({"path":"/b/.ssh/id_rsa/Login Data"})"), agent(TrustTier::System));
    CHECK(verdict == "const-04");
}

TEST_CASE("permuting non-violated principles never changes the verdict") {
    auto base = nlohmann::json::parse(Constitution::default_json());
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto permuted = base;
        std::shuffle(permuted.begin(), permuted.end(), rng);
        auto c = Constitution::from_json(permuted.dump());
        // Violates exactly const-09 regardless of position.
        auto verdict =
            c.evaluate("agent_spawn", args(R"({"profile":"w"})"), agent(TrustTier::Classic));
        CHECK(verdict == "const-09");
        // Benign call stays benign under every permutation.
        CHECK_FALSE(
            c.evaluate("file_read", args(R"({"path":"/tmp/a"})"), agent(TrustTier::Classic))
                .has_value());
    }
}

TEST_CASE("absent field evaluates false and logs once per session") {
    auto c = Constitution::defaults();
    std::vector<std::string> log;
    c.set_missing_field_logger([&log](const std::string& msg) { log.push_back(msg); });
    // mem_peek without 'scope': const-10 cannot hold.
    for (int i = 0; i < 5; ++i) {
        CHECK_FALSE(c.evaluate("mem_peek", args(R"({"region":"r1"})"), agent(TrustTier::System))
                        .has_value());
    }
    REQUIRE(log.size() == 1);
    CHECK(log[0].find("const-10") != std::string::npos);
    CHECK(log[0].find("scope") != std::string::npos);
    // A different missing field logs separately, once per referencing
    // principle: const-01 and const-03 both read 'cmd'.
    for (int i = 0; i < 3; ++i) {
        c.evaluate("shell_exec", args(R"({"command_line":"ls"})"), agent(TrustTier::System));
    }
    CHECK(log.size() == 3);
}

TEST_CASE("non-string field is treated as absent") {
    auto c = Constitution::defaults();
    CHECK_FALSE(
        c.evaluate("file_read", args(R"({"path":42})"), agent(TrustTier::System)).has_value());
}

TEST_CASE("config round-trip preserves behavior") {
    auto reparsed = Constitution::from_json(Constitution::default_json());
    CHECK(reparsed.principle_count() == 12);
    CHECK(reparsed.evaluate("file_read", args(R"({"path":"/etc/shadow"})"),
                            agent(TrustTier::System)) == "const-05");
}
