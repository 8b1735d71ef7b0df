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

#include <bitset>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mcpgate {

// Thompson-construction NFA matcher: worst-case O(text x pattern), no
// backtracking. The prefilter's linearity guarantee rests on this engine, so
// a backtracking std::regex must never be substituted here.
//
// Supported syntax: literals, '.', '^', '$', '|', '(...)', '*', '+', '?',
// classes [a-z0-9_] with ranges and '^' negation, escapes
// \d \w \s \n \t \r and escaped punctuation, and a leading (?i) flag for
// whole-pattern ASCII case-insensitivity.
//
// search() returns the leftmost match; among matches at the same start, the
// shortest. That is all hit reporting needs; greedy capture semantics are
// out of scope.
class LinearRegex {
  public:
    struct Match {
        std::size_t begin;
        std::size_t end;  // half-open
    };

    // Throws std::invalid_argument on unsupported or malformed syntax.
    static LinearRegex compile(std::string_view pattern);

    std::optional<Match> search(std::string_view text) const;
    bool matches(std::string_view text) const { return search(text).has_value(); }

    enum class Kind : std::uint8_t { Byte, Class, Any, Split, Bol, Eol, Accept };

    struct State {
        Kind kind;
        std::uint8_t byte = 0;        // Kind::Byte
        std::uint16_t class_idx = 0;  // Kind::Class
        int out = -1;
        int out1 = -1;
    };

  private:
    friend class Parser;

    LinearRegex() = default;

    struct SimLists;
    void add_thread(SimLists& list, int state, std::size_t begin, std::size_t pos,
                    std::size_t text_len) const;

    std::vector<State> states_;
    std::vector<std::bitset<256>> classes_;
    int start_ = 0;
    bool fold_case_ = false;
};

}  // namespace mcpgate
