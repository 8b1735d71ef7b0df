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

#include "mcpgate/linear_regex.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace mcpgate {

namespace {

inline std::uint8_t fold(std::uint8_t c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<std::uint8_t>(c - 'A' + 'a') : c;
}

void fill_class_escape(std::bitset<256>& set, char e) {
    switch (e) {
        case 'd':
            for (int c = '0'; c <= '9'; ++c) set.set(c);
            break;
        case 'w':
            for (int c = '0'; c <= '9'; ++c) set.set(c);
            for (int c = 'a'; c <= 'z'; ++c) set.set(c);
            for (int c = 'A'; c <= 'Z'; ++c) set.set(c);
            set.set('_');
            break;
        case 's':
            set.set(' ');
            set.set('\t');
            set.set('\n');
            set.set('\r');
            set.set('\f');
            set.set('\v');
            break;
        default: throw std::invalid_argument(std::string("unsupported class escape \\") + e);
    }
}

std::uint8_t literal_escape(char e) {
    switch (e) {
        case 'n': return '\n';
        case 't': return '\t';
        case 'r': return '\r';
        case '0': return '\0';
        default:
            if (std::isalnum(static_cast<unsigned char>(e))) {
                throw std::invalid_argument(std::string("unsupported escape \\") + e);
            }
            return static_cast<std::uint8_t>(e);  // escaped punctuation
    }
}

}  // namespace

// Recursive-descent parser building Thompson fragments over an explicit
// state vector. Dangling fragment outputs are (state, which-arm) pairs
// patched when the fragment is connected.
class Parser {
  public:
    Parser(std::string_view pattern, std::vector<LinearRegex::State>* states,
           std::vector<std::bitset<256>>* classes, bool fold_case)
        : pattern_(pattern), states_(*states), classes_(*classes), fold_(fold_case) {}

    // Returns the start state; appends an Accept state patched to the end.
    int parse_all() {
        Frag frag = parse_alternation();
        if (pos_ != pattern_.size()) {
            throw std::invalid_argument("unexpected '" + std::string(1, pattern_[pos_]) +
                                        "' at offset " + std::to_string(pos_));
        }
        int accept = add_state(Kind::Accept);
        patch(frag.dangling, accept);
        return frag.start;
    }

  private:
    using Kind = LinearRegex::Kind;
    using Dangling = std::vector<std::pair<int, int>>;  // (state, arm 0|1)

    struct Frag {
        int start;
        Dangling dangling;
    };

    int add_state(Kind kind) {
        states_.push_back(LinearRegex::State{kind});
        return static_cast<int>(states_.size()) - 1;
    }

    void patch(const Dangling& list, int target) {
        for (auto [s, arm] : list) {
            (arm == 0 ? states_[s].out : states_[s].out1) = target;
        }
    }

    bool eof() const { return pos_ >= pattern_.size(); }
    char peek() const { return pattern_[pos_]; }

    Frag parse_alternation() {
        Frag left = parse_concat();
        while (!eof() && peek() == '|') {
            ++pos_;
            Frag right = parse_concat();
            int split = add_state(Kind::Split);
            states_[split].out = left.start;
            states_[split].out1 = right.start;
            Dangling dangling = std::move(left.dangling);
            dangling.insert(dangling.end(), right.dangling.begin(), right.dangling.end());
            left = Frag{split, std::move(dangling)};
        }
        return left;
    }

    Frag parse_concat() {
        Frag result{-1, {}};
        while (!eof() && peek() != '|' && peek() != ')') {
            Frag piece = parse_repeat();
            if (result.start < 0) {
                result = std::move(piece);
            } else {
                patch(result.dangling, piece.start);
                result.dangling = std::move(piece.dangling);
            }
        }
        if (result.start < 0) {
            // Empty branch: a Split with both arms dangling to the same place
            // would accept eagerly; model it as an epsilon via a Split whose
            // second arm is unused.
            int s = add_state(Kind::Split);
            states_[s].out1 = -2;  // sentinel: arm intentionally dead
            return Frag{s, {{s, 0}}};
        }
        return result;
    }

    Frag parse_repeat() {
        Frag atom = parse_atom();
        if (eof()) return atom;
        char op = peek();
        if (op == '*') {
            ++pos_;
            int split = add_state(Kind::Split);
            states_[split].out = atom.start;
            patch(atom.dangling, split);
            return Frag{split, {{split, 1}}};
        }
        if (op == '+') {
            ++pos_;
            int split = add_state(Kind::Split);
            states_[split].out = atom.start;
            patch(atom.dangling, split);
            return Frag{atom.start, {{split, 1}}};
        }
        if (op == '?') {
            ++pos_;
            int split = add_state(Kind::Split);
            states_[split].out = atom.start;
            Dangling dangling = std::move(atom.dangling);
            dangling.emplace_back(split, 1);
            return Frag{split, std::move(dangling)};
        }
        return atom;
    }

    Frag parse_atom() {
        if (eof()) throw std::invalid_argument("pattern ends where an atom is required");
        char c = peek();
        if (c == '(') {
            ++pos_;
            Frag inner = parse_alternation();
            if (eof() || peek() != ')') throw std::invalid_argument("unbalanced '('");
            ++pos_;
            return inner;
        }
        if (c == '[') return parse_class();
        if (c == '.') {
            ++pos_;
            int s = add_state(Kind::Any);
            return Frag{s, {{s, 0}}};
        }
        if (c == '^') {
            ++pos_;
            int s = add_state(Kind::Bol);
            return Frag{s, {{s, 0}}};
        }
        if (c == '$') {
            ++pos_;
            int s = add_state(Kind::Eol);
            return Frag{s, {{s, 0}}};
        }
        if (c == '\\') return parse_escape();
        if (c == '*' || c == '+' || c == '?' || c == ')') {
            throw std::invalid_argument(std::string("misplaced '") + c + "'");
        }
        ++pos_;
        return make_byte(static_cast<std::uint8_t>(c));
    }

    Frag parse_escape() {
        ++pos_;  // consume backslash
        if (eof()) throw std::invalid_argument("trailing backslash");
        char e = pattern_[pos_++];
        if (e == 'd' || e == 'w' || e == 's') {
            std::bitset<256> set;
            fill_class_escape(set, e);
            return make_class(set);
        }
        return make_byte(literal_escape(e));
    }

    Frag parse_class() {
        ++pos_;  // consume '['
        bool negate = false;
        if (!eof() && peek() == '^') {
            negate = true;
            ++pos_;
        }
        std::bitset<256> set;
        bool first = true;
        while (true) {
            if (eof()) throw std::invalid_argument("unterminated character class");
            char c = pattern_[pos_];
            if (c == ']' && !first) {
                ++pos_;
                break;
            }
            first = false;
            std::uint8_t lo;
            if (c == '\\') {
                ++pos_;
                if (eof()) throw std::invalid_argument("trailing backslash in class");
                char e = pattern_[pos_++];
                if (e == 'd' || e == 'w' || e == 's') {
                    fill_class_escape(set, e);
                    continue;
                }
                lo = literal_escape(e);
            } else {
                lo = static_cast<std::uint8_t>(c);
                ++pos_;
            }
            std::uint8_t hi = lo;
            if (!eof() && peek() == '-' && pos_ + 1 < pattern_.size() &&
                pattern_[pos_ + 1] != ']') {
                pos_ += 2;
                char hc = pattern_[pos_ - 1];
                if (hc == '\\') {
                    if (eof()) throw std::invalid_argument("trailing backslash in class");
                    hi = literal_escape(pattern_[pos_++]);
                } else {
                    hi = static_cast<std::uint8_t>(hc);
                }
                if (hi < lo) throw std::invalid_argument("inverted class range");
            }
            for (int b = lo; b <= hi; ++b) set.set(b);
        }
        if (fold_) {
            for (int b = 'A'; b <= 'Z'; ++b) {
                if (set.test(b)) set.set(b - 'A' + 'a');
                if (set.test(b - 'A' + 'a')) set.set(b);
            }
        }
        if (negate) set.flip();
        return make_class(set);
    }

    Frag make_byte(std::uint8_t byte) {
        if (fold_ && byte >= 'A' && byte <= 'Z') byte = fold(byte);
        int s = add_state(Kind::Byte);
        states_[s].byte = byte;
        return Frag{s, {{s, 0}}};
    }

    Frag make_class(const std::bitset<256>& set) {
        classes_.push_back(set);
        int s = add_state(Kind::Class);
        states_[s].class_idx = static_cast<std::uint16_t>(classes_.size() - 1);
        return Frag{s, {{s, 0}}};
    }

    std::string_view pattern_;
    std::vector<LinearRegex::State>& states_;
    std::vector<std::bitset<256>>& classes_;
    bool fold_;
    std::size_t pos_ = 0;
};

LinearRegex LinearRegex::compile(std::string_view pattern) {
    LinearRegex re;
    if (pattern.substr(0, 4) == "(?i)") {
        re.fold_case_ = true;
        pattern.remove_prefix(4);
    }
    Parser parser(pattern, &re.states_, &re.classes_, re.fold_case_);
    re.start_ = parser.parse_all();
    return re;
}

// Pike-style simulation. Threads carry the index where their attempt began;
// lists keep at most one thread per state, and because threads are added in
// ascending begin order the first claim of a state is the leftmost.
struct LinearRegex::SimLists {
    std::vector<int> seen_stamp;
    std::vector<int> thread_state;
    std::vector<std::size_t> thread_begin;
    int stamp = 0;
    std::size_t accept_begin = 0;
    bool accepted = false;

    explicit SimLists(std::size_t n) : seen_stamp(n, -1) {}

    void reset() {
        ++stamp;
        thread_state.clear();
        thread_begin.clear();
        accepted = false;
    }
};

void LinearRegex::add_thread(SimLists& list, int state, std::size_t begin, std::size_t pos,
                             std::size_t text_len) const {
    if (state < 0) return;  // dead arm sentinel
    if (list.seen_stamp[state] == list.stamp) return;
    list.seen_stamp[state] = list.stamp;
    const State& s = states_[state];
    switch (s.kind) {
        case Kind::Split:
            add_thread(list, s.out, begin, pos, text_len);
            add_thread(list, s.out1, begin, pos, text_len);
            return;
        case Kind::Bol:
            if (pos == 0) add_thread(list, s.out, begin, pos, text_len);
            return;
        case Kind::Eol:
            if (pos == text_len) add_thread(list, s.out, begin, pos, text_len);
            return;
        case Kind::Accept:
            if (!list.accepted) {
                list.accepted = true;
                list.accept_begin = begin;
            }
            return;
        default:
            list.thread_state.push_back(state);
            list.thread_begin.push_back(begin);
            return;
    }
}

std::optional<LinearRegex::Match> LinearRegex::search(std::string_view text) const {
    SimLists current(states_.size());
    SimLists next(states_.size());
    current.reset();

    std::optional<Match> best;
    add_thread(current, start_, 0, 0, text.size());
    if (current.accepted) best = Match{current.accept_begin, 0};

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        if (current.thread_state.empty() && best) break;
        // Leftmost preference: a candidate can only be displaced by a thread
        // that started earlier, so stop once no live thread precedes it.
        if (best && (current.thread_state.empty() || current.thread_begin.front() >= best->begin)) {
            break;
        }
        std::uint8_t c = static_cast<std::uint8_t>(text[pos]);
        if (fold_case_) c = fold(c);
        next.reset();
        for (std::size_t t = 0; t < current.thread_state.size(); ++t) {
            const State& s = states_[current.thread_state[t]];
            bool ok = false;
            if (s.kind == Kind::Byte) {
                ok = (s.byte == c);
            } else if (s.kind == Kind::Class) {
                // Classes are case-closed at compile time under (?i), so the
                // folded byte is the only lookup needed.
                ok = classes_[s.class_idx].test(c);
            } else if (s.kind == Kind::Any) {
                ok = (c != '\n');
            }
            if (ok) add_thread(next, s.out, current.thread_begin[t], pos + 1, text.size());
        }
        // New attempts start after existing threads so earlier begins keep
        // priority; once a match exists no new attempt can beat it.
        if (!best) add_thread(next, start_, pos + 1, pos + 1, text.size());
        if (next.accepted) {
            if (!best || next.accept_begin < best->begin) {
                best = Match{next.accept_begin, pos + 1};
            }
        }
        std::swap(current, next);
    }
    return best;
}

}  // namespace mcpgate
