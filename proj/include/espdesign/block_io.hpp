/**
 * @file block_io.hpp
 * @brief Block-set files: {q, k, family, num_blocks, blocks: [[i1..ik], ...]}.
 *
 * Indices are discrete logs base beta. Writers emit one block per line; readers insist on
 * strictly increasing inner lists and a lexicographically sorted outer list.
 */
#pragma once

#include <algorithm>
#include <fstream>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "block.hpp"

namespace espd {

/// Malformed block-set input; `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

namespace details {

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Line of the `index`-th array nested two levels deep under the "blocks" key (0 if not found).
inline std::size_t line_of_block(const std::string& text, std::size_t index) {
    const auto key = text.find("\"blocks\"");
    if (key == std::string::npos) return 0;
    int depth = 0;
    std::size_t seen = 0;
    bool in_string = false;
    for (std::size_t i = key + 8; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\')
                ++i;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        if (c == '[') {
            if (++depth == 2) {
                if (seen == index) return line_of_offset(text, i);
                ++seen;
            }
        } else if (c == ']') {
            if (--depth == 0) return 0;
        }
    }
    return 0;
}

}  // namespace details

inline nlohmann::ordered_json blockset_to_json(const BlockSet& bs) {
    nlohmann::ordered_json j;
    j["q"] = bs.q();
    j["k"] = bs.k();
    j["family"] = bs.family();
    j["num_blocks"] = bs.size();
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < bs.size(); ++i) {
        auto b = nlohmann::ordered_json::array();
        for (Point p : bs[i]) b.push_back(static_cast<int>(p));
        arr.push_back(std::move(b));
    }
    j["blocks"] = std::move(arr);
    return j;
}

inline void write_blockset(std::ostream& os, const BlockSet& bs) {
    os << "{\n  \"q\": " << bs.q() << ",\n  \"k\": " << bs.k() << ",\n  \"family\": " << nlohmann::json(bs.family()).dump()
       << ",\n  \"num_blocks\": " << bs.size() << ",\n  \"blocks\": [";
    for (std::size_t i = 0; i < bs.size(); ++i) {
        os << (i ? ",\n    [" : "\n    [");
        auto b = bs[i];
        for (std::size_t j = 0; j < b.size(); ++j) os << (j ? "," : "") << static_cast<int>(b[j]);
        os << ']';
    }
    os << (bs.size() ? "\n  ]\n}\n" : "]\n}\n");
}

inline void write_blockset_file(const std::string& path, const BlockSet& bs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_blockset(out, bs);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline BlockSet parse_blockset(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), details::line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    auto field = [&](const char* name) -> const nlohmann::json& {
        if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'", 1);
        return j.at(name);
    };
    const auto& jq = field("q");
    const auto& jk = field("k");
    const auto& jblocks = field("blocks");
    if (!jq.is_number_integer() || !jk.is_number_integer()) throw ParseError("q and k must be integers", 1);
    if (!jblocks.is_array()) throw ParseError("'blocks' must be an array", 1);
    const int q = jq.get<int>(), k = jk.get<int>();
    if (q < 1 || q > 127 || k < 0 || k > q + 1) throw ParseError("q or k out of range", 1);
    const std::string family = j.contains("family") && j["family"].is_string() ? j["family"].get<std::string>() : std::string();

    BlockSet bs(q + 1, k, family);
    bs.reserve(jblocks.size());
    std::vector<Point> b(static_cast<std::size_t>(k)), prev;
    for (std::size_t i = 0; i < jblocks.size(); ++i) {
        const auto& jb = jblocks[i];
        auto fail = [&](const std::string& why) { throw ParseError("block " + std::to_string(i) + ": " + why, details::line_of_block(text, i)); };
        if (!jb.is_array() || jb.size() != static_cast<std::size_t>(k)) fail("expected a list of " + std::to_string(k) + " indices");
        for (std::size_t t = 0; t < jb.size(); ++t) {
            if (!jb[t].is_number_integer()) fail("index is not an integer");
            const long v = jb[t].get<long>();
            if (v < 0 || v > q) fail("index " + std::to_string(v) + " outside 0.." + std::to_string(q));
            b[t] = static_cast<Point>(v);
            if (t > 0 && b[t] <= b[t - 1]) fail("indices not strictly increasing");
        }
        if (i > 0 && !BlockSet::less(prev, b)) fail("blocks not in strictly increasing lexicographic order");
        bs.append(b);
        prev = b;
    }
    if (j.contains("num_blocks")) {
        const auto& jn = j["num_blocks"];
        if (!jn.is_number_unsigned() || jn.get<std::size_t>() != bs.size())
            throw ParseError("num_blocks does not match the number of listed blocks", details::line_of_offset(text, text.find("\"num_blocks\"")));
    }
    return bs;
}

inline BlockSet read_blockset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_blockset(ss.str());
}

}  // namespace espd
