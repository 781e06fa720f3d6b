#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdc/codec.hpp"

namespace tdc::cli {

using Json = nlohmann::ordered_json;

// Bad flags or malformed input; reported with exit status 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Bits hex_to_bits(const std::string& hex, std::size_t width);
std::string bits_to_hex(const Bits& bits);
std::vector<EditKind> parse_kinds(const std::string& csv);
std::string kinds_to_string(const std::vector<EditKind>& kinds);
Json aux_to_json(const AuxParams& a);

}  // namespace tdc::cli
