#include "common.hpp"

#include <cctype>
#include <sstream>

namespace tdc::cli {

Bits hex_to_bits(const std::string& hex, std::size_t width) {
    std::string h = hex;
    if (h.rfind("0x", 0) == 0 || h.rfind("0X", 0) == 0) h = h.substr(2);
    if (h.empty()) throw UsageError("empty hex data");
    BigInt v = 0;
    for (char c : h) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) throw UsageError("bad hex digit '" + std::string(1, c) + "'");
        const int d = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : std::tolower(c) - 'a' + 10;
        v = (v << 4) | d;
    }
    if (v >= (BigInt(1) << width))
        throw UsageError("data does not fit in " + std::to_string(width) + " bits");
    Bits out(width);
    for (std::size_t i = 0; i < width; ++i) out[width - 1 - i] = boost::multiprecision::bit_test(v, static_cast<unsigned>(i));
    return out;
}

std::string bits_to_hex(const Bits& bits) {
    BigInt v = 0;
    for (bool b : bits) v = (v << 1) | (b ? 1 : 0);
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

std::vector<EditKind> parse_kinds(const std::string& csv) {
    std::vector<EditKind> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "sub") out.push_back(EditKind::Substitution);
        else if (tok == "ins") out.push_back(EditKind::Insertion);
        else if (tok == "del") out.push_back(EditKind::Deletion);
        else throw UsageError("unknown edit kind '" + tok + "' (use sub, ins, del)");
    }
    if (out.empty()) throw UsageError("no edit kinds given");
    return out;
}

std::string kinds_to_string(const std::vector<EditKind>& kinds) {
    std::string s;
    for (EditKind k : kinds) {
        if (!s.empty()) s += ',';
        s += k == EditKind::Substitution ? "sub" : k == EditKind::Insertion ? "ins" : "del";
    }
    return s;
}

Json aux_to_json(const AuxParams& a) {
    Json j;
    j["q"] = a.q;
    j["sigma"] = to_string(a.sigma, a.q);
    j["m"] = a.m;
    j["p_tilde"] = a.p_tilde;
    j["T"] = a.T;
    j["N_hat"] = a.N_hat;
    j["gamma"] = a.gamma;
    j["L"] = a.L;
    j["capacity_bits"] = a.capacity_bits();
    j["codeword_length"] = a.codeword_length();
    return j;
}

}  // namespace tdc::cli
