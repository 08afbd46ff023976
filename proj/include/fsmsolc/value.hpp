#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fsmsolc {

// Unsigned 256-bit integer with checked arithmetic. Overflow, underflow and
// negative results throw (std::overflow_error / std::range_error); the
// interpreter maps those onto the R_OVERFLOW rejection.
using u256 = boost::multiprecision::checked_uint256_t;

inline std::string u256_str(const u256& v) { return v.str(); }

// Parses a decimal or 0x-prefixed hex literal. Throws std::invalid_argument
// on malformed input or values above 2^256 - 1.
inline u256 parse_u256(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    for (std::size_t i = (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) ? 2 : 0;
         i < text.size(); ++i) {
        char c = text[i];
        bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
        bool ok = (c >= '0' && c <= '9') ||
                  (hex && ((c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F')));
        if (!ok) throw std::invalid_argument("malformed integer literal: " + text);
    }
    try {
        return u256(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("integer literal out of range: " + text);
    }
}

inline std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Runtime value of the interpretable core. A tagged struct rather than a
// std::variant so the type can nest inside its own containers. Unused
// payload members always hold their default value, which keeps the defaulted
// equality operator honest.
//
// Canonical-form invariants:
//  - mapping entries are sorted by key and never hold zero values (writing a
//    zero erases the key), so semantically equal stores compare equal;
//  - address tokens are lowercased.
struct Value {
    enum class Kind { Uint, Bool, Address, Bytes, Struct, Array, Mapping };

    Kind kind = Kind::Uint;
    u256 uintVal = 0;
    bool boolVal = false;
    std::string strVal;                                   // Address token or Bytes payload
    std::vector<std::pair<std::string, Value>> fields;    // Struct fields / Mapping entries
    std::vector<Value> elems;                             // Array elements

    bool operator==(const Value&) const = default;

    static Value uint(u256 v) {
        Value r;
        r.kind = Kind::Uint;
        r.uintVal = std::move(v);
        return r;
    }
    static Value boolean(bool b) {
        Value r;
        r.kind = Kind::Bool;
        r.boolVal = b;
        return r;
    }
    static Value address(std::string token) {
        Value r;
        r.kind = Kind::Address;
        r.strVal = lowercase(std::move(token));
        // Canonicalize hex addresses so 0x00 and 0x0 compare equal.
        if (r.strVal.rfind("0x", 0) == 0 && r.strVal.size() > 3) {
            std::size_t firstDigit = 2;
            while (firstDigit + 1 < r.strVal.size() && r.strVal[firstDigit] == '0') ++firstDigit;
            r.strVal = "0x" + r.strVal.substr(firstDigit);
        }
        return r;
    }
    static Value bytes(std::string payload) {
        Value r;
        r.kind = Kind::Bytes;
        r.strVal = std::move(payload);
        return r;
    }
    static Value struct_(std::vector<std::pair<std::string, Value>> fs) {
        Value r;
        r.kind = Kind::Struct;
        r.fields = std::move(fs);
        return r;
    }
    static Value array() {
        Value r;
        r.kind = Kind::Array;
        return r;
    }
    static Value mapping() {
        Value r;
        r.kind = Kind::Mapping;
        return r;
    }

    bool is_zero() const {
        switch (kind) {
            case Kind::Uint: return uintVal == 0;
            case Kind::Bool: return !boolVal;
            case Kind::Address: return strVal == "0x0" || strVal.empty();
            case Kind::Bytes: return strVal.empty();
            case Kind::Struct:
                return std::all_of(fields.begin(), fields.end(),
                                   [](const auto& f) { return f.second.is_zero(); });
            case Kind::Array: return elems.empty();
            case Kind::Mapping: return fields.empty();
        }
        return false;
    }

    // Canonical key encoding for mapping lookups.
    std::string key_repr() const {
        switch (kind) {
            case Kind::Uint: return "u:" + u256_str(uintVal);
            case Kind::Bool: return boolVal ? "b:1" : "b:0";
            case Kind::Address: return "a:" + strVal;
            case Kind::Bytes: return "y:" + strVal;
            default: throw std::invalid_argument("value cannot be used as a mapping key");
        }
    }

    const Value* mapping_find(const std::string& key) const {
        auto it = std::lower_bound(fields.begin(), fields.end(), key,
                                   [](const auto& f, const std::string& k) { return f.first < k; });
        if (it != fields.end() && it->first == key) return &it->second;
        return nullptr;
    }

    void mapping_set(const std::string& key, Value v) {
        auto it = std::lower_bound(fields.begin(), fields.end(), key,
                                   [](const auto& f, const std::string& k) { return f.first < k; });
        if (v.is_zero()) {
            if (it != fields.end() && it->first == key) fields.erase(it);
            return;
        }
        if (it != fields.end() && it->first == key) {
            it->second = std::move(v);
        } else {
            fields.insert(it, {key, std::move(v)});
        }
    }

    // Existing-or-inserted entry, kept even when zero; callers that may leave
    // a zero behind re-canonicalize afterwards.
    Value* mapping_slot(const std::string& key, Value zeroIfAbsent) {
        auto it = std::lower_bound(fields.begin(), fields.end(), key,
                                   [](const auto& f, const std::string& k) { return f.first < k; });
        if (it == fields.end() || it->first != key)
            it = fields.insert(it, {key, std::move(zeroIfAbsent)});
        return &it->second;
    }

    Value* struct_field(const std::string& name) {
        for (auto& f : fields)
            if (f.first == name) return &f.second;
        return nullptr;
    }
    const Value* struct_field(const std::string& name) const {
        for (const auto& f : fields)
            if (f.first == name) return &f.second;
        return nullptr;
    }

    // Human-readable rendering used by traces and state dumps.
    std::string display() const {
        switch (kind) {
            case Kind::Uint: return u256_str(uintVal);
            case Kind::Bool: return boolVal ? "true" : "false";
            case Kind::Address: return strVal.empty() ? "0x0" : strVal;
            case Kind::Bytes: return "\"" + strVal + "\"";
            case Kind::Struct: {
                std::string out = "{";
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (i) out += ", ";
                    out += fields[i].first + ": " + fields[i].second.display();
                }
                return out + "}";
            }
            case Kind::Array: {
                std::string out = "[";
                for (std::size_t i = 0; i < elems.size(); ++i) {
                    if (i) out += ", ";
                    out += elems[i].display();
                }
                return out + "]";
            }
            case Kind::Mapping: {
                std::string out = "{";
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (i) out += ", ";
                    // strip the one-character type prefix from the key repr
                    out += fields[i].first.substr(2) + " => " + fields[i].second.display();
                }
                return out + "}";
            }
        }
        return "?";
    }
};

}  // namespace fsmsolc
