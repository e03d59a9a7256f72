#pragma once

// Minimal CSV emission: '.' decimal point, 17 significant digits (value-
// preserving for doubles), RFC-4180 quoting for fields that need it.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "sumopt/core.hpp"

namespace sumopt::csv {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw ConfigError("cannot open output file '" + path + "'");
        path_ = path;
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << quote_if_needed(fields[i]);
        }
        out_ << '\n';
        if (!out_) throw ConfigError("write failed on '" + path_ + "'");
    }

private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace sumopt::csv
