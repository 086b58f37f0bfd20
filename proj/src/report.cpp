#include "dsc/report.hpp"

#include <cmath>
#include <cstdio>

namespace dsc {

std::string convention_string() {
    return "time-like coordinates occupy the leading s slots of R^{p+q}; the conformal space is "
           "modeled on null rays of R^{m+3}_2 with the two leading slots time-like (the classical "
           "sigma embeddings are conjugated by a fixed coordinate permutation so their images are "
           "null in this arrangement); normal signs are fixed by a per-chart anchor: largest "
           "magnitude component positive at the chart basepoint, transported through conformal "
           "maps";
}

std::string JsonWriter::format_double(double v) {
    char buf[64];
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e9999" : "-1e9999";
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_in_scope_.back()) out_ += ",";
    first_in_scope_.back() = false;
}

void JsonWriter::begin_object() {
    comma();
    out_ += "{";
    first_in_scope_.push_back(true);
}

void JsonWriter::end_object() {
    out_ += "}";
    first_in_scope_.pop_back();
}

void JsonWriter::begin_array() {
    comma();
    out_ += "[";
    first_in_scope_.push_back(true);
}

void JsonWriter::end_array() {
    out_ += "]";
    first_in_scope_.pop_back();
}

void JsonWriter::key(const std::string& k) {
    comma();
    out_ += "\"" + k + "\":";
    pending_key_ = true;
}

void JsonWriter::value(const std::string& v) {
    comma();
    out_ += "\"";
    for (char c : v) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            default: out_ += c;
        }
    }
    out_ += "\"";
}

void JsonWriter::value(double v) {
    comma();
    out_ += format_double(v);
}

void JsonWriter::value(int v) {
    comma();
    out_ += std::to_string(v);
}

void JsonWriter::value(long long v) {
    comma();
    out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
    comma();
    out_ += v ? "true" : "false";
}

std::string csv_residual_table(const std::vector<std::pair<std::string, ResidualReport>>& per_entry) {
    std::string out = "entry,name,max,tol,pass\n";
    for (const auto& [id, rep] : per_entry)
        for (const auto& r : rep.rows) {
            out += id + "," + r.name + "," + JsonWriter::format_double(r.value) + "," +
                   JsonWriter::format_double(r.tol) + "," + (r.pass ? "true" : "false") + "\n";
        }
    return out;
}

}  // namespace dsc
