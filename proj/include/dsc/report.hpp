#pragma once

#include <map>
#include <string>
#include <vector>

#include "dsc/residual.hpp"

namespace dsc {

inline constexpr const char* kToolName = "dscheck";
inline constexpr const char* kToolVersion = "0.1.0";

/// Convention statement printed in every report header.
std::string convention_string();

/// Minimal JSON writer with deterministic formatting: every floating value is
/// emitted with 17 significant digits, so identical runs produce identical
/// bytes.
class JsonWriter {
public:
    std::string str() const { return out_; }

    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& k);
    void value(const std::string& v);
    void value(double v);
    void value(int v);
    void value(long long v);
    void value(bool v);

    void kv(const std::string& k, const std::string& v) { key(k); value(v); }
    void kv(const std::string& k, double v) { key(k); value(v); }
    void kv(const std::string& k, int v) { key(k); value(v); }
    void kv(const std::string& k, bool v) { key(k); value(v); }

    static std::string format_double(double v);

private:
    std::string out_;
    std::vector<bool> first_in_scope_{true};
    bool pending_key_ = false;

    void comma();
};

std::string csv_residual_table(const std::vector<std::pair<std::string, ResidualReport>>& per_entry);

}  // namespace dsc
