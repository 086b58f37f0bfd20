#pragma once

#include <string>
#include <vector>

#include "dsc/common.hpp"

namespace dsc {

struct Residual {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct ResidualReport {
    std::vector<Residual> rows;

    void add(const std::string& name, double value, double tol) {
        rows.push_back({name, value, tol, value <= tol});
    }
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
    const Residual& get(const std::string& name) const {
        for (const auto& r : rows)
            if (r.name == name) return r;
        fail("residual not found: " + name);
    }
    bool has(const std::string& name) const {
        for (const auto& r : rows)
            if (r.name == name) return true;
        return false;
    }
    void merge_max(const ResidualReport& other) {
        for (const auto& r : other.rows) {
            bool found = false;
            for (auto& mine : rows) {
                if (mine.name == r.name) {
                    if (r.value > mine.value) mine.value = r.value;
                    mine.pass = mine.value <= mine.tol;
                    found = true;
                    break;
                }
            }
            if (!found) rows.push_back(r);
        }
    }
};

}  // namespace dsc
