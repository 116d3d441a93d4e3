#pragma once

// Deterministic check reports: one entry per verified identity, printed
// byte-identically for identical inputs and seeds.

#include "plectic/normal_form.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace plectic {

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

inline std::string format_point(const Point& p) {
    if (p.empty()) return "-";
    std::string s;
    for (const auto& [k, v] : p) {
        if (!s.empty()) s += ",";
        s += k + "=" + format_double(v);
    }
    return s;
}

}  // namespace detail

struct CheckEntry {
    std::string id;
    ZeroVerdict verdict;
    std::string note;

    std::string line(const std::string& key = "check") const {
        std::string s = key + "=" + id + " status=" + verdict.status() +
                        " max_residual=" + detail::format_double(verdict.max_abs) +
                        " witness=" + detail::format_point(verdict.witness);
        if (!note.empty()) s += " note=" + note;
        return s;
    }
};

struct CheckReport {
    std::string suite;
    std::vector<CheckEntry> entries;
    std::string entry_key = "check";

    bool passed() const {
        for (const auto& e : entries)
            if (!e.verdict.ok()) return false;
        return true;
    }

    void add(std::string id, ZeroVerdict v) {
        CheckEntry e;
        e.id = std::move(id);
        e.verdict = std::move(v);
        entries.push_back(std::move(e));
    }

    void merge_into(std::string id, const ZeroVerdict& v) {
        for (auto& e : entries)
            if (e.id == id) {
                e.verdict.merge(v);
                return;
            }
        add(std::move(id), v);
    }

    std::string to_string() const {
        std::string s = "[" + suite + "]\n";
        for (const auto& e : entries) s += e.line(entry_key) + "\n";
        s += std::string(passed() ? "PASS" : "FAIL") + " " + suite + "\n";
        return s;
    }
};

}  // namespace plectic
