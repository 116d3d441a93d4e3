#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plectic {

// An ordered list of coordinate names.  Charts compare by value; every
// geometric object carries the chart it lives on.
class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw std::invalid_argument("chart needs at least one coordinate");
        std::set<std::string> seen;
        for (const auto& n : names_) {
            if (n.empty()) throw std::invalid_argument("empty coordinate name");
            if (!seen.insert(n).second)
                throw std::invalid_argument("duplicate coordinate name '" + n + "'");
        }
    }

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }

    std::optional<int> index(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return std::nullopt;
    }

    bool operator==(const Chart& o) const { return names_ == o.names_; }
    bool operator!=(const Chart& o) const { return !(*this == o); }

private:
    std::vector<std::string> names_;
};

inline void require_same_chart(const Chart& a, const Chart& b, const char* op) {
    if (a != b) throw std::invalid_argument(std::string(op) + ": chart mismatch");
}

}  // namespace plectic
