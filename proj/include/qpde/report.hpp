#pragma once

#include <string>
#include <vector>

namespace qpde {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

class Report {
public:
    void add(std::string name, bool pass, std::string detail = {}) {
        items_.push_back({std::move(name), pass, std::move(detail)});
    }
    void append(const Report& other, const std::string& prefix = {}) {
        for (const auto& c : other.items_) items_.push_back({prefix + c.name, c.pass, c.detail});
    }
    bool all_passed() const {
        for (const auto& c : items_)
            if (!c.pass) return false;
        return true;
    }
    const std::vector<CheckResult>& items() const { return items_; }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& c : items_)
            if (!c.pass) out.push_back(c.name);
        return out;
    }

private:
    std::vector<CheckResult> items_;
};

}  // namespace qpde
