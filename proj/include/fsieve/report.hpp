#pragma once

#include <string>
#include <vector>

namespace fsieve {

struct Check {
    std::string name;
    bool ok = false;
    std::string witness; // first failing witness, or a short note on success
};

struct VerificationReport {
    std::string subject;
    std::vector<Check> checks;

    bool ok() const
    {
        for (const auto & c : checks)
            if (!c.ok)
                return false;
        return true;
    }
    void add(std::string name, bool ok, std::string witness = {})
    {
        checks.push_back({std::move(name), ok, std::move(witness)});
    }
    void merge(const VerificationReport & o, const std::string & prefix = {})
    {
        for (const auto & c : o.checks)
            checks.push_back({prefix + c.name, c.ok, c.witness});
    }
    const Check * first_failure() const
    {
        for (const auto & c : checks)
            if (!c.ok)
                return &c;
        return nullptr;
    }
};

} // namespace fsieve
