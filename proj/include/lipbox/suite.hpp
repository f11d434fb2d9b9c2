#pragma once

#include <string>
#include <vector>

#include "lipbox/instance.hpp"

namespace lipbox {

// One identity evaluated along two independent paths.
struct SuiteCheck {
    std::string section;  // s2 operators, s3 integral, s4 summing
    std::string name;
    std::string subject;
    bool passed = false;
    std::string left;
    std::string right;
    std::string detail;
    double seconds = 0;
};

struct SuiteReport {
    std::vector<SuiteCheck> checks;
    bool passed() const;
    std::size_t failures() const;
};

// suite: "all", "s2", "s3" or "s4".
SuiteReport verify_suite(const InstanceSet& instance, const std::string& suite = "all", const Caps& caps = {});

// X3 = {0,a,b} on a line, X3' with a, b on opposite sides of 0, l1^2 and
// linf^2, with fixed operators, maps, tensors and the Dvoretzky-Rogers
// bilinear form.
InstanceSet builtin_instances();

}  // namespace lipbox
