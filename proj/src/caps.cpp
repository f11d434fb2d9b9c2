#include "lipbox/caps.hpp"

#include <cstdlib>
#include <string>

#include "lipbox/error.hpp"

namespace lipbox {

namespace {

void read(const char* name, std::size_t& target) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size() || v == 0) throw std::invalid_argument(raw);
        target = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw InvalidInput(std::string("environment variable ") + name + " must be a positive integer");
    }
}

}  // namespace

namespace detail {
CapDefaults& cap_defaults() {
    static CapDefaults d;
    return d;
}
}  // namespace detail

void Caps::set_defaults(const Caps& caps) {
    auto& d = detail::cap_defaults();
    d.points = caps.points;
    d.dim = caps.dim;
    d.ambient_dim = caps.ambient_dim;
    d.vertices = caps.vertices;
    d.iterations = caps.iterations;
}

Caps Caps::from_environment() {
    const detail::CapDefaults builtin;
    Caps caps;
    caps.points = builtin.points;
    caps.dim = builtin.dim;
    caps.ambient_dim = builtin.ambient_dim;
    caps.vertices = builtin.vertices;
    caps.iterations = builtin.iterations;
    read("LIPBOX_CAP_POINTS", caps.points);
    read("LIPBOX_CAP_DIM", caps.dim);
    read("LIPBOX_CAP_VERTICES", caps.vertices);
    read("LIPBOX_CAP_ITERS", caps.iterations);
    return caps;
}

}  // namespace lipbox
