#pragma once

#include <cstddef>

namespace lipbox {

namespace detail {
struct CapDefaults {
    std::size_t points = 8;
    std::size_t dim = 6;
    std::size_t ambient_dim = 10;
    std::size_t vertices = 100000;
    std::size_t iterations = 200;
};
CapDefaults& cap_defaults();
}  // namespace detail

// Size limits shared by every computation. A default-constructed Caps reads
// the process-wide defaults, which the CLI sets from flags and LIPBOX_CAP_*
// environment variables.
struct Caps {
    std::size_t points = detail::cap_defaults().points;            // |X| for any finite metric space
    std::size_t dim = detail::cap_defaults().dim;                  // dimension of a polyhedral norm
    std::size_t ambient_dim = detail::cap_defaults().ambient_dim;  // ambient dimension handed to vertex enumeration
    std::size_t vertices = detail::cap_defaults().vertices;        // vertex / ray count during enumeration
    std::size_t iterations = detail::cap_defaults().iterations;    // constraint-generation rounds

    // Built-in limits overridden by the environment.
    static Caps from_environment();
    static void set_defaults(const Caps& caps);
};

}  // namespace lipbox
