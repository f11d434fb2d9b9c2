#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lipbox/error.hpp"
#include "lipbox/operators.hpp"
#include "lipbox/summing.hpp"

namespace lipbox {

// Objects of an instance file refer to spaces and norms by name; the names
// are kept so that emit(parse(text)) reproduces the file.
struct NormEntry {
    std::string shorthand;  // "l1:n" / "linf:n", or empty for an explicit list
    PolyhedralNorm norm;
};

struct OperatorEntry {
    std::string space, domain, codomain;
    LipLinearOperator op;
};

struct MapEntry {
    std::string space, codomain;
    LipschitzMap map;
};

struct LinearMapEntry {
    std::string domain, codomain;
    Matrix matrix;  // dim codomain x dim domain
};

struct TensorEntry {
    std::string space, norm;
    FreeTensor tensor;
};

struct FreeVectorEntry {
    std::string space;
    FreeVector vector;
};

struct TwoLipschitzEntry {
    std::string x, y, codomain;
    TwoLipschitzTable table;
};

struct SampleEntry {
    std::string space;
    SequenceSample sample;
};

struct InstanceSet {
    std::map<std::string, FiniteMetricSpace> spaces;
    std::map<std::string, NormEntry> norms;
    std::map<std::string, OperatorEntry> operators;
    std::map<std::string, MapEntry> maps;
    std::map<std::string, LinearMapEntry> linear_maps;
    std::map<std::string, TensorEntry> tensors;
    std::map<std::string, FreeVectorEntry> free_vectors;
    std::map<std::string, TwoLipschitzEntry> two_lipschitz;
    std::map<std::string, SampleEntry> samples;

    const FiniteMetricSpace& space(const std::string& name) const;
    const PolyhedralNorm& norm(const std::string& name) const;
};

// Raised for malformed files and for values that break a domain invariant;
// the message names the offending field.
class ParseError : public InvalidInput {
public:
    explicit ParseError(const std::string& what) : InvalidInput(what) {}
};

InstanceSet parse_instance_text(const std::string& text, const Caps& caps = {});
InstanceSet parse_instance(const std::string& path, const Caps& caps = {});
std::string emit_instance(const InstanceSet& instance);

// "l1:n", "linf:n".
PolyhedralNorm parse_norm_shorthand(const std::string& text, const Caps& caps = {});

// "a+b", "2a - 1/2*b": a combination of point masses over labels of x.
FreeVector parse_free_expression(const std::string& text, const FiniteMetricSpace& x);

// Random instance with n points, dimension d: a metric X (shortest-path
// closure), norms E and F, an operator T, a map R, a linear map v, a tensor u,
// a scalar operator S and a sample. Deterministic in the seed.
InstanceSet gen_random(std::size_t points, std::size_t dim, std::uint64_t seed, const Caps& caps = {});

}  // namespace lipbox
