#pragma once

#include <functional>
#include <vector>

#include "lipbox/linalg.hpp"
#include "lipbox/spaces.hpp"

namespace lipbox {

// Evaluates some norm on the codomain. Lets LipL norms be taken against a
// codomain norm that is only available as an oracle (e.g. an LP).
using NormFunction = std::function<Rational(VecView)>;

// R : X -> E with R(0) = 0; values over the non-base points.
struct LipschitzMap {
    FiniteMetricSpace domain;
    PolyhedralNorm codomain;
    std::vector<Vec> values;

    LipschitzMap(FiniteMetricSpace x, PolyhedralNorm e, std::vector<Vec> values);
    Vec at(std::size_t point) const;
};

// Base-point-preserving map between finite metric spaces, by point index.
struct PointMap {
    FiniteMetricSpace domain;
    FiniteMetricSpace codomain;
    std::vector<std::size_t> image;

    PointMap(FiniteMetricSpace x, FiniteMetricSpace x0, std::vector<std::size_t> image);
    static PointMap identity(const FiniteMetricSpace& x);
};

// T(x, e) = A(x) e with A(0) = 0. The table A is stored for the non-base
// points; each matrix is dim F x dim E.
class LipLinearOperator {
public:
    LipLinearOperator(FiniteMetricSpace x, PolyhedralNorm e, PolyhedralNorm f, std::vector<Matrix> table);
    static LipLinearOperator zero(FiniteMetricSpace x, PolyhedralNorm e, PolyhedralNorm f);

    const FiniteMetricSpace& domain() const { return x_; }
    const PolyhedralNorm& domain_norm() const { return e_; }
    const PolyhedralNorm& codomain_norm() const { return f_; }
    const std::vector<Matrix>& table() const { return table_; }

    // A(point); the zero map at the base point.
    Matrix at(std::size_t point) const;
    Vec apply(std::size_t point, VecView e) const;
    // B_T(e) : x -> A(x) e.
    LipschitzMap slice(VecView e) const;

    friend bool operator==(const LipLinearOperator&, const LipLinearOperator&);

private:
    FiniteMetricSpace x_;
    PolyhedralNorm e_;
    PolyhedralNorm f_;
    std::vector<Matrix> table_;
};

// T[x][y] in F over all of X x Y (base rows and columns are zero).
struct TwoLipschitzTable {
    FiniteMetricSpace x;
    FiniteMetricSpace y;
    PolyhedralNorm codomain;
    std::vector<std::vector<Vec>> values;

    TwoLipschitzTable(FiniteMetricSpace x, FiniteMetricSpace y, PolyhedralNorm f, std::vector<std::vector<Vec>> values);
};

// u = sum_x delta_(x,0) (x) u_x; one row per non-base point of X, each of
// length dim E.
struct FreeTensor {
    std::vector<Vec> rows;

    static FreeTensor zero(std::size_t points, std::size_t dim);
    // delta_(x,y) (x) e, i.e. delta_x (x) e - delta_y (x) e.
    static FreeTensor elementary(const FiniteMetricSpace& x, std::size_t p, std::size_t q, VecView e);
    Vec flatten() const;
    static FreeTensor unflatten(VecView flat, std::size_t points, std::size_t dim);

    friend bool operator==(const FreeTensor&, const FreeTensor&) = default;
};

FreeTensor operator+(const FreeTensor& a, const FreeTensor& b);
FreeTensor operator*(const Rational& s, const FreeTensor& a);

Rational lip_norm(const LipschitzMap& r);
Rational lip_norm(const PointMap& r);

Rational lipl_norm(const LipLinearOperator& t);
// Same, with the codomain measured by an arbitrary norm.
Rational lipl_norm(const LipLinearOperator& t, const NormFunction& codomain);
// Lip of x -> A(x) with matrices measured in the E -> F operator norm.
Rational lip_norm_of_table(const LipLinearOperator& t, const Caps& caps = {});
// ||B_T|| = max over primal vertices v of B_E of Lip(x -> A(x) v).
Rational slice_norm(const LipLinearOperator& t);

Rational blip_norm(const TwoLipschitzTable& t);

Vec linearize_apply(const LipLinearOperator& t, const FreeTensor& u);
Rational linearization_norm(const LipLinearOperator& t);

Rational projective_norm(const FreeTensor& u, const FiniteMetricSpace& x, const PolyhedralNorm& e);
Rational injective_norm(const FreeTensor& u, const FiniteMetricSpace& x, const PolyhedralNorm& e);
// pi on F(X) (x) E as a polyhedral norm on flattened tensors. Its dual ball is
// the scalar LipL unit ball of X x E, enumerated; generators are elementary
// tensors of molecules and primal vertices of B_E.
PolyhedralNorm projective_norm_space(const FiniteMetricSpace& x, const PolyhedralNorm& e, const Caps& caps = {});

// <u, T> for scalar-valued T.
Rational pair(const FreeTensor& u, const LipLinearOperator& t);

// T_R(x, e*) = e*(R(x)) on X x E*.
LipLinearOperator associate_TR(const LipschitzMap& r);

// A(x) = f(x) z e*^T.
LipLinearOperator elementary_operator(const FiniteMetricSpace& x, const PolyhedralNorm& e, const PolyhedralNorm& f,
                                      const LipschitzFunctionVector& fn, VecView functional, VecView z);

// w o T o (R, v). w : F0 -> F (dim F x dim F0), v : E -> E0 (dim E0 x dim E).
LipLinearOperator compose(const Matrix& w, const PolyhedralNorm& f, const LipLinearOperator& t, const PointMap& r,
                          const Matrix& v, const PolyhedralNorm& e);

// (x, e) -> delta_(x,0) (x) v(e), with codomain F(X) (x)_pi F.
LipLinearOperator delta_box(const Matrix& v, const FiniteMetricSpace& x, const PolyhedralNorm& e,
                            const PolyhedralNorm& f, const Caps& caps = {});

// A(x) delta_(y,0) = T[x][y], on X x F(Y).
LipLinearOperator from_two_lipschitz(const TwoLipschitzTable& t, const Caps& caps = {});
// (x, y) -> A(x) delta_(y,0); inverse of from_two_lipschitz.
TwoLipschitzTable to_two_lipschitz(const LipLinearOperator& t, const FiniteMetricSpace& y);

// Restriction of T to X x G where G = points (first must be 0, all distinct)
// carries the metric of E.
TwoLipschitzTable sample_two_lipschitz(const LipLinearOperator& t, const std::vector<Vec>& points);

}  // namespace lipbox
