#pragma once

#include <vector>

#include "lipbox/operators.hpp"
#include "lipbox/summing.hpp"

namespace lipbox {

// Discrete measure on B_{X#} x B_{E*}: T(x, e) = sum_k f_k(x) e*_k(e) z_k.
// For a scalar codomain z_k is the signed weight of the atom.
struct IntegralCertificate {
    struct Atom {
        Vec f;           // over the non-base points
        Vec functional;  // in E*
        Vec z;           // in F
    };
    std::vector<Atom> atoms;
    Rational mass = 0;  // sum ||z_k||_F

    // Scalar codomain only.
    Vec weights() const;
};

struct IntegralResult {
    Rational value;
    IntegralCertificate certificate;
};

// Minimal total variation over atoms at vertex pairs of B_{X#} x B_{E*}.
// Scalar codomains split each weight into two nonnegative parts; vector
// codomains bound ||z||_F through the dual vertices of B_F.
IntegralResult integral_norm(const LipLinearOperator& t, const Caps& caps = {});

// sup |T^(u)| over the epsilon ball, scalar codomain.
Rational eps_dual_check(const LipLinearOperator& t, const Caps& caps = {});

// Throws InvalidInput when an atom lies outside B_{X#} x B_{E*}.
LipLinearOperator reconstruct(const IntegralCertificate& cert, const FiniteMetricSpace& x, const PolyhedralNorm& e,
                              const PolyhedralNorm& f);

// T(x, e) = sum_k R(x)_k v(e)_k mu_k over the atoms, scalar codomain.
struct LinftyFactorization {
    std::vector<Vec> r;  // R(x) in l_inf^K for every point, base point included
    Matrix v;            // K x dim E
    Vec mu;
    Rational lip_r = 0;
    Rational v_norm = 0;  // as a map E -> l_inf^K
    Rational mass = 0;
    Rational product = 0;
};

LinftyFactorization factorize_Linfty(const IntegralCertificate& cert, const FiniteMetricSpace& x,
                                     const PolyhedralNorm& e);

// Support inside the balls, exact reconstruction and the reported mass.
VerificationReport verify_integral(const IntegralCertificate& cert, const LipLinearOperator& t);

}  // namespace lipbox
