#pragma once

// Polynomials with a fixed ambient degree D. Vanishing leading coefficients
// are kept and read as roots at infinity, so a nonzero element always has
// exactly D roots on the Riemann sphere.

#include <vector>

#include "ppr/common.hpp"

namespace ppr::extpoly {

class ExtendedPolynomial {
 public:
  ExtendedPolynomial() : coeffs_(1, cd(0.0)) {}
  explicit ExtendedPolynomial(std::vector<cd> coeffs);
  static ExtendedPolynomial zero(int degree);
  static ExtendedPolynomial from_vector(const CVec& c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cd>& coeffs() const { return coeffs_; }
  cd operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  cd& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }

  CVec to_vector() const;
  double norm() const;
  double max_abs() const;
  bool is_zero() const;
  cd evaluate(cd z) const;
  ExtendedPolynomial scaled(cd s) const;

 private:
  std::vector<cd> coeffs_;
};

struct RootValue {
  cd z{0.0, 0.0};
  bool infinite = false;
  static RootValue infinity() { return {cd(0.0), true}; }
};

struct RootEntry {
  RootValue root;
  int multiplicity = 1;
};

// Roots of a nonzero extended polynomial with multiplicities, plus the
// leading coefficient of the stripped polynomial so that the factorisation
// A(z) = lead * prod (z - alpha) can be rebuilt.
struct RootMultiset {
  std::vector<RootEntry> entries;
  cd lead{1.0, 0.0};
  int total() const;
  int multiplicity_at_infinity() const;
  int multiplicity_at_zero() const;
};

struct RootOptions {
  double zero_tol = 1e-12;     // relative, for structural leading/trailing zeros
  double cluster_tol = 1e-7;   // absolute, single-linkage merge distance
};

ExtendedPolynomial multiply(const ExtendedPolynomial& a, const ExtendedPolynomial& b);
ExtendedPolynomial add(const ExtendedPolynomial& a, const ExtendedPolynomial& b);
ExtendedPolynomial conjugate_reflection(const ExtendedPolynomial& a);

RootMultiset roots(const ExtendedPolynomial& a, const RootOptions& opts = {});
ExtendedPolynomial from_roots(const RootMultiset& r, int degree);

// Divisibility in the extended sense: c = a * b for some b of ambient degree
// deg(c) - deg(a).
bool divides(const ExtendedPolynomial& a, const ExtendedPolynomial& c, double tol = 1e-10);

// Least-squares quotient b with c ~ a * b, b of ambient degree deg(c) - deg(a).
ExtendedPolynomial deconvolve(const ExtendedPolynomial& c, const ExtendedPolynomial& a);

// (D + L + 1) x (L + 1) matrix representing b -> a * b for b of degree L.
CMat multiplication_matrix(const ExtendedPolynomial& a, int L);

// [M_{L-D}(a) | M_{L-D}(b)] for a, b of the same ambient degree L.
CMat sylvester(const ExtendedPolynomial& a, const ExtendedPolynomial& b, int D);

// Same construction for differing ambient degrees La, Lb:
// [M_{Lb-D}(a) | M_{La-D}(b)].
CMat sylvester_general(const ExtendedPolynomial& a, const ExtendedPolynomial& b, int D);

int gcd_degree(const ExtendedPolynomial& a, const ExtendedPolynomial& b, double rank_tol = 1e-10);

// Greatest common divisor of ambient degree gcd_degree(a, b), unit 2-norm.
ExtendedPolynomial gcd(const ExtendedPolynomial& a, const ExtendedPolynomial& b,
                       double rank_tol = 1e-10);

}  // namespace ppr::extpoly
