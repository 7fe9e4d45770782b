#include "ppr/extpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "ppr/linalg.hpp"

namespace ppr::extpoly {

ExtendedPolynomial::ExtendedPolynomial(std::vector<cd> coeffs) : coeffs_(std::move(coeffs)) {
  require(!coeffs_.empty(), "ExtendedPolynomial: need at least one coefficient");
}

ExtendedPolynomial ExtendedPolynomial::zero(int degree) {
  require(degree >= 0, "ExtendedPolynomial::zero: negative degree");
  return ExtendedPolynomial(std::vector<cd>(static_cast<std::size_t>(degree) + 1, cd(0.0)));
}

ExtendedPolynomial ExtendedPolynomial::from_vector(const CVec& c) {
  return ExtendedPolynomial(std::vector<cd>(c.data(), c.data() + c.size()));
}

CVec ExtendedPolynomial::to_vector() const {
  return Eigen::Map<const CVec>(coeffs_.data(), static_cast<Eigen::Index>(coeffs_.size()));
}

double ExtendedPolynomial::norm() const { return to_vector().norm(); }

double ExtendedPolynomial::max_abs() const {
  double m = 0.0;
  for (const cd& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool ExtendedPolynomial::is_zero() const { return max_abs() == 0.0; }

cd ExtendedPolynomial::evaluate(cd z) const {
  cd acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ExtendedPolynomial ExtendedPolynomial::scaled(cd s) const {
  std::vector<cd> c = coeffs_;
  for (cd& v : c) v *= s;
  return ExtendedPolynomial(std::move(c));
}

int RootMultiset::total() const {
  int t = 0;
  for (const auto& e : entries) t += e.multiplicity;
  return t;
}

int RootMultiset::multiplicity_at_infinity() const {
  int t = 0;
  for (const auto& e : entries)
    if (e.root.infinite) t += e.multiplicity;
  return t;
}

int RootMultiset::multiplicity_at_zero() const {
  int t = 0;
  for (const auto& e : entries)
    if (!e.root.infinite && e.root.z == cd(0.0)) t += e.multiplicity;
  return t;
}

ExtendedPolynomial multiply(const ExtendedPolynomial& a, const ExtendedPolynomial& b) {
  std::vector<cd> c(static_cast<std::size_t>(a.degree() + b.degree() + 1), cd(0.0));
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  return ExtendedPolynomial(std::move(c));
}

ExtendedPolynomial add(const ExtendedPolynomial& a, const ExtendedPolynomial& b) {
  require(a.degree() == b.degree(), "add: ambient degrees differ");
  std::vector<cd> c = a.coeffs();
  for (int i = 0; i <= b.degree(); ++i) c[static_cast<std::size_t>(i)] += b[i];
  return ExtendedPolynomial(std::move(c));
}

ExtendedPolynomial conjugate_reflection(const ExtendedPolynomial& a) {
  const int D = a.degree();
  std::vector<cd> c(static_cast<std::size_t>(D + 1));
  for (int n = 0; n <= D; ++n) c[static_cast<std::size_t>(n)] = std::conj(a[D - n]);
  return ExtendedPolynomial(std::move(c));
}

namespace {

// Parlett-Reinsch balancing with radix 2 (norms are |re| + |im|).
void balance(CMat& a) {
  const double radix = 2.0, sqrdx = radix * radix;
  const Eigen::Index n = a.rows();
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i).real()) + std::abs(a(j, i).imag());
        r += std::abs(a(i, j).real()) + std::abs(a(i, j).imag());
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

cd polish(const std::vector<cd>& p, cd z) {
  auto eval = [&](cd x, cd& dp) {
    cd v(0.0);
    dp = cd(0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      dp = dp * x + v;
      v = v * x + *it;
    }
    return v;
  };
  cd dp;
  cd v = eval(z, dp);
  for (int it = 0; it < 4 && dp != cd(0.0); ++it) {
    const cd cand = z - v / dp;
    cd dpc;
    const cd vc = eval(cand, dpc);
    if (!(std::abs(vc) < std::abs(v))) break;
    z = cand;
    v = vc;
    dp = dpc;
  }
  return z;
}

}  // namespace

RootMultiset roots(const ExtendedPolynomial& a, const RootOptions& opts) {
  const double scale = a.max_abs();
  if (scale == 0.0) fail(ErrorKind::NoFactorization, "roots: zero polynomial has no factorization");
  const int D = a.degree();
  const double thr = opts.zero_tol * scale;

  int hi = D;
  while (std::abs(a[hi]) <= thr) --hi;
  int lo = 0;
  while (std::abs(a[lo]) <= thr) ++lo;

  RootMultiset out;
  out.lead = a[hi];
  if (D - hi > 0) out.entries.push_back({RootValue::infinity(), D - hi});
  if (lo > 0) out.entries.push_back({RootValue{cd(0.0), false}, lo});

  const int d = hi - lo;
  if (d == 0) return out;

  std::vector<cd> stripped(a.coeffs().begin() + lo, a.coeffs().begin() + hi + 1);
  CMat comp = CMat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -stripped[static_cast<std::size_t>(i)] / stripped.back();
  balance(comp);
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  const CVec ev = es.eigenvalues();

  UnionFind uf(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(ev(i) - ev(j)) < opts.cluster_tol) uf.unite(i, j);

  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int i = 0; i < d; ++i) {
    const int root = uf.find(i);
    if (seen[static_cast<std::size_t>(root)]) continue;
    seen[static_cast<std::size_t>(root)] = true;
    cd sum(0.0);
    int count = 0;
    for (int j = 0; j < d; ++j)
      if (uf.find(j) == root) {
        sum += ev(j);
        ++count;
      }
    cd z = sum / static_cast<double>(count);
    if (count == 1) z = polish(stripped, z);
    out.entries.push_back({RootValue{z, false}, count});
  }
  return out;
}

ExtendedPolynomial from_roots(const RootMultiset& r, int degree) {
  require(r.total() == degree, "from_roots: multiplicities must sum to the ambient degree");
  std::vector<cd> c{r.lead};
  for (const auto& e : r.entries) {
    for (int k = 0; k < e.multiplicity; ++k) {
      if (e.root.infinite) {
        c.push_back(cd(0.0));
      } else {
        std::vector<cd> next(c.size() + 1, cd(0.0));
        for (std::size_t i = 0; i < c.size(); ++i) {
          next[i] -= e.root.z * c[i];
          next[i + 1] += c[i];
        }
        c = std::move(next);
      }
    }
  }
  return ExtendedPolynomial(std::move(c));
}

CMat multiplication_matrix(const ExtendedPolynomial& a, int L) {
  require(L >= 0, "multiplication_matrix: negative L");
  const int D = a.degree();
  CMat m = CMat::Zero(D + L + 1, L + 1);
  for (int j = 0; j <= L; ++j)
    for (int i = 0; i <= D; ++i) m(i + j, j) = a[i];
  return m;
}

CMat sylvester_general(const ExtendedPolynomial& a, const ExtendedPolynomial& b, int D) {
  const int la = a.degree(), lb = b.degree();
  require(D <= std::min(la, lb), "sylvester: D exceeds an ambient degree");
  const CMat ma = multiplication_matrix(a, lb - D);
  const CMat mb = multiplication_matrix(b, la - D);
  CMat s(ma.rows(), ma.cols() + mb.cols());
  s << ma, mb;
  return s;
}

CMat sylvester(const ExtendedPolynomial& a, const ExtendedPolynomial& b, int D) {
  require(a.degree() == b.degree(), "sylvester: ambient degrees differ");
  return sylvester_general(a, b, D);
}

bool divides(const ExtendedPolynomial& a, const ExtendedPolynomial& c, double tol) {
  if (c.is_zero()) return true;
  if (a.is_zero() || a.degree() > c.degree()) return false;
  const CMat m = multiplication_matrix(a, c.degree() - a.degree());
  const CVec cv = c.to_vector();
  const CVec b = linalg::lstsq(m, cv);
  return (m * b - cv).norm() <= tol * cv.norm();
}

ExtendedPolynomial deconvolve(const ExtendedPolynomial& c, const ExtendedPolynomial& a) {
  require(a.degree() <= c.degree(), "deconvolve: divisor degree too large");
  require(!a.is_zero(), "deconvolve: zero divisor");
  const CMat m = multiplication_matrix(a, c.degree() - a.degree());
  return ExtendedPolynomial::from_vector(linalg::lstsq(m, c.to_vector()));
}

int gcd_degree(const ExtendedPolynomial& a, const ExtendedPolynomial& b, double rank_tol) {
  const bool za = a.is_zero(), zb = b.is_zero();
  if (za && zb) fail(ErrorKind::InvalidArgument, "gcd_degree: both polynomials are zero");
  if (za) return b.degree();
  if (zb) return a.degree();
  const int n = a.degree() + b.degree();
  if (n == 0) return 0;
  const int cap = std::min(a.degree(), b.degree());
  const int k = n - linalg::numerical_rank(sylvester_general(a, b, 1), rank_tol);
  return std::min(k, cap);
}

ExtendedPolynomial gcd(const ExtendedPolynomial& a, const ExtendedPolynomial& b, double rank_tol) {
  if (a.is_zero() && b.is_zero()) fail(ErrorKind::InvalidArgument, "gcd: both polynomials are zero");
  if (a.is_zero()) return b.scaled(1.0 / b.norm());
  if (b.is_zero()) return a.scaled(1.0 / a.norm());
  const int k = gcd_degree(a, b, rank_tol);
  if (k == 0) return ExtendedPolynomial(std::vector<cd>{cd(1.0)});

  // Kernel of Syl_k is (-c G, c F) with a = F h, b = G h.
  const int la = a.degree(), lb = b.degree();
  const CVec v = linalg::smallest_right_singular(sylvester_general(a, b, k)).v;
  const ExtendedPolynomial g = ExtendedPolynomial::from_vector(-v.head(lb - k + 1));
  const ExtendedPolynomial f = ExtendedPolynomial::from_vector(v.tail(la - k + 1));

  const CMat mf = multiplication_matrix(f, k);
  const CMat mg = multiplication_matrix(g, k);
  CMat sys(mf.rows() + mg.rows(), k + 1);
  sys << mf, mg;
  CVec rhs(sys.rows());
  rhs << a.to_vector(), b.to_vector();
  CVec h = linalg::lstsq(sys, rhs);
  h /= h.norm();
  return ExtendedPolynomial::from_vector(h);
}

}  // namespace ppr::extpoly
