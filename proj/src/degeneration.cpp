#include "hbd/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "hbd/errors.hpp"

namespace hbd {

namespace {

template <class S>
Matrix<S> power(const Matrix<S>& m, int k) {
  Matrix<S> r = Matrix<S>::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

template <class S>
double mat_scale(const Matrix<S>& m) {
  return std::max(1.0, max_abs(m));
}

template <class S>
void require_square_zero(const NilDirection<S>& n) {
  if (n.index > 2) throw Error(Errc::IndexTooHigh, "N^2 != 0 (nilpotency index " + std::to_string(n.index) + ")");
}

template <class S>
bool maps_into(const Matrix<S>& m, const Subspace<S>& src, const Subspace<S>& dst) {
  return dst.contains(image(m, src));
}

std::string bideg(int p, int q) {
  std::ostringstream os;
  os << "I^{" << p << "," << q << "}";
  return os.str();
}


using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

CMat to_eigen(const Matrix<Complex>& m) {
  CMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

Inertia eigen_inertia(const CMat& g) {
  Inertia out;
  if (g.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<CMat> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double thr = epsilon() * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > thr) ++out.pos;
    else if (ev(i) < -thr) ++out.neg;
    else ++out.zero;
  }
  return out;
}

// Inertia of A + yC for Hermitian A, C. For large y the matrix is split along the eigenspaces of C
// and the kernel block is replaced by its Schur complement, so that the small eigenvalues are not
// swamped by the O(y) ones.
Inertia pencil_inertia(const CMat& a, const CMat& c, double y) {
  Eigen::SelfAdjointEigenSolver<CMat> es(c);
  const auto& cv = es.eigenvalues();
  const double thr = epsilon() * std::max(1.0, cv.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> rng, ker;
  for (Eigen::Index i = 0; i < cv.size(); ++i) (std::abs(cv(i)) > thr ? rng : ker).push_back(i);
  if (rng.empty() || y * std::max(1.0, cv.cwiseAbs().maxCoeff()) < 1e3) return eigen_inertia(a + y * c);
  CMat u = es.eigenvectors();
  CMat at = u.adjoint() * a * u;
  auto block = [&](const std::vector<Eigen::Index>& rs, const std::vector<Eigen::Index>& cs) {
    CMat b(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) b(i, j) = at(rs[i], cs[j]);
    return b;
  };
  CMat m11 = block(rng, rng);
  for (std::size_t i = 0; i < rng.size(); ++i) m11(i, i) += y * cv(rng[i]);
  Inertia top = eigen_inertia(CMat(m11 / y));
  if (top.zero > 0) return eigen_inertia(a + y * c);
  // y times the Schur complement: its eigenvalues may decay like 1/y, which an absolute threshold
  // cannot resolve, while y*S stays O(1).
  CMat ys = y * block(ker, ker) - block(ker, rng) * CMat(m11 / y).ldlt().solve(block(rng, ker));
  Inertia bottom = eigen_inertia(CMat(0.5 * (ys + ys.adjoint())));
  return {top.pos + bottom.pos, top.neg + bottom.neg, top.zero + bottom.zero};
}

// exp(iyN)F lies in D iff i<x, conj x> restricted to each F^p (p >= 0) of the moved flag is
// nondegenerate with sign (-1)^q on the H^q, q >= p. Pulled back to F the Gram matrix is
// i B^T Q exp(-2iyN) conj(B) = A + yC when N^2 = 0.
template <class S>
bool orbit_point_in_domain(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f, const S& y) {
  if (n.index > 2) return in_period_domain(sp, f.act(nil_exp(Matrix<S>(Field<S>::imag_unit() * y * n.N))));
  const HodgeNumbers& h = f.hodge_numbers();
  if constexpr (Field<S>::exact) {
    const Matrix<S> q = sp.gram<S>();
    const S two_y = Field<S>::from_int(2) * y;
    for (int p = 0; p <= h.p_max(); ++p) {
      const Matrix<S> b = f[p].basis();
      const Matrix<S> bt = b.transpose() * q;
      Matrix<S> g = Field<S>::imag_unit() * Matrix<S>(bt * conj(b)) + two_y * Matrix<S>(bt * n.N * conj(b));
      Inertia want;
      for (int r = p; r <= h.p_max(); ++r) (r % 2 == 0 ? want.pos : want.neg) += h(r);
      if (!(hermitian_inertia(g) == want)) return false;
    }
    return true;
  } else {
    const CMat q = to_eigen(sp.gram<Complex>());
    const CMat nn = to_eigen(n.N);
    for (int p = 0; p <= h.p_max(); ++p) {
      CMat b = to_eigen(f[p].basis());
      CMat a = Complex(0.0, 1.0) * (b.transpose() * q * b.conjugate());
      CMat c = 2.0 * (b.transpose() * q * nn * b.conjugate());
      a = 0.5 * (a + a.adjoint());
      c = 0.5 * (c + c.adjoint());
      Inertia want;
      for (int r = p; r <= h.p_max(); ++r) (r % 2 == 0 ? want.pos : want.neg) += h(r);
      if (!(pencil_inertia(a, c, y.real()) == want)) return false;
    }
    return true;
  }
}

}  // namespace

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    default: return "neither";
  }
}

template <class S>
NilDirection<S> NilDirection<S>::make(const SympSpace& sp, Matrix<S> n) {
  if (n.rows() != sp.dim() || n.cols() != sp.dim())
    throw Error(Errc::AmbientMismatch, "N must be " + std::to_string(sp.dim()) + "x" + std::to_string(sp.dim()));
  if (!is_real(n)) throw Error(Errc::BadParam, "N must be a real matrix");
  Matrix<S> q = sp.gram<S>();
  if (!is_zero_matrix(Matrix<S>(n.transpose() * q + q * n), mat_scale(n)))
    throw Error(Errc::NotInfinitesimallySymplectic, "<Nx,y> + <x,Ny> does not vanish");
  NilDirection out;
  out.N = std::move(n);
  Matrix<S> p = Matrix<S>::identity(sp.dim());
  const double scale = mat_scale(out.N);
  for (int k = 1; k <= static_cast<int>(sp.dim()); ++k) {
    p = p * out.N;
    if (is_zero_matrix(p, std::pow(scale, k))) {
      out.index = k;
      if (k == 1) out.N = Matrix<S>(sp.dim(), sp.dim());
      return out;
    }
  }
  throw Error(Errc::NotNilpotent, "N^" + std::to_string(sp.dim()) + " != 0");
}

template <class S>
Subspace<S> WeightFiltration<S>::operator[](int k) const {
  auto it = W.find(k);
  if (it != W.end()) return it->second;
  if (W.empty() || k < lo()) return Subspace<S>::zero(ambient);
  return Subspace<S>::full(ambient);
}

template <class S>
WeightFiltration<S> weight_filtration(const SympSpace& sp, const NilDirection<S>& n) {
  const std::size_t dim = sp.dim();
  const int l = n.index - 1;  // N^{l+1} = 0
  std::vector<Subspace<S>> kers;  // kers[j] = ker N^j
  for (int j = 0; j <= 2 * l + 2; ++j)
    kers.push_back(j > l ? Subspace<S>::full(dim) : Subspace<S>::span(kernel(power(n.N, j))));
  auto ker_pow = [&](int j) { return j >= static_cast<int>(kers.size()) ? Subspace<S>::full(dim) : kers[j]; };
  WeightFiltration<S> out;
  out.ambient = dim;
  // Centered-at-0 filtration M_k = sum_{j >= max(0,-k)} N^j ker N^{k+2j+1}; W_k = M_{k+1}.
  for (int k = -l; k <= l; ++k) {
    Subspace<S> m = Subspace<S>::zero(dim);
    for (int j = std::max(0, -k); j <= l; ++j) {
      int e = k + 2 * j + 1;
      if (e <= 0) continue;
      m = sum(m, image(power(n.N, j), ker_pow(e)));
    }
    out.W.emplace(k - 1, m);
  }
  return out;
}

template <class S>
Subspace<S> Bigrading<S>::at(int p, int q) const {
  auto it = I.find({p, q});
  return it == I.end() ? Subspace<S>::zero(ambient) : it->second;
}

template <class S>
Subspace<S> Bigrading<S>::weight_part(int k) const {
  std::vector<Subspace<S>> parts;
  for (const auto& [pq, s] : I)
    if (pq.first + pq.second == k) parts.push_back(s);
  return sum_all(ambient, parts);
}

template <class S>
Matrix<S> grading_matrix(const std::map<Bidegree, Subspace<S>>& pieces, std::size_t ambient) {
  Matrix<S> basis(ambient, 0);
  std::vector<long> weights;
  for (const auto& [pq, s] : pieces) {
    basis = hcat(basis, s.basis());
    for (std::size_t i = 0; i < s.dim(); ++i) weights.push_back(pq.first + pq.second);
  }
  if (basis.cols() != ambient) throw Error(Errc::NotDirectSum, "bigrading does not span H_C");
  Matrix<S> d(ambient, ambient);
  for (std::size_t i = 0; i < ambient; ++i) d(i, i) = Field<S>::from_int(weights[i]);
  return basis * d * inverse(basis);
}

template <class S>
Matrix<S> Bigrading<S>::grading() const {
  return grading_matrix(I, ambient);
}

template <class S>
Bigrading<S> deligne_bigrading(const WeightFiltration<S>& w, const Filtration<S>& f) {
  if (w.ambient != f.ambient()) throw Error(Errc::AmbientMismatch, "weight and Hodge filtrations differ in ambient");
  const std::size_t dim = f.ambient();
  Filtration<S> fb = f.conjugate();
  // Nontrivial weights: W_k strictly between 0 and H_C somewhere in [lo, hi].
  int kmin = w.lo(), kmax = w.hi();
  while (kmin <= kmax && w[kmin].dim() == 0) ++kmin;
  while (kmax >= kmin && w[kmax - 1].dim() == dim) --kmax;
  const int fhi = f.hi(), flo = f.lo();
  Bigrading<S> out;
  out.ambient = dim;
  for (int k = kmin; k <= kmax; ++k) {
    for (int p = std::min(flo - 1, k - fhi); p <= std::max(fhi, k - flo + 1); ++p) {
      int q = k - p;
      Subspace<S> fp = f[p];
      if (fp.dim() == 0 || fb[q].dim() == 0) continue;
      Subspace<S> wk = w[k];
      Subspace<S> tail = intersect(fb[q], wk);
      for (int j = 2; k - j >= kmin - 1 && j <= (kmax - kmin) + 3; ++j)
        tail = sum(tail, intersect(fb[q - j + 1], w[k - j]));
      Subspace<S> ipq = intersect(intersect(fp, wk), tail);
      if (ipq.dim() > 0) out.I.emplace(Bidegree{p, q}, ipq);
    }
  }
  std::vector<Subspace<S>> parts;
  std::size_t total = 0;
  for (const auto& [pq, s] : out.I) {
    parts.push_back(s);
    total += s.dim();
  }
  if (total != dim || !independent(parts))
    throw Error(Errc::NotDirectSum, "Deligne pieces have total dimension " + std::to_string(total) + " in rank " +
                                        std::to_string(dim) + (total == dim ? " but are dependent" : ""));
  out.r_split = true;
  for (const auto& [pq, s] : out.I)
    if (conjugate(s) != out.at(pq.second, pq.first)) {
      out.r_split = false;
      break;
    }
  return out;
}

template <class S>
LmhsReport is_lmhs(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f) {
  require_square_zero(n);
  LmhsReport r;
  WeightFiltration<S> w = weight_filtration(sp, n);
  Bigrading<S> bg;
  try {
    bg = deligne_bigrading(w, f);
  } catch (const Error& e) {
    if (e.code() != Errc::NotDirectSum) throw;
    r.notes.push_back(e.what());
    return r;
  }
  const std::size_t dim = sp.dim();
  // Mixed Hodge structure: the pieces split W, induce the graded Hodge filtrations and
  // are conjugation-symmetric modulo lower weight.
  r.mhs = true;
  for (int k = -3; k <= 0; ++k) {
    std::vector<Subspace<S>> below;
    for (const auto& [pq, s] : bg.I)
      if (pq.first + pq.second <= k) below.push_back(s);
    if (sum_all(dim, below) != w[k]) {
      r.mhs = false;
      r.notes.push_back("pieces do not split W_" + std::to_string(k));
    }
  }
  for (const auto& [pq, s] : bg.I) {
    int k = pq.first + pq.second;
    if (!sum(bg.at(pq.second, pq.first), w[k - 1]).contains(conjugate(s))) {
      r.mhs = false;
      r.notes.push_back("conj " + bideg(pq.first, pq.second) + " not congruent to " + bideg(pq.second, pq.first));
    }
  }
  for (int k = -2; k <= 0; ++k)
    for (int p = f.lo() - 1; p <= f.hi() + 1; ++p) {
      std::vector<Subspace<S>> parts{w[k - 1]};
      for (const auto& [pq, s] : bg.I)
        if (pq.first >= p && pq.first + pq.second == k) parts.push_back(s);
      if (sum(intersect(f[p], w[k]), w[k - 1]) != sum_all(dim, parts)) {
        r.mhs = false;
        r.notes.push_back("graded Hodge filtration mismatch at F^" + std::to_string(p) + " Gr_" + std::to_string(k));
      }
    }
  // N is a (-1,-1)-morphism and Gr_0 -> Gr_{-2} is an isomorphism.
  r.morphism = true;
  for (const auto& [pq, s] : bg.I)
    if (!maps_into(n.N, s, bg.at(pq.first - 1, pq.second - 1))) {
      r.morphism = false;
      r.notes.push_back("N does not map " + bideg(pq.first, pq.second) + " into " +
                        bideg(pq.first - 1, pq.second - 1));
    }
  Subspace<S> top = bg.weight_part(0);
  Subspace<S> im_top = image(n.N, top);
  if (im_top.dim() != top.dim() || im_top != w[-2]) {
    r.morphism = false;
    r.notes.push_back("N: Gr_0 -> Gr_-2 is not an isomorphism");
  }
  // Polarization: i^{p-q}<x, N^j conj y> definite on each piece and orthogonal across pieces.
  r.polarized = true;
  Matrix<S> q = sp.gram<S>();
  for (int j = 0; j <= 1; ++j) {
    const int k = j - 1;
    Matrix<S> twist = j == 0 ? q : Matrix<S>(q * n.N);
    std::vector<std::pair<Bidegree, Subspace<S>>> pieces;
    for (const auto& [pq, s] : bg.I)
      if (pq.first + pq.second == k) pieces.emplace_back(pq, s);
    for (std::size_t a = 0; a < pieces.size(); ++a) {
      const auto& [pq, s] = pieces[a];
      S c = ipow<S>(pq.first - pq.second);
      Matrix<S> g = c * Matrix<S>(s.basis().transpose() * twist * conj(s.basis()));
      Inertia in = hermitian_inertia(g);
      if (in.pos != static_cast<int>(s.dim())) {
        r.polarized = false;
        r.notes.push_back("polarization not positive on " + bideg(pq.first, pq.second));
      }
      for (std::size_t b = a + 1; b < pieces.size(); ++b) {
        const auto& other = pieces[b].second;
        Matrix<S> cross = s.basis().transpose() * twist * conj(other.basis());
        if (!is_zero_matrix(cross, mat_scale(n.N))) {
          r.polarized = false;
          r.notes.push_back("polarization pairs " + bideg(pq.first, pq.second) + " with " +
                            bideg(pieces[b].first.first, pieces[b].first.second));
        }
      }
    }
  }
  return r;
}

template <class S>
RSplitResult<S> r_split_delta(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f) {
  require_square_zero(n);
  WeightFiltration<S> w = weight_filtration(sp, n);
  Bigrading<S> bg = deligne_bigrading(w, f);
  Matrix<S> y = bg.grading();
  // For a three-step W every (-1,-1) operator squares to zero, so conj(Y) = Y - 4i delta.
  S quarter_i = Field<S>::imag_unit() / Field<S>::from_int(4);
  Matrix<S> delta = quarter_i * Matrix<S>(conj(y) - y);
  const double scale = mat_scale(y);
  if (!is_real(delta, scale)) throw Error(Errc::SolveFailed, "correction is not real");
  if constexpr (!Field<S>::exact) {
    for (std::size_t r = 0; r < delta.rows(); ++r)
      for (std::size_t c = 0; c < delta.cols(); ++c) delta(r, c) = S(delta(r, c).real(), 0.0);
  }
  Matrix<S> q = sp.gram<S>();
  if (!is_zero_matrix(Matrix<S>(delta.transpose() * q + q * delta), scale))
    throw Error(Errc::SolveFailed, "correction is not infinitesimally symplectic");
  for (const auto& [pq, s] : bg.I)
    if (!maps_into(delta, s, bg.at(pq.first - 1, pq.second - 1)))
      throw Error(Errc::SolveFailed, "correction is not of bidegree (-1,-1)");
  Matrix<S> g = nil_exp(Matrix<S>(-Field<S>::imag_unit() * delta));
  Filtration<S> fh = f.act(g);
  Bigrading<S> bh = deligne_bigrading(w, fh);
  if (!bh.r_split) throw Error(Errc::SolveFailed, "corrected filtration is not R-split");
  return {std::move(delta), std::move(fh), std::move(bh)};
}

template <class S>
Sl2Data<S> sl2_complete(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f_hat) {
  require_square_zero(n);
  const std::size_t dim = sp.dim();
  WeightFiltration<S> w = weight_filtration(sp, n);
  Bigrading<S> bg = deligne_bigrading(w, f_hat);
  if (!bg.r_split) throw Error(Errc::NotRSplit, "(W, F) is not R-split");
  Sl2Data<S> d;
  d.N = n.N;
  d.H = bg.grading() + Matrix<S>::identity(dim);
  Matrix<S> b0 = bg.weight_part(0).basis();
  Matrix<S> b1 = bg.weight_part(-1).basis();
  Matrix<S> nb0 = n.N * b0;
  Matrix<S> p = hcat(hcat(b0, b1), nb0);
  if (p.cols() != dim || rank(p) != dim) throw Error(Errc::NoTriple, "weight pieces do not form a basis");
  Matrix<S> target = hcat(Matrix<S>(dim, b0.cols() + b1.cols()), b0);
  d.Nplus = target * inverse(p);
  const double scale = mat_scale(d.H) * mat_scale(d.Nplus) * mat_scale(n.N);
  S two = Field<S>::from_int(2);
  if (!approx_equal(bracket(d.H, d.N), Matrix<S>(-two * d.N), scale) ||
      !approx_equal(bracket(d.H, d.Nplus), Matrix<S>(two * d.Nplus), scale) ||
      !approx_equal(bracket(d.Nplus, d.N), d.H, scale))
    throw Error(Errc::NoTriple, "triple relations fail");
  S half = Field<S>::one() / two;
  S iu = Field<S>::imag_unit();
  d.X = half * Matrix<S>(iu * d.N - d.H + iu * d.Nplus);
  if (!is_zero_matrix(Matrix<S>(d.X * d.X), scale)) throw Error(Errc::NoTriple, "X^2 != 0");
  return d;
}

template <class S>
XActionReport x_action_check(const SympSpace& sp, const Sl2Data<S>& data, const NilDirection<S>& n,
                             const Filtration<S>& f_hat, const std::vector<S>& zs) {
  require_square_zero(n);
  XActionReport r;
  r.samples = static_cast<int>(zs.size());
  WeightFiltration<S> w = weight_filtration(sp, n);
  Bigrading<S> bg = deligne_bigrading(w, f_hat);
  const std::size_t dim = sp.dim();
  const S iu = Field<S>::imag_unit();
  Matrix<S> e_plus = nil_exp(Matrix<S>(iu * n.N));
  Matrix<S> e_minus = nil_exp(Matrix<S>(-iu * n.N));
  Filtration<S> f0 = f_hat.act(e_plus);
  auto note = [&](bool ok, double dev, const std::string& what) {
    r.max_deviation = std::max(r.max_deviation, dev);
    if (!ok) {
      r.pass = false;
      if (r.failures.size() < 8) r.failures.push_back(what);
    }
  };
  struct Item {
    int p;
    Vec<S> u, xu;
    S s;
  };
  std::vector<Item> items;
  for (const auto& [pq, space] : bg.I) {
    const int p = pq.first;
    if (pq.first + pq.second != 0) continue;
    // Orthogonalize for the Gr_0 polarization h(a, b) = i^{2p} <a, N conj b> (no normalization).
    const S c = ipow<S>(2 * p);
    auto h = [&](const Vec<S>& a, const Vec<S>& b) { return c * form(sp, a, n.N * conj(b)); };
    std::vector<Vec<S>> vs;
    for (std::size_t j = 0; j < space.dim(); ++j) {
      Vec<S> v = space.basis().col(j);
      for (const auto& prev : vs) {
        S coef = h(v, prev) / h(prev, prev);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= coef * prev[i];
      }
      vs.push_back(v);
    }
    for (const auto& v : vs) {
      Item it;
      it.p = p;
      it.u = e_plus * v;
      it.xu = data.X * it.u;
      it.s = ipow<S>(2 * p + 1) * form(sp, it.u, conj(it.u));
      const double scale = std::max(1.0, Field<S>::magnitude(it.s));
      // u lies in the (p,-p-1) component for F_0 = exp(iN) F_hat.
      Subspace<S> comp = intersect(f0[p], conjugate(f0[-p - 1]));
      note(comp.contains(it.u), 0.0, "u not in H^{p,-p-1} at p=" + std::to_string(p));
      Vec<S> target = e_minus * v;
      double dev = 0.0;
      bool same = true;
      for (std::size_t i = 0; i < dim; ++i) {
        S diff = it.xu[i] + target[i];
        dev = std::max(dev, Field<S>::magnitude(diff));
        same = same && Field<S>::is_zero(diff, scale);
      }
      note(same, dev, "Xu != -exp(-iN)v at p=" + std::to_string(p));
      S sx = ipow<S>(2 * p - 1) * form(sp, it.xu, conj(it.xu));
      note(Field<S>::is_zero(S(sx - it.s), scale) && Field<S>::real_sign(it.s) > 0,
           Field<S>::magnitude(S(sx - it.s)) / scale, "||Xu|| != ||u|| at p=" + std::to_string(p));
      items.push_back(std::move(it));
    }
  }
  r.vectors = static_cast<int>(items.size());
  for (const S& z : zs) {
    Matrix<S> ez = Matrix<S>::identity(dim) + z * data.X;
    S abs2 = z * Field<S>::conj(z);
    std::vector<Vec<S>> moved;
    for (const auto& it : items) moved.push_back(ez * it.u);
    for (std::size_t a = 0; a < items.size(); ++a) {
      const double scale = std::max(1.0, Field<S>::magnitude(items[a].s));
      S val = ipow<S>(2 * items[a].p + 1) * form(sp, moved[a], conj(moved[a]));
      S expect = (Field<S>::one() - abs2) * items[a].s;
      note(Field<S>::is_zero(S(val - expect), scale), Field<S>::magnitude(S(val - expect)) / scale,
           "1-|z|^2 law fails");
      for (std::size_t b = 0; b < items.size(); ++b) {
        if (a == b) continue;
        S cross = form(sp, moved[a], conj(moved[b]));
        note(Field<S>::is_zero(cross, scale), Field<S>::magnitude(cross) / scale, "cross-pairing does not vanish");
      }
    }
  }
  return r;
}

template <class S>
std::map<int, Split123<S>> split_123(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f_hat,
                                     const S& z) {
  require_square_zero(n);
  if (Field<S>::real_sign(S(-Field<S>::imag_unit() * z)) <= 0) throw Error(Errc::BadParam, "split_123 needs Im z > 0");
  WeightFiltration<S> w = weight_filtration(sp, n);
  Bigrading<S> bg = deligne_bigrading(w, f_hat);
  if (!bg.r_split) throw Error(Errc::NotRSplit, "(W, F) is not R-split");
  Matrix<S> ez = nil_exp(Matrix<S>(z * n.N));
  Matrix<S> ezb = nil_exp(Matrix<S>(Field<S>::conj(z) * n.N));
  const HodgeNumbers& h = f_hat.hodge_numbers();
  std::map<int, Split123<S>> out;
  for (int p = h.p_min(); p <= h.p_max(); ++p)
    out.emplace(p, Split123<S>{bg.at(p, -p - 1), image(ez, bg.at(p, -p)), image(ezb, bg.at(p + 1, -p - 1))});
  return out;
}

template <class S>
OrbitVerdict is_nilpotent_orbit(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f) {
  CompactDualReport cd = in_compact_dual(sp, f);
  if (!cd.ok) throw Error(Errc::NotInCompactDual, cd.reasons.front());
  OrbitVerdict v;
  v.horizontal = true;
  for (int p = f.lo() - 1; p <= f.hi() + 1; ++p)
    if (!maps_into(n.N, f[p], f[p - 1])) v.horizontal = false;
  if (n.is_zero()) {
    v.verdict = v.horizontal && in_period_domain(sp, f);
    v.y_star = 0.0;
    return v;
  }
  constexpr int kBudget = 40;
  int first_good = -1;  // start of the trailing run of members
  for (int k = 0; k <= kBudget; ++k) {
    // y = 2^k / 16 is exactly representable in both backends.
    S y = Field<S>::from_ratio(1L << std::min(k, 4), 16) * Field<S>::from_int(1L << std::max(0, k - 4));
    bool in_d = orbit_point_in_domain(sp, n, f, y);
    if (in_d && first_good < 0) first_good = k;
    if (!in_d) first_good = -1;
  }
  if (first_good < 0) {
    v.verdict = false;
    v.budget_exhausted = v.horizontal;
    v.y_star = std::ldexp(1.0, kBudget - 4);
    return v;
  }
  v.verdict = v.horizontal;
  v.y_star = std::ldexp(1.0, first_good - 4);
  return v;
}

template <class S>
Parity classify_parity(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f) {
  if (!is_nilpotent_orbit(sp, n, f).verdict) throw Error(Errc::NotAnOrbit, "(N, F) is not a nilpotent orbit");
  if (n.index > 2) return Parity::neither;
  Bigrading<S> bg = deligne_bigrading(weight_filtration(sp, n), f);
  bool odd_empty = true, even_empty = true;
  for (const auto& [pq, s] : bg.I) {
    if (pq.first + pq.second != 0) continue;
    if (pq.first % 2 == 0) even_empty = false;
    else odd_empty = false;
  }
  if (odd_empty) return Parity::even;
  if (even_empty) return Parity::odd;
  return Parity::neither;
}

#define HBD_INSTANTIATE(S)                                                                                    \
  template struct NilDirection<S>;                                                                            \
  template struct WeightFiltration<S>;                                                                        \
  template struct Bigrading<S>;                                                                               \
  template WeightFiltration<S> weight_filtration(const SympSpace&, const NilDirection<S>&);                   \
  template Bigrading<S> deligne_bigrading(const WeightFiltration<S>&, const Filtration<S>&);                  \
  template Matrix<S> grading_matrix(const std::map<Bidegree, Subspace<S>>&, std::size_t);                    \
  template LmhsReport is_lmhs(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);                \
  template RSplitResult<S> r_split_delta(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);     \
  template Sl2Data<S> sl2_complete(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);           \
  template XActionReport x_action_check(const SympSpace&, const Sl2Data<S>&, const NilDirection<S>&,          \
                                        const Filtration<S>&, const std::vector<S>&);                         \
  template std::map<int, Split123<S>> split_123(const SympSpace&, const NilDirection<S>&, const Filtration<S>&, \
                                                const S&);                                                    \
  template OrbitVerdict is_nilpotent_orbit(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);   \
  template Parity classify_parity(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);

HBD_INSTANTIATE(Gaussian)
HBD_INSTANTIATE(Complex)

}  // namespace hbd
