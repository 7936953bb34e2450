#include "hbd/hodge.hpp"

#include <algorithm>
#include <string>

#include "hbd/errors.hpp"

namespace hbd {

HodgeNumbers::HodgeNumbers(std::map<int, int> h) {
  for (const auto& [p, v] : h) {
    if (v < 0) throw Error(Errc::BadParam, "negative Hodge number at p=" + std::to_string(p));
    if (v > 0) h_[p] = v;
  }
  for (const auto& [p, v] : h_) {
    auto it = h_.find(-1 - p);
    if (it == h_.end() || it->second != v)
      throw Error(Errc::BadParam, "Hodge numbers violate h(p) = h(-1-p) at p=" + std::to_string(p));
  }
}

HodgeNumbers HodgeNumbers::siegel(int n) { return HodgeNumbers({{0, n}, {-1, n}}); }

HodgeNumbers HodgeNumbers::one_one_one_one() { return HodgeNumbers({{1, 1}, {0, 1}, {-1, 1}, {-2, 1}}); }

int HodgeNumbers::operator()(int p) const {
  auto it = h_.find(p);
  return it == h_.end() ? 0 : it->second;
}

int HodgeNumbers::p_max() const { return h_.empty() ? -1 : h_.rbegin()->first; }

int HodgeNumbers::total() const {
  int t = 0;
  for (const auto& [p, v] : h_) t += v;
  return t;
}

int HodgeNumbers::f_dim(int p) const {
  int t = 0;
  for (const auto& [r, v] : h_)
    if (r >= p) t += v;
  return t;
}

template <class S>
Filtration<S>::Filtration(std::size_t ambient, HodgeNumbers h, std::map<int, Subspace<S>> pieces)
    : ambient_(ambient), h_(std::move(h)), pieces_(std::move(pieces)) {
  int prev = 0;
  bool first = true;
  for (const auto& [p, s] : pieces_) {
    if (s.ambient() != ambient_) throw Error(Errc::AmbientMismatch, "filtration piece in a different ambient");
    if (!first && p != prev + 1) throw Error(Errc::BadParam, "filtration pieces must have contiguous indices");
    prev = p;
    first = false;
  }
}

template <class S>
Subspace<S> Filtration<S>::operator[](int p) const {
  auto it = pieces_.find(p);
  if (it != pieces_.end()) return it->second;
  if (pieces_.empty() || p > hi()) return Subspace<S>::zero(ambient_);
  return Subspace<S>::full(ambient_);
}

template <class S>
Filtration<S> Filtration<S>::act(const Matrix<S>& g) const {
  std::map<int, Subspace<S>> out;
  for (const auto& [p, s] : pieces_) out.emplace(p, image(g, s));
  return Filtration(ambient_, h_, std::move(out));
}

template <class S>
Filtration<S> Filtration<S>::conjugate() const {
  std::map<int, Subspace<S>> out;
  for (const auto& [p, s] : pieces_) out.emplace(p, hbd::conjugate(s));
  return Filtration(ambient_, h_, std::move(out));
}

template <class S>
CompactDualReport in_compact_dual(const SympSpace& sp, const Filtration<S>& f) {
  CompactDualReport r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.reasons.push_back(std::move(why));
  };
  if (f.ambient() != sp.dim()) {
    fail("ambient mismatch");
    return r;
  }
  const HodgeNumbers& h = f.hodge_numbers();
  if (h.total() != static_cast<int>(sp.dim())) fail("Hodge numbers do not sum to the rank");
  int lo = std::min(f.lo(), h.p_min()) - 1;
  int hi = std::max(f.hi(), h.p_max()) + 1;
  for (int p = lo; p <= hi; ++p) {
    if (!f[p].contains(f[p + 1])) fail("not decreasing at p=" + std::to_string(p));
    if (static_cast<int>(f[p].dim()) != h.f_dim(p))
      fail("dim F^" + std::to_string(p) + " = " + std::to_string(f[p].dim()) + ", expected " +
           std::to_string(h.f_dim(p)));
    if (f[-p] != perp(sp, f[p])) fail("F^" + std::to_string(-p) + " is not the perp of F^" + std::to_string(p));
  }
  return r;
}

template <class S>
std::map<int, Subspace<S>> raw_hodge_components(const Filtration<S>& f) {
  std::map<int, Subspace<S>> out;
  const HodgeNumbers& h = f.hodge_numbers();
  for (int p = h.p_min(); p <= h.p_max(); ++p) out.emplace(p, intersect(f[p], conjugate(f[-p - 1])));
  return out;
}

namespace {

template <class S>
bool hodge_riemann_ok(const SympSpace& sp, const Filtration<S>& f, const std::map<int, Subspace<S>>& comps) {
  const HodgeNumbers& h = f.hodge_numbers();
  std::vector<Subspace<S>> parts;
  for (const auto& [p, c] : comps) {
    if (static_cast<int>(c.dim()) != h(p)) return false;
    if (c.dim() == 0) continue;
    Inertia in = signature(sp, c, ipow<S>(2 * p + 1));
    if (in.pos != static_cast<int>(c.dim())) return false;
    parts.push_back(c);
  }
  return independent(parts);
}

}  // namespace

template <class S>
bool in_period_domain(const SympSpace& sp, const Filtration<S>& f) {
  CompactDualReport cd = in_compact_dual(sp, f);
  if (!cd.ok) throw Error(Errc::NotInCompactDual, cd.reasons.front());
  return hodge_riemann_ok(sp, f, raw_hodge_components(f));
}

template <class S>
std::map<int, Subspace<S>> hodge_decomposition(const SympSpace& sp, const Filtration<S>& f) {
  CompactDualReport cd = in_compact_dual(sp, f);
  if (!cd.ok) throw Error(Errc::NotInPeriodDomain, "not in the compact dual: " + cd.reasons.front());
  auto comps = raw_hodge_components(f);
  if (!hodge_riemann_ok(sp, f, comps)) throw Error(Errc::NotInPeriodDomain, "Hodge-Riemann positivity fails");
  return comps;
}

FCounts f_counts(const HodgeNumbers& h) {
  FCounts out;
  for (int p = h.p_min(); p <= h.p_max() + 1; ++p) {
    int ev = 0, od = 0;
    for (const auto& [r, v] : h.values()) {
      if (r < p) continue;
      if (r % 2 == 0) ev += v;
      else od += v;
    }
    out.f_ev[p] = ev;
    out.f_od[p] = od;
  }
  return out;
}

template <class S>
Filtration<S> filtration_from_flag(const SympSpace& sp, const HodgeNumbers& h, const Matrix<S>& columns) {
  std::map<int, Subspace<S>> pieces;
  for (int p = h.p_max(); p >= 0; --p) {
    std::size_t d = static_cast<std::size_t>(h.f_dim(p));
    if (d > columns.cols()) throw Error(Errc::BadParam, "flag has too few vectors");
    pieces.emplace(p, Subspace<S>::span(columns.cols_range(0, d)));
  }
  for (int p = -1; p > h.p_min(); --p) pieces.emplace(p, perp(sp, pieces.at(-p)));
  return Filtration<S>(sp.dim(), h, std::move(pieces));
}

#define HBD_INSTANTIATE(S)                                                                          \
  template class Filtration<S>;                                                                     \
  template CompactDualReport in_compact_dual(const SympSpace&, const Filtration<S>&);               \
  template bool in_period_domain(const SympSpace&, const Filtration<S>&);                           \
  template std::map<int, Subspace<S>> hodge_decomposition(const SympSpace&, const Filtration<S>&);  \
  template std::map<int, Subspace<S>> raw_hodge_components(const Filtration<S>&);                   \
  template Filtration<S> filtration_from_flag(const SympSpace&, const HodgeNumbers&, const Matrix<S>&);

HBD_INSTANTIATE(Gaussian)
HBD_INSTANTIATE(Complex)

}  // namespace hbd
