// Walk search over a base skeleton and the P.B decompositions built on it.
#include <algorithm>

#include "pathplan/characterize.hpp"

namespace pathplan {

std::optional<WalkDecomposition> find_constrained_walk(
    const Skeleton& base, const Skeleton& candidate,
    const std::vector<std::optional<int>>& required) {
  const int L = static_cast<int>(base.size());
  const int n = static_cast<int>(candidate.size());
  auto allowed = [&](int k, int p) {
    return k >= static_cast<int>(required.size()) || !required[k] || *required[k] == p;
  };

  // ok[k][p]: from position p, having emitted k atoms, the rest can be emitted
  std::vector<std::vector<char>> ok(n + 1, std::vector<char>(L + 1, 0));
  for (int p = 0; p <= L; ++p) ok[n][p] = allowed(n, p);
  for (int k = n - 1; k >= 0; --k) {
    for (int p = 0; p <= L; ++p) {
      if (!allowed(k, p)) continue;
      bool back = p > 0 && base[p - 1].inverted() == candidate[k] && ok[k + 1][p - 1];
      bool fwd = p < L && base[p] == candidate[k] && ok[k + 1][p + 1];
      ok[k][p] = back || fwd;
    }
  }
  if (!ok[0][L]) return std::nullopt;

  WalkDecomposition w;
  w.base = base;
  w.start = L;
  int p = L;
  for (int k = 0; k < n; ++k) {
    if (p > 0 && base[p - 1].inverted() == candidate[k] && ok[k + 1][p - 1]) {
      w.steps.push_back({false, candidate[k], p, p - 1});
      --p;
    } else {
      w.steps.push_back({true, candidate[k], p, p + 1});
      ++p;
    }
  }
  w.end = p;
  return w;
}

std::optional<WalkDecomposition> find_walk(const Skeleton& base, const Skeleton& candidate,
                                           int target) {
  std::vector<std::optional<int>> req(candidate.size() + 1);
  req.back() = target;
  return find_constrained_walk(base, candidate, req);
}

namespace {

// Try every split m = |P| (shortest first). Boundary b <= m sits on position
// b+1 of the base; later boundaries follow the walk.
std::optional<BoundedDecomposition> decompose(const Skeleton& s, int output,
                                              const std::vector<int>& filters,
                                              const Atom& r, bool loose) {
  const int L = static_cast<int>(s.size());
  const int target = loose ? 2 : 0;
  if (loose && (L == 0 || s[0] != r)) return std::nullopt;
  for (int m = loose ? 1 : 0; m <= L; ++m) {
    if (!loose && m == L) break;  // B must not be empty
    std::vector<std::optional<int>> req(static_cast<std::size_t>(L - m) + 1);
    bool feasible = true;
    auto need = [&](int boundary, int pos) {
      if (boundary <= m) {
        if (boundary + 1 != pos) feasible = false;
        return;
      }
      auto& slot = req[static_cast<std::size_t>(boundary - m)];
      if (slot && *slot != pos) feasible = false;
      slot = pos;
    };
    need(output, target);
    for (int f : filters) {
      if (f == 0) continue;  // boundary 0 is the constant itself
      need(f, 1);
    }
    if (!feasible) continue;

    Skeleton base{r.inverted()};
    base.insert(base.end(), s.begin(), s.begin() + m);
    auto w = find_constrained_walk(base, slice(s, static_cast<std::size_t>(m), s.size()), req);
    if (!w) continue;
    BoundedDecomposition d;
    d.forward_path = slice(s, loose ? 1 : 0, static_cast<std::size_t>(m));
    d.walk = std::move(*w);
    d.loose = loose;
    return d;
  }
  return std::nullopt;
}

}  // namespace

std::optional<BoundedDecomposition> is_bounded(const PathSemantics& sem, const AtomicQuery& q) {
  return decompose(sem.skeleton, sem.output, {}, q.relation, false);
}

std::optional<BoundedDecomposition> is_loosely_bounded(const PathSemantics& sem,
                                                       const AtomicQuery& q) {
  if (auto d = decompose(sem.skeleton, sem.output, {}, q.relation, false)) return d;
  return decompose(sem.skeleton, sem.output, {}, q.relation, true);
}

std::optional<BoundedDecomposition> constrained_bounded(const PathSemantics& sem,
                                                        const AtomicQuery& q, bool loose) {
  std::vector<int> filters;
  for (const auto& f : sem.filters) {
    if (f.constant != q.constant) return std::nullopt;
    filters.push_back(f.position);
  }
  return decompose(sem.skeleton, sem.output, filters, q.relation, loose);
}

}  // namespace pathplan
