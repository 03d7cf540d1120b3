#include "brute.hpp"

#include <map>

namespace pathplan::brute {

bool nfa_walk(const Skeleton& base, const Skeleton& word, int start, int target) {
  const int n = static_cast<int>(base.size());
  std::set<int> at{start};
  for (const Atom& a : word) {
    std::set<int> next;
    for (int p : at) {
      if (p < n && base[static_cast<std::size_t>(p)] == a) next.insert(p + 1);
      if (p > 0 && base[static_cast<std::size_t>(p - 1)].inverted() == a) next.insert(p - 1);
    }
    if (next.empty()) return false;
    at = std::move(next);
  }
  return at.count(target) > 0;
}

bool brute_bounded(const Skeleton& s, const Atom& r) {
  const int L = static_cast<int>(s.size());
  for (int m = 0; m < L; ++m) {
    Skeleton base{r.inverted()};
    base.insert(base.end(), s.begin(), s.begin() + m);
    Skeleton rest(s.begin() + m, s.end());
    if (nfa_walk(base, rest, m + 1, 0)) return true;
  }
  return false;
}

bool brute_loosely_bounded(const Skeleton& s, const Atom& r) {
  if (brute_bounded(s, r)) return true;
  if (s.empty() || s[0] != r) return false;
  const int L = static_cast<int>(s.size());
  for (int m = 1; m <= L; ++m) {
    Skeleton base{r.inverted()};
    base.insert(base.end(), s.begin(), s.begin() + m);
    Skeleton rest(s.begin() + m, s.end());
    if (nfa_walk(base, rest, m + 1, 2)) return true;
  }
  return false;
}

void for_each_sequence(const Catalog& c, std::size_t max_calls,
                       const std::function<void(const std::vector<const SubFunction*>&)>& fn) {
  const auto& fs = c.closure();
  std::vector<const SubFunction*> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (const auto& f : fs) {
      cur.push_back(&f);
      rec(k);
      cur.pop_back();
    }
  };
  for (std::size_t k = 1; k <= max_calls; ++k) rec(k);
}

Skeleton concat_skeleton(const std::vector<const SubFunction*>& calls) {
  Skeleton s;
  for (auto* f : calls) s.insert(s.end(), f->skeleton.begin(), f->skeleton.end());
  return s;
}

namespace {
std::string key(const std::vector<const SubFunction*>& calls) {
  std::string s;
  for (std::size_t i = 0; i < calls.size(); ++i) s += (i ? "," : "") + calls[i]->name;
  return s;
}
}  // namespace

std::set<std::string> brute_minimal_weak(const AtomicQuery& q, const Catalog& c, std::size_t max_calls) {
  std::set<std::string> weak;
  std::vector<std::vector<const SubFunction*>> hits;
  for_each_sequence(c, max_calls, [&](const std::vector<const SubFunction*>& calls) {
    if (brute_loosely_bounded(concat_skeleton(calls), q.relation)) {
      weak.insert(key(calls));
      hits.push_back(calls);
    }
  });
  std::set<std::string> minimal;
  for (const auto& calls : hits) {
    const std::size_t n = calls.size();
    bool ok = true;
    for (std::uint32_t mask = 1; ok && mask + 1 < (1u << n); ++mask) {
      std::vector<const SubFunction*> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) sub.push_back(calls[i]);
      if (weak.count(key(sub))) ok = false;
    }
    if (ok) minimal.insert(key(calls));
  }
  return minimal;
}

Catalog random_catalog(Rng& rng, int relations, int functions, int max_len, double p_extra) {
  auto rels = relation_names(relations);
  Catalog c;
  for (int i = 0; i < functions; ++i) {
    PathFunction f;
    f.name = "f" + std::to_string(i);
    do {
      f.skeleton.clear();
      int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
      for (int k = 0; k < len; ++k) f.skeleton.push_back(Atom{rels[rng.below(rels.size())], rng.below(2) == 1});
    } while (pivot_count(f.skeleton) > 1);
    f.outputs.clear();
    for (int p = 1; p < f.length(); ++p)
      if (static_cast<double>(rng.below(1000)) < p_extra * 1000) f.outputs.push_back(p);
    f.outputs.push_back(f.length());
    c.add(std::move(f));
  }
  return c;
}

std::string describe(const Catalog& c) {
  std::string out;
  for (const auto& f : c.functions()) {
    out += f.name + " = " + to_string(f.skeleton) + " |";
    for (int p : f.outputs) out += " " + std::to_string(p);
    out += "\n";
  }
  return out;
}

Instance random_instance(Rng& rng, const std::vector<std::string>& relations,
                         const std::vector<std::string>& constants, int facts) {
  Instance inst;
  for (int i = 0; i < facts; ++i)
    inst.add(Fact{relations[rng.below(relations.size())], constants[rng.below(constants.size())],
                  constants[rng.below(constants.size())]});
  return inst;
}

}  // namespace pathplan::brute
