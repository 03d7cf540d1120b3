// Bottom-up scan over the forward path of a bounded plan.
//
// Nodes are numbered from the r-answer of a (node 0), a itself (node 1), up
// the forward path. Edge e_w joins node w and w+1; e_0 always reads r^-.
// A state is the set of call pieces crossing the current edge: a piece
// moving right reads its atom, a piece moving left reads the inverse. Calls
// end and start on nodes; an end and a start on the same node are glued
// (predecessor -> successor). At most one end and one start per node, which
// is the no-repeat argument behind minimality.
#include "pathplan/search.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

namespace pathplan {

void SearchState::normalize() { std::sort(members.begin(), members.end()); }

void SearchStats::merge(const SearchStats& o) {
  states += o.states;
  blocked += o.blocked;
  max_history = std::max(max_history, o.max_history);
  history_repeats += o.history_repeats;
  rejected += o.rejected;
  timed_out = timed_out || o.timed_out;
  truncated = truncated || o.truncated;
}

namespace {

Atom read_atom(const SubFunction& f, int index0, bool forward) {
  const Atom& a = f.skeleton[static_cast<std::size_t>(index0)];
  return forward ? a : a.inverted();
}

}  // namespace

bool state_consistent(const SearchState& s, const FunctionSet& fs) {
  if (s.members.empty()) return true;
  auto reads = [&](const PositionedFunction& m) {
    return read_atom(fs[static_cast<std::size_t>(m.function)], m.index - 1,
                     m.direction == Direction::Forward);
  };
  const PositionedFunction* ref = &s.members.front();
  for (const auto& m : s.members)
    if (m.designated) ref = &m;
  Atom label = reads(*ref);
  return std::all_of(s.members.begin(), s.members.end(),
                     [&](const PositionedFunction& m) { return reads(m) == label; });
}

Successors search_successors(const SearchState& s, const FunctionSet& fs) {
  Successors out;
  for (const auto& m : s.members) {
    int n = fs[static_cast<std::size_t>(m.function)].length();
    if (m.direction == Direction::Forward) {
      if (m.index == n) {
        ++out.ends;
        if (m.designated) out.designated_ended = true;
      } else {
        out.advanced.members.push_back({m.function, m.index + 1, Direction::Forward, m.designated});
      }
    } else {
      if (m.index == 1) ++out.starts;
      else out.advanced.members.push_back({m.function, m.index - 1, Direction::Backward, m.designated});
    }
  }
  out.advanced.normalize();
  return out;
}

namespace {

struct Member {
  int call;
  int atom;  // 0-based
  bool right;
  bool des;
};

struct Call {
  int fn;
  std::uint64_t done = 0;  // atoms already placed
  int pred = -1, succ = -1;
  int start = -1, end = -1;
};

struct Branch {
  std::vector<Call> calls;
  std::vector<Member> members;
  int begin = -1, final = -1;
};

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

class Scanner {
 public:
  Scanner(const AtomicQuery& q, const FunctionSet& fs, const ScanConfig& cfg,
          const std::function<bool(const PlanAssembly&)>& sink, SearchStats& stats)
      : q_(q), fs_(fs), cfg_(cfg), sink_(sink), stats_(stats) {
    if (cfg.options.timeout) deadline_ = std::chrono::steady_clock::now() + *cfg.options.timeout;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      int fn = static_cast<int>(i);
      const auto& sk = fs[i].skeleton;
      if (sk.empty() || sk.size() > 63) continue;
      by_first_[sk.front()].push_back(fn);
      if (!cfg.final_ok || cfg.final_ok(fn)) by_last_final_[sk.back()].push_back(fn);
      by_last_[sk.back()].push_back(fn);
      for (std::size_t j = 0; j + 1 < sk.size(); ++j)
        if (sk[j + 1] == sk[j].inverted()) by_pivot_[sk[j + 1]].push_back({fn, static_cast<int>(j)});
    }
  }

  void run() {
    Branch b;
    node(0, std::move(b));
  }

 private:
  const AtomicQuery& q_;
  const FunctionSet& fs_;
  const ScanConfig& cfg_;
  const std::function<bool(const PlanAssembly&)>& sink_;
  SearchStats& stats_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::map<Atom, std::vector<int>> by_first_, by_last_, by_last_final_;
  std::map<Atom, std::vector<std::pair<int, int>>> by_pivot_;  // (fn, j): atom j+1 = atom j ^-
  std::unordered_set<std::string> seen_;
  std::unordered_set<std::string> visited_, expanded_;  // single-plan mode
  std::unordered_set<std::string> barren_;  // states whose every continuation fails
  std::size_t cuts_ = 0;                    // history / depth cut-offs so far
  std::size_t assembled_ = 0;
  std::size_t ticks_ = 0;
  std::size_t emitted_ = 0;
  bool stop_ = false;
  static const std::vector<int> kNoFns;
  static const std::vector<std::pair<int, int>> kNoPivots;

  int len(int fn) const { return fs_[static_cast<std::size_t>(fn)].length(); }
  int end_node() const { return cfg_.loose ? 2 : 0; }
  Atom reads(const Branch& b, const Member& m) const {
    return read_atom(fs_[static_cast<std::size_t>(b.calls[static_cast<std::size_t>(m.call)].fn)],
                     m.atom, m.right);
  }
  template <class T>
  static const std::vector<T>& lookup(const std::map<Atom, std::vector<T>>& m, const Atom& a,
                                      const std::vector<T>& none) {
    auto it = m.find(a);
    return it == m.end() ? none : it->second;
  }

  static bool link(Branch& b, int e, int s) {
    if (e == s) return false;
    auto& ce = b.calls[static_cast<std::size_t>(e)];
    auto& cs = b.calls[static_cast<std::size_t>(s)];
    if (ce.succ != -1 || cs.pred != -1) return false;
    for (int x = s; x != -1; x = b.calls[static_cast<std::size_t>(x)].succ)
      if (x == e) return false;  // would close a cycle
    ce.succ = s;
    cs.pred = e;
    return true;
  }

  // Places the last atom of a call arriving from the right at node w.
  int add_end(Branch& b, int fn, int call, int w) {
    int n = len(fn);
    if (call < 0) {
      call = static_cast<int>(b.calls.size());
      b.calls.push_back(Call{fn});
    }
    auto& c = b.calls[static_cast<std::size_t>(call)];
    if (c.done & bit(n - 1)) return -1;
    c.done |= bit(n - 1);
    c.end = w;
    b.members.push_back({call, n - 1, false, false});
    return call;
  }

  int add_start(Branch& b, int fn, int call, int w, bool des) {
    if (call < 0) {
      call = static_cast<int>(b.calls.size());
      b.calls.push_back(Call{fn});
    }
    auto& c = b.calls[static_cast<std::size_t>(call)];
    if (c.done & bit(0)) return -1;
    c.done |= bit(0);
    c.start = w;
    b.members.push_back({call, 0, true, des});
    return call;
  }

  bool add_pivot(Branch& b, int fn, int j, int call) {
    if (call < 0) {
      call = static_cast<int>(b.calls.size());
      b.calls.push_back(Call{fn});
    }
    auto& c = b.calls[static_cast<std::size_t>(call)];
    if (c.done & (bit(j) | bit(j + 1))) return false;
    c.done |= bit(j) | bit(j + 1);
    b.members.push_back({call, j, false, false});
    b.members.push_back({call, j + 1, true, false});
    return true;
  }

  // existing calls of fn that still miss all of `atoms`
  static std::vector<int> open_calls(const Branch& b, int fn, std::uint64_t atoms) {
    std::vector<int> out{-1};
    for (std::size_t i = 0; i < b.calls.size(); ++i)
      if (b.calls[i].fn == fn && !(b.calls[i].done & atoms)) out.push_back(static_cast<int>(i));
    return out;
  }

  bool timed_out() {
    if (stop_) return true;
    if (deadline_ && (++ticks_ & 255) == 0 && std::chrono::steady_clock::now() > *deadline_) {
      stats_.timed_out = true;
      stop_ = true;
    }
    return stop_;
  }

  void node(int w, Branch b) {
    if (timed_out()) return;

    std::vector<Member> cont;
    int te = -1, ts = -1;
    bool des_cont = false, des_ended = false;
    auto present = [&](int call, int atom, bool right) {
      return std::any_of(b.members.begin(), b.members.end(), [&](const Member& m) {
        return m.call == call && m.atom == atom && m.right == right;
      });
    };
    for (const auto& m : b.members) {
      auto& c = b.calls[static_cast<std::size_t>(m.call)];
      int n = len(c.fn);
      if (m.right) {
        if (m.atom == n - 1) {
          if (te != -1) return;
          te = m.call;
          c.end = w;
          if (m.des) des_ended = true;
        } else if (!present(m.call, m.atom + 1, false)) {
          if (c.done & bit(m.atom + 1)) return;
          c.done |= bit(m.atom + 1);
          cont.push_back({m.call, m.atom + 1, true, m.des});
          if (m.des) des_cont = true;
        }
        // else: turns around here together with its left-moving half
      } else {
        if (m.atom == 0) {
          if (ts != -1) return;
          ts = m.call;
          c.start = w;
        } else if (!present(m.call, m.atom - 1, true)) {
          if (c.done & bit(m.atom - 1)) return;
          c.done |= bit(m.atom - 1);
          cont.push_back({m.call, m.atom - 1, false, false});
        }
      }
    }
    b.members = std::move(cont);

    enum Need { No = 0, Required = 1, Optional = 2 };
    Need need_end = Need::No, need_start = Need::No;
    bool start_designated = false;
    bool pair_optional = false;
    int link_from = -1, link_to = -1;

    if (w == 1) {
      if (te != -1) return;
      if (ts != -1) {
        // the first call turned back at a: nothing can cross e_1
        if (b.begin != -1 || !b.members.empty()) return;
        b.begin = ts;
        finalize(b, w);
        return;
      }
      need_start = Need::Required;
      start_designated = true;
    } else if (w == end_node()) {
      if (ts != -1) return;
      if (te != -1) {
        if (b.final != -1) return;
        if (cfg_.final_ok && !cfg_.final_ok(b.calls[static_cast<std::size_t>(te)].fn)) return;
        b.final = te;
      } else {
        need_end = Need::Required;
      }
    } else {
      if (te != -1 && ts != -1) {
        if (!link(b, te, ts)) return;
        if (des_ended) {
          if (!b.members.empty()) return;
          finalize(b, w);
          return;
        }
      } else if (te != -1) {
        need_start = Need::Required;
        start_designated = des_ended;
        link_from = te;
      } else if (ts != -1) {
        need_end = Need::Required;
        link_to = ts;
      } else if (w != 1) {
        pair_optional = true;
      }
    }

    if (need_start == Need::Required && start_designated) {
      const bool loose_first = cfg_.loose && w == 1;
      for (std::size_t fi = 0; fi < fs_.size(); ++fi) {
        int fn = static_cast<int>(fi);
        if (len(fn) == 0 || len(fn) > 63) continue;
        Atom label = fs_[fi].skeleton.front();
        if (loose_first && label != q_.relation) continue;
        for (int call : open_calls(b, fn, bit(0))) {
          Branch nb = b;
          int c = add_start(nb, fn, call, w, true);
          if (c < 0) continue;
          if (w == 1) {
            if (nb.begin != -1) continue;
            nb.begin = c;
          } else if (!link(nb, link_from, c)) {
            continue;
          }
          with_label(w, std::move(nb), label, need_end, Need::No, false, -1, -1);
          if (stop_) return;
        }
      }
      return;
    }

    std::optional<Atom> label;
    if (w == 0) label = q_.relation.inverted();
    else if (des_cont)
      for (const auto& m : b.members)
        if (m.des) label = reads(b, m);

    if (!label) {
      // nothing may cross e_w any more
      if (need_end == Need::Required || need_start == Need::Required || !b.members.empty()) return;
      finalize(b, w);
      return;
    }
    with_label(w, std::move(b), *label, need_end, need_start, pair_optional, link_from, link_to);
  }

  // e_w reads `label`; add the required/optional pieces and move on.
  void with_label(int w, Branch b, const Atom& label, int need_end_i, int need_start_i,
                  bool pair_optional, int link_from, int link_to) {
    enum { No = 0, Required = 1 };
    for (const auto& m : b.members)
      if (reads(b, m) != label) return;
    if (cfg_.loose && w == 1 && label != q_.relation) return;

    const Atom back = label.inverted();
    const bool end_is_final = w == end_node();

    // stage 1: end / start pieces
    auto after_ends = [&](Branch nb) { pivots(w, std::move(nb), label); };

    if (need_end_i == Required) {
      const auto& fns = lookup(end_is_final ? by_last_final_ : by_last_, back, kNoFns);
      for (int fn : fns)
        for (int call : open_calls(b, fn, bit(len(fn) - 1))) {
          Branch nb = b;
          int c = add_end(nb, fn, call, w);
          if (c < 0) continue;
          if (end_is_final) {
            if (nb.final != -1) continue;
            nb.final = c;
          } else if (!link(nb, c, link_to)) {
            continue;
          }
          after_ends(std::move(nb));
          if (stop_) return;
        }
      return;
    }
    if (need_start_i == Required) {
      for (int fn : lookup(by_first_, label, kNoFns))
        for (int call : open_calls(b, fn, bit(0))) {
          Branch nb = b;
          int c = add_start(nb, fn, call, w, false);
          if (c < 0 || !link(nb, link_from, c)) continue;
          after_ends(std::move(nb));
          if (stop_) return;
        }
      return;
    }
    after_ends(b);
    if (stop_ || !pair_optional) return;
    for (int fe : lookup(by_last_, back, kNoFns))
      for (int ce : open_calls(b, fe, bit(len(fe) - 1)))
        for (int fsn : lookup(by_first_, label, kNoFns)) {
          Branch nb = b;
          int e = add_end(nb, fe, ce, w);
          if (e < 0) continue;
          for (int cs : open_calls(nb, fsn, bit(0))) {
            Branch nb2 = nb;
            int s = add_start(nb2, fsn, cs, w, false);
            if (s < 0 || !link(nb2, e, s)) continue;
            after_ends(std::move(nb2));
            if (stop_) return;
          }
        }
  }

  // optional call that comes down to node w and turns back up
  void pivots(int w, Branch b, const Atom& label) {
    enter(w, b);
    if (stop_) return;
    for (auto [fn, j] : lookup(by_pivot_, label, kNoPivots))
      for (int call : open_calls(b, fn, bit(j) | bit(j + 1))) {
        Branch nb = b;
        if (!add_pivot(nb, fn, j, call)) continue;
        enter(w, std::move(nb));
        if (stop_) return;
      }
  }

  bool dead(const Branch& b) const {
    if (b.begin == -1 || b.final == -1) return false;
    std::size_t n = 0;
    for (int x = b.begin; x != -1; x = b.calls[static_cast<std::size_t>(x)].succ) {
      ++n;
      // chain closed: pieces of its own calls may still cross, nothing else may join
      if (x == b.final) return n != b.calls.size();
    }
    return false;
  }

  int phase(int w) const { return w == 0 ? 0 : (cfg_.loose && w == 1) ? 1 : 2; }

  std::string positioned(int w, const Branch& b) const {
    std::vector<std::tuple<int, int, bool, bool>> ms;
    for (const auto& m : b.members)
      ms.emplace_back(b.calls[static_cast<std::size_t>(m.call)].fn, m.atom, m.right, m.des);
    std::sort(ms.begin(), ms.end());
    std::string s = std::to_string(phase(w)) + "|";
    for (const auto& [fn, atom, right, des] : ms)
      s += std::to_string(fn) + ":" + std::to_string(atom) + (right ? ">" : "<") + (des ? "*" : "") + ";";
    return s;
  }

  std::string encode(int w, const Branch& b) const {
    std::vector<std::size_t> order(b.members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto mkey = [&](const Member& m) {
      const auto& c = b.calls[static_cast<std::size_t>(m.call)];
      return std::tuple(c.fn, m.atom, m.right, m.des, c.done);
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return mkey(b.members[x]) < mkey(b.members[y]); });

    std::vector<int> label(b.calls.size(), -1);
    std::vector<int> listed;
    auto give = [&](int call) {
      if (label[static_cast<std::size_t>(call)] == -1) {
        label[static_cast<std::size_t>(call)] = static_cast<int>(listed.size());
        listed.push_back(call);
      }
    };
    for (auto i : order) give(b.members[i].call);
    // unfinished calls with no piece on this edge
    std::vector<int> rest;
    for (std::size_t i = 0; i < b.calls.size(); ++i) {
      const auto& c = b.calls[i];
      if (label[i] == -1 && c.done != (bit(len(c.fn)) - 1)) rest.push_back(static_cast<int>(i));
    }
    auto ckey = [&](int i) {
      const auto& c = b.calls[static_cast<std::size_t>(i)];
      return std::tuple(c.fn, c.done, c.pred != -1, c.succ != -1, i == b.begin, i == b.final);
    };
    std::sort(rest.begin(), rest.end(), [&](int x, int y) { return ckey(x) < ckey(y); });
    for (int i : rest) give(i);

    auto head = [&](int c) {
      while (b.calls[static_cast<std::size_t>(c)].pred != -1) c = b.calls[static_cast<std::size_t>(c)].pred;
      return c;
    };
    std::map<int, int> frag;
    std::string s = std::to_string(phase(w)) + (b.begin != -1 ? "B" : "b") + (b.final != -1 ? "F" : "f") + "|";
    for (auto i : order) {
      const auto& m = b.members[i];
      s += std::to_string(b.calls[static_cast<std::size_t>(m.call)].fn) + ":" + std::to_string(m.atom) +
           (m.right ? ">" : "<") + (m.des ? "*" : "") + "@" +
           std::to_string(label[static_cast<std::size_t>(m.call)]) + ";";
    }
    s += "|";
    for (int c : listed) {
      const auto& call = b.calls[static_cast<std::size_t>(c)];
      int h = head(c);
      auto it = frag.emplace(h, static_cast<int>(frag.size())).first;
      s += std::to_string(call.fn) + "/" + std::to_string(call.done) + "/" +
           (call.pred != -1 ? "p" : "") + (call.succ != -1 ? "s" : "") + (c == b.begin ? "B" : "") +
           (c == b.final ? "F" : "") + "/" + std::to_string(it->second) + ";";
    }
    return s;
  }

  // b.members now cross e_w
  void enter(int w, Branch b) {
    if (stop_) return;
    if (b.members.empty()) {
      if (w == 0) node(1, std::move(b));
      else finalize(b, w);
      return;
    }
    if (dead(b)) return;
    if (w >= cfg_.options.max_depth) {
      ++cuts_;
      return;
    }
    std::string key = encode(w, b);
    if (barren_.count(key)) return;
    // a minimal plan never shows the same positioned functions twice
    std::string state = positioned(w, b);
    if (!seen_.insert(state).second) {
      ++stats_.blocked;
      ++cuts_;
      return;
    }
    if (cfg_.single_plan) {
      // a state that failed once fails again; the path history still applies
      if (!visited_.insert(key).second) {
        seen_.erase(state);
        ++stats_.blocked;
        return;
      }
      if (!expanded_.insert(key).second) ++stats_.history_repeats;  // independent tally
    }
    if (w >= 1) ++stats_.states;
    history_.push_back(state);
    stats_.max_history = std::max(stats_.max_history, history_.size());
    const std::size_t cuts = cuts_, found = assembled_;
    node(w + 1, std::move(b));
    history_.pop_back();
    seen_.erase(state);
    // nothing below depended on the history, so no history can make it fruitful
    if (!stop_ && cuts_ == cuts && assembled_ == found) barren_.insert(key);
  }

  void finalize(const Branch& b, int top) {
    if (b.begin == -1 || b.final == -1 || !b.members.empty()) return;
    for (const auto& c : b.calls)
      if (c.done != bit(len(c.fn)) - 1) return;
    ++assembled_;
    PlanAssembly pa;
    pa.loose = cfg_.loose;
    pa.top = top;
    std::size_t guard = 0;
    for (int x = b.begin; x != -1 && guard <= b.calls.size(); x = b.calls[static_cast<std::size_t>(x)].succ, ++guard) {
      const auto& c = b.calls[static_cast<std::size_t>(x)];
      pa.functions.push_back(c.fn);
      pa.start_nodes.push_back(c.start);
      pa.end_nodes.push_back(c.end);
      if (x == b.final) break;
    }
    if (pa.functions.size() != b.calls.size()) return;
    if (b.calls[static_cast<std::size_t>(b.final)].succ != -1) return;
    ++emitted_;
    if (!sink_(pa)) stop_ = true;
    if (emitted_ >= cfg_.options.max_plans) {
      stats_.truncated = true;
      stop_ = true;
    }
  }

  std::vector<std::string> history_;
};

const std::vector<int> Scanner::kNoFns;
const std::vector<std::pair<int, int>> Scanner::kNoPivots;

}  // namespace

void scan_plans(const AtomicQuery& q, const FunctionSet& fs, const ScanConfig& cfg,
                const std::function<bool(const PlanAssembly&)>& sink, SearchStats& stats) {
  Scanner s(q, fs, cfg, sink, stats);
  s.run();
}

}  // namespace pathplan
