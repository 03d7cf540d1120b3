#include <gtest/gtest.h>

#include "brute.hpp"
#include "pathplan/characterize.hpp"

using namespace pathplan;

namespace {

PathSemantics sem_of(const std::string& s) {
  PathSemantics sem;
  sem.skeleton = parse_skeleton(s);
  sem.output = sem.length();
  return sem;
}

AtomicQuery q_of(const std::string& r) { return parse_query(r); }

Skeleton random_skeleton(Rng& rng, std::size_t max_len, int rels) {
  Skeleton s;
  auto len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i)
    s.push_back(Atom{rels == 1 ? "r" : std::string(1, static_cast<char>('r' + rng.below(static_cast<std::uint64_t>(rels)))),
                     rng.below(2) == 1});
  return s;
}

void expect_sound(const WalkDecomposition& w, const Skeleton& candidate) {
  Skeleton emitted;
  int at = static_cast<int>(w.base.size());
  ASSERT_EQ(w.start, at);
  for (const auto& st : w.steps) {
    ASSERT_EQ(st.from, at);
    if (st.forward) {
      ASSERT_EQ(st.to, at + 1);
      ASSERT_EQ(st.emitted, w.base[static_cast<std::size_t>(at)]);
    } else {
      ASSERT_EQ(st.to, at - 1);
      ASSERT_EQ(st.emitted, w.base[static_cast<std::size_t>(at - 1)].inverted());
    }
    emitted.push_back(st.emitted);
    at = st.to;
  }
  ASSERT_EQ(emitted, candidate);
  ASSERT_EQ(at, w.end);
}

}  // namespace

TEST(FindWalk, ThroughRUst) {
  auto cand = parse_skeleton("t^-.s^-.s.s^-.u^-.r");
  auto w = find_walk(parse_skeleton("r^-.u.s.t"), cand, 0);
  ASSERT_TRUE(w);
  std::vector<bool> fwd;
  for (const auto& s : w->steps) fwd.push_back(s.forward);
  EXPECT_EQ(fwd, (std::vector<bool>{false, false, true, false, false, false}));
  expect_sound(*w, cand);
}

TEST(FindWalk, OneStep) {
  auto w = find_walk(parse_skeleton("r^-"), parse_skeleton("r"), 0);
  ASSERT_TRUE(w);
  ASSERT_EQ(w->steps.size(), 1u);
  EXPECT_FALSE(w->steps[0].forward);
  EXPECT_EQ(w->steps[0].emitted, (Atom{"r", false}));
}

TEST(FindWalk, WrongRelation) { EXPECT_FALSE(find_walk(parse_skeleton("r^-.a.b"), parse_skeleton("c"), 0)); }

TEST(FindWalk, SoundAndCompleteAgainstNfa) {
  Rng rng(5);
  int found = 0;
  for (int i = 0; i < 3000; ++i) {
    Skeleton base = random_skeleton(rng, 4, 2);
    Skeleton cand = random_skeleton(rng, 7, 2);
    int target = static_cast<int>(rng.below(base.size() + 1));
    auto w = find_walk(base, cand, target);
    ASSERT_EQ(w.has_value(), brute::nfa_walk(base, cand, static_cast<int>(base.size()), target))
        << to_string(base) << " / " << to_string(cand) << " -> " << target;
    if (w) {
      ++found;
      expect_sound(*w, cand);
    }
  }
  EXPECT_GT(found, 50);
}

TEST(Bounded, Examples) {
  auto d = is_bounded(sem_of("worksFor.worksFor^-.jobTitle"), q_of("jobTitle"));
  ASSERT_TRUE(d);
  EXPECT_EQ(to_string(d->forward_path), "worksFor");
  EXPECT_FALSE(d->loose);
  EXPECT_EQ(d->walk.end, 0);

  EXPECT_FALSE(is_bounded(sem_of("graduatedFrom.worksFor^-.jobTitle"), q_of("jobTitle")));

  d = is_bounded(sem_of("u.s.t.t^-.s^-.s.s^-.u^-.r"), q_of("r"));
  ASSERT_TRUE(d);
  EXPECT_EQ(to_string(d->forward_path), "u.s.t");
}

TEST(Bounded, ShortestForwardPath) {
  // r alone: P empty, one backward step
  auto d = is_bounded(sem_of("r"), q_of("r"));
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->forward_path.empty());
  // r.r^-.r is bounded with P empty as well
  d = is_bounded(sem_of("r.r^-.r"), q_of("r"));
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->forward_path.empty());
}

TEST(LooselyBounded, Examples) {
  auto d = is_loosely_bounded(sem_of("sing.onAlbum.onAlbum^-"), q_of("sing"));
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->loose);
  EXPECT_EQ(to_string(d->forward_path), "onAlbum");
  EXPECT_EQ(d->walk.end, 2);

  auto b = is_loosely_bounded(sem_of("worksFor.worksFor^-.jobTitle"), q_of("jobTitle"));
  ASSERT_TRUE(b);
  EXPECT_FALSE(b->loose);

  EXPECT_FALSE(is_loosely_bounded(sem_of("sing.onAlbum"), q_of("sing")));
}

TEST(LooselyBounded, DipBelowFirstSuccessorIsRejected) {
  // would pass if the walk were allowed to leave r^-.r.P through the bottom
  EXPECT_FALSE(is_loosely_bounded(sem_of("r.s.s^-.r.r^-"), q_of("r")));
}

TEST(LooselyBounded, AgreesWithBruteForce) {
  Rng rng(17);
  int bounded = 0, loose = 0;
  for (int i = 0; i < 5000; ++i) {
    Skeleton s = random_skeleton(rng, 7, 2);
    if (s.empty()) continue;
    PathSemantics sem;
    sem.skeleton = s;
    sem.output = sem.length();
    const Atom r{"r", false};
    bool b = is_bounded(sem, q_of("r")).has_value();
    bool l = is_loosely_bounded(sem, q_of("r")).has_value();
    ASSERT_EQ(b, brute::brute_bounded(s, r)) << to_string(s);
    ASSERT_EQ(l, brute::brute_loosely_bounded(s, r)) << to_string(s);
    ASSERT_TRUE(!b || l) << to_string(s);
    bounded += b;
    loose += l && !b;
  }
  EXPECT_GT(bounded, 20);
  EXPECT_GT(loose, 5);
}
