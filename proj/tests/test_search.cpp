#include <gtest/gtest.h>

#include <map>

#include "helpers.hpp"

using namespace merlin;
using namespace merlin::theory;

// The four-element space {x, y, op(x), op(y)} with two hand-drawn orimetrics.
namespace {
enum E { X, Y, OX, OY };
using Set = std::vector<E>;

std::vector<E> children(E e) {
  if (e == OX) return {X};
  if (e == OY) return {Y};
  return {};
}

// m1: classes C = {x, y}, D = {op x, op y}; C -> D is 1, D -> C is 2
Dist m1(E a, E b) {
  bool ca = a == X || a == Y, cb = b == X || b == Y;
  if (ca == cb) return Dist::zero();
  return Dist::from_int(ca ? 1 : 2);
}

// m2: C = {x, y}, D1 = {op x}, D2 = {op y}
Dist m2(E a, E b) {
  auto cls = [](E e) { return e == X || e == Y ? 0 : e == OX ? 1 : 2; };
  static const int t[3][3] = {{0, 1, 2}, {1, 0, 3}, {1, 2, 0}};
  return Dist::from_int(t[cls(a)][cls(b)]);
}

Set sorted(Set s) {
  std::sort(s.begin(), s.end());
  return s;
}

const Set R = {X, Y, OX, OY};
const Set order0 = {X, OY, OX, Y};
const Set order1 = {X, Y, OY, OX};
const Set order2 = {X, OX, Y, OY};
}  // namespace

TEST(ToySpace, BothOrimetricsSatisfyAxioms) {
  auto show = [](E e) { return std::to_string(static_cast<int>(e)); };
  EXPECT_TRUE(check_axioms<E>(R, m1, show).ok());
  EXPECT_TRUE(check_axioms<E>(R, m2, show).ok());
}

TEST(ToySpace, ShortcutEdgeBreaksTriangle) {
  auto bad = [](E a, E b) { return (a == X || a == Y) && b == OY ? Dist::from_int(1) : m2(a, b); };
  EXPECT_FALSE(check_axioms<E>(R, bad, [](E e) { return std::to_string(static_cast<int>(e)); }).ok());
}

TEST(ToySpace, EnumerationOrders) {
  EXPECT_EQ(enumerate_bottom_up<E>(order0, children), (Set{X, OX, Y}));
  EXPECT_EQ(sorted(enumerate_bottom_up<E>(order1, children)), R);
  EXPECT_EQ(sorted(enumerate_bottom_up<E>(order2, children)), R);
}

TEST(ToySpace, BottomUpClosure) {
  EXPECT_EQ(sorted(bottom_up_closure<E>(R, children)), R);
  Set no_y = {X, OX, OY};
  EXPECT_EQ(bottom_up_closure<E>(no_y, children), (Set{X, OX}));
}

TEST(ToySpace, Factorize) {
  EXPECT_EQ(sorted(factorize<E>(order1, m1)), (Set{X, OY}));
  EXPECT_EQ(sorted(factorize<E>(order2, m2)), (Set{X, OX, OY}));
  EXPECT_EQ(sorted(factorize<E>(order2, m1)), (Set{X, OX}));
  // only the last one is closed under children
  auto closed = [](Set s) { return sorted(bottom_up_closure<E>(s, children)) == sorted(s); };
  EXPECT_FALSE(closed(factorize<E>(order1, m1)));
  EXPECT_FALSE(closed(factorize<E>(order2, m2)));
  EXPECT_TRUE(closed(factorize<E>(order2, m1)));
}

TEST(ToySpace, Balls) {
  auto b = [](E center, int r, bool closed) { return sorted(ball<E>(R, center, Dist::from_int(r), closed, m1)); };
  EXPECT_EQ(b(X, 0, false), Set{});
  EXPECT_EQ(b(X, 0, true), (Set{X, Y}));
  EXPECT_EQ(b(X, 1, false), (Set{X, Y}));
  EXPECT_EQ(b(X, 1, true), (Set{X, Y}));
  EXPECT_EQ(b(X, 2, true), R);
  EXPECT_EQ(b(OX, 1, false), (Set{OX, OY}));
  EXPECT_EQ(b(OX, 1, true), R);
}

TEST(ToySpace, PrunedSpaceIsBottomUpPartOfBall) {
  // ball around op(x) of radius 1 holds no leaf, so nothing survives bottom-up
  auto inside = prune<E>(R, OX, Dist::from_int(1), m1);
  EXPECT_EQ(bottom_up_closure<E>(inside, children), Set{});
}
