#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "dqforge/edit_distance.hpp"
#include "dqforge/rng.hpp"

using dq::dld;
using dq::dls;

TEST_CASE("hand-checked distances") {
  CHECK(dld("", "") == 0);
  CHECK(dld("abc", "abc") == 0);
  CHECK(dld("abc", "") == 3);
  CHECK(dld("", "xy") == 2);
  CHECK(dld("abc", "abx") == 1);    // substitution
  CHECK(dld("abc", "abcd") == 1);   // insertion
  CHECK(dld("abc", "ac") == 1);     // deletion
  CHECK(dld("abcd", "abdc") == 1);  // adjacent transposition
  CHECK(dld("France", "Fracne") == 1);
  CHECK(dld("Pau", "Pou") == 1);
  CHECK(dld("North Dakota", "South Dakota") == 2);
}

TEST_CASE("one-shot substring resolution caps chained swaps") {
  // the optimal-string-alignment form may not edit a transposed pair again
  CHECK(dld("ca", "abc") == 3);
}

TEST_CASE("similarity normalizes by the longer string") {
  CHECK(dls("France", "Fracne") == doctest::Approx(5.0 / 6.0));
  CHECK(dls("Pau", "Pou") == doctest::Approx(2.0 / 3.0));
  CHECK(dls("North Dakota", "South Dakota") == doctest::Approx(10.0 / 12.0));
  CHECK(dls("", "") == 1.0);
  CHECK(dls("same", "same") == 1.0);
  CHECK(dls("a", "") == 0.0);
}

TEST_CASE("random pair properties: symmetry, identity, bounds") {
  std::mt19937_64 rng = dq::makeRng(dq::deriveSeed(11, "test", "dld-props"));
  auto randomWord = [&](std::size_t maxLen) {
    std::string s(rng() % (maxLen + 1), 'a');
    for (char& c : s) c = static_cast<char>('a' + rng() % 6);  // small alphabet provokes collisions
    return s;
  };
  for (int i = 0; i < 12000; ++i) {
    const std::string a = randomWord(12);
    const std::string b = randomWord(12);
    const std::size_t d = dld(a, b);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(d == dld(b, a));
    CHECK(d <= std::max(a.size(), b.size()));
    CHECK(d >= (a.size() > b.size() ? a.size() - b.size() : b.size() - a.size()));
    CHECK(dld(a, a) == 0);
    if (d == 0) CHECK(a == b);
    const double s = dls(a, b);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("transpositions beat plain edit distance where they apply") {
  CHECK(dld("expensive", "epxensive") == 1);
  CHECK(dld("receive", "recieve") == 1);
}
