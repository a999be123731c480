#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "higman/random.hpp"
#include "higman/wqo.hpp"
#include "support.hpp"

using namespace higman;
using oracle::embeds_exhaustive;

namespace {

WordStream from_prefix(std::vector<Word> prefix, Word tail) {
  return WordStream([prefix = std::move(prefix), tail](std::size_t i) {
    return i < prefix.size() ? prefix[i] : tail;
  });
}

WordStream example_stream() { return from_prefix({Word{1, 1}, Word{0, 1}}, Word{0}); }

Preorder chain3() {
  return Preorder::validated({{true, true, true}, {false, true, true}, {false, false, true}});
}

}  // namespace

TEST(Preorder, EqualityIsValid) {
  const Preorder p = Preorder::validated({{true, false}, {false, true}});
  EXPECT_EQ(p.size(), 2u);
  EXPECT_TRUE(p.leq(0, 0));
  EXPECT_FALSE(p.leq(0, 1));
  EXPECT_EQ(p, Preorder::equality(2));
}

TEST(Preorder, RejectsMissingDiagonal) {
  try {
    Preorder::validated({{false, false}, {false, true}});
    FAIL();
  } catch (const InvalidPreorder& e) {
    EXPECT_STREQ(e.what(), "not reflexive at 0");
  }
}

TEST(Preorder, RejectsNonTransitive) {
  try {
    Preorder::validated({{true, true, false}, {false, true, true}, {false, false, true}});
    FAIL();
  } catch (const InvalidPreorder& e) {
    EXPECT_STREQ(e.what(), "not transitive (0,1,2)");
  }
}

TEST(Preorder, RejectsNonSquareAndBadDefault) {
  EXPECT_THROW(Preorder::validated({{true, false}, {true}}), InvalidPreorder);
  EXPECT_THROW(Preorder::validated({}), InvalidPreorder);
  EXPECT_THROW(Preorder::validated({{true}}, 1), InvalidPreorder);
}

TEST(Preorder, StoresMatrixUnchanged) {
  const Preorder::Matrix m{{true, true, true}, {false, true, true}, {false, false, true}};
  EXPECT_EQ(Preorder::validated(m, 2).relation(), m);
  EXPECT_EQ(Preorder::validated(m, 2).default_letter(), 2u);
}

TEST(Word, OverChecksLetters) {
  EXPECT_NO_THROW(Word::over(Preorder::equality(2), {0, 1, 1}));
  EXPECT_THROW(Word::over(Preorder::equality(2), {0, 2}), InvalidWord);
}

TEST(Word, PrefixRelations) {
  EXPECT_TRUE((Word{0}).is_initial_segment_of(Word{0, 1}));
  EXPECT_TRUE((Word{0, 1}).is_initial_segment_of(Word{0, 1}));
  EXPECT_FALSE((Word{0, 1}).is_proper_prefix_of(Word{0, 1}));
  EXPECT_TRUE((Word{}).is_proper_prefix_of(Word{1}));
  EXPECT_FALSE((Word{1}).is_initial_segment_of(Word{0, 1}));
  EXPECT_EQ((Word{1, 0, 2}).str(), "<1,0,2>");
}

TEST(WordEmbeds, EmptyEmbedsAnywhere) {
  EXPECT_TRUE(word_embeds(Preorder::equality(2), Word{}, Word{1, 0, 1}));
  EXPECT_TRUE(word_embeds(chain3(), Word{}, Word{}));
}

TEST(WordEmbeds, SkipsUnmatchedPositions) {
  EXPECT_TRUE(word_embeds(Preorder::equality(2), Word{0, 1}, Word{0, 0, 1}));
}

TEST(WordEmbeds, OrderOfLettersMatters) {
  EXPECT_FALSE(word_embeds(Preorder::equality(2), Word{1, 0}, Word{0, 1}));
}

TEST(WordEmbeds, UsesLetterOrder) {
  EXPECT_TRUE(word_embeds(chain3(), Word{0, 1}, Word{2, 2}));
  EXPECT_FALSE(word_embeds(chain3(), Word{2}, Word{0, 1}));
}

TEST(WordEmbeds, GreedyMatchesExhaustiveOnRandomPreorders) {
  Rng rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const Preorder order = random_preorder(rng, 3, 0.35);
    const Word a = random_word(rng, 3, 5);
    const Word b = random_word(rng, 3, 5);
    ASSERT_EQ(word_embeds(order, a, b), embeds_exhaustive(order, a, b))
        << a.str() << " into " << b.str();
  }
}

TEST(WordEmbeds, ReflexiveTransitiveAndPrefixMonotone) {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const Preorder order = random_preorder(rng, 1 + trial % 3, 0.4);
    const Word a = random_word(rng, order.size(), 4);
    const Word b = random_word(rng, order.size(), 4);
    const Word c = random_word(rng, order.size(), 4);
    ASSERT_TRUE(word_embeds(order, a, a));
    if (word_embeds(order, a, b) && word_embeds(order, b, c)) {
      ASSERT_TRUE(word_embeds(order, a, c));
    }
    const Word prefix(std::vector<Letter>(a.begin(), a.begin() + static_cast<long>(a.size() / 2)));
    ASSERT_TRUE(word_embeds(order, prefix, a));
  }
}

TEST(Theta, IndexZeroIsAlwaysBad) {
  EXPECT_TRUE(theta(Preorder::equality(2), WordStream::constant(Word{}), 0));
  EXPECT_TRUE(theta(Preorder::equality(2), example_stream(), 0));
}

TEST(Theta, EmptyFirstWordIsGood) {
  EXPECT_FALSE(theta(Preorder::equality(2), from_prefix({Word{}}, Word{1, 0}), 1));
}

TEST(Theta, ExamplePrefixIsBadUpToTwo) {
  const Preorder eq = Preorder::equality(2);
  EXPECT_TRUE(theta(eq, example_stream(), 2));
  EXPECT_FALSE(theta(eq, example_stream(), 3));
}

TEST(Theta, AntitoneAndMatchesGoodPairSearch) {
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const Preorder order = random_preorder(rng, 1 + trial % 3);
    std::vector<Word> words(8);
    for (auto& w : words) w = random_word(rng, order.size(), 3);
    const WordStream u = from_prefix(words, Word{});
    bool later_bad = false;
    for (std::size_t j = 8; j-- > 0;) {
      const bool bad = theta(order, u, j);
      ASSERT_TRUE(!later_bad || bad);
      ASSERT_EQ(!find_good_pair(order, u, j).has_value(), bad);
      later_bad = bad;
    }
  }
}

TEST(FindGoodPair, EmptyFirstWord) {
  const auto pair = find_good_pair(Preorder::equality(2), from_prefix({Word{}}, Word{1}), 1);
  ASSERT_TRUE(pair);
  EXPECT_EQ(*pair, (GoodPair{0, 1}));
}

TEST(FindGoodPair, ExampleStream) {
  const Preorder eq = Preorder::equality(2);
  const auto pair = find_good_pair(eq, example_stream(), 3);
  ASSERT_TRUE(pair);
  EXPECT_EQ(*pair, (GoodPair{2, 3}));
  EXPECT_FALSE(find_good_pair(eq, example_stream(), 2));
}

TEST(FindGoodPair, LeastBySecondIndexThenFirst) {
  // <0>, <1>, <0,1>: both (0,2) and (1,2) are good; (0,2) is least.
  const auto pair = find_good_pair(Preorder::equality(2),
                                   from_prefix({Word{0}, Word{1}, Word{0, 1}}, Word{}), 5);
  ASSERT_TRUE(pair);
  EXPECT_EQ(*pair, (GoodPair{0, 2}));
}

TEST(FtLt, SplitsLastLetter) {
  const Preorder p = chain3();
  EXPECT_EQ(ft_lt(Word{0, 1, 2}, p), std::make_pair(Word{0, 1}, Letter{2}));
  EXPECT_EQ(ft_lt(Word{1}, p), std::make_pair(Word{}, Letter{1}));
}

TEST(FtLt, EmptyWordGivesDefaultLetter) {
  EXPECT_EQ(ft_lt(Word{}, Preorder::equality(3, 2)), std::make_pair(Word{}, Letter{2}));
}

TEST(FtLt, RoundTrip) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_word(rng, 3, 5);
    if (w.empty()) continue;
    auto [front, last] = ft_lt(w, chain3());
    EXPECT_EQ(front.appended(last), w);
  }
}

TEST(Diagonals, ConstantFamily) {
  const Stream<WordStream> p = Stream<WordStream>::constant(WordStream::constant(Word{0, 1}));
  auto [fts, lts] = diagonals(p, Preorder::equality(2));
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(fts.at(i), Word{0});
    EXPECT_EQ(lts.at(i), 1u);
  }
}

TEST(Diagonals, EmptyDiagonal) {
  const Stream<WordStream> p = Stream<WordStream>::constant(empty_word_stream());
  auto [fts, lts] = diagonals(p, Preorder::equality(3, 1));
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(fts.at(i), Word{});
    EXPECT_EQ(lts.at(i), 1u);
  }
}

TEST(Diagonals, MixedFamilyPointwise) {
  const Preorder order = chain3();
  const Stream<WordStream> p([](std::size_t n) {
    return WordStream([n](std::size_t i) {
      std::vector<Letter> letters((n + i) % 4, static_cast<Letter>((n * 7 + i) % 3));
      return Word(std::move(letters));
    });
  });
  auto [fts, lts] = diagonals(p, order);
  for (std::size_t i : {0u, 3u, 9u}) {
    auto [front, last] = ft_lt(p.at(i).at(i), order);
    EXPECT_EQ(fts.at(i), front);
    EXPECT_EQ(lts.at(i), last);
  }
}
