#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "spinbath/degeneracy.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/spin_algebra.hpp"

using namespace spinbath;

namespace {

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

std::vector<BigInt> entries(const DegeneracyTable& t) {
  std::vector<BigInt> out;
  for (std::size_t k = 0; k < t.size(); ++k) out.push_back(t.nu_at(k));
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("spinbath_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(DimFm, AlignedStateIsUnique) {
  for (int n : {1, 5, 17}) {
    for (int twice : {1, 2, 3, 6}) EXPECT_EQ(dim_fm(n, half(twice), half(n * twice)), 1);
  }
}

TEST(DimFm, SmallEnumerations) {
  EXPECT_EQ(dim_fm(2, half(2), half(0)), 3);
  EXPECT_EQ(dim_fm(4, half(1), half(0)), 6);
}

TEST(DimFm, SymmetricAndMonotone) {
  const int n = 7;
  const HalfInteger s = half(3);
  for (int tm = 1; tm <= n * 3; tm += 2) {
    EXPECT_EQ(dim_fm(n, s, half(tm)), dim_fm(n, s, half(-tm)));
    if (tm + 2 <= n * 3) {
      EXPECT_GE(dim_fm(n, s, half(tm)), dim_fm(n, s, half(tm + 2)));
    }
  }
}

TEST(DimFm, AgreesWithMultinomialSum) {
  for (int n = 1; n <= 6; ++n) {
    for (int twice = 1; twice <= 6; ++twice) {
      for (int tm = -n * twice; tm <= n * twice; tm += 2) {
        EXPECT_EQ(dim_fm(n, half(twice), half(tm)), dim_fm_multinomial(n, half(twice), half(tm)))
            << n << " " << twice << " " << tm;
      }
    }
  }
}

TEST(DimFm, RejectsBadProjection) {
  EXPECT_THROW(dim_fm(3, half(2), half(8)), InvalidArgument);
  EXPECT_THROW(dim_fm(3, half(2), half(1)), InvalidArgument);
  EXPECT_THROW(dim_fm(0, half(2), half(0)), InvalidArgument);
}

TEST(DegeneracyTable, ThreeSpinOnes) {
  const auto t = degeneracy_table(3, half(2));
  EXPECT_EQ(entries(t), (std::vector<BigInt>{1, 3, 2, 1}));
  EXPECT_EQ(t.min_j(), HalfInteger::integer(0));
}

TEST(DegeneracyTable, FourSpinHalves) {
  const auto t = degeneracy_table(4, half(1));
  EXPECT_EQ(entries(t), (std::vector<BigInt>{2, 3, 1}));
  for (int tj = 0; tj <= 4; tj += 2) EXPECT_EQ(t.nu(half(tj)), spin_half_degeneracy(4, half(tj)));
}

TEST(DegeneracyTable, SingleSpin) {
  for (int twice = 1; twice <= 9; ++twice) {
    const auto t = degeneracy_table(1, half(twice));
    EXPECT_EQ(t.nu(half(twice)), 1);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) EXPECT_EQ(t.nu_at(k), 0);
  }
}

TEST(DegeneracyTable, InvariantsAcrossGrid) {
  for (int n = 1; n <= 40; n += 3) {
    for (int twice = 1; twice <= 6; ++twice) {
      const auto t = degeneracy_table(n, half(twice));
      EXPECT_TRUE(t.satisfies_invariants()) << n << " " << twice;
    }
  }
}

TEST(DegeneracyTable, LargeBathSumRuleIsExact) {
  const auto t = degeneracy_table(200, half(6));
  BigInt total = 0;
  for (std::size_t k = 0; k < t.size(); ++k) total += (t.j_at(k).twice() + 1) * t.nu_at(k);
  BigInt expected = 1;
  for (int i = 0; i < 200; ++i) expected *= 7;
  EXPECT_EQ(total, expected);
}

TEST(DegeneracyTable, SpinHalfClosedForm) {
  for (int n = 1; n <= 64; ++n) {
    const auto t = degeneracy_table(n, half(1));
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_EQ(t.nu_at(k), spin_half_degeneracy(n, t.j_at(k)));
  }
}

TEST(DegeneracyTable, MatchesSquaredAngularMomentumSpectrum) {
  const std::vector<std::pair<int, int>> cases = {{2, 1}, {5, 1}, {8, 1}, {3, 2}, {5, 2},
                                                  {3, 3}, {4, 3}, {3, 4}, {2, 7}};
  for (const auto& [n, twice] : cases) {
    const auto t = degeneracy_table(n, half(twice));
    const auto bf = brute_force_multiplicities(n, half(twice));
    for (std::size_t k = 0; k < t.size(); ++k) {
      const auto it = bf.find(t.j_at(k).twice());
      const std::int64_t count = it == bf.end() ? 0 : it->second;
      EXPECT_EQ(t.nu_at(k), count) << n << " " << twice << " j2=" << t.j_at(k).twice();
    }
  }
}

TEST(DegeneracyTable, NuLookupRejectsInadmissibleJ) {
  const auto t = degeneracy_table(3, half(2));
  EXPECT_THROW(t.nu(half(1)), InvalidArgument);
  EXPECT_THROW(t.nu(half(8)), InvalidArgument);
  EXPECT_THROW(DegeneracyTable(3, half(2), {1, 2}), InvalidArgument);
}

TEST(Recursion, WindowedSums) {
  EXPECT_EQ(entries(degeneracy_table(2, half(2))), (std::vector<BigInt>{1, 1, 1}));
  EXPECT_TRUE(degeneracy_recursion_check(degeneracy_table(1, half(2)), degeneracy_table(2, half(2))));
  EXPECT_TRUE(degeneracy_recursion_check(degeneracy_table(2, half(2)), degeneracy_table(3, half(2))));
  EXPECT_EQ(entries(degeneracy_table(2, half(1))), (std::vector<BigInt>{1, 1}));
  EXPECT_TRUE(degeneracy_recursion_check(degeneracy_table(1, half(1)), degeneracy_table(2, half(1))));
}

TEST(Recursion, HoldsAcrossGridAndDetectsCorruption) {
  for (int twice = 1; twice <= 5; ++twice) {
    for (int n = 1; n < 15; ++n) {
      EXPECT_TRUE(degeneracy_recursion_check(degeneracy_table(n, half(twice)),
                                             degeneracy_table(n + 1, half(twice))));
    }
  }
  auto nu = entries(degeneracy_table(4, half(2)));
  nu[1] += 1;
  EXPECT_FALSE(degeneracy_recursion_check(degeneracy_table(3, half(2)), DegeneracyTable(4, half(2), nu)));
  EXPECT_THROW(degeneracy_recursion_check(degeneracy_table(3, half(2)), degeneracy_table(4, half(1))),
               InvalidArgument);
}

TEST(Composition, TriangleRuleExamples) {
  EXPECT_TRUE(composition_check(degeneracy_table(1, half(1)), degeneracy_table(1, half(1)), half(2)));
  EXPECT_TRUE(composition_check(degeneracy_table(2, half(2)), degeneracy_table(1, half(2)), half(2)));
  EXPECT_TRUE(composition_check(degeneracy_table(2, half(1)), degeneracy_table(2, half(1)), half(0)));
  EXPECT_THROW(composition_check(degeneracy_table(2, half(1)), degeneracy_table(2, half(2)), half(0)),
               InvalidArgument);
}

TEST(Composition, RandomPartitions) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int twice = 1 + static_cast<int>(rng() % 4);
    const int n1 = 1 + static_cast<int>(rng() % 6);
    const int n2 = 1 + static_cast<int>(rng() % 6);
    const auto t1 = degeneracy_table(n1, half(twice));
    const auto t2 = degeneracy_table(n2, half(twice));
    const auto combined = degeneracy_table(n1 + n2, half(twice));
    for (std::size_t k = 0; k < combined.size(); ++k) {
      EXPECT_TRUE(composition_check(t1, t2, combined, combined.j_at(k)));
    }
  }
}

TEST(Cache, RoundTripAndRebuild) {
  const auto dir = scratch_dir("cache");
  const auto built = cached_degeneracy_table(9, half(3), dir);
  const auto path = dir / "nu_N9_2S3.csv";
  ASSERT_TRUE(std::filesystem::exists(path));
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "two_j,nu");
  EXPECT_EQ(read_table_csv(9, half(3), path), built);
  EXPECT_EQ(cached_degeneracy_table(9, half(3), dir), degeneracy_table(9, half(3)));

  // A corrupted cache entry is replaced.
  {
    std::ofstream out(path, std::ios::trunc);
    out << "two_j,nu\n1,5\n";
  }
  EXPECT_ANY_THROW(read_table_csv(9, half(3), path));
  std::filesystem::remove(path);
  EXPECT_EQ(cached_degeneracy_table(9, half(3), dir), degeneracy_table(9, half(3)));
  std::filesystem::remove_all(dir);
}

TEST(Cache, RejectsMalformedFiles) {
  const auto dir = scratch_dir("malformed");
  std::filesystem::create_directories(dir);
  const auto path = dir / "bad.csv";
  {
    std::ofstream out(path);
    out << "j,nu\n";
  }
  EXPECT_THROW(read_table_csv(2, half(1), path), std::runtime_error);
  {
    std::ofstream out(path);
    out << "two_j,nu\n2,1\n0,1\n";
  }
  EXPECT_THROW(read_table_csv(2, half(1), path), std::runtime_error);
  std::filesystem::remove_all(dir);
}
