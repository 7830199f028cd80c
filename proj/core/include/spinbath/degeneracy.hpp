#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spinbath/half_integer.hpp"

namespace spinbath {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Multiplicities nu(j, N; S) of total angular momentum j in the N-fold product of
/// spin-S spaces, for j = jmin, jmin+1, ..., NS (jmin = 0 or 1/2).
class DegeneracyTable {
 public:
  DegeneracyTable(int n_spins, HalfInteger spin, std::vector<BigInt> multiplicities);

  int n_spins() const { return n_spins_; }
  HalfInteger spin() const { return spin_; }
  HalfInteger min_j() const { return HalfInteger::from_twice(total_twice_ % 2); }
  HalfInteger max_j() const { return HalfInteger::from_twice(total_twice_); }
  std::size_t size() const { return nu_.size(); }

  /// j of the k-th row (ascending).
  HalfInteger j_at(std::size_t k) const {
    return HalfInteger::from_twice(total_twice_ % 2 + 2 * static_cast<std::int64_t>(k));
  }
  const BigInt& nu_at(std::size_t k) const { return nu_[k]; }

  bool contains(HalfInteger j) const;
  /// Throws InvalidArgument for a j outside the table.
  const BigInt& nu(HalfInteger j) const;

  /// (2S+1)^N.
  BigInt hilbert_dimension() const;

  /// Sum rule, nu(NS) = 1, nu(NS-1) = N - 1 for N >= 2, non-negativity.
  bool satisfies_invariants() const;

  bool operator==(const DegeneracyTable&) const = default;

 private:
  int n_spins_;
  HalfInteger spin_;
  std::int64_t total_twice_;  // 2NS
  std::vector<BigInt> nu_;
};

/// Coefficients of (1 + x + ... + x^{2S})^N; entry k is dim F_m for m = k - NS.
std::vector<BigInt> level_counts(int n_spins, HalfInteger spin);

/// Number of product states with total projection m.
BigInt dim_fm(int n_spins, HalfInteger spin, HalfInteger m);

/// Same count from the constrained multinomial sum over occupation numbers; exponential
/// cost, kept as an independent cross-check for small N.
BigInt dim_fm_multinomial(int n_spins, HalfInteger spin, HalfInteger m);

/// nu(j) = dim F_j - dim F_{j+1}.
DegeneracyTable degeneracy_table(int n_spins, HalfInteger spin);

/// S = 1/2 closed form C(N, N/2 - j) - C(N, N/2 - j - 1).
BigInt spin_half_degeneracy(int n_spins, HalfInteger j);

/// True iff nu(j, N+1) = sum_{j'=|j-S|}^{j+S} nu(j', N) for every j of the larger table.
bool degeneracy_recursion_check(const DegeneracyTable& table_n, const DegeneracyTable& table_n1);

/// True iff nu(J, N1+N2) = sum_{j1,j2} nu(j1,N1) nu(j2,N2) [|j1-j2| <= J <= j1+j2].
/// `combined` must be the table for N1+N2 spins.
bool composition_check(const DegeneracyTable& table_1, const DegeneracyTable& table_2,
                       const DegeneracyTable& combined, HalfInteger total_j);

/// Convenience overload that builds the N1+N2 table itself.
bool composition_check(const DegeneracyTable& table_1, const DegeneracyTable& table_2,
                       HalfInteger total_j);

/// Cache file: header `two_j,nu`, decimal big integers, rows ascending in j.
void write_table_csv(const DegeneracyTable& table, const std::filesystem::path& path);
DegeneracyTable read_table_csv(int n_spins, HalfInteger spin, const std::filesystem::path& path);

/// Loads the table from `cache_dir/nu_N<N>_2S<2S>.csv` when present, otherwise builds it
/// and writes the file through a temporary followed by a rename.
DegeneracyTable cached_degeneracy_table(int n_spins, HalfInteger spin,
                                        const std::filesystem::path& cache_dir);

/// Cache directory from the SPINBATH_CACHE_DIR environment variable, if set.
std::optional<std::filesystem::path> cache_dir_from_environment();

}  // namespace spinbath
