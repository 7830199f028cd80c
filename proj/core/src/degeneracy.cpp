#include "spinbath/degeneracy.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <system_error>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

void require_bath(int n_spins, HalfInteger spin) {
  if (n_spins < 1) throw InvalidArgument("N must be >= 1");
  require_spin_magnitude(spin);
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

BigInt binomial(int n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

std::size_t table_index(const DegeneracyTable& t, HalfInteger j) {
  return static_cast<std::size_t>((j.twice() - t.min_j().twice()) / 2);
}

// nu lookup that treats j outside the table (or of the wrong parity) as zero.
BigInt nu_or_zero(const DegeneracyTable& t, HalfInteger j) {
  return t.contains(j) ? t.nu(j) : BigInt(0);
}

}  // namespace

DegeneracyTable::DegeneracyTable(int n_spins, HalfInteger spin, std::vector<BigInt> multiplicities)
    : n_spins_(n_spins),
      spin_(spin),
      total_twice_(spin.twice() * n_spins),
      nu_(std::move(multiplicities)) {
  require_bath(n_spins, spin);
  const auto expected = static_cast<std::size_t>(total_twice_ / 2 + 1);
  if (nu_.size() != expected) {
    throw InvalidArgument("degeneracy table for N=" + std::to_string(n_spins) + ", 2S=" +
                          std::to_string(spin.twice()) + " needs " + std::to_string(expected) +
                          " rows, got " + std::to_string(nu_.size()));
  }
}

bool DegeneracyTable::contains(HalfInteger j) const {
  return j.twice() >= min_j().twice() && j.twice() <= total_twice_ &&
         (j.twice() - total_twice_) % 2 == 0;
}

const BigInt& DegeneracyTable::nu(HalfInteger j) const {
  if (!contains(j)) {
    throw InvalidArgument("j=" + j.to_string() + " is not admissible for N=" +
                          std::to_string(n_spins_) + ", S=" + spin_.to_string());
  }
  return nu_[table_index(*this, j)];
}

BigInt DegeneracyTable::hilbert_dimension() const {
  BigInt d = 1;
  for (int i = 0; i < n_spins_; ++i) d *= (spin_.twice() + 1);
  return d;
}

bool DegeneracyTable::satisfies_invariants() const {
  BigInt total = 0;
  for (std::size_t k = 0; k < nu_.size(); ++k) {
    if (nu_[k] < 0) return false;
    total += (j_at(k).twice() + 1) * nu_[k];
  }
  if (total != hilbert_dimension()) return false;
  if (nu_.back() != 1) return false;
  if (n_spins_ >= 2 && nu_[nu_.size() - 2] != n_spins_ - 1) return false;
  return true;
}

std::vector<BigInt> level_counts(int n_spins, HalfInteger spin) {
  require_bath(n_spins, spin);
  const std::int64_t d = spin.twice();
  const std::int64_t n = n_spins;
  const std::int64_t top = d * n;
  // Power-of-polynomial recurrence for (1 + x + ... + x^d)^N:
  //   k c_k = sum_{i=1}^{min(d,k)} ((N+1) i - k) c_{k-i},
  // run up to the middle coefficient and mirrored.
  std::vector<BigInt> coeffs(static_cast<std::size_t>(top + 1));
  coeffs[0] = 1;
  BigInt acc;
  for (std::int64_t k = 1; k <= top / 2; ++k) {
    acc = 0;
    for (std::int64_t i = 1; i <= std::min(d, k); ++i) {
      acc += coeffs[static_cast<std::size_t>(k - i)] * ((n + 1) * i - k);
    }
    coeffs[static_cast<std::size_t>(k)] = acc / k;
  }
  for (std::int64_t k = top / 2 + 1; k <= top; ++k) {
    coeffs[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(top - k)];
  }
  return coeffs;
}

BigInt dim_fm(int n_spins, HalfInteger spin, HalfInteger m) {
  require_bath(n_spins, spin);
  const std::int64_t total = spin.twice() * n_spins;
  if (std::abs(m.twice()) > total) throw InvalidArgument("|m| exceeds NS");
  if ((m.twice() - total) % 2 != 0) throw InvalidArgument("2m and 2NS must share parity");
  const auto coeffs = level_counts(n_spins, spin);
  return coeffs[static_cast<std::size_t>((m.twice() + total) / 2)];
}

BigInt dim_fm_multinomial(int n_spins, HalfInteger spin, HalfInteger m) {
  require_bath(n_spins, spin);
  const std::int64_t total = spin.twice() * n_spins;
  if (std::abs(m.twice()) > total) throw InvalidArgument("|m| exceeds NS");
  if ((m.twice() - total) % 2 != 0) throw InvalidArgument("2m and 2NS must share parity");
  // Occupations L_k of the level S - k must satisfy sum L_k = N and sum k L_k = NS - m.
  const int levels = static_cast<int>(spin.twice()) + 1;
  const std::int64_t lowering = (total - m.twice()) / 2;
  const BigInt n_fact = factorial(n_spins);
  BigInt sum = 0;
  std::vector<int> occupation(static_cast<std::size_t>(levels), 0);
  std::function<void(int, int, std::int64_t)> visit = [&](int level, int left, std::int64_t need) {
    if (level == levels - 1) {
      occupation[static_cast<std::size_t>(level)] = left;
      if (static_cast<std::int64_t>(level) * left != need) return;
      BigInt denom = 1;
      for (int l : occupation) denom *= factorial(l);
      sum += n_fact / denom;
      return;
    }
    for (int l = 0; l <= left; ++l) {
      const std::int64_t used = static_cast<std::int64_t>(level) * l;
      if (used > need) break;
      occupation[static_cast<std::size_t>(level)] = l;
      visit(level + 1, left - l, need - used);
    }
  };
  visit(0, n_spins, lowering);
  return sum;
}

DegeneracyTable degeneracy_table(int n_spins, HalfInteger spin) {
  const auto coeffs = level_counts(n_spins, spin);
  const std::int64_t total = spin.twice() * n_spins;
  std::vector<BigInt> nu;
  nu.reserve(static_cast<std::size_t>(total / 2 + 1));
  // Index of m in coeffs is m + NS; j runs over non-negative m.
  for (std::int64_t twice_j = total % 2; twice_j <= total; twice_j += 2) {
    const auto idx = static_cast<std::size_t>((twice_j + total) / 2);
    const BigInt above = (idx + 1 < coeffs.size()) ? coeffs[idx + 1] : BigInt(0);
    nu.push_back(coeffs[idx] - above);
  }
  return DegeneracyTable(n_spins, spin, std::move(nu));
}

BigInt spin_half_degeneracy(int n_spins, HalfInteger j) {
  if (n_spins < 1) throw InvalidArgument("N must be >= 1");
  if ((j.twice() - n_spins) % 2 != 0 || j.twice() < 0 || j.twice() > n_spins) {
    throw InvalidArgument("j not admissible for N spin-1/2 particles");
  }
  // N/2 - j is an integer here.
  const std::int64_t k = (n_spins - j.twice()) / 2;
  return binomial(n_spins, k) - binomial(n_spins, k - 1);
}

bool degeneracy_recursion_check(const DegeneracyTable& table_n, const DegeneracyTable& table_n1) {
  if (table_n.spin() != table_n1.spin()) throw InvalidArgument("tables must share S");
  if (table_n1.n_spins() != table_n.n_spins() + 1) {
    throw InvalidArgument("recursion check needs tables for N and N+1");
  }
  const HalfInteger s = table_n.spin();
  for (std::size_t k = 0; k < table_n1.size(); ++k) {
    const HalfInteger j = table_n1.j_at(k);
    BigInt sum = 0;
    for (HalfInteger jp = abs(j - s); jp <= j + s; jp = jp + HalfInteger::integer(1)) {
      sum += nu_or_zero(table_n, jp);
    }
    if (sum != table_n1.nu_at(k)) return false;
  }
  return true;
}

bool composition_check(const DegeneracyTable& table_1, const DegeneracyTable& table_2,
                       const DegeneracyTable& combined, HalfInteger total_j) {
  if (table_1.spin() != table_2.spin() || table_1.spin() != combined.spin()) {
    throw InvalidArgument("tables must share S");
  }
  if (combined.n_spins() != table_1.n_spins() + table_2.n_spins()) {
    throw InvalidArgument("combined table must hold N1+N2 spins");
  }
  BigInt sum = 0;
  for (std::size_t a = 0; a < table_1.size(); ++a) {
    for (std::size_t b = 0; b < table_2.size(); ++b) {
      const HalfInteger j1 = table_1.j_at(a);
      const HalfInteger j2 = table_2.j_at(b);
      if (abs(j1 - j2) <= total_j && total_j <= j1 + j2) sum += table_1.nu_at(a) * table_2.nu_at(b);
    }
  }
  return sum == nu_or_zero(combined, total_j);
}

bool composition_check(const DegeneracyTable& table_1, const DegeneracyTable& table_2,
                       HalfInteger total_j) {
  if (table_1.spin() != table_2.spin()) throw InvalidArgument("tables must share S");
  const auto combined =
      degeneracy_table(table_1.n_spins() + table_2.n_spins(), table_1.spin());
  return composition_check(table_1, table_2, combined, total_j);
}

void write_table_csv(const DegeneracyTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "two_j,nu\n";
  for (std::size_t k = 0; k < table.size(); ++k) {
    out << table.j_at(k).twice() << ',' << table.nu_at(k).str() << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

DegeneracyTable read_table_csv(int n_spins, HalfInteger spin, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "two_j,nu") {
    throw std::runtime_error(path.string() + ": expected header 'two_j,nu'");
  }
  std::vector<BigInt> nu;
  std::int64_t expect = (spin.twice() * n_spins) % 2;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(path.string() + ": malformed row");
    const std::int64_t two_j = std::stoll(line.substr(0, comma));
    if (two_j != expect) throw std::runtime_error(path.string() + ": rows must ascend in j");
    nu.emplace_back(line.substr(comma + 1));
    expect += 2;
  }
  return DegeneracyTable(n_spins, spin, std::move(nu));
}

DegeneracyTable cached_degeneracy_table(int n_spins, HalfInteger spin,
                                        const std::filesystem::path& cache_dir) {
  require_bath(n_spins, spin);
  const auto name =
      "nu_N" + std::to_string(n_spins) + "_2S" + std::to_string(spin.twice()) + ".csv";
  const auto path = cache_dir / name;
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    auto table = read_table_csv(n_spins, spin, path);
    if (table.satisfies_invariants()) return table;
  }
  auto table = degeneracy_table(n_spins, spin);
  std::filesystem::create_directories(cache_dir, ec);
  std::ostringstream tmp_name;
  tmp_name << name << ".tmp." << std::hex << reinterpret_cast<std::uintptr_t>(&table);
  const auto tmp = cache_dir / tmp_name.str();
  try {
    write_table_csv(table, tmp);
    std::filesystem::rename(tmp, path);
  } catch (const std::exception&) {
    std::filesystem::remove(tmp, ec);  // cache is best effort
  }
  return table;
}

std::optional<std::filesystem::path> cache_dir_from_environment() {
  const char* dir = std::getenv("SPINBATH_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

}  // namespace spinbath
