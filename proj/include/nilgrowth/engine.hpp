#pragma once

// Exhaustive exploration of Cayley graphs: norm tables, volume and geodesic
// growth, the alternating family words of the virtually-Engel group, the
// zero-drift moment sweep, norm gaps and table persistence.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nilgrowth/rational.hpp"
#include "nilgrowth/words.hpp"
#include "nilgrowth/zoo.hpp"

namespace nilgrowth::engine {

struct BfsOptions {
  std::size_t max_elements = 50'000'000;
  unsigned threads = 1;
};

/// Fingerprint of a (group, generating set) pair: FNV-1a over the group name
/// and each letter's name, weight and element encoding.
std::uint64_t fingerprint(const zoo::GroupDescriptor& desc, const words::GenSet& gens);

/// Sorted canonical encodings of the elements of each sphere, up to a radius.
/// Layer n holds the elements of norm exactly n (possibly none when weights
/// exceed 1).
class NormTable {
 public:
  /// Table of radius 0 holding only the identity.
  NormTable(const zoo::GroupDescriptor& desc, words::GenSet gens);
  NormTable(const zoo::GroupDescriptor& desc, words::GenSet gens, std::vector<std::vector<std::string>> layers);

  NormTable(const NormTable&) = delete;
  NormTable& operator=(const NormTable&) = delete;
  NormTable(NormTable&&) = default;
  NormTable& operator=(NormTable&&) = default;

  const zoo::GroupDescriptor& desc() const noexcept { return *desc_; }
  const words::GenSet& gens() const noexcept { return gens_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }
  int radius() const noexcept { return static_cast<int>(layers_.size()) - 1; }
  const std::vector<std::vector<std::string>>& layers() const noexcept { return layers_; }
  std::size_t size() const noexcept { return index_.size(); }

  /// Norm of an element if it lies within the radius.
  std::optional<int> find(const zoo::GroupElement& g) const;
  std::optional<int> find_encoded(std::string_view key) const;
  /// Position of a key inside its sorted layer.
  std::size_t position(int layer, std::string_view key) const;

  /// Grows the table to a larger radius. Throws MemoryBudgetExceeded.
  void extend(int radius, const BfsOptions& options = {});

 private:
  void add_layer(std::vector<std::string> layer);

  const zoo::GroupDescriptor* desc_;
  words::GenSet gens_;
  std::uint64_t fingerprint_;
  std::vector<std::vector<std::string>> layers_;
  std::unordered_map<std::string_view, int> index_;
};

/// Norm table of the given radius built by layered search (a bucketed Dijkstra
/// when weights exceed 1). Output does not depend on the thread count.
NormTable bfs_ball(const zoo::GroupDescriptor& desc, const words::GenSet& gens, int radius,
                   const BfsOptions& options = {});

/// Throws OutOfRadius.
int norm(const NormTable& table, const zoo::GroupElement& g);

/// gamma(0..radius): number of geodesic words of each weighted length.
std::vector<BigInt> geodesic_counts(const NormTable& table);

/// A shortest word for g, found by walking back through the layers. Throws
/// OutOfRadius.
words::Word geodesic_witness(const NormTable& table, const zoo::GroupElement& g);

/// Calls visit(word, value) for every geodesic word of weighted length at most
/// max_len, in depth-first order. Throws OutOfRadius when max_len exceeds the
/// radius.
void for_each_geodesic(const NormTable& table, int max_len,
                       const std::function<void(const words::Word&, const zoo::GroupElement&)>& visit);

/// gamma(0..max_n) by running through all |S|^n letter sequences and comparing
/// their length with the tabulated norm. Unit weights only.
std::vector<BigInt> brute_geodesic_counts(const NormTable& table, int max_n);

struct GrowthReport {
  std::vector<long long> sphere;  // |S(n)|
  std::vector<long long> beta;    // |B(n)|
  std::vector<BigInt> gamma;
  int d = 0;
  std::vector<Rational> ratio_trace;  // beta(n) / n^d for n >= 1; index 0 unused
};

GrowthReport growth_report(const NormTable& table);

/// Parameters of one family word a^{m1} t a^{-(m1+m2)} t ... t a^{mK}.
struct FamilyWord {
  std::vector<long long> m;
  words::Word word;
};

/// floor(n^eps) for rational eps >= 0.
long long floor_pow(long long n, const Rational& eps);

/// All tuples m_i >= 1 with 2 sum m_i = n and |m_i - n/(2K)| <= n^eps, in
/// lexicographic order. Needs letters "a", "a^-1" and "t". Throws InvalidParams.
std::vector<FamilyWord> family_words(long long n, long long k, const Rational& eps, const words::GenSet& gens);

struct FamilyEntry {
  FamilyWord family;
  int norm = 0;
  bool geodesic = false;
  std::optional<words::Word> witness;  // shorter word for the same element
};

struct FamilyReport {
  long long n = 0;
  long long k = 0;
  Rational eps;
  std::vector<FamilyEntry> entries;
  long long lower_bound = 0;  // floor(n^eps)^(K-1)
  bool all_geodesic = true;
};

/// Throws OutOfRadius when the table radius is below n + K.
FamilyReport verify_family(long long n, long long k, const Rational& eps, const NormTable& table);

struct SweepWord {
  std::string word;  // over {a, b}
  long long k = 0;   // number of blocks
  Rational minus_by;
  Rational lhs;      // 24 (k-1)^2 (-B_y)
};

struct SweepReport {
  long long n = 0;
  long long words = 0;
  BigInt rhs;  // n^3
  std::vector<SweepWord> violations;
  std::vector<SweepWord> minimizers;  // smallest lhs
  std::vector<std::string> equality;  // words with lhs == n^3
};

/// Every word in a and b with n/2 of each, checked against
/// 24 (k-1)^2 (-B_y) >= n^3 in the Engel group. Throws InvalidParams unless n is
/// even and positive.
SweepReport by_bound_sweep(long long n);

struct NormGap {
  long long n = 0;
  bool in_group = true;    // false: (n,0,0,0) is not in the lattice, norm infinite
  int absent_through = 0;  // largest radius searched without meeting the element
  int norm = 0;            // meaningful only when in_group
  int gap = 0;
  words::Word witness;
};

/// Norm of (n, 0, 0, 0) in an Engel table. Elements outside the lattice are
/// reported with in_group = false. Throws OutOfRadius when a lattice element
/// is not within the radius, or InvalidParams for other groups.
NormGap norm_gap_check(long long n, const NormTable& table);

/// Like norm_gap_check, extending the table one layer at a time up to
/// max_radius. For elements outside the lattice the table is still grown to
/// radius n, so the ball itself certifies norm > n.
NormGap norm_gap_search(long long n, NormTable& table, int max_radius, const BfsOptions& options = {});

void save_table(const NormTable& table, const std::filesystem::path& path);
std::string serialize_table(const NormTable& table);

/// Loads a table and checks it against the expected group and generators.
/// Throws FormatVersionMismatch, FingerprintMismatch, CorruptFile or Io.
NormTable load_table(const std::filesystem::path& path, const zoo::GroupDescriptor& desc,
                     const words::GenSet& gens);
/// Loads a table for a registry group, taking the generators from the file.
NormTable load_table(const std::filesystem::path& path);
NormTable deserialize_table(std::string_view bytes, const zoo::GroupDescriptor* desc, const words::GenSet* gens);

}  // namespace nilgrowth::engine
