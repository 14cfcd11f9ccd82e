#pragma once

// Growth classification from the simple cycles of the coset graph: the
// multiset A(S), its orbit polytope P(S), facet incidences and the verdict,
// plus the costly-subword counter used to audit decompositions of geodesics.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nilgrowth/exactgeo.hpp"
#include "nilgrowth/schreier.hpp"
#include "nilgrowth/words.hpp"
#include "nilgrowth/zoo.hpp"

namespace nilgrowth::criterion {

struct CycleDatum {
  words::Word word;
  VecQ point;  // pi(u) / l(u)
  zoo::GroupElement element;
  long long length = 0;
};

enum class VerdictKind { Exponential, Polynomial, SubExponential, Degenerate };

const char* verdict_name(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Degenerate;
  int s = 0;
  std::optional<Rational> alpha;                     // SubExponential only
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // Exponential only
  std::optional<Facet> witness_facet;
};

struct FacetIncidence {
  Facet facet;
  std::vector<std::size_t> members;  // indices into A, with multiplicity
};

struct CriterionReport {
  std::string group;
  std::vector<CycleDatum> a;
  std::vector<VecQ> orbit_points;  // sorted, distinct
  std::optional<PolytopeQ> polytope;
  std::vector<FacetIncidence> incidence;
  Verdict verdict;
  std::optional<std::size_t> degenerate_affine_dim;
};

/// One datum per simple cycle word at the basepoint.
std::vector<CycleDatum> build_A(const zoo::GroupDescriptor& desc, const words::GenSet& gens);

/// Orbit of the A-points under the finite action, sorted and deduplicated.
std::vector<VecQ> orbit_points(const zoo::GroupDescriptor& desc, const std::vector<CycleDatum>& a);

CriterionReport classify(const zoo::GroupDescriptor& desc, const words::GenSet& gens);

/// alpha_2 = 0, alpha_s = (1 - alpha_{s-1}/s) / (2 - alpha_{s-1} - 1/s).
Rational alpha(int s);
/// 1 for s <= 2, 1/s otherwise.
Rational delta(int s);

/// pi(x)/sigma(x) for a letter of X(S).
VecQ xletter_point(const schreier::XLetter& x, const zoo::GroupDescriptor& desc);

/// Occurrences of costly subwords: single letters whose point is interior to
/// P, and adjacent letter pairs whose points share no proper face of P.
long long costly_count(const std::vector<schreier::XBlock>& blocks, const PolytopeQ& polytope,
                       const zoo::GroupDescriptor& desc);

struct KBoundResult {
  long long k = 0;
  long long n = 0;
  bool ok = false;
  std::vector<schreier::XBlock> blocks;
};

/// Decomposes w and checks k <= N * [G:H] + 1.
class KBoundChecker {
 public:
  KBoundChecker(const zoo::GroupDescriptor& desc, const words::GenSet& gens);
  KBoundResult check(const words::Word& w) const;
  const PolytopeQ& polytope() const noexcept { return polytope_; }

 private:
  const zoo::GroupDescriptor& desc_;
  words::GenSet gens_;
  schreier::SchreierGraph graph_;
  PolytopeQ polytope_;
};

KBoundResult k_bound_check(const words::Word& w, const zoo::GroupDescriptor& desc, const words::GenSet& gens);

nlohmann::ordered_json to_json(const CriterionReport& report, const words::GenSet& gens);
/// Human-readable summary line, e.g. "sub-exponential, s=3, alpha=3/5".
std::string verdict_summary(const Verdict& v);

}  // namespace nilgrowth::criterion
