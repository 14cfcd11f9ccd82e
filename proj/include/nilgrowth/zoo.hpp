#pragma once

// Uniform interface over the built-in groups: Z^d, the Heisenberg group, the
// Engel group and their finite semidirect extensions.

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nilgrowth/engel.hpp"
#include "nilgrowth/exactgeo.hpp"
#include "nilgrowth/rational.hpp"

namespace nilgrowth::zoo {

/// Heisenberg element in the symmetric model: (x1,y1,z1)(x2,y2,z2) =
/// (x1+x2, y1+y2, z1+z2 + (x1 y2 - y1 x2)/2).
struct HeisElement {
  Rational x;
  Rational y;
  Rational z;
  friend bool operator==(const HeisElement&, const HeisElement&) = default;
};

using BaseElement = std::variant<VecQ, HeisElement, engel::EngelElement>;

enum class Family { Zd = 0, Heis = 1, Engel = 2 };

/// Index into the finite quotient's element table; 0 is the identity.
using FiniteElement = std::size_t;

/// Element of H or of a semidirect extension H x| F. For groups without a
/// finite part the coset is always 0.
struct GroupElement {
  BaseElement base;
  FiniteElement coset = 0;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

using IntMatrix = std::vector<std::vector<long long>>;

/// Finite group given by its multiplication table.
class FiniteGroup {
 public:
  FiniteGroup();  // trivial group
  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<FiniteElement>> table);

  std::size_t order() const noexcept { return table_.size(); }
  FiniteElement mul(FiniteElement a, FiniteElement b) const { return table_[a][b]; }
  FiniteElement inv(FiniteElement a) const { return inverse_[a]; }
  const std::string& name(FiniteElement a) const { return names_[a]; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<FiniteElement>> table_;
  std::vector<FiniteElement> inverse_;
};

struct NamedElement {
  std::string name;
  GroupElement element;
};

class GroupDescriptor {
 public:
  GroupDescriptor(std::string name, Family family, std::size_t ab_dim, int class_s,
                  std::vector<int> lcs_ranks, FiniteGroup finite, std::vector<IntMatrix> action,
                  std::vector<NamedElement> letters);

  const std::string& name() const noexcept { return name_; }
  Family family() const noexcept { return family_; }
  int class_s() const noexcept { return class_s_; }
  const std::vector<int>& lcs_ranks() const noexcept { return lcs_ranks_; }
  std::size_t ab_dim() const noexcept { return ab_dim_; }
  const FiniteGroup& finite() const noexcept { return finite_; }
  std::size_t index() const noexcept { return finite_.order(); }
  const IntMatrix& action(FiniteElement f) const { return action_[f]; }
  const std::vector<NamedElement>& letters() const noexcept { return letters_; }

  GroupElement identity() const;
  GroupElement mul(const GroupElement& g, const GroupElement& h) const;
  GroupElement inv(const GroupElement& g) const;
  GroupElement pow(const GroupElement& g, long long n) const;

  /// Abelianization of an element of H. Throws NotInSubgroup.
  VecQ pi_ab(const GroupElement& h) const;
  FiniteElement coset(const GroupElement& g) const;
  VecQ act_point(FiniteElement f, const VecQ& p) const;
  /// Automorphism of H induced by conjugation with f.
  BaseElement act_base(FiniteElement f, const BaseElement& b) const;

  /// Throws FamilyMismatch unless g belongs to this group.
  void check(const GroupElement& g) const;

  /// Injective byte encoding, stable across runs.
  std::string encode(const GroupElement& g) const;
  GroupElement decode(std::string_view bytes) const;
  std::string format(const GroupElement& g) const;

 private:
  BaseElement base_mul(const BaseElement& a, const BaseElement& b) const;
  BaseElement base_inv(const BaseElement& a) const;

  std::string name_;
  Family family_;
  std::size_t ab_dim_;
  int class_s_;
  std::vector<int> lcs_ranks_;
  FiniteGroup finite_;
  std::vector<IntMatrix> action_;
  std::vector<NamedElement> letters_;
};

/// Sum of i * rank(gamma_i / gamma_{i+1}).
int bass_guivarch(const GroupDescriptor& desc);

/// Registry lookup by name (Z1, Z2, H3, Engel, vZ, vH, vE, G2rot). Throws
/// UnknownGroup.
const GroupDescriptor& registry(std::string_view name);
std::vector<std::string> registry_names();

}  // namespace nilgrowth::zoo
