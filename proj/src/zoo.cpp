#include "nilgrowth/zoo.hpp"

#include <map>
#include <memory>

#include "bytes.hpp"
#include "nilgrowth/error.hpp"

namespace nilgrowth::zoo {
namespace {

VecQ apply_matrix(const IntMatrix& m, const VecQ& p) {
  VecQ r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (m[i][j] != 0) r[i] += Rational(m[i][j]) * p[j];
  return r;
}

long long det2(const IntMatrix& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

bool is_identity(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

bool is_y_mirror(const IntMatrix& m) { return m == IntMatrix{{-1, 0}, {0, 1}}; }

IntMatrix identity_matrix(std::size_t d) {
  IntMatrix m(d, std::vector<long long>(d, 0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(a.size(), std::vector<long long>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

}  // namespace

FiniteGroup::FiniteGroup() : FiniteGroup({"e"}, {{0}}) {}

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<FiniteElement>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (names_.size() != n) throw Error(ErrorCode::InvalidParams, "finite group: name count mismatch");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[a].size() != n || table_[0][a] != a || table_[a][0] != a)
      throw Error(ErrorCode::InvalidParams, "finite group: element 0 must be the identity");
    for (std::size_t b = 0; b < n; ++b) {
      if (table_[a][b] >= n) throw Error(ErrorCode::InvalidParams, "finite group: table entry out of range");
      if (table_[a][b] == 0) inverse_[a] = b;
    }
    if (inverse_[a] == n) throw Error(ErrorCode::InvalidParams, "finite group: missing inverse");
  }
}

GroupDescriptor::GroupDescriptor(std::string name, Family family, std::size_t ab_dim, int class_s,
                                 std::vector<int> lcs_ranks, FiniteGroup finite,
                                 std::vector<IntMatrix> action, std::vector<NamedElement> letters)
    : name_(std::move(name)),
      family_(family),
      ab_dim_(ab_dim),
      class_s_(class_s),
      lcs_ranks_(std::move(lcs_ranks)),
      finite_(std::move(finite)),
      action_(std::move(action)),
      letters_(std::move(letters)) {
  if (static_cast<int>(lcs_ranks_.size()) != class_s_)
    throw Error(ErrorCode::InvalidParams, name_ + ": class does not match lower central series length");
  if (action_.size() != finite_.order())
    throw Error(ErrorCode::InvalidParams, name_ + ": one action matrix per finite element required");
  if (family_ != Family::Zd && ab_dim_ != 2)
    throw Error(ErrorCode::InvalidParams, name_ + ": Heisenberg/Engel bases are 2-generated");
  for (std::size_t f = 0; f < action_.size(); ++f) {
    if (action_[f].size() != ab_dim_) throw Error(ErrorCode::InvalidParams, name_ + ": bad matrix size");
    if (family_ == Family::Engel && !is_identity(action_[f]) && !is_y_mirror(action_[f]))
      throw Error(ErrorCode::InvalidParams, name_ + ": Engel base only supports the y-axis mirror");
    for (std::size_t g = 0; g < action_.size(); ++g)
      if (matmul(action_[f], action_[g]) != action_[finite_.mul(f, g)])
        throw Error(ErrorCode::InvalidParams, name_ + ": action is not a homomorphism");
  }
  if (!is_identity(action_[0])) throw Error(ErrorCode::InvalidParams, name_ + ": identity must act trivially");
  for (const auto& l : letters_) check(l.element);
}

GroupElement GroupDescriptor::identity() const {
  switch (family_) {
    case Family::Zd: return {VecQ(ab_dim_), 0};
    case Family::Heis: return {HeisElement{}, 0};
    case Family::Engel: return {engel::EngelElement{}, 0};
  }
  return {};
}

void GroupDescriptor::check(const GroupElement& g) const {
  if (g.base.index() != static_cast<std::size_t>(family_) || g.coset >= finite_.order() ||
      (family_ == Family::Zd && std::get<VecQ>(g.base).dim() != ab_dim_))
    throw Error(ErrorCode::FamilyMismatch, "element does not belong to group " + name_);
}

BaseElement GroupDescriptor::base_mul(const BaseElement& a, const BaseElement& b) const {
  switch (family_) {
    case Family::Zd: return std::get<VecQ>(a) + std::get<VecQ>(b);
    case Family::Heis: {
      const auto& g = std::get<HeisElement>(a);
      const auto& h = std::get<HeisElement>(b);
      return HeisElement{g.x + h.x, g.y + h.y, g.z + h.z + Rational(1, 2) * (g.x * h.y - g.y * h.x)};
    }
    case Family::Engel: return engel::mul(std::get<engel::EngelElement>(a), std::get<engel::EngelElement>(b));
  }
  return a;
}

BaseElement GroupDescriptor::base_inv(const BaseElement& a) const {
  switch (family_) {
    case Family::Zd: return -std::get<VecQ>(a);
    case Family::Heis: {
      const auto& g = std::get<HeisElement>(a);
      return HeisElement{-g.x, -g.y, -g.z};
    }
    case Family::Engel: return engel::inv(std::get<engel::EngelElement>(a));
  }
  return a;
}

BaseElement GroupDescriptor::act_base(FiniteElement f, const BaseElement& b) const {
  const IntMatrix& m = action_[f];
  if (f == 0) return b;
  switch (family_) {
    case Family::Zd: return apply_matrix(m, std::get<VecQ>(b));
    case Family::Heis: {
      const auto& h = std::get<HeisElement>(b);
      VecQ p = apply_matrix(m, VecQ{h.x, h.y});
      return HeisElement{p[0], p[1], Rational(det2(m)) * h.z};
    }
    case Family::Engel: {
      const auto& e = std::get<engel::EngelElement>(b);
      return is_identity(m) ? e : engel::reflect(e);
    }
  }
  return b;
}

GroupElement GroupDescriptor::mul(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  return {base_mul(g.base, act_base(g.coset, h.base)), finite_.mul(g.coset, h.coset)};
}

GroupElement GroupDescriptor::inv(const GroupElement& g) const {
  check(g);
  FiniteElement fi = finite_.inv(g.coset);
  return {act_base(fi, base_inv(g.base)), fi};
}

GroupElement GroupDescriptor::pow(const GroupElement& g, long long n) const {
  GroupElement base = n < 0 ? inv(g) : g;
  unsigned long long e = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  GroupElement acc = identity();
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

VecQ GroupDescriptor::pi_ab(const GroupElement& h) const {
  check(h);
  if (h.coset != 0)
    throw Error(ErrorCode::NotInSubgroup, format(h) + " is not in the finite-index subgroup of " + name_);
  switch (family_) {
    case Family::Zd: return std::get<VecQ>(h.base);
    case Family::Heis: {
      const auto& e = std::get<HeisElement>(h.base);
      return VecQ{e.x, e.y};
    }
    case Family::Engel: {
      const auto& e = std::get<engel::EngelElement>(h.base);
      return VecQ{e.x, e.y};
    }
  }
  return {};
}

FiniteElement GroupDescriptor::coset(const GroupElement& g) const {
  check(g);
  return g.coset;
}

VecQ GroupDescriptor::act_point(FiniteElement f, const VecQ& p) const {
  if (p.dim() != ab_dim_) throw Error(ErrorCode::DimensionMismatch, "act_point: dimension mismatch");
  return apply_matrix(action_.at(f), p);
}

std::string GroupDescriptor::encode(const GroupElement& g) const {
  std::string out;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, VecQ>) {
          for (const auto& c : b.coords()) detail::put_rational(out, c);
        } else if constexpr (std::is_same_v<T, HeisElement>) {
          detail::put_rational(out, b.x);
          detail::put_rational(out, b.y);
          detail::put_rational(out, b.z);
        } else {
          detail::put_rational(out, b.x);
          detail::put_rational(out, b.y);
          detail::put_rational(out, b.area);
          detail::put_rational(out, b.moment);
        }
      },
      g.base);
  if (finite_.order() > 1) detail::put_varint(out, g.coset);
  return out;
}

GroupElement GroupDescriptor::decode(std::string_view bytes) const {
  detail::ByteReader in(bytes);
  GroupElement g;
  switch (family_) {
    case Family::Zd: {
      VecQ v(ab_dim_);
      for (std::size_t i = 0; i < ab_dim_; ++i) v[i] = in.rational();
      g.base = std::move(v);
      break;
    }
    case Family::Heis: {
      HeisElement h;
      h.x = in.rational();
      h.y = in.rational();
      h.z = in.rational();
      g.base = h;
      break;
    }
    case Family::Engel: {
      engel::EngelElement e;
      e.x = in.rational();
      e.y = in.rational();
      e.area = in.rational();
      e.moment = in.rational();
      g.base = e;
      break;
    }
  }
  if (finite_.order() > 1) {
    auto c = in.varint();
    if (c >= finite_.order()) in.fail();
    g.coset = c;
  }
  if (!in.done()) in.fail();
  return g;
}

std::string GroupDescriptor::format(const GroupElement& g) const {
  std::string s = std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, VecQ>) {
          return b.str();
        } else if constexpr (std::is_same_v<T, HeisElement>) {
          return "(" + b.x.str() + ", " + b.y.str() + ", " + b.z.str() + ")";
        } else {
          return b.str();
        }
      },
      g.base);
  if (finite_.order() > 1) s += " " + finite_.name(g.coset);
  return s;
}

int bass_guivarch(const GroupDescriptor& desc) {
  int d = 0;
  for (std::size_t i = 0; i < desc.lcs_ranks().size(); ++i) d += static_cast<int>(i + 1) * desc.lcs_ranks()[i];
  return d;
}

namespace {

FiniteGroup c2(const std::string& gen) { return FiniteGroup({"e", gen}, {{0, 1}, {1, 0}}); }

GroupElement zd(std::initializer_list<long long> c, FiniteElement f = 0) {
  std::vector<Rational> v;
  for (auto x : c) v.emplace_back(x);
  return {VecQ(std::move(v)), f};
}

GroupElement heis(long long x, long long y) { return {HeisElement{x, y, 0}, 0}; }

GroupElement eng(const engel::EngelElement& e) { return {e, 0}; }

std::map<std::string, std::unique_ptr<GroupDescriptor>, std::less<>> build_registry() {
  std::map<std::string, std::unique_ptr<GroupDescriptor>, std::less<>> r;
  auto add = [&](GroupDescriptor d) {
    auto name = d.name();
    r.emplace(name, std::make_unique<GroupDescriptor>(std::move(d)));
  };
  const IntMatrix id2 = identity_matrix(2);
  const IntMatrix swap{{0, 1}, {1, 0}};
  const IntMatrix mirror{{-1, 0}, {0, 1}};
  const IntMatrix minus{{-1, 0}, {0, -1}};

  add(GroupDescriptor("Z1", Family::Zd, 1, 1, {1}, FiniteGroup(), {identity_matrix(1)},
                      {{"x", zd({1})}, {"x^-1", zd({-1})}}));
  add(GroupDescriptor("Z2", Family::Zd, 2, 1, {2}, FiniteGroup(), {id2},
                      {{"x", zd({1, 0})}, {"x^-1", zd({-1, 0})}, {"y", zd({0, 1})}, {"y^-1", zd({0, -1})}}));
  add(GroupDescriptor("H3", Family::Heis, 2, 2, {2, 1}, FiniteGroup(), {id2},
                      {{"a", heis(1, 0)}, {"a^-1", heis(-1, 0)}, {"b", heis(0, 1)}, {"b^-1", heis(0, -1)}}));
  add(GroupDescriptor("Engel", Family::Engel, 2, 3, {2, 1, 1}, FiniteGroup(), {id2},
                      {{"a", eng(engel::gen_a())},
                       {"a^-1", eng(engel::inv(engel::gen_a()))},
                       {"b", eng(engel::gen_b())},
                       {"b^-1", eng(engel::inv(engel::gen_b()))}}));
  add(GroupDescriptor("vZ", Family::Zd, 2, 1, {2}, c2("t"), {id2, swap},
                      {{"a", zd({1, 0})}, {"a^-1", zd({-1, 0})}, {"t", zd({0, 0}, 1)}}));
  add(GroupDescriptor("vH", Family::Heis, 2, 2, {2, 1}, c2("t"), {id2, swap},
                      {{"a", heis(1, 0)}, {"a^-1", heis(-1, 0)}, {"t", {HeisElement{}, 1}}}));
  add(GroupDescriptor("vE", Family::Engel, 2, 3, {2, 1, 1}, c2("t"), {id2, mirror},
                      {{"a", eng(engel::gen_a())},
                       {"a^-1", eng(engel::inv(engel::gen_a()))},
                       {"t", {engel::EngelElement{}, 1}}}));
  add(GroupDescriptor("G2rot", Family::Zd, 2, 1, {2}, c2("r"), {id2, minus},
                      {{"x", zd({1, 0})}, {"y", zd({0, 1})}, {"(xy)^-1", zd({-1, -1})}, {"r", zd({0, 0}, 1)}}));
  return r;
}

const auto& registry_map() {
  static const auto reg = build_registry();
  return reg;
}

}  // namespace

const GroupDescriptor& registry(std::string_view name) {
  const auto& reg = registry_map();
  auto it = reg.find(name);
  if (it == reg.end()) throw Error(ErrorCode::UnknownGroup, "unknown group '" + std::string(name) + "'");
  return *it->second;
}

std::vector<std::string> registry_names() { return {"Z1", "Z2", "H3", "Engel", "vZ", "vH", "vE", "G2rot"}; }

}  // namespace nilgrowth::zoo
