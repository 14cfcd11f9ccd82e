#include "nilgrowth/engine.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bytes.hpp"
#include "nilgrowth/error.hpp"

namespace nilgrowth::engine {
namespace {

constexpr std::string_view kMagic = "NILGROWTH-NT v1";
constexpr std::string_view kMagicPrefix = "NILGROWTH-NT ";

BigInt big_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string unhex(std::string_view text) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw Error(ErrorCode::CorruptFile, "bad hex digit in table header");
  };
  if (text.size() % 2) throw Error(ErrorCode::CorruptFile, "bad hex string in table header");
  std::string out;
  for (std::size_t i = 0; i < text.size(); i += 2)
    out.push_back(static_cast<char>(nibble(text[i]) * 16 + nibble(text[i + 1])));
  return out;
}

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::CorruptFile, what); }

}  // namespace

std::uint64_t fingerprint(const zoo::GroupDescriptor& desc, const words::GenSet& gens) {
  std::string buf = desc.name();
  buf.push_back('\0');
  for (const auto& l : gens.letters()) {
    buf += l.name;
    buf.push_back('\0');
    detail::put_varint(buf, static_cast<std::uint64_t>(l.weight));
    auto e = desc.encode(l.element);
    detail::put_varint(buf, e.size());
    buf += e;
  }
  return detail::fnv1a64(buf);
}

NormTable::NormTable(const zoo::GroupDescriptor& desc, words::GenSet gens)
    : desc_(&desc), gens_(std::move(gens)), fingerprint_(engine::fingerprint(desc, gens_)) {
  for (const auto& l : gens_.letters()) desc.check(l.element);
  add_layer({desc.encode(desc.identity())});
}

NormTable::NormTable(const zoo::GroupDescriptor& desc, words::GenSet gens,
                     std::vector<std::vector<std::string>> layers)
    : desc_(&desc), gens_(std::move(gens)), fingerprint_(engine::fingerprint(desc, gens_)) {
  if (layers.empty() || layers[0] != std::vector<std::string>{desc.encode(desc.identity())})
    corrupt("layer 0 must hold exactly the identity");
  for (auto& layer : layers) {
    if (!std::is_sorted(layer.begin(), layer.end()) ||
        std::adjacent_find(layer.begin(), layer.end()) != layer.end())
      corrupt("layer " + std::to_string(layers_.size()) + " is not strictly sorted");
    std::size_t before = index_.size();
    add_layer(std::move(layer));
    if (index_.size() != before + layers_.back().size())
      corrupt("layer " + std::to_string(layers_.size() - 1) + " overlaps an earlier layer");
  }
}

void NormTable::add_layer(std::vector<std::string> layer) {
  int d = static_cast<int>(layers_.size());
  layers_.push_back(std::move(layer));
  for (const auto& key : layers_.back()) index_.emplace(std::string_view(key), d);
}

std::optional<int> NormTable::find_encoded(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> NormTable::find(const zoo::GroupElement& g) const { return find_encoded(desc_->encode(g)); }

std::size_t NormTable::position(int layer, std::string_view key) const {
  const auto& l = layers_[layer];
  return static_cast<std::size_t>(std::lower_bound(l.begin(), l.end(), key) - l.begin());
}

void NormTable::extend(int new_radius, const BfsOptions& options) {
  const int r0 = radius();
  if (new_radius <= r0) return;
  const auto& letters = gens_.letters();
  const long long max_w = gens_.max_weight();
  const unsigned workers = std::max(1u, options.threads);
  std::vector<std::vector<std::string>> buckets(new_radius - r0);

  auto expand = [&](int d) {
    const auto& layer = layers_[d];
    const std::size_t chunk = (layer.size() + workers - 1) / workers;
    std::vector<std::vector<std::vector<std::string>>> local(workers,
                                                             std::vector<std::vector<std::string>>(buckets.size()));
    auto work = [&](unsigned w) {
      std::size_t lo = std::min(layer.size(), w * chunk), hi = std::min(layer.size(), lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) {
        auto g = desc_->decode(layer[i]);
        for (const auto& l : letters) {
          long long t = d + l.weight;
          if (t <= r0 || t > new_radius) continue;
          auto key = desc_->encode(desc_->mul(g, l.element));
          if (index_.count(key)) continue;
          local[w][t - r0 - 1].push_back(std::move(key));
        }
      }
    };
    if (workers == 1 || layer.size() < 2 * workers) {
      for (unsigned w = 0; w < workers; ++w) work(w);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    for (auto& per_worker : local)
      for (std::size_t b = 0; b < buckets.size(); ++b)
        std::move(per_worker[b].begin(), per_worker[b].end(), std::back_inserter(buckets[b]));
  };

  for (int d = std::max<long long>(0, r0 + 1 - max_w); d <= r0; ++d) expand(d);
  for (int d = r0 + 1; d <= new_radius; ++d) {
    auto& b = buckets[d - r0 - 1];
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::erase_if(b, [&](const std::string& k) { return index_.count(k) > 0; });
    if (index_.size() + b.size() > options.max_elements) throw MemoryBudgetExceeded(d, options.max_elements);
    add_layer(std::move(b));
    b = {};
    expand(d);
  }
}

NormTable bfs_ball(const zoo::GroupDescriptor& desc, const words::GenSet& gens, int radius,
                   const BfsOptions& options) {
  if (radius < 0) throw Error(ErrorCode::InvalidParams, "radius must be nonnegative");
  NormTable t(desc, gens);
  t.extend(radius, options);
  return t;
}

int norm(const NormTable& table, const zoo::GroupElement& g) {
  table.desc().check(g);
  auto n = table.find(g);
  if (!n) throw OutOfRadius(table.radius(), table.radius() + 1, "element " + table.desc().format(g) + " is outside the ball");
  return *n;
}

std::vector<BigInt> geodesic_counts(const NormTable& table) {
  const auto& desc = table.desc();
  const auto& layers = table.layers();
  const int r = table.radius();
  std::vector<std::vector<BigInt>> counts(r + 1);
  for (int d = 0; d <= r; ++d) counts[d].resize(layers[d].size());
  counts[0][0] = 1;
  std::vector<BigInt> gamma(r + 1);
  for (int d = 0; d <= r; ++d) {
    for (std::size_t i = 0; i < layers[d].size(); ++i) {
      const BigInt& c = counts[d][i];
      gamma[d] += c;
      if (c == 0) continue;
      auto g = desc.decode(layers[d][i]);
      for (const auto& l : table.gens().letters()) {
        long long t = d + l.weight;
        if (t > r) continue;
        auto key = desc.encode(desc.mul(g, l.element));
        if (table.find_encoded(key) != t) continue;
        counts[t][table.position(static_cast<int>(t), key)] += c;
      }
    }
  }
  return gamma;
}

words::Word geodesic_witness(const NormTable& table, const zoo::GroupElement& g) {
  const auto& desc = table.desc();
  const auto& letters = table.gens().letters();
  int n = norm(table, g);
  auto cur = g;
  std::vector<std::size_t> rev;
  while (n > 0) {
    bool stepped = false;
    for (std::size_t i = 0; i < letters.size() && !stepped; ++i) {
      if (letters[i].weight > n) continue;
      auto prev = desc.mul(cur, desc.inv(letters[i].element));
      if (table.find(prev) == n - letters[i].weight) {
        rev.push_back(i);
        cur = std::move(prev);
        n -= static_cast<int>(letters[i].weight);
        stepped = true;
      }
    }
    if (!stepped) throw std::logic_error("norm table is inconsistent: no predecessor found");
  }
  std::reverse(rev.begin(), rev.end());
  return words::Word::from_letters(rev);
}

void for_each_geodesic(const NormTable& table, int max_len,
                       const std::function<void(const words::Word&, const zoo::GroupElement&)>& visit) {
  if (max_len > table.radius())
    throw OutOfRadius(table.radius(), max_len, "geodesic enumeration beyond the table radius");
  const auto& desc = table.desc();
  const auto& letters = table.gens().letters();
  std::vector<std::size_t> stack;
  auto rec = [&](auto& self, const zoo::GroupElement& g, int len) -> void {
    visit(words::Word::from_letters(stack), g);
    for (std::size_t i = 0; i < letters.size(); ++i) {
      long long t = len + letters[i].weight;
      if (t > max_len) continue;
      auto h = desc.mul(g, letters[i].element);
      if (table.find(h) != t) continue;
      stack.push_back(i);
      self(self, h, static_cast<int>(t));
      stack.pop_back();
    }
  };
  rec(rec, desc.identity(), 0);
}

std::vector<BigInt> brute_geodesic_counts(const NormTable& table, int max_n) {
  if (max_n > table.radius())
    throw OutOfRadius(table.radius(), max_n, "brute-force check beyond the table radius");
  if (table.gens().max_weight() != 1) throw Error(ErrorCode::InvalidParams, "brute-force check needs unit weights");
  const auto& desc = table.desc();
  const auto& letters = table.gens().letters();
  std::vector<BigInt> out;
  for (int n = 0; n <= max_n; ++n) {
    std::vector<std::size_t> digits(n, 0);
    long long count = 0;
    for (;;) {
      auto g = desc.identity();
      for (auto i : digits) g = desc.mul(g, letters[i].element);
      if (table.find(g) == n) ++count;
      int i = n;
      while (i > 0 && digits[i - 1] + 1 == letters.size()) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
    }
    out.emplace_back(static_cast<long>(count));
  }
  return out;
}

GrowthReport growth_report(const NormTable& table) {
  GrowthReport r;
  long long total = 0;
  for (const auto& layer : table.layers()) {
    r.sphere.push_back(static_cast<long long>(layer.size()));
    total += static_cast<long long>(layer.size());
    r.beta.push_back(total);
  }
  r.gamma = geodesic_counts(table);
  r.d = zoo::bass_guivarch(table.desc());
  r.ratio_trace.resize(r.beta.size());
  for (std::size_t n = 1; n < r.beta.size(); ++n)
    r.ratio_trace[n] = Rational(BigInt(static_cast<long>(r.beta[n])), big_pow(BigInt(static_cast<long>(n)), r.d));
  return r;
}

long long floor_pow(long long n, const Rational& eps) {
  if (n < 0 || eps.sign() < 0) throw Error(ErrorCode::InvalidParams, "floor_pow needs n >= 0 and eps >= 0");
  BigInt p = eps.numerator(), q = eps.denominator();
  BigInt np = big_pow(BigInt(static_cast<long>(n)), p.get_ui());
  BigInt root;
  mpz_root(root.get_mpz_t(), np.get_mpz_t(), q.get_ui());
  return root.get_si();
}

std::vector<FamilyWord> family_words(long long n, long long k, const Rational& eps, const words::GenSet& gens) {
  if (n % 2 || k % 2 || k < 2 || n < 2 * k)
    throw Error(ErrorCode::InvalidParams, "family words need n and K even, K >= 2 and n >= 2K");
  if (eps.sign() < 0) throw Error(ErrorCode::InvalidParams, "eps must be nonnegative");
  auto a = gens.find("a"), ai = gens.find("a^-1"), t = gens.find("t");
  if (!a || !ai || !t) throw Error(ErrorCode::InvalidParams, "family words need letters a, a^-1 and t");

  unsigned long p = eps.numerator().get_ui(), q = eps.denominator().get_ui();
  const BigInt bound = big_pow(BigInt(static_cast<long>(2 * k)), q) * big_pow(BigInt(static_cast<long>(n)), p);
  auto admissible = [&](long long m) {
    long long dev = 2 * k * m - n;
    if (dev < 0) dev = -dev;
    return big_pow(BigInt(static_cast<long>(dev)), q) <= bound;
  };

  std::vector<FamilyWord> out;
  std::vector<long long> m;
  auto rec = [&](auto& self, long long remaining) -> void {
    long long slots = k - static_cast<long long>(m.size());
    if (slots == 1) {
      if (remaining >= 1 && admissible(remaining)) {
        m.push_back(remaining);
        words::Word w;
        w.append(*a, m[0]);
        for (long long j = 1; j < k; ++j) {
          w.append(*t);
          w.append(j % 2 ? *ai : *a, m[j - 1] + m[j]);
        }
        w.append(*t);
        w.append(*a, m[k - 1]);
        out.push_back({m, std::move(w)});
        m.pop_back();
      }
      return;
    }
    for (long long x = 1; x <= remaining - (slots - 1); ++x) {
      if (!admissible(x)) continue;
      m.push_back(x);
      self(self, remaining - x);
      m.pop_back();
    }
  };
  rec(rec, n / 2);
  return out;
}

FamilyReport verify_family(long long n, long long k, const Rational& eps, const NormTable& table) {
  const auto& desc = table.desc();
  const auto& gens = table.gens();
  FamilyReport r{n, k, eps, {}, 0, true};
  auto fam = family_words(n, k, eps, gens);
  if (table.radius() < n + k)
    throw OutOfRadius(table.radius(), static_cast<int>(n + k), "family verification needs radius n+K");
  BigInt lb = big_pow(BigInt(static_cast<long>(floor_pow(n, eps))), static_cast<unsigned long>(k - 1));
  r.lower_bound = lb.get_si();
  for (auto& f : fam) {
    FamilyEntry e;
    auto g = words::evaluate(f.word, gens, desc);
    long long len = words::weighted_len(f.word, gens);
    e.norm = norm(table, g);
    if (e.norm > len) throw std::logic_error("norm exceeds the length of a representing word");
    e.geodesic = e.norm == len;
    if (!e.geodesic) {
      auto w = geodesic_witness(table, g);
      if (words::evaluate(w, gens, desc) != g || words::weighted_len(w, gens) != e.norm)
        throw std::logic_error("geodesic witness failed verification");
      e.witness = std::move(w);
      r.all_geodesic = false;
    }
    e.family = std::move(f);
    r.entries.push_back(std::move(e));
  }
  return r;
}

SweepReport by_bound_sweep(long long n) {
  if (n < 2 || n % 2) throw Error(ErrorCode::InvalidParams, "the sweep needs a positive even n");
  const auto& eng = zoo::registry("Engel");
  auto gens = words::GenSet::standard(eng);
  const std::size_t ia = *gens.find("a"), ib = *gens.find("b");
  SweepReport r;
  r.n = n;
  r.rhs = big_pow(BigInt(static_cast<long>(n)), 3);
  const Rational rhs(r.rhs);
  std::string s(static_cast<std::size_t>(n / 2), 'a');
  s.append(static_cast<std::size_t>(n / 2), 'b');
  const auto a = engel::gen_a(), b = engel::gen_b();
  std::optional<Rational> best;
  do {
    ++r.words;
    engel::EngelElement g;
    std::vector<std::size_t> letters;
    long long k = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
      g = engel::mul(g, s[i] == 'a' ? a : b);
      letters.push_back(s[i] == 'a' ? ia : ib);
      if (i > 0 && s[i] != s[i - 1]) ++k;
    }
    SweepWord w{words::format_word(words::Word::from_letters(letters), gens), k, -g.moment,
                Rational(24 * (k - 1) * (k - 1)) * -g.moment};
    if (w.lhs < rhs) r.violations.push_back(w);
    if (w.lhs == rhs) r.equality.push_back(w.word);
    if (!best || w.lhs < *best) {
      best = w.lhs;
      r.minimizers.clear();
    }
    if (w.lhs == *best) r.minimizers.push_back(std::move(w));
  } while (std::next_permutation(s.begin(), s.end()));
  return r;
}

NormGap norm_gap_check(long long n, const NormTable& table) {
  const auto& desc = table.desc();
  if (desc.family() != zoo::Family::Engel || desc.index() != 1)
    throw Error(ErrorCode::InvalidParams, "norm gaps are computed in the Engel group");
  engel::EngelElement e{n, 0, 0, 0};
  zoo::GroupElement g{e, 0};
  auto found = table.find(g);
  NormGap r;
  r.n = n;
  if (!found) {
    r.absent_through = table.radius();
    if (engel::in_lattice(e)) {
      throw OutOfRadius(table.radius(), table.radius() + 1,
                        "(" + std::to_string(n) + ",0,0,0) is outside the ball");
    }
    r.in_group = false;
    return r;
  }
  r.absent_through = *found - 1;
  r.norm = *found;
  r.gap = *found - static_cast<int>(n);
  r.witness = geodesic_witness(table, g);
  return r;
}

NormGap norm_gap_search(long long n, NormTable& table, int max_radius, const BfsOptions& options) {
  for (;;) {
    try {
      auto r = norm_gap_check(n, table);
      if (r.in_group || table.radius() >= std::min<long long>(n, max_radius)) return r;
    } catch (const OutOfRadius&) {
      if (table.radius() >= max_radius) throw;
    }
    table.extend(table.radius() + 1, options);
  }
}

std::string serialize_table(const NormTable& table) {
  const auto& desc = table.desc();
  std::string out(kMagic);
  out += "\ngroup " + desc.name() + "\ngens " + std::to_string(table.gens().size()) + "\n";
  for (const auto& l : table.gens().letters())
    out += l.name + " " + std::to_string(l.weight) + " " + hex(desc.encode(l.element)) + "\n";
  out += "radius " + std::to_string(table.radius()) + "\n";
  for (const auto& layer : table.layers()) {
    detail::put_varint(out, layer.size());
    for (const auto& key : layer) {
      detail::put_varint(out, key.size());
      out += key;
    }
  }
  detail::put_u64_le(out, detail::fnv1a64(out));
  return out;
}

void save_table(const NormTable& table, const std::filesystem::path& path) {
  auto bytes = serialize_table(table);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(ErrorCode::Io, "write to " + path.string() + " failed");
}

NormTable deserialize_table(std::string_view bytes, const zoo::GroupDescriptor* desc, const words::GenSet* gens) {
  std::size_t pos = 0;
  auto line = [&]() {
    auto nl = bytes.find('\n', pos);
    if (nl == std::string_view::npos) corrupt("truncated table header");
    auto s = std::string(bytes.substr(pos, nl - pos));
    pos = nl + 1;
    return s;
  };
  if (bytes.substr(0, kMagicPrefix.size()) != kMagicPrefix) corrupt("not a norm table file");
  if (auto magic = line(); magic != kMagic)
    throw Error(ErrorCode::FormatVersionMismatch, "unsupported table format '" + magic + "'");
  if (bytes.size() < pos + 8) corrupt("truncated table file");
  auto body = bytes.substr(0, bytes.size() - 8);
  detail::ByteReader tail(bytes.substr(bytes.size() - 8));
  if (tail.u64_le() != detail::fnv1a64(body)) corrupt("checksum mismatch");

  auto field = [&](const std::string& key) {
    auto s = line();
    if (s.rfind(key + " ", 0) != 0) corrupt("expected '" + key + "' in table header");
    return s.substr(key.size() + 1);
  };
  auto group = field("group");
  if (desc && desc->name() != group)
    throw Error(ErrorCode::FingerprintMismatch, "table was built for group " + group + ", not " + desc->name());
  const zoo::GroupDescriptor& d = desc ? *desc : zoo::registry(group);
  long long count = 0;
  try {
    count = std::stoll(field("gens"));
  } catch (const std::logic_error&) {
    corrupt("bad generator count");
  }
  std::vector<words::Letter> letters;
  for (long long i = 0; i < count; ++i) {
    std::istringstream ls(line());
    std::string name, enc;
    long long weight = 0;
    if (!(ls >> name >> weight >> enc)) corrupt("bad generator line");
    letters.push_back({name, d.decode(unhex(enc)), weight});
  }
  words::GenSet file_gens(std::move(letters));
  if (gens && fingerprint(d, *gens) != fingerprint(d, file_gens))
    throw Error(ErrorCode::FingerprintMismatch, "table was built for a different generating set");
  long long radius = -1;
  try {
    radius = std::stoll(field("radius"));
  } catch (const std::logic_error&) {
    corrupt("bad radius");
  }
  if (radius < 0) corrupt("bad radius");

  detail::ByteReader rd(body.substr(pos));
  std::vector<std::vector<std::string>> layers(static_cast<std::size_t>(radius + 1));
  for (auto& layer : layers) {
    auto n = rd.varint();
    if (n > body.size()) corrupt("bad layer size");
    layer.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) layer.emplace_back(rd.take(rd.varint()));
  }
  if (!rd.done()) corrupt("trailing bytes after the last layer");
  return NormTable(d, gens ? *gens : std::move(file_gens), std::move(layers));
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

NormTable load_table(const std::filesystem::path& path, const zoo::GroupDescriptor& desc,
                     const words::GenSet& gens) {
  auto bytes = read_file(path);
  return deserialize_table(bytes, &desc, &gens);
}

NormTable load_table(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  return deserialize_table(bytes, nullptr, nullptr);
}

}  // namespace nilgrowth::engine
