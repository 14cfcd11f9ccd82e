#include "nilgrowth/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilgrowth/criterion.hpp"
#include "nilgrowth/engine.hpp"
#include "nilgrowth/error.hpp"
#include "nilgrowth/words.hpp"
#include "nilgrowth/zoo.hpp"

namespace nilgrowth::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownGroup:
    case ErrorCode::UnknownLetter:
    case ErrorCode::MissingInverseLetter:
    case ErrorCode::ZeroExponent:
    case ErrorCode::SyntaxError:
    case ErrorCode::InvalidParams:
      return kUsage;
    case ErrorCode::DegeneratePolytope:
    case ErrorCode::OriginOutside:
    case ErrorCode::PointOutside:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::FamilyMismatch:
    case ErrorCode::NotInSubgroup:
    case ErrorCode::OutOfRadius:
      return kDomain;
    case ErrorCode::MemoryBudgetExceeded:
    case ErrorCode::FormatVersionMismatch:
    case ErrorCode::FingerprintMismatch:
    case ErrorCode::CorruptFile:
    case ErrorCode::Io:
      return kResource;
  }
  return kInternal;
}

Rational parse_rational(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidParams, "bad " + what + " '" + text + "', expected p or p/q");
  }
}

std::string vec_text(const VecQ& v) { return v.str(); }

std::string facet_text(const Facet& f) { return f.normal.str() + " . p <= " + f.offset.str(); }

std::string big_str(const BigInt& b) { return b.get_str(); }

struct Context {
  Config config;
  std::ostream& out;
  std::ostream& err;
  std::ostream& json_out;

  unsigned threads(unsigned requested) const { return requested ? requested : config.default_threads; }
  engine::BfsOptions options(unsigned requested) const { return {config.memory_budget, threads(requested)}; }
};

words::GenSet gens_for(const zoo::GroupDescriptor& desc, const std::string& subset) {
  auto all = words::GenSet::standard(desc);
  if (subset.empty()) return all;
  std::vector<words::Letter> picked;
  std::stringstream ss(subset);
  std::string name;
  while (std::getline(ss, name, ',')) {
    name = trim(name);
    auto i = all.find(name);
    if (!i) throw Error(ErrorCode::UnknownLetter, "group " + desc.name() + " has no letter '" + name + "'");
    picked.push_back(all[*i]);
  }
  return words::GenSet(std::move(picked));
}

std::optional<std::filesystem::path> cache_path(const Context& ctx, const zoo::GroupDescriptor& desc,
                                                const words::GenSet& gens) {
  if (!ctx.config.cache_dir) return std::nullopt;
  std::ostringstream name;
  name << desc.name() << "-" << std::hex << std::setw(16) << std::setfill('0') << engine::fingerprint(desc, gens)
       << ".nt";
  return *ctx.config.cache_dir / name.str();
}

void store(const Context& ctx, const engine::NormTable& table, const std::optional<std::filesystem::path>& path) {
  if (!path) return;
  std::error_code ec;
  std::filesystem::create_directories(path->parent_path(), ec);
  try {
    engine::save_table(table, *path);
  } catch (const Error& e) {
    ctx.err << "warning: could not write cache: " << e.what() << "\n";
  }
}

engine::NormTable obtain_table(const Context& ctx, const zoo::GroupDescriptor& desc, const words::GenSet& gens,
                               int radius, unsigned threads) {
  auto path = cache_path(ctx, desc, gens);
  if (path && std::filesystem::exists(*path)) {
    try {
      auto t = engine::load_table(*path, desc, gens);
      if (t.radius() >= radius) return t;
      t.extend(radius, ctx.options(threads));
      store(ctx, t, path);
      return t;
    } catch (const MemoryBudgetExceeded&) {
      throw;
    } catch (const Error& e) {
      ctx.err << "warning: ignoring cache file " << path->string() << ": " << e.what() << "\n";
    }
  }
  auto t = engine::bfs_ball(desc, gens, radius, ctx.options(threads));
  store(ctx, t, path);
  return t;
}

void write_json(const Context& ctx, const std::string& path, const Json& j) {
  if (path == "-") {
    ctx.json_out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  f << j.dump(2) << "\n";
}

int cmd_criterion(const Context& ctx, const std::string& group, const std::string& letters, const std::string& json) {
  const auto& desc = zoo::registry(group);
  auto gens = gens_for(desc, letters);
  auto r = criterion::classify(desc, gens);
  auto& out = ctx.out;
  out << "group " << r.group << "\n";
  out << "cycles (word, point, length):\n";
  for (const auto& d : r.a)
    out << "  " << words::format_word(d.word, gens) << "  " << vec_text(d.point) << "  " << d.length << "\n";
  out << "orbit points:";
  for (const auto& p : r.orbit_points) out << " " << vec_text(p);
  out << "\n";
  if (r.polytope) {
    out << "polytope vertices:";
    for (const auto& v : r.polytope->vertices()) out << " " << vec_text(v);
    out << "\n";
    out << "facets (cycles on each):\n";
    for (const auto& inc : r.incidence) {
      out << "  " << facet_text(inc.facet) << ":";
      for (auto i : inc.members) out << " " << words::format_word(r.a[i].word, gens);
      out << "\n";
    }
  } else {
    out << "polytope is degenerate: affine dimension " << *r.degenerate_affine_dim << " < " << desc.ab_dim() << "\n";
  }
  out << "verdict: " << criterion::verdict_summary(r.verdict) << "\n";
  if (r.verdict.witness) {
    auto [i, k] = *r.verdict.witness;
    out << "witness: " << words::format_word(r.a[i].word, gens) << " and " << words::format_word(r.a[k].word, gens)
        << " on facet " << facet_text(*r.verdict.witness_facet) << "\n";
  }
  if (!json.empty()) write_json(ctx, json, criterion::to_json(r, gens));
  if (r.verdict.kind == criterion::VerdictKind::Degenerate)
    throw DegeneratePolytope(r.degenerate_affine_dim.value_or(0), desc.ab_dim());
  return kOk;
}

int cmd_ball(const Context& ctx, const std::string& group, const std::string& letters, int radius,
             const std::string& save, unsigned threads) {
  const auto& desc = zoo::registry(group);
  auto gens = gens_for(desc, letters);
  auto t = obtain_table(ctx, desc, gens, radius, threads);
  ctx.out << "n,beta_layer,beta_cum\n";
  long long cum = 0;
  for (int n = 0; n <= radius; ++n) {
    auto s = static_cast<long long>(t.layers()[n].size());
    cum += s;
    ctx.out << n << "," << s << "," << cum << "\n";
  }
  if (!save.empty()) engine::save_table(t, save);
  return kOk;
}

int cmd_growth(const Context& ctx, const std::string& group, const std::string& letters, int radius, unsigned threads,
               const std::string& json) {
  const auto& desc = zoo::registry(group);
  auto gens = gens_for(desc, letters);
  auto t = obtain_table(ctx, desc, gens, radius, threads);
  auto r = engine::growth_report(t);
  ctx.out << "n,beta,gamma,beta_over_n_d\n";
  Json rows = Json::array();
  for (int n = 0; n <= radius; ++n) {
    std::string ratio = n ? r.ratio_trace[n].str() : "";
    ctx.out << n << "," << r.beta[n] << "," << big_str(r.gamma[n]) << "," << ratio << "\n";
    rows.push_back({{"n", n}, {"beta", r.beta[n]}, {"gamma", big_str(r.gamma[n])}, {"ratio", ratio}});
  }
  if (!json.empty()) write_json(ctx, json, {{"group", group}, {"radius", radius}, {"d", r.d}, {"rows", rows}});
  return kOk;
}

int cmd_geodesic_growth(const Context& ctx, const std::string& group, const std::string& letters, int radius,
                        int brute, unsigned threads) {
  const auto& desc = zoo::registry(group);
  auto gens = gens_for(desc, letters);
  auto t = obtain_table(ctx, desc, gens, radius, threads);
  auto gamma = engine::geodesic_counts(t);
  std::vector<BigInt> check;
  if (brute >= 0) check = engine::brute_geodesic_counts(t, std::min(brute, radius));
  ctx.out << (check.empty() ? "n,gamma\n" : "n,gamma,brute\n");
  bool mismatch = false;
  for (int n = 0; n <= radius; ++n) {
    ctx.out << n << "," << big_str(gamma[n]);
    if (!check.empty()) {
      ctx.out << ",";
      if (static_cast<std::size_t>(n) < check.size()) {
        ctx.out << big_str(check[n]);
        mismatch = mismatch || check[n] != gamma[n];
      }
    }
    ctx.out << "\n";
  }
  if (mismatch) {
    ctx.err << "error: layered counts disagree with brute-force enumeration\n";
    return kInternal;
  }
  return kOk;
}

int cmd_eval(const Context& ctx, const std::string& group, const std::string& letters, const std::string& word) {
  const auto& desc = zoo::registry(group);
  auto gens = gens_for(desc, letters);
  auto w = words::parse_word(word, gens);
  ctx.out << desc.format(words::evaluate(w, gens, desc)) << "\n";
  return kOk;
}

int cmd_norm(const Context& ctx, const std::string& group, const std::string& letters, const std::string& word,
             int radius, unsigned threads) {
  const auto& desc = zoo::registry(group);
  auto gens = gens_for(desc, letters);
  auto g = words::evaluate(words::parse_word(word, gens), gens, desc);
  auto t = obtain_table(ctx, desc, gens, radius, threads);
  int n = engine::norm(t, g);
  ctx.out << "norm " << n << "\n";
  ctx.out << "geodesic " << words::format_word(engine::geodesic_witness(t, g), gens) << "\n";
  return kOk;
}

int cmd_family(const Context& ctx, long long n, long long k, const std::string& eps_text, bool verify, int radius,
               unsigned threads, const std::string& json) {
  const auto& desc = zoo::registry("vE");
  auto gens = words::GenSet::standard(desc);
  Rational eps = parse_rational(eps_text, "eps");
  auto fam = engine::family_words(n, k, eps, gens);
  long long base = engine::floor_pow(n, eps), lb = 1;
  for (long long i = 1; i < k; ++i) lb *= base;
  ctx.out << "family n=" << n << " K=" << k << " eps=" << eps.str() << ": " << fam.size()
          << " words, floor(n^eps)^(K-1) = " << lb << "\n";
  Json entries = Json::array();
  auto m_text = [](const std::vector<long long>& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s + ")";
  };
  if (!verify) {
    for (const auto& f : fam) {
      ctx.out << "m=" << m_text(f.m) << "  " << words::format_word(f.word, gens) << "\n";
      entries.push_back({{"m", f.m}, {"word", words::format_word(f.word, gens)}});
    }
  } else {
    auto t = obtain_table(ctx, desc, gens, radius > 0 ? radius : static_cast<int>(n + k), threads);
    auto r = engine::verify_family(n, k, eps, t);
    for (const auto& e : r.entries) {
      ctx.out << "m=" << m_text(e.family.m) << "  " << words::format_word(e.family.word, gens) << "  norm "
              << e.norm << "  " << (e.geodesic ? "geodesic" : "not geodesic");
      Json j{{"m", e.family.m}, {"word", words::format_word(e.family.word, gens)}, {"norm", e.norm},
             {"geodesic", e.geodesic}};
      if (e.witness) {
        ctx.out << "  shorter: " << words::format_word(*e.witness, gens);
        j["witness"] = words::format_word(*e.witness, gens);
      }
      ctx.out << "\n";
      entries.push_back(j);
    }
    ctx.out << (r.all_geodesic ? "all geodesic" : "some words are not geodesic") << "\n";
  }
  if (!json.empty())
    write_json(ctx, json,
               {{"n", n}, {"K", k}, {"eps", eps.str()}, {"count", fam.size()}, {"lower_bound", lb}, {"words", entries}});
  return kOk;
}

int cmd_by_bound(const Context& ctx, long long n, const std::string& json) {
  auto r = engine::by_bound_sweep(n);
  auto& out = ctx.out;
  out << "n=" << n << ": " << r.words << " words, checking 24 (k-1)^2 (-B_y) >= " << big_str(r.rhs) << "\n";
  out << "violations: " << r.violations.size() << "\n";
  for (const auto& w : r.violations) out << "  " << w.word << "  k=" << w.k << "  -B_y=" << w.minus_by.str() << "\n";
  out << "minimum " << (r.minimizers.empty() ? std::string("-") : r.minimizers[0].lhs.str()) << " at:\n";
  for (const auto& w : r.minimizers) out << "  " << w.word << "  k=" << w.k << "  -B_y=" << w.minus_by.str() << "\n";
  out << "equality at:";
  for (const auto& w : r.equality) out << " [" << w << "]";
  out << "\n";
  if (!json.empty()) {
    auto list = [](const std::vector<engine::SweepWord>& ws) {
      auto a = Json::array();
      for (const auto& w : ws)
        a.push_back({{"word", w.word}, {"k", w.k}, {"minus_by", w.minus_by.str()}, {"lhs", w.lhs.str()}});
      return a;
    };
    write_json(ctx, json,
               {{"n", n}, {"words", r.words}, {"rhs", big_str(r.rhs)}, {"violations", list(r.violations)},
                {"minimizers", list(r.minimizers)}, {"equality", r.equality}});
  }
  return r.violations.empty() ? kOk : kDomain;
}

int cmd_norm_gap(const Context& ctx, long long n, int radius, unsigned threads, const std::string& json) {
  const auto& desc = zoo::registry("Engel");
  auto gens = words::GenSet::standard(desc);
  auto path = cache_path(ctx, desc, gens);
  std::optional<engine::NormTable> table;
  if (path && std::filesystem::exists(*path)) {
    try {
      table.emplace(engine::load_table(*path, desc, gens));
    } catch (const Error& e) {
      ctx.err << "warning: ignoring cache file " << path->string() << ": " << e.what() << "\n";
    }
  }
  if (!table) table.emplace(desc, gens);
  int before = table->radius();
  auto r = engine::norm_gap_search(n, *table, radius, ctx.options(threads));
  if (table->radius() > before) store(ctx, *table, path);
  Json j{{"n", n}, {"in_group", r.in_group}};
  if (r.in_group) {
    ctx.out << "g_" << n << " = (" << n << ", 0, 0, 0): norm " << r.norm << ", gap " << r.gap << "\n";
    ctx.out << "geodesic " << words::format_word(r.witness, gens) << "\n";
    j["norm"] = r.norm;
    j["gap"] = r.gap;
    j["witness"] = words::format_word(r.witness, gens);
  } else {
    ctx.out << "g_" << n << " = (" << n << ", 0, 0, 0) is not in the lattice (norm infinite); absent from the ball of radius "
            << r.absent_through << "\n";
    j["absent_through"] = r.absent_through;
  }
  if (!json.empty()) write_json(ctx, json, j);
  return kOk;
}

}  // namespace

Config parse_config(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidParams, "config line " + std::to_string(lineno) + ": expected key=value");
    auto key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    auto number = [&]() -> long long {
      try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used == value.size() && v > 0) return v;
      } catch (const std::logic_error&) {
      }
      throw Error(ErrorCode::InvalidParams, "config line " + std::to_string(lineno) + ": " + key +
                                                " must be a positive integer");
    };
    if (key == "cache_dir") {
      c.cache_dir = value;
    } else if (key == "default_threads") {
      c.default_threads = static_cast<unsigned>(number());
    } else if (key == "memory_budget") {
      c.memory_budget = static_cast<std::size_t>(number());
    } else {
      throw Error(ErrorCode::InvalidParams, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot read config file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact growth computations for virtually nilpotent groups.", "nilgrowth"};
  app.require_subcommand(1);
  app.footer(std::string("Groups: Z1 Z2 H3 Engel vZ vH vE G2rot\n\n") + words::grammar_text() +
             "\nExit codes: 0 ok, 2 usage, 3 domain error, 4 resource error.\n"
             "Config: key=value lines (cache_dir, default_threads, memory_budget);\n"
             "NILGROWTH_CACHE overrides cache_dir.");
  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);

  std::string group, letters, json, word, save, eps = "1/2";
  int radius = -1, brute = -1, s = 0;
  long long n = 0, k = 2;
  unsigned threads = 0;
  bool verify = false;

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("group", group, "group name")->required();
    sub->add_option("--letters", letters, "comma-separated subset of the group's letters");
  };
  auto add_radius = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--radius", radius, "ball radius")->check(CLI::NonNegativeNumber);
    if (required) o->required();
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads (default from config)")->check(CLI::PositiveNumber);
  };

  auto* c_criterion = app.add_subcommand("criterion", "classify geodesic growth from the cycle polytope");
  add_group(c_criterion);
  c_criterion->add_option("--json", json, "write the report as JSON ('-' for stdout)");

  auto* c_ball = app.add_subcommand("ball", "sphere and ball sizes (CSV)");
  add_group(c_ball);
  add_radius(c_ball, true);
  add_threads(c_ball);
  c_ball->add_option("--save", save, "save the norm table to a file");

  auto* c_growth = app.add_subcommand("growth", "volume and geodesic growth (CSV)");
  add_group(c_growth);
  add_radius(c_growth, true);
  add_threads(c_growth);
  c_growth->add_option("--json", json, "also write JSON ('-' for stdout)");

  auto* c_geo = app.add_subcommand("geodesic-growth", "geodesic growth (CSV)");
  add_group(c_geo);
  add_radius(c_geo, true);
  add_threads(c_geo);
  c_geo->add_option("--brute-check", brute, "cross-check against exhaustive enumeration up to this length")
      ->check(CLI::NonNegativeNumber);

  auto* c_eval = app.add_subcommand("eval", "evaluate a word");
  add_group(c_eval);
  c_eval->add_option("word", word, "word (see grammar below)")->required();

  auto* c_norm = app.add_subcommand("norm", "word norm of the element a word represents");
  add_group(c_norm);
  c_norm->add_option("word", word, "word (see grammar below)")->required();
  add_radius(c_norm, true);
  add_threads(c_norm);

  auto* c_family = app.add_subcommand("family", "alternating family words in vE");
  c_family->add_option("--n", n, "total number of a-letters (even)")->required();
  c_family->add_option("--K", k, "number of t-letters (even, >= 2)");
  c_family->add_option("--eps", eps, "deviation exponent p/q");
  c_family->add_flag("--verify", verify, "check geodesicity against a norm table");
  add_radius(c_family, false);
  add_threads(c_family);
  c_family->add_option("--json", json, "also write JSON ('-' for stdout)");

  auto* c_by = app.add_subcommand("by-bound", "zero-drift moment inequality sweep in the Engel group");
  c_by->add_option("--n", n, "word length (even)")->required();
  c_by->add_option("--json", json, "also write JSON ('-' for stdout)");

  auto* c_gap = app.add_subcommand("norm-gap", "word norm of (n,0,0,0) in the Engel group");
  c_gap->add_option("--n", n, "horizontal displacement")->required()->check(CLI::NonNegativeNumber);
  add_radius(c_gap, true);
  add_threads(c_gap);
  c_gap->add_option("--json", json, "also write JSON ('-' for stdout)");

  auto* c_alpha = app.add_subcommand("alpha", "sub-exponential growth exponent alpha_s");
  c_alpha->add_option("--s", s, "nilpotency class (>= 2)")->required();
  auto* c_delta = app.add_subcommand("delta", "volume error exponent delta_s");
  c_delta->add_option("--s", s, "nilpotency class (>= 1)")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    // With "--json -" stdout carries only the JSON document.
    std::ostream discard(nullptr);
    Context ctx{{}, json == "-" ? discard : out, err, out};
    if (!config_path.empty()) ctx.config = load_config(config_path);
    if (const char* env = std::getenv("NILGROWTH_CACHE"); env && *env) ctx.config.cache_dir = env;

    if (c_criterion->parsed()) return cmd_criterion(ctx, group, letters, json);
    if (c_ball->parsed()) return cmd_ball(ctx, group, letters, radius, save, threads);
    if (c_growth->parsed()) return cmd_growth(ctx, group, letters, radius, threads, json);
    if (c_geo->parsed()) return cmd_geodesic_growth(ctx, group, letters, radius, brute, threads);
    if (c_eval->parsed()) return cmd_eval(ctx, group, letters, word);
    if (c_norm->parsed()) return cmd_norm(ctx, group, letters, word, radius, threads);
    if (c_family->parsed()) return cmd_family(ctx, n, k, eps, verify, radius, threads, json);
    if (c_by->parsed()) return cmd_by_bound(ctx, n, json);
    if (c_gap->parsed()) return cmd_norm_gap(ctx, n, radius, threads, json);
    if (c_alpha->parsed()) {
      out << criterion::alpha(s).str() << "\n";
      return kOk;
    }
    if (c_delta->parsed()) {
      out << criterion::delta(s).str() << "\n";
      return kOk;
    }
    return kUsage;
  } catch (const Error& e) {
    int code = exit_code_for(e.code());
    if (!json.empty()) {
      err << Json{{"error", error_code_name(e.code())}, {"message", e.what()}, {"exit_code", code}}.dump() << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return code;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kResource;
  }
}

}  // namespace nilgrowth::cli
