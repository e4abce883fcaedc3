// Command-line driver: builds a Coxeter system from flags or a config file,
// runs one module pipeline and prints a JSON document on standard output.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error,
// 3 internal error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hinv/cache.hpp"
#include "hinv/cells.hpp"
#include "hinv/eqvb.hpp"
#include "hinv/idealmod.hpp"
#include "hinv/invmod.hpp"
#include "hinv/parallel.hpp"
#include "hinv/suites.hpp"

namespace {

using namespace hinv;
using coxeter::CoxeterSystem;
using coxeter::ElementId;
using coxeter::ElementTable;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultInfiniteLength = 12;

struct Options {
  std::string type, matrix, star, config, cache_dir, y, w;
  std::size_t max_len = 0;
  bool pretty = false;
  bool json_out = false;
  int jobs = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(std::string("bad ") + what + ": '" + s + "'");
  return v;
}

// "1,3;3,1": rows by semicolons, entries by commas, "inf" or 0 for infinity.
std::vector<int> parse_matrix(const std::string& text, int& rank) {
  std::vector<int> m;
  const auto rows = split(text, ';');
  rank = static_cast<int>(rows.size());
  for (const auto& r : rows) {
    const auto entries = split(r, ',');
    if (static_cast<int>(entries.size()) != rank) throw UsageError("matrix must be square: " + text);
    for (auto e : entries) {
      e.erase(std::remove_if(e.begin(), e.end(), ::isspace), e.end());
      m.push_back(e == "inf" || e == "0" ? coxeter::kInfinity : parse_int(e, "matrix entry"));
    }
  }
  return m;
}

std::vector<int> parse_star(const std::string& text) {
  std::vector<int> star;
  if (text.empty()) return star;
  for (const auto& e : split(text, ',')) star.push_back(parse_int(e, "star entry") - 1);
  return star;
}

json read_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config " + path + " is not valid JSON: " + e.what());
  }
}

// Flags win over config keys.
void merge_config(Options& o, const json& cfg) {
  auto str = [&](const char* key, std::string& dst) {
    if (dst.empty() && cfg.contains(key)) {
      const auto& v = cfg.at(key);
      if (v.is_string()) dst = v.get<std::string>();
      else dst = v.dump();
    }
  };
  str("type", o.type);
  if (o.matrix.empty() && cfg.contains("matrix")) {
    const auto& m = cfg.at("matrix");
    if (m.is_string()) {
      o.matrix = m.get<std::string>();
    } else {
      std::string text;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) text += ';';
        for (std::size_t j = 0; j < m[i].size(); ++j) text += (j ? "," : "") + std::to_string(m[i][j].get<int>());
      }
      o.matrix = text;
    }
  }
  if (o.star.empty() && cfg.contains("star")) {
    const auto& s = cfg.at("star");
    if (s.is_string()) {
      o.star = s.get<std::string>();
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) o.star += (i ? "," : "") + std::to_string(s[i].get<int>());
    }
  }
  if (o.max_len == 0 && cfg.contains("max_len")) o.max_len = cfg.at("max_len").get<std::size_t>();
}

struct Context {
  std::optional<CoxeterSystem> sys;
  std::shared_ptr<const ElementTable> table;
  std::shared_ptr<const hecke::HeckeAlgebra> H;
  std::unique_ptr<cache::Cache> cache;
  json config;
  int jobs = 1;

  [[nodiscard]] bool finite() const { return table->complete(); }
};

void require_system(const Context& c) {
  if (!c.sys) throw UsageError("a system is required: --type LABEL, --matrix M or a config with one of these");
}

void require_finite(const Context& c, const char* what) {
  if (!c.finite()) throw UsageError(std::string(what) + " needs a finite group");
}

json system_json(const Context& c) {
  if (!c.sys) return nullptr;
  const auto& s = *c.sys;
  std::vector<int> star;
  for (int x : s.star_permutation()) star.push_back(x + 1);
  return {{"label", s.label()},
          {"rank", s.rank()},
          {"matrix", s.matrix()},
          {"star", star},
          {"finite", s.is_finite()},
          {"window_max_length", c.finite() ? json(nullptr) : json(c.table->max_length())},
          {"elements", c.table->size()}};
}

std::string word(const ElementTable& t, ElementId x) { return t.element(x).to_string(); }

ElementId parse_element(const ElementTable& t, const std::string& w, const char* flag) {
  try {
    const auto digits = w == "e" ? std::string() : w;
    return t.parse(digits);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad element for ") + flag + ": '" + w + "'");
  }
}

// A report plus whether it tests a conjecture (those are reported but never fail the run).
struct Outcome {
  Report report;
  bool conjecture = false;
};

json reports_json(const std::vector<Outcome>& rs) {
  json a = json::array();
  for (const auto& r : rs) {
    auto j = r.report.to_json();
    j["conjecture"] = r.conjecture;
    a.push_back(std::move(j));
  }
  return a;
}

bool all_required_pass(const std::vector<Outcome>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const Outcome& o) { return o.conjecture || o.report.all_pass(); });
}

// --- commands ---------------------------------------------------------------

json cmd_group(Context& c, std::vector<Outcome>&) {
  require_system(c);
  const auto& t = *c.table;
  json rows = json::array();
  for (auto x : t.ids()) {
    std::vector<int> ld, rd;
    for (int s = 0; s < c.sys->rank(); ++s) {
      if (t.is_left_descent(s, x)) ld.push_back(s + 1);
      if (t.is_right_descent(x, s)) rd.push_back(s + 1);
    }
    rows.push_back({{"w", word(t, x)},
                    {"length", t.length(x)},
                    {"left_descents", ld},
                    {"right_descents", rd},
                    {"inverse", word(t, t.inverse(x))},
                    {"star", word(t, t.star(x))},
                    {"twisted_involution", t.star(x) == t.inverse(x)}});
  }
  return {{"group", rows}};
}

json cmd_kl(Context& c, std::vector<Outcome>& reports, const Options& o) {
  require_system(c);
  const auto& t = *c.table;
  if (!o.y.empty() || !o.w.empty()) {
    if (o.y.empty() || o.w.empty()) throw UsageError("kl: --y and --w go together");
    const auto y = parse_element(t, o.y, "--y"), w = parse_element(t, o.w, "--w");
    const auto& P = c.H->kl_poly(y, w);
    return {{"y", word(t, y)}, {"w", word(t, w)}, {"P", to_string(P, PolyStyle::U)}, {"mu", c.H->mu(y, w)}};
  }
  reports.push_back({suites::kl_suite(*c.H)});
  json nontrivial = json::array();
  for (auto [y, w] : suites::nontrivial_kl(*c.H))
    nontrivial.push_back({{"y", word(t, y)}, {"w", word(t, w)}, {"P", to_string(c.H->kl_poly(y, w), PolyStyle::U)}});
  return {{"kl", hecke::kl_to_json(*c.H)}, {"nontrivial", nontrivial}};
}

std::shared_ptr<const cells::CellData> cell_data(const Context& c) {
  require_finite(c, "cells");
  return std::make_shared<const cells::CellData>(c.H, c.jobs);
}

json cmd_cells(Context& c, std::vector<Outcome>&) {
  require_system(c);
  return {{"cells", cell_data(c)->to_json()}};
}

json cmd_jring(Context& c, std::vector<Outcome>& reports) {
  require_system(c);
  const auto C = cell_data(c);
  const auto& t = *c.table;
  suites::JOptions jo;
  if (t.size() > 24) jo.random_triples = 10000;
  reports.push_back({suites::jring_suite(*C, jo)});
  json blocks = json::array();
  for (const auto& b : C->two_sided_blocks()) {
    json basis = json::array();
    for (auto x : b.basis) basis.push_back(word(t, x));
    blocks.push_back({{"basis", basis}, {"unit", cells::j_to_json(t, b.unit)}});
  }
  json dist = json::array();
  for (auto d : C->distinguished()) dist.push_back(word(t, d));
  return {{"two_sided_blocks", blocks}, {"distinguished", dist}};
}

std::shared_ptr<const invmod::InvolutionModule> module(const Context& c) {
  return std::make_shared<const invmod::InvolutionModule>(c.H);
}

invmod::Section1Options section1_options(const ElementTable& t) {
  invmod::Section1Options so;
  if (t.size() > 24) so.random_triples = 10000;
  return so;
}

json cmd_invmod(Context& c, std::vector<Outcome>& reports) {
  require_system(c);
  const auto M = module(c);
  reports.push_back({invmod::verify_module(*M)});
  json out{{"A_basis", invmod::a_basis_to_json(*M)}, {"bar_length_bound", M->bar_length_bound()}};
  if (c.finite()) {
    const invmod::CmModule cm(M, cell_data(c));
    reports.push_back({invmod::verify_section1(cm, section1_options(*c.table))});
  }
  return out;
}

json cmd_conj34(Context& c, std::vector<Outcome>& reports, const Options& o) {
  require_system(c);
  const auto M = module(c);
  const idealmod::IdealModule I(M);
  const auto& t = *c.table;
  json xs = json::array();
  auto emit = [&](ElementId w) {
    try {
      xs.push_back({{"w", word(t, w)}, {"X", idealmod::completion_to_json(t, I.X(w))}});
    } catch (const std::out_of_range&) {
    }
  };
  if (!o.w.empty()) {
    const auto w = parse_element(t, o.w, "--w");
    if (!M->in_I(w)) throw UsageError("--w must be a twisted involution");
    emit(w);
  } else {
    for (auto w : M->involutions()) emit(w);
  }
  json out{{"X_empty", idealmod::completion_to_json(t, I.x_empty())}, {"X", xs}};
  reports.push_back({idealmod::intertwining_check(I)});
  if (c.finite()) {
    auto eta = idealmod::eta_check(I);
    out["eta"] = {{"holds", eta.holds},
                  {"rank_ideal", eta.rank_ideal},
                  {"rank_module", eta.rank_module},
                  {"rank_joint", eta.rank_joint}};
    if (!eta.holds) out["eta"]["witness"] = eta.witness;
    reports.push_back({eta.report, true});
  }
  return out;
}

json cmd_pi(Context& c, std::vector<Outcome>& reports) {
  require_system(c);
  const auto M = module(c);
  const idealmod::IdealModule I(M);
  const idealmod::PiMap pi(c.table);
  const auto& t = *c.table;
  json fibers = json::array();
  for (auto w : M->involutions()) {
    json f = json::array();
    for (auto x : pi.fiber(w)) f.push_back(word(t, x));
    if (!f.empty()) fibers.push_back({{"w", word(t, w)}, {"fiber", f}});
  }
  reports.push_back({pi.well_definedness()});
  reports.push_back({idealmod::specialization_check(I, pi)});
  return {{"fibers", fibers}, {"pi", pi.to_json()}};
}

eqvb::GammaSet gamma_set_from(const json& g) {
  try {
    const int rank = g.at("rank").get<int>();
    if (g.contains("subgroups")) return eqvb::GammaSet::from_cosets(rank, g.at("subgroups").get<std::vector<std::vector<eqvb::Elem>>>());
    if (g.contains("generators"))
      return eqvb::GammaSet::from_generators(rank, g.at("points").get<std::size_t>(),
                                             g.at("generators").get<std::vector<std::vector<std::uint32_t>>>());
    if (g.contains("action")) return eqvb::GammaSet(rank, g.at("action").get<std::vector<std::vector<std::uint32_t>>>());
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad gamma_set: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad gamma_set: ") + e.what());
  }
  throw UsageError("gamma_set needs one of subgroups, generators (with points) or action");
}

// Cell data for every two-sided cell: configured Gamma where given (matched
// by a word contained in the cell), trivial Gamma otherwise.
json cell_consistency_run(Context& c, std::vector<Outcome>& reports) {
  const auto C = cell_data(c);
  const auto M = module(c);
  const auto& t = *c.table;
  const auto& part = C->partition();
  std::map<int, eqvb::CellGroupData> configured;
  if (c.config.contains("cells")) {
    for (const auto& e : c.config.at("cells")) {
      try {
        const auto x = parse_element(t, e.at("contains").get<std::string>(), "cells.contains");
        configured[part.two_sided_of[x.value]] = {e.at("rank").get<int>(),
                                                   e.at("subgroups").get<std::vector<std::vector<eqvb::Elem>>>()};
      } catch (const json::exception& ex) {
        throw UsageError(std::string("bad cells entry: ") + ex.what());
      }
    }
  }
  json rows = json::array();
  for (std::size_t k = 0; k < part.two_sided.size(); ++k) {
    std::set<int> lefts;
    for (auto w : part.two_sided[k]) lefts.insert(part.left_of[w.value]);
    std::size_t invols = 0;
    for (auto w : M->involutions()) invols += part.two_sided_of[w.value] == static_cast<int>(k);
    const bool given = configured.count(static_cast<int>(k)) != 0;
    const auto data = given ? configured.at(static_cast<int>(k))
                            : eqvb::CellGroupData{0, std::vector<std::vector<eqvb::Elem>>(lefts.size())};
    rows.push_back({{"cell", word(t, part.two_sided[k].front())},
                    {"size", part.two_sided[k].size()},
                    {"left_cells", lefts.size()},
                    {"involutions", invols},
                    {"gamma_rank", data.rank},
                    {"gamma_source", given ? "config" : "trivial (default)"}});
    reports.push_back({eqvb::cell_consistency(data, part.two_sided[k].size(), lefts.size(), invols), true});
  }
  return rows;
}

json cmd_eqvb(Context& c, std::vector<Outcome>& reports) {
  json out = json::object();
  if (c.config.contains("gamma_set")) {
    const eqvb::Structure S(gamma_set_from(c.config.at("gamma_set")));
    out["structure"] = S.to_json();
    reports.push_back({eqvb::verify_structure(S)});
    reports.push_back({eqvb::count_check(S)});
  }
  if (c.sys) out["cells"] = cell_consistency_run(c, reports);
  if (out.empty()) throw UsageError("eqvb needs a config with gamma_set, or a system for the cell check");
  return out;
}

json cmd_verify_all(Context& c, std::vector<Outcome>& reports) {
  require_system(c);
  const auto M = module(c);
  std::shared_ptr<const cells::CellData> C;
  if (c.finite()) C = cell_data(c);
  std::vector<std::function<std::vector<Outcome>()>> tasks;
  tasks.emplace_back([&] { return std::vector<Outcome>{{suites::kl_suite(*c.H)}}; });
  tasks.emplace_back([&] { return std::vector<Outcome>{{invmod::verify_module(*M)}}; });
  tasks.emplace_back([&] {
    const idealmod::IdealModule I(M);
    const idealmod::PiMap pi(c.table);
    std::vector<Outcome> r{{idealmod::intertwining_check(I)}, {pi.well_definedness()}, {idealmod::specialization_check(I, pi)}};
    if (c.finite()) r.push_back({idealmod::eta_check(I).report, true});
    return r;
  });
  if (C) {
    tasks.emplace_back([&] {
      suites::JOptions jo;
      if (c.table->size() > 24) jo.random_triples = 10000;
      return std::vector<Outcome>{{suites::jring_suite(*C, jo)}};
    });
    tasks.emplace_back([&] {
      const invmod::CmModule cm(M, C);
      return std::vector<Outcome>{{invmod::verify_section1(cm, section1_options(*c.table))}};
    });
  }
  std::vector<std::vector<Outcome>> results(tasks.size());
  parallel_for(tasks.size(), c.jobs, [&](std::size_t i) { results[i] = tasks[i](); });
  for (auto& r : results)
    for (auto& o : r) reports.push_back(std::move(o));
  json out = json::object();
  // the cell check needs Gamma data; type A has trivial Gamma, otherwise only with config
  const auto& label = c.sys->label();
  const bool type_a = !label.empty() && label[0] == 'A' && label.find("inf") == std::string::npos;
  if (C && (type_a || c.config.contains("cells"))) out["cells"] = cell_consistency_run(c, reports);
  else out["cells"] = "skipped: no Gamma data for this system";
  return out;
}

Context make_context(Options& o) {
  Context c;
  c.config = read_config(o.config);
  merge_config(o, c.config);
  c.jobs = std::max(1, o.jobs);
  std::string dir = o.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("WORKBENCH_CACHE")) dir = env;
  if (!dir.empty()) c.cache = std::make_unique<cache::Cache>(dir);
  if (o.type.empty() && o.matrix.empty()) return c;
  const auto star = parse_star(o.star);
  try {
    if (!o.matrix.empty()) {
      int rank = 0;
      auto m = parse_matrix(o.matrix, rank);
      c.sys.emplace(rank, std::move(m), star, o.type.empty() ? "custom" : o.type);
    } else {
      c.sys.emplace(CoxeterSystem::from_label(o.type, star));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::size_t len = o.max_len;
  if (!c.sys->is_finite() && len == 0) len = kDefaultInfiniteLength;
  c.table = len ? std::make_shared<const ElementTable>(*c.sys, len) : std::make_shared<const ElementTable>(*c.sys);
  c.H = std::make_shared<const hecke::HeckeAlgebra>(c.table, cache::kl_table(c.cache.get(), *c.table));
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke algebra and involution module workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--type", o.type, "Type label: A1..A8, B2.., D4.., G2, H3, I2(m), Dinf");
  app.add_option("--matrix", o.matrix, "Coxeter matrix, rows by ';', entries by ',', inf or 0 for infinity");
  app.add_option("--star", o.star, "Diagram involution as a 1-based permutation, e.g. 3,2,1");
  app.add_option("--max-len", o.max_len, "Window length for infinite groups (default 12)");
  app.add_option("--cache-dir", o.cache_dir, "Persistent cache directory (default: $WORKBENCH_CACHE)");
  app.add_option("--config", o.config, "JSON config: type, matrix, star, max_len, gamma_set, cells");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* json_flag = app.add_flag("--json", o.json_out, "Compact JSON output (default)");
  app.add_flag("--pretty", o.pretty, "Indented JSON output")->excludes(json_flag);

  std::map<std::string, std::function<json(Context&, std::vector<Outcome>&)>> commands{
      {"group", cmd_group},
      {"kl", [&](Context& c, std::vector<Outcome>& r) { return cmd_kl(c, r, o); }},
      {"cells", cmd_cells},
      {"jring", cmd_jring},
      {"invmod", cmd_invmod},
      {"conj34", [&](Context& c, std::vector<Outcome>& r) { return cmd_conj34(c, r, o); }},
      {"pi", cmd_pi},
      {"eqvb", cmd_eqvb},
      {"verify-all", cmd_verify_all},
  };
  const std::map<std::string, std::string> help{
      {"group", "List the elements of W (or of the window) with descents, inverse and star"},
      {"kl", "KL polynomials; with --y and --w a single P_{y,w}"},
      {"cells", "Left, right and two-sided cells, a-function, distinguished involutions"},
      {"jring", "Checks on the ring J and its blocks"},
      {"invmod", "The involution module: bar, A-basis and the J-module checks"},
      {"conj34", "X_empty, the X_w and the comparison of the ideal with the module"},
      {"pi", "Fibers of pi and the specialization check"},
      {"eqvb", "Equivariant vector bundles (config gamma_set) and the cell count check"},
      {"verify-all", "Every suite for the system"},
  };
  for (const auto& [name, text] : help) {
    auto* sub = app.add_subcommand(name, text);
    if (name == "kl" || name == "conj34") sub->add_option("--w", o.w, "Element w as a digit word");
    if (name == "kl") sub->add_option("--y", o.y, "Element y as a digit word");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Context c = make_context(o);
    std::vector<Outcome> reports;
    json out = commands.at(name)(c, reports);
    out["command"] = name;
    out["system"] = system_json(c);
    out["reports"] = reports_json(reports);
    const bool pass = all_required_pass(reports);
    out["pass"] = pass;
    std::cout << (o.pretty ? out.dump(2) : out.dump()) << '\n';
    return pass ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
