#include "cache.hpp"

#include "symcap/capacity.hpp"
#include "symcap/gw.hpp"
#include "symcap/linfty.hpp"
#include "symcap/model_io.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <atomic>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

using namespace symcap;

namespace {

enum Exit { ok = 0, usage = 1, not_found = 2, integrity = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KRange {
  long first = 1, last = 1;
};

KRange parse_range(const std::string& text) {
  KRange r;
  try {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
      r.first = r.last = std::stol(text);
    } else {
      r.first = std::stol(text.substr(0, dots));
      r.last = std::stol(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw UsageError("bad range '" + text + "' (expected k or a..b)");
  }
  if (r.first < 0 || r.last < r.first) throw UsageError("bad range '" + text + "'");
  return r;
}

std::string decimal(const Rational& q) { return fmt::format("{:.6f}", to_double(q)); }

// Evaluates f(k) for every k in the range on a few threads; results are
// returned in ascending k.
std::vector<std::optional<Rational>> parallel_values(const KRange& r, unsigned threads,
                                                     const std::function<std::optional<Rational>(long)>& f) {
  std::size_t n = static_cast<std::size_t>(r.last - r.first + 1);
  std::vector<std::optional<Rational>> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = f(r.first + static_cast<long>(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    cap::write_atomic(out_path, text);
}

// ---- capacity ----

struct CapacityArgs {
  std::string family, domain, k, out, manifest;
  bool no_cache = false;
  unsigned threads = 0;
};

std::function<std::optional<Rational>(long)> capacity_function(const std::string& family, const DomainDescriptor& d) {
  using Kind = DomainDescriptor::Kind;
  if (family == "eh") {
    if (d.kind == Kind::polydisk) throw UsageError("eh supports balls and ellipsoids");
    auto a = d.ellipsoid_params();
    return [a](long k) -> std::optional<Rational> {
      if (k < 1) throw UsageError("eh capacities start at k = 1");
      return capacity_sequence_EH(a, k);
    };
  }
  if (family == "ech") {
    if (d.kind == Kind::polydisk || !d.finite() || d.params.size() > 2)
      throw UsageError("ech supports balls and finite four-dimensional ellipsoids");
    auto a = d.finite_params();
    Rational x = a[0], y = a.size() > 1 ? a[1] : a[0];
    return [x, y](long k) -> std::optional<Rational> { return capacity_sequence_ECH(x, y, k); };
  }
  if (family == "g-tangency") {
    if (!d.finite()) throw UsageError("g-tangency needs finite parameters");
    return [d](long k) { return g_tangency(d, k); };
  }
  if (family == "r-points") {
    if (d.kind != Kind::ball) throw UsageError("r-points is implemented for balls");
    Rational c = d.finite_params()[0];
    return [c](long r) -> std::optional<Rational> {
      if (r < 1) throw UsageError("r-points needs r >= 1");
      return c * r_points_ball(r);
    };
  }
  if (family == "mcduff-f") {
    if (d.kind != Kind::ellipsoid || !d.finite()) throw UsageError("mcduff-f takes E:a,b and reads x = b/a");
    auto a = d.finite_params();
    Rational x = a[1] / a[0];
    return [x](long K) -> std::optional<Rational> {
      if (K < 1) throw UsageError("mcduff-f needs K >= 1");
      return mcduff_f(x, K).value;
    };
  }
  throw UsageError("unknown family '" + family + "' (eh, ech, g-tangency, r-points, mcduff-f)");
}

int cmd_capacity(const CapacityArgs& a) {
  DomainDescriptor d;
  try {
    d = DomainDescriptor::parse(a.domain);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  KRange r = parse_range(a.k);
  auto f = capacity_function(a.family, d);

  cap::RunManifest m;
  m.command = "capacity";
  m.parameters = {{"family", a.family}, {"domain", d.str()}, {"k", fmt::format("{}..{}", r.first, r.last)}};
  cap::Cache cache(cap::Cache::default_root());

  std::optional<std::string> table;
  if (!a.no_cache) table = cache.lookup(m);
  bool cached = table.has_value();
  if (!table) {
    auto values = parallel_values(r, a.threads, f);
    std::string csv = "k,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
      csv += fmt::format("{},{}\n", r.first + static_cast<long>(i), values[i] ? to_string(*values[i]) : "none");
    table = csv;
    if (!a.no_cache) cache.store(m, csv);
  }
  emit(*table, a.out);
  m.output_digest = cap::sha256_hex(*table);
  if (!a.manifest.empty()) cap::write_atomic(a.manifest, m.to_json().dump(2) + "\n");

  // human summary from the table itself, so cached and fresh runs agree
  std::vector<Rational> found;
  std::istringstream in(*table);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    auto v = line.substr(line.find(',') + 1);
    if (v != "none") found.push_back(parse_rational(v));
  }
  if (found.empty()) {
    std::cerr << fmt::format("{} {}: no values for k = {}..{}\n", a.family, d.str(), r.first, r.last);
    return not_found;
  }
  auto [lo, hi] = std::minmax_element(found.begin(), found.end());
  std::cerr << fmt::format("{} {} k={}..{}: {} values, min {} (~{}), max {} (~{}){}\n", a.family, d.str(), r.first,
                           r.last, found.size(), to_string(*lo), decimal(*lo), to_string(*hi), decimal(*hi),
                           cached ? " [cached]" : "");
  return ok;
}

// ---- obstruct ----

struct ObstructArgs {
  std::string source, target;
  long K = 50, k_max = 300;
  bool stabilized = false;
};

int cmd_obstruct(const ObstructArgs& a) {
  DomainDescriptor s, t;
  try {
    s = DomainDescriptor::parse(a.source);
    t = DomainDescriptor::parse(a.target);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  using Kind = DomainDescriptor::Kind;
  if (a.stabilized) {
    TargetFamily fam;
    Rational scale;
    if (t.kind == Kind::ball) {
      fam = TargetFamily::ball;
      scale = t.finite_params()[0];
    } else if (t.kind == Kind::polydisk && t.finite_params()[0] == t.finite_params()[1]) {
      fam = TargetFamily::cube;
      scale = t.finite_params()[0];
    } else {
      throw UsageError("stabilized targets are B or P:c,c");
    }
    auto w = stabilized_obstruction(s, fam, a.k_max);
    std::string family = fam == TargetFamily::ball ? "B^4(c)" : "P(c,c)";
    std::cout << fmt::format("bound c >= {} (~{}) for {} x C^N into {} x C^N, witness k={}\n", to_string(w.value),
                             decimal(w.value), s.str(), family, w.k);
    if (scale < w.value)
      std::cout << fmt::format("obstructed: {} < {}\n", to_string(scale), to_string(w.value));
    else
      std::cout << fmt::format("no obstruction at c = {}\n", to_string(scale));
    return ok;
  }
  if (s.kind == Kind::polydisk || t.kind == Kind::polydisk || !s.finite() || !t.finite() || s.params.size() > 2 ||
      t.params.size() > 2)
    throw UsageError("unstabilized obstruction compares balls or four-dimensional ellipsoids");
  auto sp = s.ellipsoid_params(), tp = t.ellipsoid_params();
  auto k = obstruct_4d_ellipsoid(*sp[0], *sp[1], *tp[0], *tp[1], a.K);
  if (!k) {
    std::cout << fmt::format("no obstruction from ECH capacities c_1..c_{}\n", a.K);
    return ok;
  }
  Rational cs = capacity_sequence_ECH(*sp[0], *sp[1], *k), ct = capacity_sequence_ECH(*tp[0], *tp[1], *k);
  std::cout << fmt::format("obstructed at k={}: c_k({}) = {} > c_k({}) = {}\n", *k, s.str(), to_string(cs), t.str(),
                           to_string(ct));
  return ok;
}

// ---- linf ----

struct LinfArgs {
  std::string model, aug, b, element, cutoff;
  std::size_t len = 3;
  std::optional<std::size_t> word_cap;
  bool deform_out = false, show_cycle = false;
};

ModelPtr load(const std::string& path) {
  try {
    return load_model_file(path);
  } catch (const IntegrityError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

int report(const LInfinityModel& m, const std::string& what, const std::vector<Violation>& v) {
  if (v.empty()) return ok;
  const auto& first = v.front();
  std::cout << fmt::format("fail: {} at {}: {}\n", what, m.bar_str(first.word),
                           first.description.empty() ? m.bar_element_str(first.residual) : first.description);
  return integrity;
}

int cmd_linf_check(const LinfArgs& a) {
  auto m = load(a.model);
  m->validate();
  if (int rc = report(*m, "relation", check_linfty_relations(*m, a.len))) return rc;
  if (int rc = report(*m, "coLeibniz", check_coleibniz(*m, a.len))) return rc;
  if (int rc = report(*m, "coassociativity", check_coassociativity(*m, a.len))) return rc;
  std::cout << fmt::format("pass (words up to length {})\n", a.len);
  return ok;
}

int cmd_linf_linearize(const LinfArgs& a) {
  auto m = load(a.model);
  std::string aug = a.aug;
  if (aug.empty()) {
    if (m->augmentations().empty()) throw UsageError("model has no augmentation; pass --aug");
    aug = m->augmentations().front().name;
  }
  auto lin = linearize(m, aug);
  std::cout << print_model(*lin.linear);
  return ok;
}

int cmd_linf_mc(const LinfArgs& a) {
  auto m = load(a.model);
  if (m->mc_elements().empty()) throw UsageError("model stores no Maurer-Cartan elements");
  int rc = ok;
  const NamedElement* chosen = nullptr;
  for (auto& e : m->mc_elements()) {
    if (!a.element.empty() && e.name != a.element) continue;
    if (!chosen) chosen = &e;
    auto chk = mc_check(*m, MaurerCartanElement{e.value});
    if (chk.pass) {
      std::cerr << e.name << ": pass\n";
    } else {
      std::cerr << fmt::format("{}: fail, residual {}\n", e.name, m->element_str(chk.residual));
      rc = integrity;
    }
  }
  if (!chosen) throw UsageError("no Maurer-Cartan element named '" + a.element + "'");
  if (a.deform_out && rc == ok) std::cout << print_model(*deform(*m, MaurerCartanElement{chosen->value}));
  return rc;
}

int cmd_linf_solve_gb(const LinfArgs& a) {
  auto m = load(a.model);
  std::string aug = a.aug;
  if (aug.empty()) {
    if (m->augmentations().empty()) throw UsageError("model has no augmentation");
    aug = m->augmentations().front().name;
  }
  Rational cutoff;
  if (!a.cutoff.empty())
    cutoff = parse_rational(a.cutoff);
  else if (m->cutoff())
    cutoff = *m->cutoff();
  else
    throw UsageError("model has no action cutoff; pass --cutoff");
  auto r = gb_solver(m, aug, a.b, a.word_cap, cutoff);
  if (!r.value) {
    std::cout << fmt::format("not found below action {}\n", to_string(cutoff));
    return not_found;
  }
  std::cout << to_string(*r.value) << "\n";
  if (a.show_cycle) std::cout << "cycle: " << m->bar_element_str(r.cycle) << "\n";
  return ok;
}

// ---- gw ----

struct GwArgs {
  std::string expr, table;
  std::uint64_t seed = 0;
  bool quiet = false;
};

struct ParsedExpr {
  ConstraintTerm term;
  bool formal = false;
};

// "CP2 d=2 <(T^4 p)>", "CP1xCP1 1,1 <...>" or a bare "<...>" (plane curves
// of the degree that makes it rigid)
ParsedExpr parse_expr(const std::string& text) {
  auto lt = text.find('<');
  if (lt == std::string::npos) throw UsageError("expression needs a <...> constraint");
  std::istringstream head(text.substr(0, lt));
  std::vector<std::string> tok;
  for (std::string w; head >> w;) tok.push_back(w);
  ParsedExpr p;
  try {
    if (tok.empty()) {
      p.term = parse_constraint(Surface::cp2, CurveClass{{1}}, text.substr(lt));
      long c = p.term.codimension();
      if (c % 2 == 0 && (c / 2 + 1) % 3 == 0 && c > 0) {
        p.term.cls.degrees = {(c / 2 + 1) / 3};
      } else {
        p.term.cls.degrees = {0};
        p.formal = true;
      }
      return p;
    }
    if (tok.size() != 2) throw UsageError("expected '<surface> d=<class> <...>'");
    Surface s = parse_surface(tok[0]);
    std::string cls = tok[1].rfind("d=", 0) == 0 ? tok[1].substr(2) : tok[1];
    p.term = parse_constraint(s, CurveClass::parse(s, cls), text.substr(lt));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

int cmd_gw(const GwArgs& a, bool evaluate_it) {
  auto p = parse_expr(a.expr);
  if (p.formal) {
    if (evaluate_it) throw UsageError(p.term.constraint_str() + " is not rigid for plane curves of any degree");
    std::cerr << fmt::format("note: {} is not rigid for plane curves of any degree; rewriting formally\n",
                             p.term.constraint_str());
  } else if (!p.term.rigid()) {
    throw UsageError(fmt::format("{} has codimension {} but index dimension {}", p.term.str(), p.term.codimension(),
                                 p.term.index_dimension()));
  }
  ReduceOptions opt;
  opt.seed = a.seed;
  opt.formal = p.formal;
  if (!a.quiet && !evaluate_it)
    opt.on_rewrite = [](const ConstraintTerm& t, const TermCombination& c) {
      std::cout << fmt::format("{} = {}\n", t.constraint_str(), to_string(c));
    };
  auto reduced = reduce(p.term, opt);
  if (!evaluate_it) {
    std::cout << fmt::format("result: {}\n", to_string(reduced));
    return ok;
  }
  auto table = BaseInvariantTable::load(a.table);
  try {
    Rational v = evaluate(reduced, table);
    if (!a.quiet) std::cerr << fmt::format("{} reduces to {}\n", p.term.str(), to_string(reduced));
    std::cout << to_string(v) << "\n";
  } catch (const MissingKeysError& e) {
    std::cerr << e.what() << "\n";
    return not_found;
  }
  return ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symplectic capacities, L-infinity models and tangency invariants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cap::tool_version);
  std::function<int()> run;

  CapacityArgs ca;
  auto* capc = app.add_subcommand("capacity", "capacity tables as CSV (k,value)");
  capc->add_option("--family", ca.family, "eh, ech, g-tangency, r-points or mcduff-f")->required();
  capc->add_option("--domain", ca.domain, "B, B:c, E:a,b[,...] or P:a,b")->required();
  capc->add_option("--k", ca.k, "index k or range a..b")->required();
  capc->add_option("--out", ca.out, "write the table to a file");
  capc->add_option("--manifest", ca.manifest, "write the run manifest (JSON)");
  capc->add_option("--threads", ca.threads, "worker threads (0: all cores)");
  capc->add_flag("--no-cache", ca.no_cache, "bypass the table cache");
  capc->callback([&] { run = [&] { return cmd_capacity(ca); }; });

  ObstructArgs oa;
  auto* obs = app.add_subcommand("obstruct", "capacity obstructions to embeddings");
  obs->add_option("--source", oa.source)->required();
  obs->add_option("--target", oa.target)->required();
  obs->add_option("--K", oa.K, "number of ECH capacities compared");
  obs->add_option("--k-max", oa.k_max, "largest k for stabilized bounds");
  obs->add_flag("--stabilized", oa.stabilized, "stabilized obstruction from tangency capacities");
  obs->callback([&] { run = [&] { return cmd_obstruct(oa); }; });

  LinfArgs la;
  auto* linf = app.add_subcommand("linf", "L-infinity model tools");
  linf->require_subcommand(1);
  auto* chk = linf->add_subcommand("check", "relations, coLeibniz and coassociativity");
  chk->add_option("model", la.model)->required();
  chk->add_option("--len", la.len, "maximal bar word length");
  chk->callback([&] { run = [&] { return cmd_linf_check(la); }; });
  auto* lin = linf->add_subcommand("linearize", "print the linearized model");
  lin->add_option("model", la.model)->required();
  lin->add_option("--aug", la.aug, "augmentation name");
  lin->callback([&] { run = [&] { return cmd_linf_linearize(la); }; });
  auto* mc = linf->add_subcommand("mc", "check stored Maurer-Cartan elements");
  mc->add_option("model", la.model)->required();
  mc->add_option("--element", la.element, "element name");
  mc->add_flag("--deform", la.deform_out, "print the deformed model");
  mc->callback([&] { run = [&] { return cmd_linf_mc(la); }; });
  auto* gb = linf->add_subcommand("solve-gb", "tangency-type capacity from an augmentation");
  gb->add_option("model", la.model)->required();
  gb->add_option("--b", la.b, "codomain element, e.g. t^3 or t^1.t^2")->required();
  gb->add_option("--l", la.word_cap, "bar word length cap");
  gb->add_option("--aug", la.aug, "augmentation name");
  gb->add_option("--cutoff", la.cutoff, "action cutoff (default: the model's)");
  gb->add_flag("--show-cycle", la.show_cycle, "print a realizing cycle");
  gb->callback([&] { run = [&] { return cmd_linf_solve_gb(la); }; });

  GwArgs ga;
  ga.table = CAP_DEFAULT_TABLE;
  auto* gw = app.add_subcommand("gw", "tangency invariants by pushing points together");
  gw->require_subcommand(1);
  auto* red = gw->add_subcommand("reduce", "rewrite into plain multipoint constraints, with a trace");
  red->add_option("expr", ga.expr, "e.g. \"CP2 d=2 <(T^4 p)>\"")->required();
  red->add_option("--seed", ga.seed, "rewrite order (0: highest order first)");
  red->add_flag("--quiet", ga.quiet, "result only");
  red->callback([&] { run = [&] { return cmd_gw(ga, false); }; });
  auto* ev = gw->add_subcommand("evaluate", "reduce and evaluate against a base table");
  ev->add_option("expr", ga.expr)->required();
  ev->add_option("--table", ga.table, "base invariant table");
  ev->add_option("--seed", ga.seed);
  ev->add_flag("--quiet", ga.quiet);
  ev->callback([&] { run = [&] { return cmd_gw(ga, true); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }
  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const cap::CacheIntegrityError& e) {
    std::cerr << "integrity: " << e.what() << "\n";
    return integrity;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity: " << e.what() << "\n";
    return integrity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
}
