// tourq: tournament quadrangularity toolkit command line.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tq/json.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using tq::json;

std::string read_source(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tq::input_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tq::input_error("cannot open output file: " + path);
  out << text;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct ReportSink {
  std::string command;
  json inputs = json::object();
  std::string out_path;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void emit(json outcome) const {
    json report{{"command", command},
                {"inputs", inputs},
                {"outcome", std::move(outcome)},
                {"version", kVersion},
                {"elapsed_sec",
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    write_output(out_path, report.dump(2) + "\n");
  }
};

tq::Tournament load_trn(const std::string& path, json& inputs) {
  std::string text = read_source(path);
  inputs["in"] = path.empty() ? "-" : path;
  inputs["in_hash"] = fnv1a_hex(text);
  return tq::parse_trn(text);
}

tq::PatternMatrix load_pat(const std::string& path, json& inputs) {
  std::string text = read_source(path);
  inputs["in"] = path.empty() ? "-" : path;
  inputs["in_hash"] = fnv1a_hex(text);
  return tq::parse_pat(text);
}

std::vector<int> parse_symbol(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument("junk");
      out.push_back(v);
    } catch (const std::exception&) {
      throw tq::input_error("symbol list: invalid entry '" + item + "'");
    }
  }
  return out;
}

/// Recover the symbol of a rotational tournament from vertex 0's outset and
/// verify every arc against it.
tq::RotationalSymbol symbol_of(const tq::Tournament& t) {
  tq::RotationalSymbol sym(t.order(), t.out_set(0).members());
  if (tq::Tournament::rotational(sym) != t)
    throw tq::input_error("tournament is not rotational with symbol = outset of vertex 0");
  return sym;
}

int run(int argc, char** argv) {
  CLI::App app{"tournament quadrangularity toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string in_path, out_path, symbol_csv, outer_path;
  std::vector<std::string> part_paths;
  int n = 0, p = 0, cap = 9, nmin = 4, nmax = 40, threads = 1, depth_cap = 4;
  std::uint64_t seed = 0, trials = 10000;
  bool long_run = false, csv = false;
  tq::OrthoConfig ocfg;

  // --- gen ---------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "construct tournaments (.trn to --out/stdout)");
  gen->require_subcommand(1);
  auto* g_rot = gen->add_subcommand("rotational", "rotational tournament from a symbol");
  g_rot->add_option("--n", n, "modulus (odd, >= 3)")->required();
  g_rot->add_option("--symbol", symbol_csv, "comma-separated residues")->required();
  auto* g_qr = gen->add_subcommand("qr", "quadratic residue tournament");
  g_qr->add_option("--p", p, "prime, 3 mod 4")->required();
  auto* g_comp = gen->add_subcommand("compose", "blow-up composition");
  g_comp->add_option("--outer", outer_path, "outer tournament .trn")->required();
  g_comp->add_option("--part", part_paths, "part .trn (repeat, one per outer vertex)")->required();
  auto* g_tx = gen->add_subcommand("transmitter", "add a transmitter");
  g_tx->add_option("--in", in_path, ".trn input (default stdin)");
  auto* g_rx = gen->add_subcommand("receiver", "add a receiver");
  g_rx->add_option("--in", in_path, ".trn input (default stdin)");
  auto* g_rand = gen->add_subcommand("random", "uniform random labeled tournament");
  g_rand->add_option("--n", n, "order")->required();
  g_rand->add_option("--seed", seed, "seed");
  gen->add_option("--out", out_path, "output file (default stdout)");

  // --- check -------------------------------------------------------------
  auto* check = app.add_subcommand("check", "predicates on a tournament or pattern");
  check->require_subcommand(1);
  auto* c_quad = check->add_subcommand("quad", "quadrangularity");
  auto* c_squad = check->add_subcommand("strongquad", "strong quadrangularity");
  auto* c_dom = check->add_subcommand("domination", "exact domination number");
  auto* c_rot = check->add_subcommand("rotsym", "rotational symbol difference criterion");
  auto* c_pat = check->add_subcommand("pattern", "combinatorial orthogonality of a .pat");
  for (auto* c : {c_quad, c_squad, c_dom, c_rot, c_pat})
    c->add_option("--in", in_path, "input file (default stdin)");
  c_rot->add_option("--n", n, "modulus (alternative to --in)");
  c_rot->add_option("--symbol", symbol_csv, "residues (alternative to --in)");
  check->add_option("--out", out_path, "report file (default stdout)");

  // --- enum --------------------------------------------------------------
  auto* en = app.add_subcommand("enum", "isomorph-free enumeration sweeps");
  en->require_subcommand(1);
  auto* e_census = en->add_subcommand("census", "all classes of one order");
  auto* e_qc = en->add_subcommand("quadcount", "count quadrangular classes");
  auto* e_o2 = en->add_subcommand("order2", "8-vertex domination dichotomy");
  auto* e_o3 = en->add_subcommand("order3", "9-vertex min-degree sweep");
  auto* e_g3 = en->add_subcommand("gamma3", "unique 7-vertex class of domination number 3");
  auto* e_fin = en->add_subcommand("final10", "eliminate all small orthogonal-support candidates");
  e_census->add_option("--n", n, "order")->required();
  e_qc->add_option("--n", n, "order")->required();
  e_fin->add_option("--cap", cap, "largest order to sweep (default 9)");
  std::string reps_path, ckpt_dir;
  e_census->add_option("--reps", reps_path, "write representatives (.trn pairs) here");
  e_qc->add_option("--reps", reps_path, "write quadrangular representatives here");
  en->add_option("--out", out_path, "report file (default stdout)");
  en->add_flag("--i-know-this-is-long", long_run, "allow the n=10 sweep");
  en->add_option("--checkpoint", ckpt_dir, "checkpoint directory for long n=10 runs");

  // --- sample ------------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "Monte Carlo estimates");
  sample->require_subcommand(1);
  auto* s_est = sample->add_subcommand("estimate", "non-quadrangular fraction");
  s_est->add_option("--n", n, "order")->required();
  s_est->add_option("--trials", trials, "trial count");
  s_est->add_option("--seed", seed, "seed");
  auto* s_bound = sample->add_subcommand("bound", "analytic bound curve");
  s_bound->add_option("--nmin", nmin, "first order");
  s_bound->add_option("--nmax", nmax, "last order");
  s_bound->add_flag("--csv", csv, "emit CSV rows instead of JSON");
  sample->add_option("--out", out_path, "report file (default stdout)");

  // --- ortho -------------------------------------------------------------
  auto* ortho = app.add_subcommand("ortho", "orthogonal realization search / refutation");
  ortho->require_subcommand(1);
  auto* o_search = ortho->add_subcommand("search", "alternating projections");
  o_search->add_option("--seed", ocfg.seed, "seed");
  o_search->add_option("--restarts", ocfg.restarts, "restart budget");
  o_search->add_option("--max-iter", ocfg.max_iter, "iterations per restart");
  auto* o_cert = ortho->add_subcommand("certificate", "ratio propagation refutation");
  o_cert->add_option("--depth-cap", depth_cap, "chaining depth cap");
  for (auto* o : {o_search, o_cert}) o->add_option("--in", in_path, ".pat input (default stdin)");
  ortho->add_option("--out", out_path, "report file (default stdout)");

  app.add_option("--threads", threads, "worker count for enumeration/sampling/restarts");

  // group-level options (--out, --threads, --i-know-this-is-long) may appear
  // after the leaf subcommand
  for (auto* group : {gen, check, en, sample, ortho}) {
    group->fallthrough();
    for (auto* leaf : group->get_subcommands([](const CLI::App*) { return true; }))
      leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ReportSink sink;
  sink.out_path = out_path;

  // gen -------------------------------------------------------------------
  if (gen->parsed()) {
    tq::Tournament t;
    json dummy;
    if (g_rot->parsed())
      t = tq::Tournament::rotational(tq::RotationalSymbol(n, parse_symbol(symbol_csv)));
    else if (g_qr->parsed())
      t = tq::Tournament::qr_tournament(p);
    else if (g_comp->parsed()) {
      tq::Tournament outer = tq::parse_trn(read_source(outer_path));
      std::vector<tq::Tournament> parts;
      for (const auto& path : part_paths) parts.push_back(tq::parse_trn(read_source(path)));
      t = tq::Tournament::compose(outer, parts);
    } else if (g_tx->parsed())
      t = load_trn(in_path, dummy).add_transmitter();
    else if (g_rx->parsed())
      t = load_trn(in_path, dummy).add_receiver();
    else if (g_rand->parsed())
      t = tq::Tournament::random(n, seed);
    write_output(out_path, tq::format_trn(t));
    return 0;
  }

  // check -----------------------------------------------------------------
  if (check->parsed()) {
    if (c_quad->parsed()) {
      sink.command = "check quad";
      tq::Tournament t = load_trn(in_path, sink.inputs);
      sink.emit(json(tq::quadrangularity(t)));
    } else if (c_squad->parsed()) {
      sink.command = "check strongquad";
      tq::Tournament t = load_trn(in_path, sink.inputs);
      auto w = tq::is_strongly_quadrangular(t);
      json outcome{{"strongly_quadrangular", !w.has_value()}};
      if (w) outcome["witness"] = *w;
      sink.emit(outcome);
    } else if (c_dom->parsed()) {
      sink.command = "check domination";
      tq::Tournament t = load_trn(in_path, sink.inputs);
      sink.emit(json(tq::domination_number(t)));
    } else if (c_rot->parsed()) {
      sink.command = "check rotsym";
      tq::RotationalSymbol sym;
      if (!symbol_csv.empty()) {
        sym = tq::RotationalSymbol(n, parse_symbol(symbol_csv));
        sink.inputs["n"] = n;
        sink.inputs["symbol"] = sym.residues;
      } else {
        sym = symbol_of(load_trn(in_path, sink.inputs));
      }
      sink.emit(json(tq::rotational_quadrangular(sym)));
    } else if (c_pat->parsed()) {
      sink.command = "check pattern";
      tq::PatternMatrix pat = load_pat(in_path, sink.inputs);
      sink.emit(json(tq::pattern_combinatorially_orthogonal(pat)));
    }
    return 0;
  }

  // enum ------------------------------------------------------------------
  if (en->parsed()) {
    if ((e_census->parsed() || e_qc->parsed()) && n >= 10 && !long_run)
      throw tq::cap_error("the n=10 sweep takes hours; pass --i-know-this-is-long");
    if (e_fin->parsed() && cap >= 10 && !long_run)
      throw tq::cap_error("the n=10 sweep takes hours; pass --i-know-this-is-long");
    sink.inputs["threads"] = threads;
    tq::CheckpointConfig ckpt;
    tq::CheckpointConfig* ckpt_ptr = nullptr;
    if (!ckpt_dir.empty()) {
      ckpt.dir = ckpt_dir;
      ckpt_ptr = &ckpt;
    }
    if (e_census->parsed()) {
      sink.command = "enum census";
      sink.inputs["n"] = n;
      std::ofstream reps;
      std::mutex mu;
      if (!reps_path.empty()) reps.open(reps_path, std::ios::app);
      tq::EnumerationSummary s = tq::enumerate(
          n,
          [&](const tq::Tournament& rep, std::uint64_t) {
            if (reps.is_open()) {
              std::lock_guard<std::mutex> lock(mu);
              reps << tq::format_trn(rep);
            }
          },
          threads, ckpt_ptr);
      sink.emit(json(s));
    } else if (e_qc->parsed()) {
      sink.command = "enum quadcount";
      sink.inputs["n"] = n;
      tq::QuadCensus c = tq::count_quadrangular(n, threads, ckpt_ptr);
      if (!reps_path.empty()) {
        std::ofstream reps(reps_path, std::ios::trunc);
        for (const auto& rep : c.representatives) reps << tq::format_trn(rep);
      }
      sink.emit(json(c.summary));
    } else if (e_o2->parsed()) {
      sink.command = "enum order2";
      sink.emit(json{{"holds", tq::verify_order2(threads)}});
    } else if (e_o3->parsed()) {
      sink.command = "enum order3";
      sink.emit(json{{"holds", tq::verify_order3(threads)}});
    } else if (e_g3->parsed()) {
      sink.command = "enum gamma3";
      sink.emit(json{{"holds", tq::verify_unique_gamma3(threads)}});
    } else if (e_fin->parsed()) {
      sink.command = "enum final10";
      sink.inputs["cap"] = cap;
      tq::FinalTheoremResult r = tq::verify_final_theorem(cap, threads);
      json outcome{{"holds", r.holds},
                   {"candidates", r.candidates},
                   {"eliminated_by_rank", r.eliminated_by_rank},
                   {"eliminated_by_strong_quad", r.eliminated_by_strong_quad},
                   {"survivors", r.survivors.size()}};
      sink.emit(outcome);
    }
    return 0;
  }

  // sample ----------------------------------------------------------------
  if (sample->parsed()) {
    if (s_est->parsed()) {
      sink.command = "sample estimate";
      sink.inputs = json{{"n", n}, {"trials", trials}, {"seed", seed}, {"threads", threads}};
      sink.emit(json(tq::estimate_nonquad(n, trials, seed, threads)));
    } else {
      sink.command = "sample bound";
      sink.inputs = json{{"nmin", nmin}, {"nmax", nmax}};
      auto curve = tq::bound_curve(nmin, nmax);
      if (csv) {
        std::string text = "n,bound\n";
        for (auto [order, b] : curve) text += std::to_string(order) + "," + std::to_string(b) + "\n";
        write_output(out_path, text);
      } else {
        json rows = json::array();
        for (auto [order, b] : curve) rows.push_back(json{{"n", order}, {"bound", b}});
        sink.emit(rows);
      }
    }
    return 0;
  }

  // ortho -----------------------------------------------------------------
  if (ortho->parsed()) {
    if (o_search->parsed()) {
      sink.command = "ortho search";
      tq::PatternMatrix pat = load_pat(in_path, sink.inputs);
      sink.inputs["seed"] = ocfg.seed;
      sink.inputs["restarts"] = ocfg.restarts;
      ocfg.threads = threads;
      sink.emit(json(tq::alternating_projection(pat, ocfg)));
    } else {
      sink.command = "ortho certificate";
      tq::PatternMatrix pat = load_pat(in_path, sink.inputs);
      sink.inputs["depth_cap"] = depth_cap;
      auto cert = tq::ratio_propagation_certificate(pat, depth_cap);
      json outcome{{"refuted", cert.has_value()}};
      if (cert) {
        outcome["certificate"] = *cert;
        outcome["verified"] = tq::verify_certificate(pat, *cert);
      }
      sink.emit(outcome);
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tq::cap_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const tq::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
