#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tq/quad.hpp"
#include "tq/tournament.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Cli {
  fs::path dir;

  Cli() {
    dir = fs::temp_directory_path() / "tourq_cli_test";
    fs::create_directories(dir);
  }
  ~Cli() { fs::remove_all(dir); }

  fs::path file(const std::string& name, const std::string& content) const {
    fs::path p = dir / name;
    std::ofstream(p) << content;
    return p;
  }

  std::string slurp(const fs::path& p) const {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int run(const std::string& args, std::string* out = nullptr) const {
    fs::path cap = dir / "stdout.txt";
    std::string cmd = std::string(TOURQ_BIN) + " " + args + " > " + cap.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    if (out) *out = slurp(cap);
    return WEXITSTATUS(rc);
  }

  json run_json(const std::string& args, int expect_rc = 0) const {
    std::string out;
    int rc = run(args, &out);
    REQUIRE(rc == expect_rc);
    return json::parse(out);
  }
};

}  // namespace

TEST_CASE("gen emits parseable trn output") {
  Cli cli;
  std::string out;
  REQUIRE(cli.run("gen qr --p 7", &out) == 0);
  CHECK(tq::parse_trn(out) == tq::Tournament::qr_tournament(7));

  REQUIRE(cli.run("gen rotational --n 5 --symbol 1,2", &out) == 0);
  CHECK(tq::parse_trn(out) == tq::Tournament::rotational(tq::RotationalSymbol(5, {1, 2})));

  REQUIRE(cli.run("gen random --n 8 --seed 4", &out) == 0);
  std::string out2;
  REQUIRE(cli.run("gen random --n 8 --seed 4", &out2) == 0);
  CHECK(out == out2);
  CHECK(tq::parse_trn(out) == tq::Tournament::random(8, 4));
}

TEST_CASE("gen compose and transmitter wiring") {
  Cli cli;
  tq::Tournament c3 = tq::Tournament::rotational(tq::RotationalSymbol(3, {1}));
  tq::Tournament k2 = tq::Tournament::from_arc_bits(2, "1");
  fs::path outer = cli.file("outer.trn", tq::format_trn(c3));
  fs::path part = cli.file("part.trn", tq::format_trn(k2));
  std::string out;
  REQUIRE(cli.run("gen compose --outer " + outer.string() + " --part " + part.string() +
                      " --part " + part.string() + " --part " + part.string(),
                  &out) == 0);
  CHECK(tq::parse_trn(out) == tq::Tournament::compose(c3, {k2, k2, k2}));

  fs::path in = cli.file("in.trn", tq::format_trn(c3));
  REQUIRE(cli.run("gen transmitter --in " + in.string(), &out) == 0);
  CHECK(tq::parse_trn(out) == c3.add_transmitter());
  REQUIRE(cli.run("gen receiver --in " + in.string(), &out) == 0);
  CHECK(tq::parse_trn(out) == c3.add_receiver());
}

TEST_CASE("check quad report") {
  Cli cli;
  fs::path qr7 = cli.file("qr7.trn", tq::format_trn(tq::Tournament::qr_tournament(7)));
  json rep = cli.run_json("check quad --in " + qr7.string());
  CHECK(rep["command"] == "check quad");
  CHECK(rep["outcome"]["quadrangular"] == false);
  CHECK(rep["outcome"]["out_quadrangular"] == false);
  CHECK(rep["outcome"].contains("out_witness"));
  CHECK(rep["inputs"]["in"] == qr7.string());
  CHECK(rep.contains("elapsed_sec"));

  fs::path qr11 = cli.file("qr11.trn", tq::format_trn(tq::Tournament::qr_tournament(11)));
  json rep11 = cli.run_json("check quad --in " + qr11.string());
  CHECK(rep11["outcome"]["quadrangular"] == true);
}

TEST_CASE("check domination and strongquad reports") {
  Cli cli;
  fs::path qr7 = cli.file("qr7.trn", tq::format_trn(tq::Tournament::qr_tournament(7)));
  json dom = cli.run_json("check domination --in " + qr7.string());
  CHECK(dom["outcome"]["gamma"] == 3);
  CHECK(dom["outcome"]["witness"].size() == 3);

  // QR7 with an extra arc pair x->y
  tq::Tournament qr = tq::Tournament::qr_tournament(7);
  std::vector<std::uint64_t> rows(9, 0);
  for (int v = 0; v < 7; ++v) rows[v] = qr.out_bits(v) | (1ULL << 7);
  rows[7] = 1ULL << 8;
  rows[8] = (1ULL << 7) - 1;
  fs::path t9 = cli.file("t9.trn", tq::format_trn(tq::Tournament(9, rows)));
  json sq = cli.run_json("check strongquad --in " + t9.string());
  CHECK(sq["outcome"]["strongly_quadrangular"] == false);
  CHECK(sq["outcome"]["witness"]["set"] == json::array({0, 1, 5}));
  CHECK(sq["outcome"]["witness"]["union_size"] == 2);
}

TEST_CASE("check rotsym recovers the symbol from a trn file") {
  Cli cli;
  fs::path rot = cli.file(
      "rot13.trn",
      tq::format_trn(tq::Tournament::rotational(tq::RotationalSymbol(13, {1, 2, 3, 5, 6, 9}))));
  json rep = cli.run_json("check rotsym --in " + rot.string());
  CHECK(rep["outcome"]["quadrangular"] == true);
  CHECK(rep["outcome"]["witness_table"].size() == 6);

  json direct = cli.run_json("check rotsym --n 13 --symbol 1,2,3,5,6,9");
  CHECK(direct["outcome"] == rep["outcome"]);

  fs::path not_rot = cli.file("rand.trn", tq::format_trn(tq::Tournament::random(7, 1)));
  CHECK(cli.run("check rotsym --in " + not_rot.string()) == 2);
}

TEST_CASE("enum subcommands") {
  Cli cli;
  json census = cli.run_json("enum census --n 5");
  CHECK(census["outcome"]["class_count"] == 12);
  CHECK(census["outcome"]["orbit_identity_holds"] == true);

  fs::path reps = cli.dir / "reps.trn";
  json qc = cli.run_json("enum quadcount --n 3 --reps " + reps.string());
  CHECK(qc["outcome"]["filter_count"] == 1);
  CHECK(tq::is_quadrangular(tq::parse_trn(cli.slurp(reps))));

  json g3 = cli.run_json("enum gamma3");
  CHECK(g3["outcome"]["holds"] == true);

  json o2 = cli.run_json("enum order2");
  CHECK(o2["outcome"]["holds"] == false);  // one exceptional 8-vertex class exists

  json fin = cli.run_json("enum final10 --cap 7");
  CHECK(fin["outcome"]["holds"] == true);
  CHECK(fin["outcome"]["survivors"] == 1);
}

TEST_CASE("long sweeps demand an explicit flag") {
  Cli cli;
  CHECK(cli.run("enum census --n 10") == 3);
  CHECK(cli.run("enum quadcount --n 10") == 3);
  CHECK(cli.run("enum final10 --cap 10") == 3);
  CHECK(cli.run("enum census --n 11 --i-know-this-is-long") == 3);  // over the hard cap
}

TEST_CASE("sample subcommands") {
  Cli cli;
  json est = cli.run_json("sample estimate --n 12 --trials 100 --seed 7");
  CHECK(est["outcome"]["n"] == 12);
  CHECK(est["outcome"]["trials"] == 100);
  CHECK(est["outcome"]["non_quadrangular"] == 100);
  json est2 = cli.run_json("sample estimate --n 12 --trials 100 --seed 7 --threads 3");
  CHECK(est2["outcome"]["non_quadrangular"] == est["outcome"]["non_quadrangular"]);

  std::string csv;
  REQUIRE(cli.run("sample bound --nmin 4 --nmax 6 --csv", &csv) == 0);
  CHECK(csv.substr(0, 8) == "n,bound\n");
  CHECK(csv.find("4,4.5") != std::string::npos);

  json curve = cli.run_json("sample bound --nmin 4 --nmax 6");
  CHECK(curve["outcome"].size() == 3);
}

TEST_CASE("ortho subcommands") {
  Cli cli;
  fs::path p3 = cli.file("c3.pat", "3\n010\n001\n100\n");
  json search = cli.run_json("ortho search --in " + p3.string() + " --restarts 5");
  CHECK(search["outcome"]["status"] == "success");
  CHECK(search["outcome"].contains("matrix"));

  tq::Tournament c3 = tq::Tournament::rotational(tq::RotationalSymbol(3, {1}));
  tq::Tournament rt5 = tq::Tournament::rotational(tq::RotationalSymbol(5, {1, 2}));
  tq::Tournament t15 = tq::Tournament::compose(c3, {rt5, rt5, rt5});
  std::string pat = "15\n";
  for (int i = 0; i < 15; ++i) {
    for (int j = 0; j < 15; ++j) pat.push_back(t15.arc(i, j) ? '1' : '0');
    pat.push_back('\n');
  }
  fs::path m15 = cli.file("m15.pat", pat);
  json cert = cli.run_json("ortho certificate --in " + m15.string());
  CHECK(cert["outcome"]["refuted"] == true);
  CHECK(cert["outcome"]["verified"] == true);
  CHECK(cert["outcome"]["certificate"]["facts"].size() == 31);

  json nocert = cli.run_json("ortho certificate --in " + p3.string());
  CHECK(nocert["outcome"]["refuted"] == false);
}

TEST_CASE("error exit codes") {
  Cli cli;
  fs::path bad = cli.file("bad.trn", "3\n1x0\n");
  CHECK(cli.run("check quad --in " + bad.string()) == 2);
  CHECK(cli.run("check quad --in /nonexistent/file.trn") == 2);
  CHECK(cli.run("gen qr --p 6") == 2);
  CHECK(cli.run("nonsense") == 2);
  CHECK(cli.run("gen rotational --n 5") == 2);  // missing required option
  CHECK(cli.run("--version") == 0);
}
