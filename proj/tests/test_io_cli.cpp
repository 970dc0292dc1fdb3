#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "bkv/cli.hpp"
#include "bkv/errors.hpp"
#include "bkv/io.hpp"

using namespace bkv;

namespace {

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/bkv_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  out << content;
}

// returns the exit code of `cli args`, with output silenced
int run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = cli + " " + args + " >/dev/null 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string cli_path() {
  const char* p = std::getenv("BKV_CLI");
  return p ? p : "";
}

}  // namespace

TEST_CASE("form file round-trip is bit-exact") {
  FormRecord f = build_catalog_form("kz13_2", 60);
  std::string path = tmp_path("form.bkv");
  write_form(path, f);
  FormRecord g = read_form(path);
  CHECK(g.weight2 == f.weight2);
  CHECK(g.level == f.level);
  CHECK(g.char_disc == f.char_disc);
  CHECK(g.label == f.label);
  REQUIRE(g.expansion.prec() == f.expansion.prec());
  for (long long n = 0; n < f.expansion.prec(); ++n)
    CHECK(g.expansion.coefficient(n) == f.expansion.coefficient(n));
  std::remove(path.c_str());
}

TEST_CASE("lift file round-trip preserves the record") {
  FormRecord f = build_catalog_form("kz13_2", 401);
  LiftRecord L = shimura_lift(f, 1, 20);
  std::string path = tmp_path("lift.bkv");
  write_lift(path, L);
  CHECK(is_lift_file(path));
  LiftRecord M = read_lift(path);
  CHECK(M.t == 1);
  CHECK(M.a_t == L.a_t);
  CHECK(M.k == L.k);
  CHECK(M.level == L.level);
  CHECK(M.convention == LiftConvention::kohnen_plus);
  for (long long n = 1; n <= 20; ++n)
    CHECK(M.lifted.coefficient(n) == L.lifted.coefficient(n));

  std::string header;
  std::ifstream in(path);
  std::getline(in, header);
  CHECK(header ==
        "#bkv1 weight2=13 level=4 chardisc=1 prec=21 label=kz13_2 t=1 at=1");
  std::remove(path.c_str());
}

TEST_CASE("parse errors are classified") {
  std::string path = tmp_path("bad.bkv");
  write_file(path, "no magic here\n0\t1\n");
  CHECK_THROWS_AS(read_form(path), ParseError);
  write_file(path, "#bkv1 weight2=24 level=1 chardisc=1 prec=3 label=x\n"
                   "0\t1\n2\t5\n1\t0\n");
  CHECK_THROWS_AS(read_form(path), ParseError);  // indices out of order
  write_file(path, "#bkv1 weight2=24 level=1 chardisc=1 prec=3 label=x\n"
                   "0\t1\n1\t2\n");
  CHECK_THROWS_AS(read_form(path), ParseError);  // truncated
  write_file(path, "#bkv1 weight2=24 level=1 chardisc=1 prec=2 label=x\n"
                   "0\t1\n1\tabc\n");
  CHECK_THROWS_AS(read_form(path), ParseError);  // bad integer
  write_file(path, "#bkv1 weight2=24 level=1 chardisc=1 prec=1 label=x\n"
                   "0\t1\ntrailing\n");
  CHECK_THROWS_AS(read_form(path), ParseError);
  write_file(path, "#bkv1 weight2=13 level=6 chardisc=1 prec=1 label=x\n0\t0\n");
  CHECK_THROWS_AS(read_form(path), InvalidArgument);  // 4 | level violated
  std::remove(path.c_str());
}

TEST_CASE("run_command expand writes the documented format") {
  std::string path = tmp_path("delta.bkv");
  RunConfig cfg;
  cfg.command = "expand";
  cfg.form = "delta";
  cfg.prec = 1000;
  cfg.out = path;
  std::ostringstream log;
  cfg.log = &log;
  run_command(cfg);

  std::ifstream in(path);
  std::string line;
  bool found = false;
  while (std::getline(in, line))
    if (line == "2\t-24") found = true;
  CHECK(found);

  // re-reading reproduces the in-memory record exactly
  FormRecord f = read_form(path);
  FormRecord direct = build_catalog_form("delta", 1000);
  for (long long n = 0; n < 1000; ++n)
    CHECK(f.expansion.coefficient(n) == direct.expansion.coefficient(n));
  std::remove(path.c_str());
}

TEST_CASE("run_command validates config") {
  RunConfig cfg;
  cfg.command = "signs";
  cfg.form = "kz13_2";
  cfg.t = 12;  // not squarefree
  cfg.out = tmp_path("x.csv");
  CHECK_THROWS_AS(run_command(cfg), InvalidArgument);
  cfg.t = 1;
  cfg.checkpoints = {100, 100};
  CHECK_THROWS_AS(run_command(cfg), InvalidArgument);
}

TEST_CASE("error classes map to documented exit codes") {
  CHECK(exit_code(ErrorClass::invalid_argument) == 2);
  CHECK(exit_code(ErrorClass::precision_exceeded) == 3);
  CHECK(exit_code(ErrorClass::parse_error) == 4);
  CHECK(exit_code(ErrorClass::ramanujan_violation) == 5);
  CHECK(exit_code(ErrorClass::construction_failure) == 6);
  CHECK(exit_code(ErrorClass::io_error) == 7);
}

TEST_CASE("cli exit codes end to end") {
  std::string cli = cli_path();
  REQUIRE_MESSAGE(!cli.empty(), "BKV_CLI not set");

  CHECK(run_cli(cli, "expand --form delta --prec 50 --out " +
                         tmp_path("ok.bkv")) == 0);

  // invalid-argument: t not squarefree
  CHECK(run_cli(cli, "signs --form kz13_2 --t 12 --x-max 100 --out " +
                         tmp_path("sg.csv")) == 2);
  // invalid-argument: a(t) = 0
  CHECK(run_cli(cli, "lift --form kz13_2 --t 2 --prec 10 --out " +
                         tmp_path("l.bkv")) == 2);

  // precision-exceeded: stored form too short for the requested truncation
  CHECK(run_cli(cli, "expand --form " + tmp_path("ok.bkv") +
                         " --prec 100 --out " + tmp_path("ok2.bkv")) == 3);

  // parse-error
  write_file(tmp_path("corrupt.bkv"), "#bkv1 nonsense\n");
  CHECK(run_cli(cli, "hecke --form " + tmp_path("corrupt.bkv") + " --p 3") ==
        4);

  // ramanujan-violation: lift file with an oversized coefficient
  {
    FormRecord f = build_catalog_form("kz13_2", 2001);
    FormRecord d = build_catalog_form("delta", 201);
    LiftRecord L = lift_via_companion(f, 1, d, 10);
    auto coeffs = L.lifted.coeffs();
    coeffs[3] = mpz_class("99999999999999");
    L.lifted = QExpansion(std::move(coeffs));
    write_lift(tmp_path("badlift.bkv"), L);
  }
  CHECK(run_cli(cli, "satotate --form " + tmp_path("badlift.bkv") +
                         " --x-max 100 --checkpoints 100 --out " +
                         tmp_path("st.csv")) == 5);

  // usage errors from the parser are invalid-argument
  CHECK(run_cli(cli, "frobnicate") == 2);

  // io-error: unwritable output location
  CHECK(run_cli(cli, "expand --form delta --prec 50 --out "
                     "/nonexistent-dir/x.bkv") == 7);

  for (const char* n : {"ok.bkv", "ok2.bkv", "sg.csv", "l.bkv", "corrupt.bkv",
                        "badlift.bkv", "st.csv"})
    std::remove(tmp_path(n).c_str());
}

TEST_CASE("golden-file stability across runs and thread counts") {
  std::string cli = cli_path();
  REQUIRE_MESSAGE(!cli.empty(), "BKV_CLI not set");

  auto run_signs = [&](const std::string& out, int threads) {
    std::string cmd = "BKV_THREADS=" + std::to_string(threads) + " " + cli +
                      " signs --form kz13_2 --t 1 --x-max 2000 "
                      "--checkpoints 1000,2000 --out " +
                      out + " >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  };
  run_signs(tmp_path("g1.csv"), 1);
  run_signs(tmp_path("g2.csv"), 1);
  run_signs(tmp_path("g4.csv"), 4);
  std::string a = read_text(tmp_path("g1.csv"));
  std::string b = read_text(tmp_path("g2.csv"));
  std::string c = read_text(tmp_path("g4.csv"));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(!a.empty());
  for (const char* n : {"g1.csv", "g2.csv", "g4.csv"})
    std::remove(tmp_path(n).c_str());
}
