#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "gkplat/cli.hpp"
#include "gkplat/json_io.hpp"
#include "test_support.hpp"

using namespace gkplat;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = cli::run(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_json_path() {
  char buf[] = "/tmp/gkplat_test_XXXXXX";
  int fd = mkstemp(buf);
  if (fd == -1) throw std::runtime_error("mkstemp failed");
  close(fd);
  return std::string(buf);
}

IntMat make(std::size_t r, std::size_t c, std::vector<long> entries) {
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(entries[i * c + j]);
  return m;
}

}  // namespace

TEST_SUITE("json_cli") {
  TEST_CASE("rational encoding is canonical") {
    CHECK(encode_rat(make_rat(1, 2)) == json("1/2"));
    CHECK(encode_rat(make_rat(-2, 4)) == json("-1/2"));
    CHECK(encode_rat(make_rat(7, 1)) == json("7"));
    CHECK(decode_rat(json("3/9")) == make_rat(1, 3));
    CHECK(decode_rat(json(5)) == Rat(5));
    CHECK_THROWS_AS(decode_rat(json("x/2")), ParseError);
    CHECK_THROWS_AS(decode_rat(json("1/0")), ParseError);
  }

  TEST_CASE("large integers round-trip as strings") {
    Int big("123456789012345678901234567890");
    json j = encode_int(big);
    CHECK(j.is_string());
    CHECK(decode_int(j) == big);
    CHECK(encode_int(Int(42)) == json(42));
  }

  TEST_CASE("code and path documents round-trip") {
    gkptest::Rng rng(81);
    for (int trial = 0; trial < 10; ++trial) {
      std::size_t n = gkptest::rlong(rng, 1, 2);
      LatticeType t(gkptest::random_chain(rng, n, 5));
      GkpCode code(standard_gram(t), gkptest::random_sector(rng, 2 * n));
      GkpCode back = decode_code(encode_code(code));
      CHECK(back.gram() == code.gram());
      CHECK(back.sector() == code.sector());

      PathWord w{code, {}};
      IntMat u = gkptest::random_automorphism(rng, t, 3);
      w.moves.push_back(AutMove{u});
      RatVec h(2 * n);
      for (Rat& q : h) q = gkptest::random_rat(rng, 5, 4);
      w.moves.push_back(DisplaceMove{DualCoords{h}});
      PathWord wb = decode_path(encode_path(w));
      CHECK(encode_path(wb) == encode_path(w));
    }
  }

  TEST_CASE("frobenius command reads from stdin") {
    auto res = run_cli({"frobenius", "--gram", "-"},
                       "[[0,0,5,0],[0,0,0,2],[-5,0,0,0],[0,-2,0,0]]");
    CHECK(res.exit_code == 0);
    json doc = json::parse(res.out);
    CHECK(doc["type"] == json::parse("[10,1]"));
    IntMat u = decode_int_mat(doc["u"]);
    GramMatrix a = gkptest::diag_gram({5, 2});
    CHECK(u * a.matrix() * transpose(u) ==
          standard_gram(LatticeType({Int(10), Int(1)})).matrix());
  }

  TEST_CASE("identical invocations are byte-identical") {
    std::string gram = "[[0,3],[-3,0]]";
    auto a = run_cli({"type", "--gram", "-"}, gram);
    auto b = run_cli({"type", "--gram", "-"}, gram);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == "{\"type\":[3]}\n");
  }

  TEST_CASE("braid words 121 and 212 print identical vT fields") {
    auto a = run_cli({"braid", "--d", "2", "--word", "121"});
    auto b = run_cli({"braid", "--d", "2", "--word", "212"});
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    json ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(ja["vT_modD"].dump() == jb["vT_modD"].dump());
    CHECK(ja["vT_modD"] == json::parse("[[0,1],[1,0]]"));
  }

  TEST_CASE("logical-action on the qutrit shear") {
    std::string trivial = "{\"gram\":[[0,3],[-3,0]],\"sector\":[\"0\",\"0\"]}";
    std::string u_file = temp_json_path();
    {
      std::ofstream f(u_file);
      f << encode_int_mat(make(2, 2, {1, 0, -1, 1})).dump();
    }
    auto res = run_cli({"logical-action", "--code", "-", "--u", u_file, "--h", "0,1/2"},
                       trivial);
    REQUIRE(res.exit_code == 0);
    CHECK(res.out == "{\"pauli\":[0,0],\"type\":[3],\"vT_modD\":[[1,0],[1,1]]}\n");

    auto eta = run_cli({"eta-s", "--code", "-", "--u", u_file}, trivial);
    REQUIRE(eta.exit_code == 0);
    CHECK(json::parse(eta.out)["eta_s"] == json::parse("[\"0\",\"1/2\"]"));

    auto outside = run_cli({"logical-action", "--code", "-", "--u", u_file, "--h", "0,0"},
                           trivial);
    CHECK(outside.exit_code == 2);
    CHECK(json::parse(outside.err)["error"] == "NotInNormalizer");
    std::remove(u_file.c_str());
  }

  TEST_CASE("error reporting and exit codes") {
    auto parse_fail = run_cli({"type", "--gram", "-"}, "this is not json");
    CHECK(parse_fail.exit_code == 1);
    json err = json::parse(parse_fail.err);
    CHECK(err["error"] == "ParseError");

    auto domain_fail = run_cli({"conjugate", "--code", "-", "--u", "-"}, "");
    CHECK(domain_fail.exit_code == 1);

    auto not_integral = run_cli({"gram-from-generator", "--matrix", "-", "--tol", "1e-6"},
                                "[[1.1,0],[0,1.0]]");
    CHECK(not_integral.exit_code == 2);
    CHECK(json::parse(not_integral.err)["error"] == "NotIntegral");

    auto usage = run_cli({"no-such-command"});
    CHECK(usage.exit_code == 1);
    CHECK(json::parse(usage.err)["error"] == "usage");
  }

  TEST_CASE("gram-from-generator output feeds back into frobenius") {
    auto gen = run_cli({"gram-from-generator", "--matrix", "-"},
                       "[[1.7320508075688772,0],[0,1.7320508075688772]]");
    REQUIRE(gen.exit_code == 0);
    CHECK(json::parse(gen.out) == json::parse("[[0,3],[-3,0]]"));
    auto ty = run_cli({"type", "--gram", "-"}, gen.out);
    CHECK(ty.exit_code == 0);
    CHECK(ty.out == "{\"type\":[3]}\n");
  }

  TEST_CASE("conjugate output feeds displace, closing the loop") {
    std::string trivial = "{\"gram\":[[0,3],[-3,0]],\"sector\":[\"0\",\"0\"]}";
    std::string u_file = temp_json_path();
    {
      std::ofstream f(u_file);
      f << "[[1,0],[-1,1]]";
    }
    auto conj = run_cli({"conjugate", "--code", "-", "--u", u_file}, trivial);
    REQUIRE(conj.exit_code == 0);
    json jc = json::parse(conj.out);
    CHECK(jc["sector"] == json::parse("[\"0\",\"1/2\"]"));

    auto back = run_cli({"displace", "--code", "-", "--h", "0,1/2"}, conj.out);
    REQUIRE(back.exit_code == 0);
    CHECK(json::parse(back.out) == json::parse(trivial));
    std::remove(u_file.c_str());
  }

  TEST_CASE("snap output feeds lift") {
    std::string path =
        "{\"base\":{\"gram\":[[0,1],[-1,0]],\"sector\":[\"0\",\"0\"]},"
        "\"moves\":[{\"flow\":{\"x\":[[0,0],[1,0]],\"t\":1.0}},"
        "{\"displace\":[\"1/2\",\"0\"]}]}";
    auto snapped = run_cli({"snap", "--path", "-", "--tol", "1e-6"}, path);
    REQUIRE(snapped.exit_code == 0);
    auto lifted = run_cli({"lift", "--path", "-"}, snapped.out);
    REQUIRE(lifted.exit_code == 0);
    json doc = json::parse(lifted.out);
    CHECK(doc["is_loop"] == json(true));
    CHECK(doc["gate"]["vT_modD"] == json::parse("[[0,0],[0,0]]"));
  }

  TEST_CASE("normalizer command") {
    std::string trivial = "{\"gram\":[[0,3],[-3,0]],\"sector\":[\"0\",\"0\"]}";
    std::string u_file = temp_json_path();
    {
      std::ofstream f(u_file);
      f << "[[1,0],[-1,1]]";
    }
    auto yes = run_cli({"normalizer", "--code", "-", "--u", u_file, "--h", "0,1/2"}, trivial);
    CHECK(yes.exit_code == 0);
    CHECK(json::parse(yes.out)["in_normalizer"] == json(true));
    auto no = run_cli({"normalizer", "--code", "-", "--u", u_file, "--h", "0,0"}, trivial);
    CHECK(json::parse(no.out)["in_normalizer"] == json(false));
    std::remove(u_file.c_str());
  }

  TEST_CASE("dual-gram and is-automorphism commands") {
    auto dual = run_cli({"dual-gram", "--gram", "-"}, "[[0,3],[-3,0]]");
    CHECK(dual.exit_code == 0);
    CHECK(json::parse(dual.out) == json::parse("[[\"0\",\"1/3\"],[\"-1/3\",\"0\"]]"));

    std::string u_file = temp_json_path();
    {
      std::ofstream f(u_file);
      f << "[[1,0],[-1,1]]";
    }
    auto isauto = run_cli({"is-automorphism", "--gram", "-", "--u", u_file}, "[[0,3],[-3,0]]");
    CHECK(isauto.exit_code == 0);
    CHECK(json::parse(isauto.out)["is_automorphism"] == json(true));
    std::remove(u_file.c_str());
  }
}
