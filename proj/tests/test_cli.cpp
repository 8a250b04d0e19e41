#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <json.hpp>

#include "cache.hpp"

namespace fs = std::filesystem;
using ggp::SymbolFamily;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// stderr is folded into the captured stream when merge is set
Run run_cli(const std::string& args, bool merge = false)
{
  std::string cmd = std::string(GGPSYM_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = ::pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch_dir(const std::string& tag)
{
  fs::path d = fs::temp_directory_path() / ("ggpsym-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const std::string trivial_o3 = "\"o+(3): rho=trivial:0:reg ; L=[1|] ; L'=[0|] ; eps=+\"";

}  // namespace

TEST_CASE("branch table for the trivial label of O_3")
{
  auto r = run_cli("ggp-branch --pi " + trivial_o3 + " --target \"o+(2)\" --eps-minus-one +");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "label                                        multiplicity  status\n"
        "o+(2): rho=trivial:0:reg ; L=[1|0] ; L'=[|]  1             one\n");
  auto j = run_cli("ggp-branch --pi " + trivial_o3 + " --target \"o+(2)\" --eps-minus-one + --format json");
  CHECK(j.status == 0);
  auto obj = nlohmann::ordered_json::parse(j.out);
  CHECK(obj.at("label") == "o+(2): rho=trivial:0:reg ; L=[1|0] ; L'=[|]");
  CHECK(obj.at("multiplicity") == "1");
  CHECK(obj.at("status") == "one");
  auto c = run_cli("ggp-branch --pi " + trivial_o3 + " --target \"o-(2)\" --q 5 --format csv");
  CHECK(c.status == 0);
  CHECK(c.out == "label,multiplicity,status\n\"o-(2): rho=trivial:0:reg ; L=[|1,0] ; L'=[|]\",1,one\n");
}

TEST_CASE("first occurrence verb")
{
  auto r = run_cli("theta-first --symbol \"[1,0|1]\" --sign + --direction sp-to-o --format csv");
  CHECK(r.status == 0);
  CHECK(r.out == "index,lift,resolved\n1,[1|0],true\n");
}

TEST_CASE("verify exit codes")
{
  CHECK(run_cli("verify --suite f1 --max-rank 4").status == 0);
  CHECK(run_cli("verify --suite f1 --max-rank 2 --shift 1").status == 2);
  auto j = run_cli("verify --suite counts --max-rank 3 --format json");
  CHECK(j.status == 0);
  auto obj = nlohmann::json::parse(j.out);
  CHECK(obj.at("suite") == "counts");
  CHECK(obj.at("failures").empty());
  CHECK(obj.contains("elapsed_ms"));
}

TEST_CASE("errors name the offending flag")
{
  auto a = run_cli("ggp-branch --pi " + trivial_o3 + " --target \"o+(2)\"", true);
  CHECK(a.status == 1);
  CHECK(a.out.find("--eps-minus-one") != std::string::npos);
  auto b = run_cli("ggp-branch --pi " + trivial_o3 + " --target \"o+(2)\" --q 5 --eps-minus-one +", true);
  CHECK(b.status == 1);
  auto c = run_cli("ggp-branch --pi \"o+(3): rho=trivial:0:reg ; L=[0|] ; L'=[0|] ; eps=+\" --target \"o+(2)\" --q 5",
                  true);
  CHECK(c.status == 1);
  CHECK(c.out.find("--pi") != std::string::npos);
  CHECK(c.out.find("RankOverflow") != std::string::npos);
  auto d = run_cli("ggp-branch --pi " + trivial_o3 + " --target \"o+(4)\" --q 5", true);
  CHECK(d.status == 1);
  CHECK(d.out.find("--target") != std::string::npos);
  auto e = run_cli("theta-first --symbol \"[1,x|]\" --sign + --direction sp-to-o", true);
  CHECK(e.status == 1);
  CHECK(e.out.find("--symbol") != std::string::npos);
  CHECK(e.out.find("byte 3") != std::string::npos);
  auto f = run_cli("ggp-mult --left \"sp(0): rho=trivial:0:reg ; L=[0|] ; L'=[|]\" --right "
                  "\"sp(2): rho=trivial:0:reg ; L=[1|] ; L'=[|]\" --case fj --q 3",
                  true);
  CHECK(f.status == 1);
  CHECK(f.out.find("--symmetrize") != std::string::npos);
  CHECK(run_cli("ggp-mult --left x --q 4 --right y --case fj", true).status == 1);
  CHECK(run_cli("no-such-verb", true).status == 1);
}

TEST_CASE("absent orientations surface as undetermined rows")
{
  const std::string st = "\"o+(3): rho=trivial:0:reg ; L=[1,0|1] ; L'=[0|] ; eps=+\"";
  const std::string theta = "\"o+(2): rho=trivial:0:reg ; L=[|] ; L'=[1|0]\"";
  auto r = run_cli("ggp-mult --left " + st + " --right " + theta + " --case bessel --q 5 --format json");
  CHECK(r.status == 0);
  CHECK(nlohmann::json::parse(r.out).at("status") == "undetermined");
  auto s = run_cli("ggp-mult --left " + st + " --right " + theta +
                  " --case bessel --q 5 --orient-left \"?,+\" --format json");
  CHECK(nlohmann::json::parse(s.out).at("multiplicity") == "1");
}

TEST_CASE("output is deterministic")
{
  const std::string args = "ggp-branch --pi \"sp(4): rho=trivial:0:reg ; L=[2,0|1] ; L'=[|]\" --target \"sp(4)\" "
                           "--q 5 --rho-max-rank 2 --format csv";
  auto a = run_cli(args), b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("enumeration cache")
{
  fs::path dir = scratch_dir("cache");
  ::setenv(std::string(ggpsym::kCacheEnv).c_str(), dir.c_str(), 1);

  auto miss = run_cli("symbols-enumerate --family sp --rank 3 --format csv");
  CHECK(miss.status == 0);
  CHECK(fs::exists(dir / "sp-3.json"));
  auto hit = run_cli("symbols-enumerate --family sp --rank 3 --format csv");
  CHECK(hit.out == miss.out);
  auto direct = run_cli("symbols-enumerate --family sp --rank 3 --format csv --no-cache");
  CHECK(direct.out == miss.out);

  ggpsym::SymbolCache cache(dir);
  auto first = cache.enumerate(SymbolFamily::OOdd, 4);
  CHECK_FALSE(first.hit);
  auto second = cache.enumerate(SymbolFamily::OOdd, 4);
  CHECK(second.hit);
  CHECK(second.symbols == first.symbols);
  CHECK(first.symbols == ggp::enumerate_symbols(4, SymbolFamily::OOdd));

  // a newer library version ignores the entry
  ggpsym::SymbolCache newer(dir, "999");
  CHECK_FALSE(newer.load(SymbolFamily::OOdd, 4).has_value());

  // a corrupted payload fails the checksum and is recomputed
  fs::path f = cache.file_for(SymbolFamily::OOdd, 4);
  std::string text;
  {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  // swap the first entry for another well-formed symbol
  const std::string head = "\"symbols\":[\"";
  auto pos = text.find(head);
  REQUIRE(pos != std::string::npos);
  pos += head.size();
  text.replace(pos, text.find('"', pos) - pos, "[9|]");
  std::ofstream(f, std::ios::trunc) << text;
  CHECK_FALSE(cache.load(SymbolFamily::OOdd, 4).has_value());
  auto again = cache.enumerate(SymbolFamily::OOdd, 4);
  CHECK_FALSE(again.hit);
  CHECK(again.symbols == first.symbols);
  CHECK(cache.load(SymbolFamily::OOdd, 4).has_value());

  // no temp files are left behind
  for (const auto& e : fs::directory_iterator(dir))
    CHECK(e.path().filename().string().find(".tmp.") == std::string::npos);
  fs::remove_all(dir);
}
