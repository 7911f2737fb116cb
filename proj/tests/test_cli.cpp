// Drives the installed binary through std::system; the path arrives in
// BFLY_BIN (set by ctest). Structured output is asserted byte-for-byte
// wherever determinism is promised, substring-wise elsewhere.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bfly/graph.hpp"
#include "doctest.h"

namespace {

namespace fs = std::filesystem;

fs::path temp_root() {
  static fs::path root = [] {
    auto p = fs::temp_directory_path() / ("bfly_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return root;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const std::string& name, const std::string& content) {
  auto p = temp_root() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

fs::path graph_file(const std::string& name, const bfly::BipartiteGraph& g) {
  auto p = temp_root() / name;
  std::ofstream out(p);
  bfly::serialize_edge_list(g, out);
  return p;
}

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("BFLY_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "BFLY_BIN must point at the bfly binary");
  static int counter = 0;
  auto outp = temp_root() / ("stdout" + std::to_string(counter));
  auto errp = temp_root() / ("stderr" + std::to_string(counter));
  ++counter;
  std::string cmd =
      std::string(bin) + " " + args + " >" + outp.string() + " 2>" + errp.string();
  int rc = std::system(cmd.c_str());
  CliResult r;
  if (WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
  r.out = slurp(outp);
  r.err = slurp(errp);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("stats record for K_{3,2}") {
  auto p = graph_file("k32.txt", bfly::complete_biclique(3, 2));
  auto r = run_cli("stats " + p.string());
  CHECK(r.status == 0);
  CHECK(r.out ==
        "{\"record\":\"stats\",\"n\":5,\"left\":3,\"right\":2,\"m\":6,"
        "\"sum_deg_sq_left\":12,\"sum_deg_sq_right\":18,\"wedges\":9,\"max_degree\":3}\n");
}

TEST_CASE("exact command reports the count as its own truth") {
  auto p = graph_file("k22.txt", bfly::complete_biclique(2, 2));
  auto r = run_cli("exact " + p.string() + " --no-timing");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "\"estimate\":1,\"exact\":1,\"relative_error_pct\":0,"));

  auto left = run_cli("exact " + p.string() + " --side left --no-timing");
  auto right = run_cli("exact " + p.string() + " --side right --no-timing");
  CHECK(contains(left.out, "\"estimate\":1,"));
  CHECK(contains(right.out, "\"estimate\":1,"));
  CHECK(contains(left.out, "\"side\":\"left\""));
  CHECK(contains(right.out, "\"side\":\"right\""));
}

TEST_CASE("sample checkpoints from the module examples") {
  auto k33 = graph_file("k33.txt", bfly::complete_biclique(3, 3));
  auto r = run_cli("sample " + k33.string() +
                   " --method wedge --iterations 1 --seed 0 --exact-for-error --no-timing");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "\"method\":\"wedge\",\"estimate\":9,\"exact\":9,"
                        "\"relative_error_pct\":0,"));

  auto k22 = graph_file("k22b.txt", bfly::complete_biclique(2, 2));
  auto f = run_cli("sample " + k22.string() +
                   " --method fast-edge --iterations 5 --fast-repeats 1 --seed 1 --no-timing");
  CHECK(f.status == 0);
  CHECK(contains(f.out, "\"method\":\"fast-edge\",\"estimate\":1,"));
}

TEST_CASE("fixed seed output is byte-identical across runs and thread counts") {
  auto p = graph_file("rand.txt", bfly::random_bipartite(30, 30, 0.3, 11));
  for (const char* method : {"vertex", "edge", "wedge", "fast-edge"}) {
    std::string base = "sample " + p.string() + " --method " + method +
                       " --iterations 400 --seed 7 --no-timing";
    auto a = run_cli(base);
    auto b = run_cli(base);
    auto threaded = run_cli(base + " --threads 4");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == threaded.out);
    CHECK(!a.out.empty());
  }
  std::string spars = "sparsify " + p.string() + " --method edge --p 0.4 --trials 5 --seed 3 --no-timing";
  auto a = run_cli(spars);
  auto b = run_cli(spars);
  CHECK(a.out == b.out);
}

TEST_CASE("sparsify examples and per-trial reporting") {
  auto k32 = graph_file("k32s.txt", bfly::complete_biclique(3, 2));
  auto r = run_cli("sparsify " + k32.string() +
                   " --method edge --p 1.0 --trials 1 --exact-for-error --no-timing");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "\"estimate\":3,\"exact\":3,\"relative_error_pct\":0,"));
  CHECK(contains(r.out, "\"per_trial\":[3]"));
  CHECK(contains(r.err, "advisory:"));

  auto k55 = graph_file("k55.txt", bfly::complete_biclique(5, 5));
  auto c = run_cli("sparsify " + k55.string() + " --method color --colors 1 --trials 2 --no-timing");
  CHECK(c.status == 0);
  CHECK(contains(c.out, "\"method\":\"clrspar\",\"estimate\":100,"));
  CHECK(contains(c.out, "\"per_trial\":[100,100]"));
}

TEST_CASE("generate writes deterministic files that round-trip through stats") {
  auto out1 = (temp_root() / "gen1.txt").string();
  auto out2 = (temp_root() / "gen2.txt").string();
  auto g1 = run_cli("generate random 8 8 0.5 --seed 42 --out " + out1);
  auto g2 = run_cli("generate random 8 8 0.5 --seed 42 --out " + out2);
  CHECK(g1.status == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(!slurp(out1).empty());

  auto bi = (temp_root() / "bi.txt").string();
  auto gb = run_cli("generate biclique 2 2 --out " + bi);
  CHECK(gb.status == 0);
  CHECK(contains(gb.out, "\"kind\":\"biclique\",\"left\":2,\"right\":2,\"m\":4,"));
  CHECK(slurp(bi) == "% bip\n1 1\n1 2\n2 1\n2 2\n");
  auto st = run_cli("stats " + bi);
  CHECK(contains(st.out, "\"n\":4,\"left\":2,\"right\":2,\"m\":4,"));
}

TEST_CASE("local subjects") {
  auto k33 = graph_file("k33l.txt", bfly::complete_biclique(3, 3));
  auto v = run_cli("local " + k33.string() + " --vertex left:0 --no-timing");
  CHECK(v.status == 0);
  CHECK(contains(v.out, "\"method\":\"local-vertex\",\"estimate\":6,"));
  auto e = run_cli("local " + k33.string() + " --edge 0 0 --no-timing");
  CHECK(contains(e.out, "\"method\":\"local-edge\",\"estimate\":4,"));

  auto k13 = graph_file("k13.txt", bfly::complete_biclique(1, 3));
  auto z = run_cli("local " + k13.string() + " --edge 0 0 --no-timing");
  CHECK(contains(z.out, "\"estimate\":0,"));

  CHECK(run_cli("local " + k33.string() + " --vertex middle:0").status == 1);
  CHECK(run_cli("local " + k33.string() + " --vertex left:9").status == 1);
  CHECK(run_cli("local " + k33.string()).status == 1);
}

TEST_CASE("pairs record carries counts and the five bounds") {
  auto k32 = graph_file("k32p.txt", bfly::complete_biclique(3, 2));
  auto r = run_cli("pairs " + k32.string());
  CHECK(r.status == 0);
  CHECK(r.out ==
        "{\"record\":\"pairs\",\"bfly\":3,\"p_0v\":0,\"p_1v\":0,\"p_2v\":0,"
        "\"p_1e\":0,\"p_1w\":3,\"p_V\":3,\"p_E\":3,\"p\":0.5,\"colors\":2,"
        "\"bound_vsamp\":7.5,\"bound_esamp\":9,\"bound_wsamp\":13.5,"
        "\"bound_espar\":72,\"bound_clrspar\":48}\n");

  auto two = graph_file("two.txt",
                        bfly::BipartiteGraph::from_edges(
                            {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 3}, {4, 4}}));
  CHECK(contains(run_cli("pairs " + two.string()).out, "\"p_0v\":1,"));

  auto k24 = graph_file("k24.txt", bfly::complete_biclique(2, 4));
  auto q = run_cli("pairs " + k24.string());
  CHECK(contains(q.out, "\"p_2v\":3,"));
  CHECK(contains(q.out, "\"p_1w\":12,"));
}

TEST_CASE("trace emits geometric checkpoints with errors") {
  auto k32 = graph_file("k32t.txt", bfly::complete_biclique(3, 2));
  auto r = run_cli("sample " + k32.string() +
                   " --method edge --iterations 8 --seed 2 --trace --exact-for-error --no-timing");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "\"trace\":[{\"iteration\":1,"));
  CHECK(contains(r.out, "{\"iteration\":2,"));
  CHECK(contains(r.out, "{\"iteration\":4,"));
  CHECK(contains(r.out, "{\"iteration\":8,"));
  CHECK(contains(r.out, "\"relative_error_pct\":"));
}

TEST_CASE("human mode is prose") {
  auto k22 = graph_file("k22h.txt", bfly::complete_biclique(2, 2));
  auto r = run_cli("exact " + k22.string() + " --human --no-timing");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "estimate: 1"));
  CHECK(!contains(r.out, "{\"record\""));
}

TEST_CASE("error exit statuses") {
  CHECK(run_cli("stats /nonexistent-path").status == 1);

  auto bad = write_file("bad.txt", "1 2\nnot numbers\n");
  auto r = run_cli("stats " + bad.string());
  CHECK(r.status == 1);
  CHECK(contains(r.err, "line 2"));

  auto empty = write_file("empty.txt", "% comments only\n\n");
  CHECK(run_cli("stats " + empty.string()).status == 1);

  // oracle guard: K_{9,9} holds C(9,2)^2 = 1296 pairs of lefts/rights -> 1296
  // butterflies; the default pair guard is 2000 but max-butterflies=10 trips
  auto k99 = graph_file("k99.txt", bfly::complete_biclique(9, 9));
  auto guarded = run_cli("pairs " + k99.string() + " --max-butterflies 10");
  CHECK(guarded.status == 4);
  CHECK(contains(guarded.err, "--max-butterflies"));

  CHECK(run_cli("generate biclique 0 3 --out " + (temp_root() / "x.txt").string()).status == 1);
  CHECK(run_cli("sample missing-method.txt").status != 0);
  auto k22 = graph_file("k22e.txt", bfly::complete_biclique(2, 2));
  CHECK(run_cli("sample " + k22.string() + " --method vertex").status == 1);
  CHECK(run_cli("sample " + k22.string() + " --method nope --iterations 5").status != 0);
  CHECK(run_cli("sparsify " + k22.string() + " --method edge --p 0 --trials 1").status == 1);
}
