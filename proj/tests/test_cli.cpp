#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "zdgenus/genus.hpp"
#include "zdgenus/graph.hpp"

using namespace zdgenus;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("zdgenus_cli_" + name)).string();
}

}  // namespace

TEST(CliBudget, SuffixesAndRejections) {
  EXPECT_EQ(cli::parse_budget("250"), 250u);
  EXPECT_EQ(cli::parse_budget("20k"), 20'000u);
  EXPECT_EQ(cli::parse_budget("3M"), 3'000'000u);
  EXPECT_FALSE(cli::parse_budget("1e6"));
  EXPECT_FALSE(cli::parse_budget("0"));
  EXPECT_FALSE(cli::parse_budget("-5"));
  EXPECT_FALSE(cli::parse_budget("5m"));
  EXPECT_FALSE(cli::parse_budget(""));
}

TEST(CliRing, Examples) {
  auto a = run({"ring", "Z27"});
  ASSERT_EQ(a.code, 0);
  auto j = json::parse(a.out);
  EXPECT_EQ(j["order"], 27);
  EXPECT_EQ(j["characteristic"], 27);
  EXPECT_EQ(j["zero_divisor_count"], 8);

  EXPECT_EQ(json::parse(run({"ring", "GF(8)"}).out)["zero_divisor_count"], 0);

  auto c = json::parse(run({"ring", "Z4[x]/(x^3+x+1)"}).out);
  EXPECT_EQ(c["order"], 64);
  EXPECT_EQ(c["factors"][0]["residue_field_size"], 8);
}

TEST(CliRing, InputErrors) {
  auto a = run({"ring", "Z4[x"});
  EXPECT_EQ(a.code, 2);
  EXPECT_NE(a.err.find("error"), std::string::npos);
  EXPECT_EQ(run({"ring", "Z4[x]/(2)"}).code, 2);
  EXPECT_EQ(run({"ring"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliGraph, Formats) {
  auto g6 = run({"graph", "Z49", "--format", "graph6"});
  ASSERT_EQ(g6.code, 0);
  EXPECT_EQ(g6.out, export_graph6(named_graph("K6")) + "\n");

  auto dot = run({"graph", "Z32", "--reduced", "--format", "dot"});
  ASSERT_EQ(dot.code, 0);
  EXPECT_EQ(dot.out.rfind("graph ", 0), 0u);
  EXPECT_EQ(dot.out.back(), '\n');
  std::size_t vertices = 0;
  std::istringstream in(dot.out);
  for (std::string line; std::getline(in, line);) {
    if (line.find("--") == std::string::npos && line.find(';') != std::string::npos) ++vertices;
  }
  EXPECT_EQ(vertices, 7u);

  auto js = run({"graph", "Z8"});
  ASSERT_EQ(js.code, 0);
  auto j = json::parse(js.out);
  EXPECT_EQ(j["vertices"].size(), 3u);
  EXPECT_EQ(j["edges"].size(), 2u);

  EXPECT_EQ(run({"graph", "Z8", "--format", "png"}).code, 2);
}

TEST(CliGraph, EmptyGraphWarnsAndTooLargeGraph6IsAFormatError) {
  auto f = run({"graph", "GF(9)"});
  EXPECT_EQ(f.code, 0);
  EXPECT_NE(f.err.find("warning"), std::string::npos);
  EXPECT_EQ(json::parse(f.out)["vertices"].size(), 0u);

  auto big = run({"graph", "Z4 * Z27", "--format", "graph6"});
  EXPECT_EQ(big.code, 3);
}

TEST(CliGenus, ExactResults) {
  auto a = run({"genus", "Z2 * Z2 * Z2 * Z2"});
  ASSERT_EQ(a.code, 0) << a.err;
  auto j = json::parse(a.out);
  EXPECT_EQ(j["lower"], 1);
  EXPECT_EQ(j["upper"], 1);
  EXPECT_EQ(j["exact"], true);

  auto b = json::parse(run({"genus", "Z16"}).out);
  EXPECT_EQ(b["lower"], 0);
  EXPECT_EQ(b["exact"], true);

  auto c = run({"genus", "--graph6", export_graph6(named_graph("K7"))});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out)["upper"], 1);
}

TEST(CliGenus, BudgetExhaustionIsInconclusive) {
  auto r = run({"genus", "--graph6", export_graph6(named_graph("K8")), "--budget", "10"});
  EXPECT_EQ(r.code, 4);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["exact"], false);
  EXPECT_EQ(j["budget_exhausted"], true);
  EXPECT_TRUE(j["upper"].is_null());
}

TEST(CliGenus, InputErrors) {
  EXPECT_EQ(run({"genus", "Z16", "--budget", "1e6"}).code, 2);
  EXPECT_EQ(run({"genus"}).code, 2);
  EXPECT_EQ(run({"genus", "--graph6", "!!"}).code, 2);
  EXPECT_EQ(run({"genus", "Z16", "--graph6", "Bw"}).code, 2);
}

TEST(CliCert, RoundTripAndTamper) {
  auto path = temp_path("k7.json");
  auto g = run({"genus", "--graph6", export_graph6(named_graph("K7")), "--cert", path});
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(json::parse(g.out)["certificate_path"], path);

  auto ok = run({"cert", "check", path});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["accepted"], true);

  std::string text;
  {
    std::ifstream in(path);
    std::getline(in, text);
  }
  auto cert = json::parse(text);
  EXPECT_EQ(cert["claimed_genus"], 1);
  cert["claimed_genus"] = 0;
  auto tampered = temp_path("k7_tampered.json");
  std::ofstream(tampered) << cert.dump();
  auto bad = run({"cert", "check", tampered});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(json::parse(bad.out)["accepted"], false);

  auto truncated = temp_path("k7_truncated.json");
  std::ofstream(truncated) << text.substr(0, text.size() / 2);
  EXPECT_EQ(run({"cert", "check", truncated}).code, 2);
  EXPECT_EQ(run({"cert", "check", temp_path("missing.json")}).code, 2);

  for (const auto& p : {path, tampered, truncated}) std::remove(p.c_str());
}

TEST(CliCert, RingCertificateVerifiesIndependently) {
  auto path = temp_path("z3z8.json");
  ASSERT_EQ(run({"genus", "Z3 * Z8", "--cert", path}).code, 0);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  auto cert = certificate_from_json(text.str());
  auto check = verify_certificate(cert);
  EXPECT_TRUE(check.accepted);
  EXPECT_EQ(check.computed_genus, 1);
  EXPECT_EQ(parse_graph6(cert.graph6).order(), 15u);
  std::remove(path.c_str());
}

TEST(CliVerify, IsomorphismsAndTables) {
  auto iso = run({"verify", "isomorphisms"});
  EXPECT_EQ(iso.code, 0);
  auto lines = json_lines(iso.out);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines.back()["failures"], 0);

  auto tables = run({"verify", "tables", "--jobs", "2"});
  EXPECT_EQ(tables.code, 0);
  auto rows = json_lines(tables.out);
  ASSERT_EQ(rows.size(), 104u);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    EXPECT_EQ(rows[i]["pass"], true) << rows[i].dump();
    EXPECT_TRUE(rows[i]["field_diffs"].empty());
  }
  EXPECT_EQ(rows.back()["pass"], true);

  EXPECT_EQ(run({"verify", "everything"}).code, 2);
  EXPECT_EQ(run({"verify", "tables", "--jobs", "0"}).code, 2);
}

TEST(CliVerify, Help) {
  auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  for (const char* sub : {"ring", "graph", "genus", "verify", "cert"}) {
    EXPECT_NE(h.out.find(sub), std::string::npos) << sub;
  }
}
