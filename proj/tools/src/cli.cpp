#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "zdgenus/classify.hpp"

namespace zdgenus::cli {

namespace {

constexpr std::uint64_t kLongBudget = 100'000'000;

using Json = nlohmann::ordered_json;

std::string graph_json(const Graph& g) {
  Json j;
  j["vertices"] = g.labels();
  j["edges"] = Json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump();
}

struct Input {
  std::string spec;
  std::string graph6;
};

Graph load_graph(const Input& in) {
  if (!in.graph6.empty()) return parse_graph6(in.graph6);
  return zero_divisor_graph(realize(in.spec));
}

int cmd_ring(const std::string& spec, std::ostream& out) {
  out << describe_ring_json(realize(spec)) << "\n";
  return kOk;
}

int cmd_graph(const std::string& spec, bool reduced, const std::string& format, std::ostream& out,
              std::ostream& err) {
  Graph g = zero_divisor_graph(realize(spec));
  if (reduced) g = reduce(g);
  if (g.order() == 0) err << "warning: " << spec << " has no nonzero zero-divisors; the graph is empty\n";
  if (format == "graph6") {
    if (g.order() > 62) {
      err << "error: graph6 output is limited to 62 vertices (graph has " << g.order() << ")\n";
      return kFormatLimit;
    }
    out << export_graph6(g) << "\n";
  } else if (format == "dot") {
    out << export_dot(g);
  } else {
    out << graph_json(g) << "\n";
  }
  return kOk;
}

int cmd_genus(const Input& in, std::uint64_t budget, const std::string& cert_path, std::ostream& out,
              std::ostream& err) {
  Graph g = load_graph(in);
  GenusOptions opts;
  opts.budget = budget;
  auto r = genus(g, opts);

  Json j;
  j["input"] = in.graph6.empty() ? in.spec : in.graph6;
  j["vertices"] = g.order();
  j["edges"] = g.size();
  j["lower"] = r.lower;
  j["upper"] = r.upper ? Json(*r.upper) : Json(nullptr);
  j["exact"] = r.exact();
  j["methods"] = r.methods;
  j["nodes"] = r.nodes;
  j["budget_exhausted"] = r.budget_exhausted;
  if (r.lower_witness) {
    const auto& w = *r.lower_witness;
    j["witness"] = {{"kind", w.kind == SubgraphWitness::Kind::Clique ? "clique" : "biclique"},
                    {"side_a", w.side_a},
                    {"side_b", w.side_b}};
  }
  if (!cert_path.empty()) {
    if (!r.certificate) {
      err << "warning: no embedding found, certificate not written\n";
    } else {
      if (g.order() > 62) {
        err << "error: certificates use graph6, limited to 62 vertices\n";
        return kFormatLimit;
      }
      auto cert = make_certificate(g, *r.certificate);
      auto check = verify_certificate(cert);
      if (!check.accepted) throw std::logic_error("emitted certificate does not verify: " + check.reason);
      std::ofstream file(cert_path);
      if (!file) {
        err << "error: cannot write " << cert_path << "\n";
        return kInputError;
      }
      file << certificate_to_json(cert) << "\n";
      j["certificate_path"] = cert_path;
    }
  }
  out << j.dump() << "\n";
  return r.exact() ? kOk : kInconclusive;
}

int cmd_verify(const std::string& scope, std::uint64_t budget, unsigned jobs, std::ostream& out) {
  bool pass = true;
  auto emit = [&](const VerificationReport& r) {
    out << report_to_jsonl(r);
    out.flush();
    pass = pass && r.pass();
  };
  if (scope == "tables" || scope == "all") emit(verify_catalog(budget, jobs));
  if (scope == "exclusions" || scope == "all") emit(verify_exclusions(budget, std::max(budget, kLongBudget), jobs));
  if (scope == "isomorphisms" || scope == "all") emit(verify_presentation_isomorphisms());
  return pass ? kOk : kRejected;
}

int cmd_cert_check(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream file(path);
  if (!file) {
    err << "error: cannot read " << path << "\n";
    return kInputError;
  }
  std::stringstream text;
  text << file.rdbuf();
  auto cert = certificate_from_json(text.str());
  auto check = verify_certificate(cert);
  Json j;
  j["accepted"] = check.accepted;
  j["claimed_genus"] = cert.claimed_genus;
  j["computed_genus"] = check.computed_genus;
  j["reason"] = check.reason;
  out << j.dump() << "\n";
  return check.accepted ? kOk : kRejected;
}

}  // namespace

std::optional<std::uint64_t> parse_budget(const std::string& text) {
  static const std::regex pattern(R"(([0-9]{1,15})([kM]?))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) return std::nullopt;
  std::uint64_t value = std::stoull(m[1].str());
  if (m[2] == "k") value *= 1'000;
  if (m[2] == "M") value *= 1'000'000;
  if (value == 0) return std::nullopt;
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-divisor graphs of finite rings: construction, genus and certificates", "zdgenus"};
  app.require_subcommand(1);

  std::string spec, format = "json", budget_text = "1M", graph6, cert_path, scope, path;
  bool reduced = false, long_running = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* ring = app.add_subcommand("ring", "Describe a ring as JSON");
  ring->add_option("spec", spec, "Ring presentation, e.g. \"Z4[x]/(x^3,2*x)\"")->required();

  auto* graph = app.add_subcommand("graph", "Print the zero-divisor graph");
  graph->add_option("spec", spec, "Ring presentation")->required();
  graph->add_flag("--reduced", reduced, "Drop degree-1 vertices");
  graph->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot", "graph6"}));

  auto* gen = app.add_subcommand("genus", "Compute the genus with a certificate");
  auto* spec_opt = gen->add_option("spec", spec, "Ring presentation");
  auto* g6_opt = gen->add_option("--graph6", graph6, "Graph in graph6 form instead of a ring");
  spec_opt->excludes(g6_opt);
  gen->add_option("--budget", budget_text, "Search node budget (integer, optional k/M suffix)");
  gen->add_flag("--long-running", long_running, "Raise the budget to 100M");
  gen->add_option("--cert", cert_path, "Write the embedding certificate to this path");

  auto* verify = app.add_subcommand("verify", "Run a verification campaign (JSON lines)");
  verify->add_option("scope", scope, "tables, exclusions, isomorphisms or all")
      ->required()
      ->check(CLI::IsMember({"tables", "exclusions", "isomorphisms", "all"}));
  verify->add_option("--budget", budget_text, "Search node budget per entry");
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--long-running", long_running, "Accepted; exclusions always escalate to 100M");

  auto* cert = app.add_subcommand("cert", "Certificate tools");
  cert->require_subcommand(1);
  auto* check = cert->add_subcommand("check", "Recompute the genus of a certificate");
  check->add_option("path", path, "Certificate JSON file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  auto budget = parse_budget(budget_text);
  if (!budget) {
    err << "error: invalid budget '" << budget_text << "' (use a positive integer with optional k or M suffix)\n";
    return kInputError;
  }
  if (long_running) budget = std::max(*budget, kLongBudget);

  try {
    if (ring->parsed()) return cmd_ring(spec, out);
    if (graph->parsed()) return cmd_graph(spec, reduced, format, out, err);
    if (gen->parsed()) {
      if (spec.empty() && graph6.empty()) {
        err << "error: genus needs a ring spec or --graph6\n";
        return kInputError;
      }
      return cmd_genus({spec, graph6}, *budget, cert_path, out, err);
    }
    if (verify->parsed()) return cmd_verify(scope, *budget, jobs, out);
    if (check->parsed()) return cmd_cert_check(path, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const RingError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == GraphError::Kind::TooLarge ? kFormatLimit : kInputError;
  } catch (const GenusError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace zdgenus::cli
