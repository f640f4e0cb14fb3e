#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zdgenus/finite_ring.hpp"
#include "zdgenus/genus.hpp"
#include "zdgenus/graph.hpp"

namespace zdgenus {

class ClassifyError : public std::runtime_error {
 public:
  enum class Kind { Inconclusive };

  ClassifyError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct CatalogEntry {
  std::string spec;
  int table = 0;
  std::size_t order = 0;
  /// |R/m| for tables 1 and 2, |Spec(R)| for tables 3 and 4.
  std::size_t residue_or_spec = 0;
  std::int64_t characteristic = 0;
  std::size_t vertex_count = 0;
  std::optional<std::string> label;
  int genus = 0;
  /// q for instances of the Z2 x GF(q) and Z3 x GF(q) rows.
  std::optional<int> family_q;
};

/// Tables 1-4 in row order; family rows instantiated and deduplicated.
const std::vector<CatalogEntry>& builtin_catalog();

/// Order-independent key of a presentation: sorted atoms, GF(p) written as Zp.
std::string canonical_spec(const std::string& spec);

enum class GenusClass { Planar, Toroidal, GenusAtLeastTwo };
std::string to_string(GenusClass c);

struct Classification {
  RingInvariants invariants;
  std::size_t vertex_count = 0;
  GenusClass genus_class = GenusClass::Planar;
  GenusResult evidence;
  std::optional<std::string> graph_label;
};

/// Labels tried by classify_ring: Point, K2, P3, K3, K4, K6, K7, K1114, G1..G5.
const std::vector<std::string>& graph_labels();
/// Graph for a label; "Point" is one vertex.
Graph labelled_graph(const std::string& label);
/// Label of g among graph_labels(), if |V| <= 20. G5 is matched after reduction.
std::optional<std::string> match_label(const Graph& g);

/// Throws ClassifyError(Inconclusive) when the budget runs out undecided.
Classification classify_ring(const FiniteRing& ring, std::uint64_t budget = 1'000'000);

struct FieldDiff {
  std::string expected;
  std::string actual;
};

struct EntryReport {
  std::string spec;
  std::optional<int> table;
  std::map<std::string, FieldDiff> field_diffs;
  std::string genus_class;
  std::vector<std::string> methods;
  double elapsed_ms = 0;
  bool pass = false;
  bool long_running = false;
  std::string note;
};

struct VerificationReport {
  std::string campaign;
  std::vector<EntryReport> entries;

  std::size_t failures() const;
  bool pass() const { return failures() == 0; }
};

/// One JSON object per entry, then a summary object.
std::string report_to_jsonl(const VerificationReport& report);

/// Entries run on up to `jobs` threads; the report keeps catalog order.
VerificationReport verify_catalog(std::uint64_t budget = 1'000'000, unsigned jobs = 1,
                                  const std::vector<CatalogEntry>& catalog = builtin_catalog());

struct ExclusionEntry {
  std::string spec;
  std::string reason;
};

/// Rings expected to have genus at least two.
std::vector<ExclusionEntry> exclusion_list();

/// Each ring must classify GenusAtLeastTwo with a verified clique/biclique
/// witness or a completed refutation of genus 1. Entries undecided at
/// `budget` are rerun at `long_budget` and flagged long_running.
VerificationReport verify_exclusions(std::uint64_t budget = 1'000'000,
                                     std::uint64_t long_budget = 100'000'000, unsigned jobs = 1);

VerificationReport verify_presentation_isomorphisms();

/// Checks that (a, b) -> (a, psi(b)) maps every edge of
/// Gamma(R x GF(q)) to an edge of Gamma(R x Z_q), psi(i) = i on element indices.
EntryReport verify_field_embedding(const std::string& ring_spec, std::int64_t q);

}  // namespace zdgenus
