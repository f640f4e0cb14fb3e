#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zdgenus/graph.hpp"

namespace zdgenus {

class GenusError : public std::runtime_error {
 public:
  enum class Kind { InvalidRotation, Disconnected, TooLarge, InvalidCertificate };

  GenusError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// rotation[v] lists the neighbours of v in cyclic order.
struct RotationSystem {
  std::vector<std::vector<int>> rotation;
  bool operator==(const RotationSystem&) const = default;
};

struct FaceTrace {
  /// Each face as the sequence of dart tails; walk lengths sum to 2E.
  std::vector<std::vector<int>> faces;
  std::size_t count() const { return faces.size(); }
};

int genus_formula_complete(int n);
int genus_formula_bipartite(int m, int n);

/// Exact planarity (path addition on each block). On success `embedding`
/// receives a rotation system of genus 0 on every component.
bool is_planar(const Graph& g, RotationSystem* embedding = nullptr);

/// Throws InvalidRotation for a malformed rotation and Disconnected unless g
/// is connected.
FaceTrace faces_of(const Graph& g, const RotationSystem& rot);
int genus_of_embedding(const Graph& g, const RotationSystem& rot);
/// Sum of genus_of_embedding over connected components.
int total_genus_of_embedding(const Graph& g, const RotationSystem& rot);

/// Edge sets of the biconnected blocks (bridges are two-vertex blocks).
std::vector<std::vector<std::pair<int, int>>> biconnected_blocks(const Graph& g);
/// Length of a shortest cycle, or 0 for forests.
int girth(const Graph& g);

struct SearchResult {
  enum class Status { Found, Refuted, Exhausted };
  Status status = Status::Refuted;
  std::optional<RotationSystem> rotation;
  std::uint64_t nodes = 0;
};

/// Face-tracing backtracking over partial rotations: looks for an embedding of
/// genus <= target_g in at most `budget` node expansions.
SearchResult search_embedding(const Graph& g, int target_g, std::uint64_t budget);

struct LowerBound {
  int bound = 0;
  std::string method;
  std::optional<SubgraphWitness> witness;
  bool nonplanar = false;
};

LowerBound genus_lower_bound(const Graph& g);

struct GenusOptions {
  std::uint64_t budget = 1'000'000;
  /// Stop as soon as the lower bound reaches this value.
  std::optional<int> stop_at_lower;
};

struct GenusResult {
  int lower = 0;
  std::optional<int> upper;
  std::optional<RotationSystem> certificate;
  std::optional<SubgraphWitness> lower_witness;
  bool nonplanar = false;
  std::vector<std::string> methods;
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;

  bool exact() const { return upper && *upper == lower; }
};

/// Genus with certificate: additive over components and blocks.
GenusResult genus(const Graph& g, const GenusOptions& options = {});

/// Minimum genus over every rotation system; needs prod (deg-1)! <= 1e7.
int brute_force_genus(const Graph& g);

struct GenusCertificate {
  std::string graph6;
  std::vector<std::vector<int>> rotations;
  int claimed_genus = 0;
};

GenusCertificate make_certificate(const Graph& g, const RotationSystem& rot);
std::string certificate_to_json(const GenusCertificate& cert);
/// Throws GenusError(InvalidCertificate) on malformed JSON.
GenusCertificate certificate_from_json(const std::string& text);

struct CertificateCheck {
  bool accepted = false;
  int computed_genus = -1;
  std::string reason;
};

CertificateCheck verify_certificate(const GenusCertificate& cert);

}  // namespace zdgenus
