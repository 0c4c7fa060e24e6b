#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catsite/fincat.hpp"
#include "catsite/group.hpp"
#include "catsite/sheaves.hpp"
#include "catsite/sites.hpp"
#include "json.hpp"

namespace catsite {

using Json = nlohmann::ordered_json;

/// Malformed document: bad JSON syntax or a value of the wrong shape.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct NamedCategory {
  std::string name;
  CatPtr category;
};

struct NamedFunctor {
  std::string name;
  std::string source;
  std::string target;
  Functor functor;
  /// Topology on the source used by the site-level tasks.
  std::optional<std::string> topology;
  /// Designated squares on the source and target.
  std::optional<std::string> source_squares;
  std::optional<std::string> target_squares;
  /// Fibre point on the source for the π1 comparison.
  std::optional<std::string> point;
};

struct NamedSquares {
  std::string name;
  std::string category;
  DesignatedSquares squares;
};

struct NamedCovers {
  std::string name;
  std::string category;
  Pretopology pretopology;
};

struct NamedTopology {
  std::string name;
  std::string category;
  std::vector<Sieve> seeds;
  std::optional<std::string> from_covers;
  /// Generated from the seeds and covers, or read from explicit sieves.
  Topology topology;
};

struct NamedPresheaf {
  std::string name;
  std::string category;
  Presheaf presheaf;
};

struct NamedPoint {
  std::string name;
  std::string category;
  std::string topology;
  ObjId object = kNone;
};

struct Bounds {
  std::size_t sieves = 1u << 16;
  std::size_t hom = 1u << 16;
  std::size_t samples = 6;
  int fibre = 6;
  std::size_t candidates = 1u << 20;
  std::vector<int> witt_primes{2, 3, 5};
  int witt_length = 4;
  std::vector<int> witt_rings{2, 3, 4};
  int witt_ring_length = 3;
  std::size_t witt_ring_size = 4096;
};

struct Workspace {
  std::vector<NamedCategory> categories;
  std::vector<NamedFunctor> functors;
  std::vector<NamedSquares> squares;
  std::vector<NamedCovers> covers;
  std::vector<NamedTopology> topologies;
  std::vector<NamedPresheaf> presheaves;
  std::vector<NamedPoint> points;
  Bounds bounds;

  /// Lookups by name; throw Error naming the missing entity.
  CatPtr category(const std::string& name) const;
  const NamedFunctor& functor(const std::string& name) const;
  const NamedSquares& square_set(const std::string& name) const;
  const NamedCovers& cover_set(const std::string& name) const;
  const NamedTopology& topology(const std::string& name) const;
  const NamedPresheaf& presheaf(const std::string& name) const;
  const NamedPoint& point(const std::string& name) const;
};

struct LoadResult {
  Workspace workspace;
  /// Unresolved references and validator failures; entities with a
  /// violation are left out of the workspace.
  Report report;
};

/// Throws ParseError on malformed input.
LoadResult load_workspace(const Json& document);
LoadResult load_workspace_text(const std::string& text);
LoadResult load_workspace_file(const std::string& path);

/// Explicit form: categories as composition tables, topologies with their
/// covering sieves, presheaves with every non-identity restriction.
Json save_workspace(const Workspace& ws);

bool equivalent(const Workspace& a, const Workspace& b);

/// Group names accepted by the delooping builders: Cn, C2xC2 (or V4), S3.
FiniteGroup named_group(const std::string& name);

}  // namespace catsite
