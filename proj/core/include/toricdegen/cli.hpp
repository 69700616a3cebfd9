#pragma once

#include "toricdegen/degeneration.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricdegen::cli {

/// A malformed job description. `location` is "line L, column C" for syntax
/// errors and a JSON pointer for schema errors.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& message, std::string location)
      : std::runtime_error(message), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

struct JobOptions {
  bool compact_cap = false;
  std::optional<std::size_t> anchor_piece;
  std::optional<std::uint64_t> coefficient_seed;
  bool multi_base = false;
};

/// Command-line settings layered over the options of the spec.
struct Overrides {
  bool compact_cap = false;
  bool multi_base = false;
  std::optional<std::size_t> anchor_piece;
  std::optional<std::uint64_t> coefficient_seed;

  void apply(JobOptions& options) const;
};

struct HyperplaneFamily {
  IntVector normal;
  std::vector<Integer> offsets;
};

struct JobSpec {
  enum class PartitionForm { Pieces, FanRays, Hyperplanes };

  LatticePolytope polytope;
  PartitionForm form = PartitionForm::Pieces;
  std::vector<LatticePolytope> pieces;
  std::optional<Fan> fan;
  std::optional<HyperplaneFamily> hyperplanes;
  JobOptions options;

  Partition partition() const;
};

/// Parses a JSON job description. Throws InputError on syntax or schema errors
/// and MathError when the data do not describe a polyhedron.
JobSpec parse_job(const std::string& text);

/// Face fan of conv(rays); the origin must be an interior point.
Fan fan_from_rays(std::size_t rank, const std::vector<IntVector>& rays);

enum ExitCode : int { Ok = 0, Rejected = 1, BadInput = 2 };

struct Outcome {
  int exit_code = Ok;
  std::vector<std::string> lines;  // one JSON object per line
  std::optional<std::string> dot;
  std::optional<std::string> svg;
};

Outcome run_verify(const JobSpec& job);
Outcome run_lift(const JobSpec& job);
Outcome run_degenerate(const JobSpec& job);

/// Parses and runs one command ("verify", "lift" or "degenerate"); every failure
/// becomes a structured error line.
Outcome run(const std::string& command, const std::string& text, const Overrides& overrides = {});

/// Nodes are pieces, edges are walls.
std::string dual_graph_dot(const Partition& g);
/// Pieces of a 2-dimensional partition; unbounded pieces are clipped to a box.
std::string partition_svg(const Partition& g);

std::string error_line(const std::string& kind, const std::string& message,
                       const std::optional<std::string>& location = std::nullopt);

}  // namespace toricdegen::cli
