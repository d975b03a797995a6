#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdlab/constructions.hpp"
#include "sdlab/verifier.hpp"

namespace sdlab {

// One end-to-end pass over a construction: equation check on a box plus the
// class-exclusion probes the construction advertises.  `expectations_met` is
// the single go/no-go bit consumed by the CLI exit code.
struct RunOutcome {
  VerifyReport report;
  std::optional<bool> idempotent_class;   // set when the manifest excludes it
  std::optional<bool> gauss_idem_class;   // set when the manifest excludes it
  std::optional<bool> obstruction;        // echoed from the manifest
  bool expectations_met = false;
  std::vector<std::string> notes;         // human-readable expectation deltas
};

struct RunOptions {
  std::optional<TestBox> box;             // overrides manifest recommendation
  VerifyOptions verify;
};

RunOutcome run_manifest(const ConstructionManifest& m, const RunOptions& opts = {});

}  // namespace sdlab
