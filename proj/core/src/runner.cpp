#include "sdlab/runner.hpp"

namespace sdlab {

RunOutcome run_manifest(const ConstructionManifest& m, const RunOptions& opts) {
  RunOutcome out;
  const TestBox box = opts.box ? *opts.box : m.recommended_box;
  const EvalContext ctx{m.spec, m.cyclic_generator};

  out.report = verify_on_box(m.fs, m.matrix, box, ctx, opts.verify);
  out.obstruction = m.obstruction;

  bool ok = true;
  if (m.expect_equation_holds) {
    // a clean pass also demands that every input survived the validity
    // prepass — a doctored table must not ride on an accidentally intact
    // equation
    if (!out.report.clean()) {
      ok = false;
      out.notes.push_back(out.report.violation_count > 0
                              ? "equation expected to hold but violations were found"
                              : "input functions failed the validity prepass");
    }
  } else if (out.report.violation_count == 0) {
    ok = false;
    out.notes.push_back("equation expected to fail but no violation was found");
  }

  // Class-exclusion probes run on the same box with the first function; every
  // construction here uses identical marginals up to phase, so one probe
  // speaks for the family.
  if (m.expect_not_idempotent) {
    const bool is_idem = is_idempotent_on_box(m.fs.front(), box, ctx, opts.verify.tolerance);
    out.idempotent_class = is_idem;
    if (is_idem) {
      ok = false;
      out.notes.push_back("function unexpectedly looks like a shifted idempotent on the box");
    }
  }
  if (m.expect_not_gauss_idem) {
    const bool is_gi =
        is_gauss_idem_modulus_on_box(m.fs.front(), box, opts.verify.tolerance, ctx);
    out.gauss_idem_class = is_gi;
    if (is_gi) {
      ok = false;
      out.notes.push_back(
          "function modulus unexpectedly matches a gaussian-times-idempotent profile");
    }
  }
  if (m.obstruction && !*m.obstruction) {
    ok = false;
    out.notes.push_back("construction parameters fail their arithmetic side condition");
  }

  out.expectations_met = ok;
  return out;
}

}  // namespace sdlab
