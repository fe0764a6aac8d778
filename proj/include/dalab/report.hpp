#pragma once

// Machine-readable outputs. Every JSON document carries `schema_version`.

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dalab/absorber.hpp"
#include "dalab/dirac.hpp"
#include "dalab/propagators.hpp"
#include "dalab/run_config.hpp"
#include "dalab/verification.hpp"

namespace dalab::report {

using nlohmann::json;

std::string report_schema_version();

/// Shortest round-trip decimal form of `value`.
std::string format_number(double value);

json lattice_json(const LatticeSpec& spec);
/// Lattice, seed, suites and tolerance overrides; the output directory is
/// left out so reports do not depend on where they were written.
json config_json(const RunConfig& config);

json check_json(const verification::CheckResult& result);
json verify_report(const RunConfig& config, const std::vector<verification::CheckResult>& results);

/// Header `kind,t,x,re,im`.
void write_kernel_csv(std::ostream& out, std::span<const KernelSample> samples);
json kernel_json(std::span<const KernelSample> samples);

json residual_json(const std::string& check, std::size_t n_points, double max_residual,
                   const LatticeSpec& lattice);

json vev_json(const SpacetimePoint& x, const SpacetimePoint& y, complex vev, complex i_feynman);

/// Header `k,omega,energy`.
void write_spectrum_csv(std::ostream& out, const absorber::EmissionSpectrum& spectrum);
json spectrum_summary(const absorber::EmissionSpectrum& spectrum, double tolerance);

json dirac_json(const dirac::DiracSpinorSolution& solution);

/// One console line per check.
std::string check_line(const verification::CheckResult& result);

}  // namespace dalab::report
