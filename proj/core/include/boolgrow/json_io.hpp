// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "boolgrow/analysis.hpp"
#include "boolgrow/connective.hpp"
#include "boolgrow/process.hpp"
#include "boolgrow/spectrum.hpp"

// Canonical JSON and CSV renderings. Key order is fixed and doubles are
// emitted shortest-round-trip, so equal inputs give byte-equal output.
// indent < 0 compact, otherwise pretty-printed with that many spaces.
namespace boolgrow {

std::string domain_name(Domain d);
Domain domain_from_name(const std::string& name);

std::string to_json(const Distribution& d, int indent = -1);
std::string to_json(const Spectrum& sp, int indent = -1);
std::string to_json(const ClosureReport& cr, int indent = -1);
std::string to_json(const PropertySet& props, int indent = -1);
std::string to_json(const CharPoly& cp, int indent = -1);
std::string to_json(const FixedPointReport& fp, int indent = -1);
std::string to_json(const ConvergenceClassReport& cc, int indent = -1);
std::string to_json(const SpectralProfile& prof, int indent = -1);
std::string to_json(const BoundConstants& bc, int indent = -1);
std::string to_json(const SetDescriptor& sd, int indent = -1);
std::string to_json(const Prediction& pred, int indent = -1);
std::string to_json(const IterationBound& b, int indent = -1);
std::string to_json(const ConvergenceReport& rep, int indent = -1);
std::string to_json(const CheckResult& cr, int indent = -1);

Distribution distribution_from_json(const std::string& text);

// CSV with a header row; floating point at 17 significant digits.
void write_csv(std::ostream& os, const Distribution& d);
void write_csv(std::ostream& os, const Spectrum& sp);
void write_trajectory_csv(std::ostream& os, const std::vector<double>& dist);

} // namespace boolgrow
