#pragma once

#include <string>
#include <vector>

#include "crf/crfields.hpp"

namespace crf {

// Sampled parameters of a normal form; u stands for e^{i theta}.
struct CaseParams {
  GaussianRational a, b, d, u, tau;
};

// Printed low-degree parts of X1, X2, Y1, Y2 for a case, plus the quadric
// germ of its normal form (exact through trunc).
struct CaseOracle {
  XYSeries printed;
  Germ germ;
};

// Parses "a=1, b=1/3+i, d=1, u=3/5+4/5 i"; unset keys stay zero.
CaseParams parse_case_params(const std::string& text);
std::vector<std::string> implemented_cases();

// Throws PreconditionError for unknown ids and for parameters outside the
// constraints of the normal form.
CaseOracle case_display_series(const std::string& id, const CaseParams& p, int trunc = 2);

}  // namespace crf
