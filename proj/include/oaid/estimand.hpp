#pragma once

#include <string>

#include "oaid/catalog.hpp"
#include "oaid/matrix.hpp"

namespace oaid::estimand {

enum class Format { kText, kLatex, kJson };

// Weighted moment ratio identifying a conditional mean: numerator terms
// alpha_z E[Y 1(T=t) | Z=z], denominator terms alpha_z P(T=t | Z=z).
struct MeanEstimand {
  int t = 0;
  int treatments = 2;
  RatVector alpha;
};

struct TeEstimand {
  MeanEstimand minuend;     // the t' side
  MeanEstimand subtrahend;  // the t side
};

MeanEstimand build_mean_estimand(int t, int treatments, const RatVector& alpha);
TeEstimand build_te_estimand(int treatments, const Collection& col);

// Scalar formatting shared by formulas and catalogs: integers plain, exact
// short decimals when the denominator divides 100 and is in {2,4,5,10},
// otherwise p/q.
std::string format_scalar(const Rational& x);

std::string render_formula(const MeanEstimand& e, Format format);
std::string render_formula(const TeEstimand& e, Format format);

// Whole catalog in the requested format. The LaTeX flavor reproduces the
// published appendix layout (one subsubsection per model, matrix display,
// enumerated collections); text is a plain human readable dump including
// the estimand formulas; json matches the documented schema.
std::string emit_catalog(const Catalog& cat, Format format);

}  // namespace oaid::estimand
