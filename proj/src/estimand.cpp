#include "oaid/estimand.hpp"

#include <sstream>
#include <stdexcept>

#include "oaid/json_io.hpp"

namespace oaid::estimand {

namespace {

// Moment symbol for the numerator ("Y*D" style) or denominator ("D" style).
std::string moment_symbol(int t, int treatments, bool with_y, Format format) {
  std::string d;
  if (treatments == 2) {
    d = (t == 1) ? "D" : "(1-D)";
  } else {
    d = (format == Format::kLatex) ? "D^{[" + std::to_string(t) + "]}"
                                   : "D[" + std::to_string(t) + "]";
  }
  if (format == Format::kLatex) {
    const std::string inner = with_y ? "Y " + d : d;
    return "\\mathbb{E}[" + inner + " \\mid Z=%Z%]";
  }
  const std::string inner = with_y ? "Y*" + d : d;
  return "E[" + inner + " | Z=%Z%]";
}

std::string substitute_z(std::string tpl, int z) {
  const std::string tag = "%Z%";
  const auto pos = tpl.find(tag);
  tpl.replace(pos, tag.size(), std::to_string(z));
  return tpl;
}

// Renders sum_z alpha_z M_z with positive terms first, each block in
// ascending z, so signs read naturally.
std::string weighted_sum(const RatVector& alpha, int t, int treatments,
                         bool with_y, Format format) {
  const std::string tpl = moment_symbol(t, treatments, with_y, format);
  std::ostringstream out;
  bool first = true;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t z = 0; z < alpha.size(); ++z) {
      const Rational& a = alpha[z];
      if (a.is_zero()) continue;
      if ((pass == 0) != (a.sign() > 0)) continue;
      const Rational mag = a.abs();
      if (first) {
        if (a.sign() < 0) out << "-";
        first = false;
      } else {
        out << (a.sign() > 0 ? " + " : " - ");
      }
      if (mag != Rational(1))
        out << format_scalar(mag) << (format == Format::kLatex ? " \\cdot " : "*");
      out << substitute_z(tpl, static_cast<int>(z));
    }
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace

std::string format_scalar(const Rational& x) {
  if (x.is_integer()) return x.str();
  const mpz_class den = x.den();
  if (den == 2 || den == 4 || den == 5 || den == 10) {
    mpz_class scaled = x.num() * (100 / den);  // exact: den divides 100
    const bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    mpz_class whole = scaled / 100;
    mpz_class frac = scaled % 100;
    std::string f = frac.get_str();
    if (f.size() == 1) f = "0" + f;
    while (f.size() > 1 && f.back() == '0') f.pop_back();
    return std::string(neg ? "-" : "") + whole.get_str() + "." + f;
  }
  return x.str();
}

MeanEstimand build_mean_estimand(int t, int treatments, const RatVector& alpha) {
  if (t < 0 || t >= treatments)
    throw std::invalid_argument("build_mean_estimand: treatment out of range");
  return MeanEstimand{t, treatments, alpha};
}

TeEstimand build_te_estimand(int treatments, const Collection& col) {
  return TeEstimand{build_mean_estimand(col.t_prime, treatments, col.alpha_t_prime),
                    build_mean_estimand(col.t, treatments, col.alpha_t)};
}

std::string render_formula(const MeanEstimand& e, Format format) {
  const std::string num = weighted_sum(e.alpha, e.t, e.treatments, true, format);
  const std::string den = weighted_sum(e.alpha, e.t, e.treatments, false, format);
  if (format == Format::kLatex) return "\\frac{" + num + "}{" + den + "}";
  if (format == Format::kJson) {
    nlohmann::ordered_json j;
    j["t"] = e.t;
    j["numerator"] = weighted_sum(e.alpha, e.t, e.treatments, true, Format::kText);
    j["denominator"] = weighted_sum(e.alpha, e.t, e.treatments, false, Format::kText);
    return j.dump();
  }
  return "(" + num + ") / (" + den + ")";
}

std::string render_formula(const TeEstimand& e, Format format) {
  if (format == Format::kJson) {
    nlohmann::ordered_json j;
    j["minuend"] = nlohmann::ordered_json::parse(render_formula(e.minuend, Format::kJson));
    j["subtrahend"] =
        nlohmann::ordered_json::parse(render_formula(e.subtrahend, Format::kJson));
    return j.dump();
  }
  return render_formula(e.minuend, format) + " - " + render_formula(e.subtrahend, format);
}

namespace {

std::string render_vector(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_scalar(v[i]);
  }
  return s + ")";
}

std::string render_c(const std::vector<int>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

std::string latex_catalog(const Catalog& cat) {
  std::ostringstream out;
  out << "\\subsection{" << cat.treatments << " treatments, " << cat.instruments
      << " instrument values}\n";
  for (const auto& e : cat.entries) {
    out << "\\subsubsection*{" << e.sm_id << "}\n";
    out << "$$ A= \\begin{bmatrix}\n";
    for (int z = 0; z < cat.instruments; ++z) {
      for (std::size_t g = 0; g < e.model.groups.size(); ++g) {
        if (g) out << " & ";
        out << e.model.groups[g][static_cast<std::size_t>(z)];
      }
      out << "\\\\\n";
    }
    out << "\\end{bmatrix} $$\n";
    out << "\\begin{enumerate}[i)]\n";
    for (const auto& col : e.collections) {
      out << "\\item $(t',t)=(" << col.t_prime << "," << col.t << ")$; $\\alpha_{t'}="
          << render_vector(col.alpha_t_prime) << "'; \\alpha_{t}="
          << render_vector(col.alpha_t) << "'$; $c=" << render_c(col.c) << "'$\n";
    }
    out << "\\end{enumerate}\n";
  }
  return out.str();
}

std::string text_catalog(const Catalog& cat) {
  std::ostringstream out;
  out << "catalog: " << cat.treatments << " treatments, " << cat.instruments
      << " instrument values, dedup=" << cat.dedup_mode << "\n";
  const auto counts = summary_counts(cat);
  out << "models: " << counts.models << ", collections: " << counts.collections << "\n";
  for (const auto& e : cat.entries) {
    out << "\n" << e.sm_id << "\n";
    for (int z = 0; z < cat.instruments; ++z) {
      out << "  [";
      for (std::size_t g = 0; g < e.model.groups.size(); ++g) {
        if (g) out << " ";
        out << e.model.groups[g][static_cast<std::size_t>(z)];
      }
      out << "]\n";
    }
    int idx = 0;
    for (const auto& col : e.collections) {
      out << "  " << ++idx << ") (t',t)=(" << col.t_prime << "," << col.t
          << ")  alpha_t'=" << render_vector(col.alpha_t_prime)
          << "  alpha_t=" << render_vector(col.alpha_t) << "  c=" << render_c(col.c)
          << "\n";
      const TeEstimand te = build_te_estimand(cat.treatments, col);
      out << "     E[Y(" << col.t_prime << ")|C] = "
          << render_formula(te.minuend, Format::kText) << "\n";
      out << "     E[Y(" << col.t << ")|C] = "
          << render_formula(te.subtrahend, Format::kText) << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string emit_catalog(const Catalog& cat, Format format) {
  switch (format) {
    case Format::kLatex:
      return latex_catalog(cat);
    case Format::kText:
      return text_catalog(cat);
    case Format::kJson:
      return json_io::catalog_to_json(cat).dump(2) + "\n";
  }
  throw std::invalid_argument("emit_catalog: unknown format");
}

}  // namespace oaid::estimand
