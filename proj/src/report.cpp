#include "ccenum/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ccenum {

using ordered_json = nlohmann::ordered_json;

PotentialParams params_of(const RunConfig& rc) {
  VectorXd m(static_cast<int>(rc.masses.size()));
  for (size_t i = 0; i < rc.masses.size(); ++i) m(static_cast<int>(i)) = rc.masses[i];
  if (static_cast<int>(rc.masses.size()) != rc.n)
    throw std::invalid_argument("masses list length must equal n");
  return PotentialParams(rc.alpha, std::move(m));
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("not a real number: '" + s + "'");
  return v;
}

namespace {

std::string pair_key(int i, int j) {
  if (i + 1 <= 9 && j + 1 <= 9)
    return "r" + std::to_string(i + 1) + std::to_string(j + 1);
  return "r" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

ordered_json reals_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(format_real(x));
  return a;
}

ordered_json config_json(const RunConfig& rc) {
  ordered_json j;
  j["n"] = rc.n;
  j["alpha"] = format_real(rc.alpha);
  j["masses"] = reals_array(rc.masses);
  j["starts"] = rc.solver.starts;
  j["seed"] = rc.solver.seed;
  j["tol_residual"] = format_real(rc.solver.tol_residual);
  j["max_iters"] = rc.solver.max_iters;
  j["min_separation"] = format_real(rc.solver.min_separation);
  j["max_radius"] = format_real(rc.solver.max_radius);
  j["annulus"] = ordered_json::array(
      {format_real(rc.solver.annulus.r_lo), format_real(rc.solver.annulus.r_hi)});
  j["damping_init"] = format_real(rc.solver.damping_init);
  return j;
}

ordered_json class_json(const PotentialParams& params, const CentralConfigClass& cls) {
  ordered_json j;
  j["id"] = cls.id;
  j["n"] = params.n();
  j["alpha"] = format_real(params.alpha);
  ordered_json masses = ordered_json::array();
  for (int i = 0; i < params.n(); ++i) masses.push_back(format_real(params.masses[i]));
  j["masses"] = std::move(masses);
  ordered_json points = ordered_json::array();
  for (const auto& p : cls.canonical.points)
    points.push_back(ordered_json::array({format_real(p.x()), format_real(p.y())}));
  j["points"] = std::move(points);
  ordered_json dist;
  int idx = 0;
  for (int i = 0; i < params.n(); ++i)
    for (int k = i + 1; k < params.n(); ++k, ++idx)
      dist[pair_key(i, k)] = format_real(cls.fp.distances[idx]);
  j["distances"] = std::move(dist);
  j["lambda"] = format_real(cls.lambda);
  j["residual_inf"] = format_real(cls.residual_inf);
  j["ac_residual_inf"] = format_real(cls.ac_residual_inf);
  j["matrix_residual_fro"] = format_real(cls.matrix_residual_fro);
  j["orientation"] = cls.fp.orientation;
  j["kernel_dim"] = cls.hessian.kernel_dim;
  j["full_index"] = cls.hessian.full_index;
  if (cls.hessian.reduced_index)
    j["reduced_index"] = *cls.hessian.reduced_index;
  else
    j["reduced_index"] = nullptr;
  j["nondegenerate"] = cls.hessian.nondegenerate;
  j["hits"] = cls.hits;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string classes_csv(const PotentialParams& params,
                        const std::vector<CentralConfigClass>& classes) {
  const int n = params.n();
  std::ostringstream os;
  os << "id,n,alpha";
  for (int i = 0; i < n; ++i) os << ",m" << i + 1;
  for (int i = 0; i < n; ++i) os << ",x" << i + 1 << ",y" << i + 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) os << "," << pair_key(i, j);
  os << ",lambda,residual_inf,ac_residual_inf,matrix_residual_fro,orientation,"
        "kernel_dim,full_index,reduced_index,nondegenerate,hits\n";
  for (const auto& cls : classes) {
    os << cls.id << "," << n << "," << format_real(params.alpha);
    for (int i = 0; i < n; ++i) os << "," << format_real(params.masses[i]);
    for (const auto& p : cls.canonical.points)
      os << "," << format_real(p.x()) << "," << format_real(p.y());
    for (double r : cls.fp.distances) os << "," << format_real(r);
    os << "," << format_real(cls.lambda) << "," << format_real(cls.residual_inf)
       << "," << format_real(cls.ac_residual_inf) << ","
       << format_real(cls.matrix_residual_fro) << "," << cls.fp.orientation << ","
       << cls.hessian.kernel_dim << "," << cls.hessian.full_index << ",";
    if (cls.hessian.reduced_index) os << *cls.hessian.reduced_index;
    os << "," << (cls.hessian.nondegenerate ? "true" : "false") << "," << cls.hits
       << "\n";
  }
  return os.str();
}

std::string classes_text(const PotentialParams& params,
                         const std::vector<CentralConfigClass>& classes) {
  std::ostringstream os;
  for (const auto& cls : classes) {
    os << "class " << cls.id << ": hits=" << cls.hits
       << " orientation=" << cls.fp.orientation
       << " nondegenerate=" << (cls.hessian.nondegenerate ? "true" : "false")
       << " kernel_dim=" << cls.hessian.kernel_dim
       << " full_index=" << cls.hessian.full_index;
    if (cls.hessian.reduced_index) os << " reduced_index=" << *cls.hessian.reduced_index;
    os << "\n  lambda=" << format_real(cls.lambda)
       << " residual_inf=" << format_real(cls.residual_inf)
       << " ac_residual_inf=" << format_real(cls.ac_residual_inf)
       << " matrix_residual_fro=" << format_real(cls.matrix_residual_fro) << "\n";
    os << "  points:";
    for (const auto& p : cls.canonical.points)
      os << " (" << format_real(p.x()) << ", " << format_real(p.y()) << ")";
    os << "\n  distances:";
    int idx = 0;
    for (int i = 0; i < params.n(); ++i)
      for (int j = i + 1; j < params.n(); ++j, ++idx)
        os << " " << pair_key(i, j) << "=" << format_real(cls.fp.distances[idx]);
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_bounds(const BoundsReport& rep, const std::string& format) {
  if (format == "json") {
    ordered_json j;
    j["n"] = rep.n;
    j["upper"] = rep.upper.str();
    j["lower"] = rep.lower.str();
    ordered_json pc = ordered_json::array();
    for (const auto& c : rep.poincare) pc.push_back(c.str());
    j["poincare"] = std::move(pc);
    return j.dump() + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "n,upper,lower,poincare\n" << rep.n << "," << rep.upper.str() << ","
       << rep.lower.str() << ",";
    std::string pc;
    for (size_t i = 0; i < rep.poincare.size(); ++i)
      pc += (i ? "|" : "") + rep.poincare[i].str();
    os << pc << "\n";
    return os.str();
  }
  std::ostringstream os;
  os << "n=" << rep.n << "\nupper=" << rep.upper.str()
     << "\nlower=" << rep.lower.str() << "\npoincare=[";
  for (size_t i = 0; i < rep.poincare.size(); ++i)
    os << (i ? "," : "") << rep.poincare[i].str();
  os << "]\n";
  return os.str();
}

std::string render_classes(const RunConfig& rc,
                           const std::vector<CentralConfigClass>& classes,
                           const std::string& format) {
  const PotentialParams params = params_of(rc);
  if (format == "csv") return classes_csv(params, classes);
  if (format == "text") return classes_text(params, classes);
  ordered_json j;
  j["config"] = config_json(rc);
  ordered_json arr = ordered_json::array();
  for (const auto& cls : classes) arr.push_back(class_json(params, cls));
  j["classes"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string class_summary_line(int n, const std::vector<CentralConfigClass>& classes) {
  int nondeg = 0;
  for (const auto& c : classes)
    if (c.hessian.nondegenerate) ++nondeg;
  const BigInt lo = lower_bound(n);
  const BigInt hi = u_of_n(n);
  const bool within = BigInt(nondeg) >= lo && BigInt(nondeg) <= hi;
  std::ostringstream os;
  os << "classes=" << classes.size() << " nondegenerate=" << nondeg
     << " within_bounds=" << (within ? "true" : "false");
  return os.str();
}

std::string render_collinear(const RunConfig& rc, const std::vector<OrderingRow>& rows,
                             const std::string& format) {
  const PotentialParams params = params_of(rc);
  auto ordering_str = [](const std::vector<int>& ord) {
    std::string s;
    for (size_t i = 0; i < ord.size(); ++i) s += (i ? "," : "") + std::to_string(ord[i]);
    return s;
  };
  if (format == "json") {
    ordered_json j;
    j["config"] = config_json(rc);
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json r;
      r["ordering"] = row.ordering;
      r["converged"] = row.converged;
      if (row.converged) r["class"] = class_json(params, row.cls);
      arr.push_back(std::move(r));
    }
    j["orderings"] = std::move(arr);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (format == "csv") {
    os << "ordering,converged,positions,residual_inf,ac_residual_inf\n";
    for (const auto& row : rows) {
      os << csv_escape(ordering_str(row.ordering)) << ","
         << (row.converged ? "true" : "false") << ",";
      if (row.converged) {
        std::string pos;
        for (size_t i = 0; i < row.cls.canonical.points.size(); ++i)
          pos += (i ? "|" : "") + format_real(row.cls.canonical.points[i].x());
        os << csv_escape(pos) << "," << format_real(row.cls.residual_inf) << ","
           << format_real(row.cls.ac_residual_inf);
      } else {
        os << ",,";
      }
      os << "\n";
    }
    return os.str();
  }
  for (const auto& row : rows) {
    os << "ordering (" << ordering_str(row.ordering) << "): ";
    if (!row.converged) {
      os << "failed\n";
      continue;
    }
    os << "converged residual_inf=" << format_real(row.cls.residual_inf)
       << " ac_residual_inf=" << format_real(row.cls.ac_residual_inf) << " positions:";
    for (const auto& p : row.cls.canonical.points) os << " " << format_real(p.x());
    os << "\n";
  }
  return os.str();
}

std::string render_sweep(const RunConfig& rc, double alpha_lo, double alpha_hi,
                         const ContinuationResult& result, const std::string& format) {
  if (format == "json") {
    ordered_json j;
    j["config"] = config_json(rc);
    j["alpha_lo"] = format_real(alpha_lo);
    j["alpha_hi"] = format_real(alpha_hi);
    j["alphas"] = reals_array(result.alphas);
    j["class_counts"] = result.class_counts;
    ordered_json tracks = ordered_json::array();
    for (const auto& t : result.tracks) {
      ordered_json tj;
      tj["class_id"] = t.class_id;
      tj["lost"] = t.lost;
      tj["alphas"] = reals_array(t.alphas);
      tj["min_gaps"] = reals_array(t.min_gaps);
      ordered_json fps = ordered_json::array();
      for (const auto& fp : t.fingerprints) {
        ordered_json f;
        f["orientation"] = fp.orientation;
        f["distances"] = reals_array(fp.distances);
        fps.push_back(std::move(f));
      }
      tj["fingerprints"] = std::move(fps);
      tracks.push_back(std::move(tj));
    }
    j["tracks"] = std::move(tracks);
    ordered_json events = ordered_json::array();
    for (const auto& e : result.events) {
      ordered_json ej;
      ej["class_id"] = e.class_id;
      ej["alpha"] = format_real(e.alpha);
      ej["gap"] = format_real(e.gap);
      events.push_back(std::move(ej));
    }
    j["degenerations"] = std::move(events);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "alphas:";
  for (double a : result.alphas) os << " " << format_real(a);
  os << "\nclass_counts:";
  for (int c : result.class_counts) os << " " << c;
  os << "\n";
  for (const auto& t : result.tracks) {
    os << "track " << t.class_id << (t.lost ? " (lost)" : "") << " min_gaps:";
    for (double g : t.min_gaps) os << " " << format_real(g);
    os << "\n";
  }
  for (const auto& e : result.events)
    os << "degeneration: class " << e.class_id << " alpha=" << format_real(e.alpha)
       << " gap=" << format_real(e.gap) << "\n";
  return os.str();
}

std::string render_fewnomial_summary(const FewnomialSystem& sys) {
  int d3 = 0, d1 = 0;
  for (int d : sys.degrees) {
    if (d == 3) ++d3;
    if (d == 1) ++d1;
  }
  std::ostringstream os;
  os << "equations=" << sys.equations.size() << " degree3=" << d3 << " degree1=" << d1
     << " k=" << sys.k << " khovanskii=" << khovanskii_bound(sys.degrees, sys.k).str();
  return os.str();
}

std::string render_fewnomial_dump(const FewnomialSystem& sys) {
  std::ostringstream os;
  os << "# variables:";
  for (const auto& v : sys.variable_names) os << " " << v;
  os << "\n";
  for (size_t e = 0; e < sys.equations.size(); ++e)
    os << "eq[" << e << "] (degree " << sys.degrees[e]
       << "): " << sys.equations[e].to_string(sys.variable_names) << " = 0\n";
  return os.str();
}

std::string render_fewnomial_json(const FewnomialSystem& sys) {
  int d3 = 0, d1 = 0;
  for (int d : sys.degrees) {
    if (d == 3) ++d3;
    if (d == 1) ++d1;
  }
  ordered_json j;
  j["n"] = sys.n;
  j["equations"] = sys.equations.size();
  j["k"] = sys.k;
  j["degrees"] = sys.degrees;
  j["degree3"] = d3;
  j["degree1"] = d1;
  j["khovanskii"] = khovanskii_bound(sys.degrees, sys.k).str();
  return j.dump() + "\n";
}

namespace {

double field_real(const ordered_json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key))
    throw std::invalid_argument(ctx + ": missing field '" + key + "'");
  const auto& v = j.at(key);
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw std::invalid_argument(ctx + ": field '" + key + "' is not a real");
}

}  // namespace

VerifyOutcome verify_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }

  const ordered_json* classes = nullptr;
  double tol_cartesian = 1e-12;
  if (doc.is_array()) {
    classes = &doc;
  } else if (doc.is_object() && doc.contains("classes")) {
    classes = &doc.at("classes");
    if (doc.contains("config") && doc.at("config").contains("tol_residual"))
      tol_cartesian = field_real(doc.at("config"), "tol_residual", "config");
  } else {
    throw std::invalid_argument(
        "report must be a JSON array of class records or an object with a "
        "'classes' array");
  }
  if (!classes->is_array())
    throw std::invalid_argument("'classes' must be an array");

  VerifyOutcome out;
  int idx = 0;
  for (const auto& rec : *classes) {
    const std::string ctx = "class record " + std::to_string(idx);
    if (!rec.is_object()) throw std::invalid_argument(ctx + ": not an object");
    if (!rec.contains("n") || !rec.at("n").is_number_integer())
      throw std::invalid_argument(ctx + ": missing integer field 'n'");
    const int n = rec.at("n").get<int>();
    const double alpha = field_real(rec, "alpha", ctx);
    if (!rec.contains("masses") || !rec.at("masses").is_array() ||
        static_cast<int>(rec.at("masses").size()) != n)
      throw std::invalid_argument(ctx + ": field 'masses' must be an array of n reals");
    VectorXd masses(n);
    for (int i = 0; i < n; ++i) {
      const auto& v = rec.at("masses").at(i);
      masses(i) = v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>();
    }
    if (!rec.contains("points") || !rec.at("points").is_array() ||
        static_cast<int>(rec.at("points").size()) != n)
      throw std::invalid_argument(ctx + ": field 'points' must be an array of n pairs");
    Configuration cfg;
    cfg.points.resize(n);
    for (int i = 0; i < n; ++i) {
      const auto& pt = rec.at("points").at(i);
      if (!pt.is_array() || pt.size() != 2)
        throw std::invalid_argument(ctx + ": point " + std::to_string(i) +
                                    " must be a pair");
      const double x = pt.at(0).is_string() ? parse_real(pt.at(0).get<std::string>())
                                            : pt.at(0).get<double>();
      const double y = pt.at(1).is_string() ? parse_real(pt.at(1).get<std::string>())
                                            : pt.at(1).get<double>();
      cfg.points[i] = Vector2d(x, y);
    }

    const PotentialParams params(alpha, masses);
    const double res = cc_residual(params, cfg).lpNorm<Eigen::Infinity>();
    const double ac = ac_residual(params, distances_of(cfg)).lpNorm<Eigen::Infinity>();
    const double mat = ac_matrix_residual(ab_matrices(params, cfg)).norm();
    const bool pass = res < tol_cartesian && ac < 1e-8 && mat < 1e-8;
    std::ostringstream line;
    line << "class " << (rec.contains("id") ? rec.at("id").dump() : std::to_string(idx))
         << ": " << (pass ? "pass" : "FAIL") << " residual_inf=" << format_real(res)
         << " ac_residual_inf=" << format_real(ac)
         << " matrix_residual_fro=" << format_real(mat);
    out.lines.push_back(line.str());
    ++out.checked;
    if (!pass) ++out.failed;
    ++idx;
  }
  return out;
}

RunConfig runconfig_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  RunConfig rc;
  if (j.contains("n")) rc.n = j.at("n").get<int>();
  if (j.contains("alpha")) rc.alpha = field_real(j, "alpha", "config");
  if (j.contains("masses")) {
    rc.masses.clear();
    for (const auto& v : j.at("masses"))
      rc.masses.push_back(v.is_string() ? parse_real(v.get<std::string>())
                                        : v.get<double>());
  }
  if (j.contains("starts")) rc.solver.starts = j.at("starts").get<int>();
  if (j.contains("seed")) rc.solver.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tol_residual"))
    rc.solver.tol_residual = field_real(j, "tol_residual", "config");
  if (j.contains("max_iters")) rc.solver.max_iters = j.at("max_iters").get<int>();
  if (j.contains("min_separation"))
    rc.solver.min_separation = field_real(j, "min_separation", "config");
  if (j.contains("max_radius")) rc.solver.max_radius = field_real(j, "max_radius", "config");
  if (j.contains("annulus")) {
    const auto& a = j.at("annulus");
    if (!a.is_array() || a.size() != 2)
      throw std::invalid_argument("config: 'annulus' must be [r_lo, r_hi]");
    rc.solver.annulus.r_lo = a.at(0).is_string() ? parse_real(a.at(0).get<std::string>())
                                                 : a.at(0).get<double>();
    rc.solver.annulus.r_hi = a.at(1).is_string() ? parse_real(a.at(1).get<std::string>())
                                                 : a.at(1).get<double>();
  }
  if (j.contains("damping_init"))
    rc.solver.damping_init = field_real(j, "damping_init", "config");
  if (j.contains("threads")) rc.threads = j.at("threads").get<int>();
  if (j.contains("format")) rc.format = j.at("format").get<std::string>();
  if (j.contains("out")) rc.out = j.at("out").get<std::string>();
  return rc;
}

}  // namespace ccenum
